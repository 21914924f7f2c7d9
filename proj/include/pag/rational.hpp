#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pag {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical text form: "n" when the denominator is 1, otherwise "n/d" in
// lowest terms. This is the only form the serializers emit.
inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

// Accepts "a/b", plain integers, and decimal literals ("0.25"), with an
// optional leading sign. Anything else (floats in scientific notation,
// embedded spaces, empty input) is rejected.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };

  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) fail();
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = Rational(BigInt{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail();
    if (!whole.empty() && !detail::all_digits(whole)) fail();
    if (!frac.empty() && !detail::all_digits(frac)) fail();
    BigInt scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    BigInt w = whole.empty() ? BigInt{0} : BigInt{std::string(whole)};
    BigInt f = frac.empty() ? BigInt{0} : BigInt{std::string(frac)};
    value = Rational(w * scale + f, scale);
  } else {
    if (!detail::all_digits(s)) fail();
    value = Rational(BigInt{std::string(s)});
  }
  return negative ? Rational(-value) : value;
}

}  // namespace pag

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pag/environment.hpp"
#include "pag/rational.hpp"

namespace pag {

// Dense n-by-n rational matrix with 1-based accessors. Row i is country i's
// allocation: cell (i,j) is the power i aims at j (reserve when j == i).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n) {}

  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    Matrix m(static_cast<int>(rows.size()));
    for (int i = 1; i <= m.n_; ++i) {
      if (static_cast<int>(rows[i - 1].size()) != m.n_)
        throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i - 1].size()) + " entries, expected " +
                                    std::to_string(m.n_));
      for (int j = 1; j <= m.n_; ++j) m(i, j) = rows[i - 1][j - 1];
    }
    return m;
  }

  int size() const { return n_; }
  const Rational& operator()(int i, int j) const { return cells_[idx(i, j)]; }
  Rational& operator()(int i, int j) { return cells_[idx(i, j)]; }

  std::vector<Rational> row(int i) const {
    std::vector<Rational> r(n_);
    for (int j = 1; j <= n_; ++j) r[j - 1] = (*this)(i, j);
    return r;
  }
  void set_row(int i, const std::vector<Rational>& r) {
    for (int j = 1; j <= n_; ++j) (*this)(i, j) = r[j - 1];
  }

  bool operator==(const Matrix&) const = default;

  // Lexicographic over cells; gives matrix sets a deterministic order.
  bool operator<(const Matrix& o) const { return cells_ < o.cells_; }

 private:
  std::size_t idx(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
      throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range for n=" + std::to_string(n_));
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  }

  int n_ = 0;
  std::vector<Rational> cells_;
};

struct StrategyViolation {
  enum class Kind { RowSum, OffSupport, Negative };
  Kind kind;
  int row;
  int col;          // 0 for RowSum
  Rational actual;
  Rational expected;  // the required row sum; 0 otherwise
};

inline std::string to_string(const StrategyViolation& v) {
  switch (v.kind) {
    case StrategyViolation::Kind::RowSum:
      return "row " + std::to_string(v.row) + " sums to " + format_rational(v.actual) +
             ", power is " + format_rational(v.expected);
    case StrategyViolation::Kind::OffSupport:
      return "entry (" + std::to_string(v.row) + "," + std::to_string(v.col) + ") = " +
             format_rational(v.actual) + " targets a country with no relation to " +
             std::to_string(v.row);
    case StrategyViolation::Kind::Negative:
      return "entry (" + std::to_string(v.row) + "," + std::to_string(v.col) + ") = " +
             format_rational(v.actual) + " is negative";
  }
  return {};
}

// Full violation list: row sums must equal each country's power, entries must
// be nonnegative, and power may only be aimed at oneself, friends, or
// adversaries. Empty result means the matrix is a valid strategy.
inline std::vector<StrategyViolation> validate_strategy(const Environment& env, const Matrix& u) {
  const int n = env.country_count();
  if (u.size() != n)
    throw std::invalid_argument("matrix size " + std::to_string(u.size()) +
                                " does not match country count " + std::to_string(n));
  std::vector<StrategyViolation> out;
  for (int i = 1; i <= n; ++i) {
    Rational sum = 0;
    for (int j = 1; j <= n; ++j) {
      const Rational& cell = u(i, j);
      sum += cell;
      if (cell < 0)
        out.push_back({StrategyViolation::Kind::Negative, i, j, cell, 0});
      if (cell != 0 && !env.is_relevant_to(i, j))
        out.push_back({StrategyViolation::Kind::OffSupport, i, j, cell, 0});
    }
    if (sum != env.power(i))
      out.push_back({StrategyViolation::Kind::RowSum, i, 0, sum, env.power(i)});
  }
  return out;
}

class StrategyError : public std::runtime_error {
 public:
  StrategyError(std::string message, std::vector<StrategyViolation> violations)
      : std::runtime_error(std::move(message)), violations_(std::move(violations)) {}
  const std::vector<StrategyViolation>& violations() const { return violations_; }

 private:
  std::vector<StrategyViolation> violations_;
};

// A matrix that has passed validation against its environment.
class StrategyMatrix {
 public:
  static StrategyMatrix validated(const Environment& env, Matrix u) {
    auto violations = validate_strategy(env, u);
    if (!violations.empty()) {
      std::string msg = "invalid strategy:";
      for (const auto& v : violations) msg += "\n  " + to_string(v);
      throw StrategyError(std::move(msg), std::move(violations));
    }
    StrategyMatrix s;
    s.m_ = std::move(u);
    return s;
  }

  int size() const { return m_.size(); }
  const Rational& operator()(int i, int j) const { return m_(i, j); }
  const Matrix& cells() const { return m_; }

  bool operator==(const StrategyMatrix& o) const { return m_ == o.m_; }

 private:
  StrategyMatrix() = default;
  Matrix m_;
};

enum class CountryState { Safe, Precarious, Unsafe };

inline const char* to_string(CountryState s) {
  switch (s) {
    case CountryState::Safe: return "safe";
    case CountryState::Precarious: return "precarious";
    case CountryState::Unsafe: return "unsafe";
  }
  return "";
}

using StateVector = std::vector<CountryState>;

// Support: own reserve, plus aid received from friends, plus own power aimed
// at adversaries. The raw-Matrix overloads assume a matrix already validated
// (or constructed) for this environment; they are the workhorse for search
// code that rewrites rows in place.
inline Rational support(const Environment& env, const Matrix& u, int i) {
  Rational s = u(i, i);
  for (int j : env.friends_of(i)) s += u(j, i);
  for (int j : env.adversaries_of(i)) s += u(i, j);
  return s;
}

// Threat: total adversary power aimed at i.
inline Rational threat(const Environment& env, const Matrix& u, int i) {
  Rational t = 0;
  for (int j : env.adversaries_of(i)) t += u(j, i);
  return t;
}

inline CountryState country_state(const Environment& env, const Matrix& u, int i) {
  const Rational s = support(env, u, i);
  const Rational t = threat(env, u, i);
  if (s > t) return CountryState::Safe;
  if (s == t) return CountryState::Precarious;
  return CountryState::Unsafe;
}

inline StateVector state_vector(const Environment& env, const Matrix& u) {
  StateVector x;
  x.reserve(env.country_count());
  for (int i = 1; i <= env.country_count(); ++i) x.push_back(country_state(env, u, i));
  return x;
}

inline Rational support(const Environment& env, const StrategyMatrix& u, int i) {
  return support(env, u.cells(), i);
}
inline Rational threat(const Environment& env, const StrategyMatrix& u, int i) {
  return threat(env, u.cells(), i);
}
inline CountryState country_state(const Environment& env, const StrategyMatrix& u, int i) {
  return country_state(env, u.cells(), i);
}
inline StateVector state_vector(const Environment& env, const StrategyMatrix& u) {
  return state_vector(env, u.cells());
}

inline std::string to_string(const StateVector& x) {
  std::string out = "[";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k) out += ", ";
    out += to_string(x[k]);
  }
  return out + "]";
}

}  // namespace pag

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pag/environment.hpp"
#include "pag/rational.hpp"
#include "pag/strategy.hpp"

namespace pag {

using Json = nlohmann::ordered_json;

// Malformed document. line/column are 1-based when the failure is a JSON
// syntax error; both are 0 for structural problems past the syntax stage.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline Json parse_json(const std::string& text, const char* kind) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, byte);
    throw ParseError(std::string(kind) + ": syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column),
                     line, column);
  }
}

// Rationals travel as strings to stay exact; bare JSON integers are harmless
// and accepted, floats are rejected outright.
inline Rational rational_field(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_float())
    throw ParseError(where + ": floating-point literals are not exact; quote the value");
  if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ParseError(where + ": expected a rational written as a string");
}

inline int int_field(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.is_number_float())
    throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

inline void require_version(const Json& doc, const char* kind) {
  if (!doc.is_object()) throw ParseError(std::string(kind) + ": top level must be an object");
  if (!doc.contains("version") || doc["version"] != 1)
    throw ParseError(std::string(kind) + ": missing or unsupported version (expected 1)");
}

inline std::vector<LabelPair> pair_list(const Json& doc, const char* key) {
  std::vector<LabelPair> out;
  if (!doc.contains(key)) return out;
  const Json& list = doc[key];
  if (!list.is_array()) throw ParseError("scenario: " + std::string(key) + " must be an array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "scenario: " + std::string(key) + "[" + std::to_string(k) + "]";
    const Json& entry = list[k];
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError(where + ": expected a pair [id, id]");
    out.emplace_back(int_field(entry[0], where), int_field(entry[1], where));
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

// Scenario document: version tag, countries (id/name/power), friend pairs,
// adversary pairs. Country ids must cover 1..n exactly; relation semantics
// are checked by Environment::build.
inline Environment parse_scenario_text(const std::string& text) {
  const Json doc = detail::parse_json(text, "scenario");
  detail::require_version(doc, "scenario");

  if (!doc.contains("countries") || !doc["countries"].is_array() || doc["countries"].empty())
    throw ParseError("scenario: countries must be a non-empty array");
  const Json& list = doc["countries"];
  const int n = static_cast<int>(list.size());

  std::vector<std::string> names(n);
  std::vector<Rational> powers(n);
  std::vector<bool> seen(n + 1, false);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "scenario: countries[" + std::to_string(k) + "]";
    const Json& entry = list[k];
    if (!entry.is_object()) throw ParseError(where + ": expected an object");
    if (!entry.contains("id") || !entry.contains("name") || !entry.contains("power"))
      throw ParseError(where + ": needs id, name, and power");
    const int id = detail::int_field(entry["id"], where + ".id");
    if (id < 1 || id > n)
      throw ParseError(where + ".id: " + std::to_string(id) + " outside 1.." + std::to_string(n));
    if (seen[id]) throw ParseError(where + ".id: duplicate id " + std::to_string(id));
    seen[id] = true;
    if (!entry["name"].is_string()) throw ParseError(where + ".name: expected a string");
    names[id - 1] = entry["name"].get<std::string>();
    powers[id - 1] = detail::rational_field(entry["power"], where + ".power");
  }

  return Environment::build(std::move(names), std::move(powers),
                            detail::pair_list(doc, "friends"),
                            detail::pair_list(doc, "adversaries"));
}

inline Environment parse_scenario_file(const std::string& path) {
  return parse_scenario_text(detail::read_text_file(path));
}

inline std::string serialize_scenario(const Environment& env) {
  Json doc;
  doc["version"] = 1;
  Json countries = Json::array();
  for (int i = 1; i <= env.country_count(); ++i) {
    Json c;
    c["id"] = i;
    c["name"] = env.name(i);
    c["power"] = format_rational(env.power(i));
    countries.push_back(std::move(c));
  }
  doc["countries"] = std::move(countries);
  Json friends = Json::array();
  for (const LabelPair& p : env.friend_pairs()) friends.push_back(Json::array({p.lo, p.hi}));
  doc["friends"] = std::move(friends);
  Json adversaries = Json::array();
  for (const LabelPair& p : env.adversary_pairs())
    adversaries.push_back(Json::array({p.lo, p.hi}));
  doc["adversaries"] = std::move(adversaries);
  return doc.dump(2) + "\n";
}

// Strategy document: version tag, n, and n rows of n rational entries. Only
// shape is checked here; validation against a scenario happens when the two
// are paired.
inline Matrix parse_strategy_text(const std::string& text) {
  const Json doc = detail::parse_json(text, "strategy");
  detail::require_version(doc, "strategy");

  if (!doc.contains("n")) throw ParseError("strategy: missing n");
  const int n = detail::int_field(doc["n"], "strategy: n");
  if (n < 1) throw ParseError("strategy: n must be positive");
  if (!doc.contains("rows") || !doc["rows"].is_array() ||
      static_cast<int>(doc["rows"].size()) != n)
    throw ParseError("strategy: rows must be an array of " + std::to_string(n) + " rows");

  std::vector<std::vector<Rational>> rows(n);
  for (int i = 1; i <= n; ++i) {
    const std::string where = "strategy: rows[" + std::to_string(i - 1) + "]";
    const Json& row = doc["rows"][i - 1];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(where + ": expected " + std::to_string(n) + " entries");
    rows[i - 1].reserve(n);
    for (int j = 1; j <= n; ++j)
      rows[i - 1].push_back(
          detail::rational_field(row[j - 1], where + "[" + std::to_string(j - 1) + "]"));
  }
  return Matrix::from_rows(rows);
}

inline Matrix parse_strategy_file(const std::string& path) {
  return parse_strategy_text(detail::read_text_file(path));
}

inline std::string serialize_strategy(const Matrix& u) {
  Json doc;
  doc["version"] = 1;
  doc["n"] = u.size();
  Json rows = Json::array();
  for (int i = 1; i <= u.size(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= u.size(); ++j) row.push_back(format_rational(u(i, j)));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

inline std::string serialize_strategy(const StrategyMatrix& u) {
  return serialize_strategy(u.cells());
}

inline void write_strategy_file(const std::string& path, const Matrix& u) {
  detail::write_text_file(path, serialize_strategy(u));
}

inline void write_strategy_file(const std::string& path, const StrategyMatrix& u) {
  write_strategy_file(path, u.cells());
}

inline void write_scenario_file(const std::string& path, const Environment& env) {
  detail::write_text_file(path, serialize_scenario(env));
}

}  // namespace pag

#pragma once

#include <string>

#include "pag/environment.hpp"
#include "pag/strategy.hpp"

namespace pag {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

// Graph description of an environment: one vertex per country in label order,
// two directed edges per relation (|E| = 2m) in relation-label order, friend
// edges green and adversary edges red. With a strategy, vertices carry the
// reserves and edges the aimed amounts. Output is byte-identical for
// identical inputs.
inline std::string export_dot(const Environment& env, const StrategyMatrix* u = nullptr) {
  std::string out = "digraph environment {\n";
  for (int i = 1; i <= env.country_count(); ++i) {
    std::string label = detail::dot_escape(env.name(i));
    if (u) label += "\\nreserve " + format_rational((*u)(i, i));
    out += "  c" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& [pair, kind] : env.relations()) {
    const char* color = kind == RelationKind::Adversary ? "red" : "green";
    auto edge = [&](int from, int to) {
      out += "  c" + std::to_string(from) + " -> c" + std::to_string(to);
      out += " [color=" + std::string(color);
      if (u) out += ", label=\"" + format_rational((*u)(from, to)) + "\"";
      out += "];\n";
    };
    edge(pair.lo, pair.hi);
    edge(pair.hi, pair.lo);
  }
  out += "}\n";
  return out;
}

inline std::string export_dot(const Environment& env, const StrategyMatrix& u) {
  return export_dot(env, &u);
}

}  // namespace pag

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pag/dot_export.hpp"
#include "pag/equilibrium.hpp"
#include "pag/oracle.hpp"
#include "pag/scenario_io.hpp"
#include "pag/strategy.hpp"

namespace pag {

// Bad command-line arguments (as opposed to bad input files).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::vector<int> parse_csv_labels(const std::string& text, const char* option) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos)
      throw UsageError(std::string(option) + ": empty entry in '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string(option) + ": '" + item + "' is not an integer");
    }
    if (used != item.size())
      throw UsageError(std::string(option) + ": '" + item + "' is not an integer");
    out.push_back(value);
  }
  return out;
}

inline void print_table(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c];
      if (c + 1 < row.size())
        out << std::string(width[c] - row[c].size(), ' ');
    }
    out << "\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
}

inline Json states_json(const StateVector& x) {
  Json arr = Json::array();
  for (CountryState s : x) arr.push_back(to_string(s));
  return arr;
}

inline Json witnesses_json(const std::vector<NashWitness>& witnesses) {
  Json arr = Json::array();
  for (const NashWitness& w : witnesses) {
    Json entry;
    entry["deviator"] = w.deviator;
    entry["coordinate"] = w.coordinate;
    entry["margin"] = format_rational(w.margin);
    arr.push_back(std::move(entry));
  }
  return arr;
}

inline Json ordering_json(const Ordering& o) {
  Json arr = Json::array();
  for (int label : o.sequence) arr.push_back(label);
  return arr;
}

inline Json rationals_json(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const Rational& v : values) arr.push_back(format_rational(v));
  return arr;
}

inline void print_witnesses(std::ostream& out, const Environment& env,
                            const std::vector<NashWitness>& witnesses) {
  for (const NashWitness& w : witnesses)
    out << "  " << env.name(w.deviator) << " (" << w.deviator
        << ") can re-aim and flip coordinate " << w.coordinate << " (margin "
        << format_rational(w.margin) << ")\n";
}

inline StrategyMatrix load_strategy(const Environment& env, const std::string& path) {
  return StrategyMatrix::validated(env, parse_strategy_file(path));
}

inline int cmd_validate(std::ostream& out, bool json, const std::string& scenario_path) {
  const Environment env = parse_scenario_file(scenario_path);
  if (json) {
    Json doc;
    doc["valid"] = true;
    doc["countries"] = env.country_count();
    doc["relations"] = env.relation_count();
    doc["adversary_pairs"] = env.adversary_pair_count();
    out << doc.dump(2) << "\n";
  } else {
    out << "valid scenario: " << env.country_count() << " countries, " << env.relation_count()
        << " relations (" << env.adversary_pair_count() << " adversary pairs)\n";
  }
  return 0;
}

inline int cmd_states(std::ostream& out, bool json, const std::string& scenario_path,
                      const std::string& strategy_path) {
  const Environment env = parse_scenario_file(scenario_path);
  const StrategyMatrix u = load_strategy(env, strategy_path);
  if (json) {
    Json doc;
    Json arr = Json::array();
    for (int i = 1; i <= env.country_count(); ++i) {
      Json entry;
      entry["country"] = i;
      entry["name"] = env.name(i);
      entry["support"] = format_rational(support(env, u, i));
      entry["threat"] = format_rational(threat(env, u, i));
      entry["state"] = to_string(country_state(env, u, i));
      arr.push_back(std::move(entry));
    }
    doc["states"] = std::move(arr);
    out << doc.dump(2) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (int i = 1; i <= env.country_count(); ++i)
      rows.push_back({std::to_string(i), env.name(i), format_rational(support(env, u, i)),
                      format_rational(threat(env, u, i)),
                      to_string(country_state(env, u, i))});
    print_table(out, {"country", "name", "support", "threat", "state"}, rows);
  }
  return 0;
}

inline int cmd_check_nash(std::ostream& out, bool json, const std::string& scenario_path,
                          const std::string& strategy_path) {
  const Environment env = parse_scenario_file(scenario_path);
  const StrategyMatrix u = load_strategy(env, strategy_path);
  const NashReport report = is_nash(env, u);
  if (json) {
    Json doc;
    doc["equilibrium"] = report.is_equilibrium;
    doc["witnesses"] = witnesses_json(report.witnesses);
    out << doc.dump(2) << "\n";
  } else if (report.is_equilibrium) {
    out << "equilibrium: no unilateral deviation flips a bad coordinate\n";
  } else {
    out << "not an equilibrium: " << report.witnesses.size() << " refuting deviation(s)\n";
    print_witnesses(out, env, report.witnesses);
  }
  return report.is_equilibrium ? 0 : 1;
}

inline std::string numbered_path(const std::string& base, std::size_t k) {
  const std::string suffix = ".str";
  std::string stem = base;
  if (stem.size() > suffix.size() && stem.ends_with(suffix))
    stem.resize(stem.size() - suffix.size());
  return stem + "-" + std::to_string(k) + suffix;
}

inline int cmd_construct_single(std::ostream& out, bool json, const Environment& env,
                                const Ordering& ordering, const std::string& out_path) {
  const ConstructionResult built = construct_equilibrium(env, ordering);
  write_strategy_file(out_path, built.matrix);
  const DecompositionCheck dec = check_decomposition(env, built.decomposition);
  const StateVector states = state_vector(env, built.matrix);
  const NashReport nash = is_nash(env, built.matrix);

  if (json) {
    Json doc;
    doc["file"] = out_path;
    doc["ordering"] = ordering_json(ordering);
    doc["commitments"] = rationals_json(built.decomposition.d);
    doc["reserves"] = rationals_json(built.decomposition.c);
    doc["decomposition_ok"] = dec.ok;
    doc["states"] = states_json(states);
    doc["equilibrium"] = nash.is_equilibrium;
    doc["witnesses"] = witnesses_json(nash.witnesses);
    out << doc.dump(2) << "\n";
  } else {
    out << "wrote " << out_path << "\n";
    out << "ordering " << to_string(ordering) << "\n";
    out << "commitments (by adversary pair label):";
    for (const Rational& v : built.decomposition.d) out << " " << format_rational(v);
    out << "\nreserves:";
    for (const Rational& v : built.decomposition.c) out << " " << format_rational(v);
    out << "\ndecomposition: " << (dec.ok ? "ok" : "violated") << "\n";
    out << "states " << to_string(states) << "\n";
    if (nash.is_equilibrium) {
      out << "equilibrium: yes\n";
    } else {
      out << "equilibrium: no, " << nash.witnesses.size() << " refuting deviation(s)\n";
      print_witnesses(out, env, nash.witnesses);
    }
  }
  return nash.is_equilibrium ? 0 : 1;
}

inline int cmd_construct_all(std::ostream& out, bool json, const Environment& env,
                             std::uint64_t max_orderings, const std::string& out_path) {
  const EnumerationResult result = enumerate_equilibria(env, max_orderings);
  std::vector<std::string> files;
  files.reserve(result.entries.size());
  for (std::size_t k = 0; k < result.entries.size(); ++k) {
    files.push_back(numbered_path(out_path, k + 1));
    write_strategy_file(files.back(), result.entries[k].matrix);
  }

  if (json) {
    Json doc;
    doc["orderings_tried"] = result.orderings_tried;
    doc["total_orderings"] = result.total_orderings.str();
    doc["truncated"] = result.truncated;
    doc["distinct"] = result.entries.size();
    doc["all_verified"] = result.all_verified;
    Json arr = Json::array();
    for (std::size_t k = 0; k < result.entries.size(); ++k) {
      const EnumeratedConstruction& e = result.entries[k];
      Json entry;
      entry["file"] = files[k];
      entry["ordering"] = ordering_json(e.ordering);
      entry["states"] = states_json(e.states);
      entry["equilibrium"] = e.nash.is_equilibrium;
      entry["witnesses"] = witnesses_json(e.nash.witnesses);
      arr.push_back(std::move(entry));
    }
    doc["entries"] = std::move(arr);
    out << doc.dump(2) << "\n";
  } else {
    out << "tried " << result.orderings_tried << " of " << result.total_orderings.str()
        << " orderings" << (result.truncated ? " (truncated)" : "") << ", "
        << result.entries.size() << " distinct matrices\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < result.entries.size(); ++k) {
      const EnumeratedConstruction& e = result.entries[k];
      rows.push_back({files[k], to_string(e.ordering), to_string(e.states),
                      e.nash.is_equilibrium ? "yes" : "no"});
    }
    print_table(out, {"file", "ordering", "states", "equilibrium"}, rows);
    for (const EnumeratedConstruction& e : result.entries)
      if (!e.nash.is_equilibrium) {
        out << "refuting deviations for " << to_string(e.ordering) << ":\n";
        print_witnesses(out, env, e.nash.witnesses);
      }
  }
  return result.all_verified ? 0 : 1;
}

inline int cmd_classes(std::ostream& out, bool json, const std::string& scenario_path,
                       std::uint64_t max_orderings) {
  const Environment env = parse_scenario_file(scenario_path);
  const EnumerationResult result = enumerate_equilibria(env, max_orderings);
  const std::vector<StrategyMatrix> verified = result.verified_matrices();
  const std::vector<EquivalenceClass> classes = group_by_state_vector(env, verified);
  const std::size_t unverified = result.entries.size() - verified.size();
  BigInt bound = 1;
  for (int i = 0; i < env.country_count(); ++i) bound *= 3;

  if (json) {
    Json doc;
    doc["orderings_tried"] = result.orderings_tried;
    doc["total_orderings"] = result.total_orderings.str();
    doc["truncated"] = result.truncated;
    doc["distinct"] = result.entries.size();
    doc["verified"] = verified.size();
    doc["unverified"] = unverified;
    doc["state_space_bound"] = bound.str();
    Json arr = Json::array();
    for (const EquivalenceClass& c : classes) {
      Json entry;
      entry["states"] = states_json(c.states);
      entry["members"] = c.members.size();
      arr.push_back(std::move(entry));
    }
    doc["classes"] = std::move(arr);
    out << doc.dump(2) << "\n";
  } else {
    out << "tried " << result.orderings_tried << " of " << result.total_orderings.str()
        << " orderings" << (result.truncated ? " (truncated)" : "") << ", "
        << result.entries.size() << " distinct matrices, " << verified.size() << " verified\n";
    if (unverified > 0)
      out << "excluded " << unverified << " constructed matrices that failed verification\n";
    out << classes.size() << " outcome class(es), state space bound " << bound.str() << "\n";
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < classes.size(); ++k)
      rows.push_back({std::to_string(k + 1), to_string(classes[k].states),
                      std::to_string(classes[k].members.size())});
    print_table(out, {"class", "states", "members"}, rows);
  }
  return 0;
}

inline int cmd_oracle(std::ostream& out, bool json, const std::string& scenario_path,
                      const std::string& strategy_path, const std::string& resolution,
                      std::uint64_t cap) {
  const Environment env = parse_scenario_file(scenario_path);
  const StrategyMatrix u = load_strategy(env, strategy_path);
  GridSpec grid;
  try {
    grid.resolution = parse_rational(resolution);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--resolution: ") + e.what());
  }
  if (grid.resolution <= 0) throw UsageError("--resolution must be positive");
  grid.cap = cap;

  const OracleReport report = cross_validate(env, u, grid);
  if (json) {
    Json doc;
    doc["verdict"] = to_string(report.verdict);
    doc["closed_form_equilibrium"] = report.closed_form.is_equilibrium;
    doc["closed_form_witnesses"] = witnesses_json(report.closed_form.witnesses);
    if (report.search) {
      Json w;
      w["deviator"] = report.search->deviator;
      w["row"] = rationals_json(report.search->row);
      w["flipped"] = report.search->flipped;
      doc["search"] = std::move(w);
    } else {
      doc["search"] = nullptr;
    }
    Json skips = Json::array();
    for (const GridSkip& s : report.skipped) {
      Json entry;
      entry["country"] = s.country;
      entry["reason"] = s.reason == GridSkip::Reason::Resolution ? "resolution" : "cap";
      skips.push_back(std::move(entry));
    }
    doc["skipped"] = std::move(skips);
    out << doc.dump(2) << "\n";
  } else {
    out << "verdict: " << to_string(report.verdict) << "\n";
    out << "closed form: "
        << (report.closed_form.is_equilibrium ? "equilibrium" : "refuted") << "\n";
    if (!report.closed_form.witnesses.empty())
      print_witnesses(out, env, report.closed_form.witnesses);
    if (report.search) {
      out << "grid search: country " << report.search->deviator
          << " flips coordinate " << report.search->flipped << " with row [";
      for (std::size_t k = 0; k < report.search->row.size(); ++k) {
        if (k) out << ", ";
        out << format_rational(report.search->row[k]);
      }
      out << "]\n";
    } else {
      out << "grid search: no refuting rewrite found\n";
    }
    for (const GridSkip& s : report.skipped)
      out << "skipped country " << s.country << " ("
          << (s.reason == GridSkip::Reason::Resolution ? "power off the grid" : "row cap")
          << ")\n";
  }
  const bool bad = report.verdict == OracleVerdict::AgreeRefuted ||
                   report.verdict == OracleVerdict::HardDisagreement;
  return bad ? 1 : 0;
}

inline int cmd_export_dot(std::ostream& out, const std::string& scenario_path,
                          const std::string& strategy_path) {
  const Environment env = parse_scenario_file(scenario_path);
  if (strategy_path.empty()) {
    out << export_dot(env);
  } else {
    const StrategyMatrix u = load_strategy(env, strategy_path);
    out << export_dot(env, u);
  }
  return 0;
}

}  // namespace cli_detail

// Command-line front end over streams; args exclude the program name.
// Exit codes: 0 success / equilibrium, 1 refuted or invalid input, 2 usage
// error. Diagnostics go to err.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact-arithmetic power allocation games"};
  app.name("pag");
  app.require_subcommand(1);

  std::string format = "table";
  app.add_option("--format", format, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}));

  std::string scenario, strategy, ordering_text, out_path = "out.str", resolution;
  std::uint64_t max_orderings = 0;
  std::uint64_t cap = GridSpec{}.cap;
  bool all_orderings = false;
  int code = 0;
  const auto json = [&] { return format == "json"; };

  CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", scenario, "scenario file")->required();
  validate->callback([&] { code = cli_detail::cmd_validate(out, json(), scenario); });

  CLI::App* states = app.add_subcommand("states", "support, threat, and state per country");
  states->add_option("scenario", scenario, "scenario file")->required();
  states->add_option("strategy", strategy, "strategy file")->required();
  states->callback([&] { code = cli_detail::cmd_states(out, json(), scenario, strategy); });

  CLI::App* check = app.add_subcommand("check-nash", "unilateral deviation analysis");
  check->add_option("scenario", scenario, "scenario file")->required();
  check->add_option("strategy", strategy, "strategy file")->required();
  check->callback([&] { code = cli_detail::cmd_check_nash(out, json(), scenario, strategy); });

  CLI::App* construct = app.add_subcommand("construct", "greedy equilibrium construction");
  construct->add_option("scenario", scenario, "scenario file")->required();
  CLI::Option* opt_ordering = construct->add_option(
      "--ordering", ordering_text, "comma-separated adversary pair labels (1-based)");
  CLI::Option* opt_all =
      construct->add_flag("--all-orderings", all_orderings, "enumerate orderings");
  CLI::Option* opt_max =
      construct->add_option("--max", max_orderings, "ordering budget for --all-orderings");
  construct->add_option("-o,--out", out_path, "output strategy file (default out.str)");
  opt_all->needs(opt_max);
  opt_ordering->excludes(opt_all);
  construct->callback([&] {
    const Environment env = parse_scenario_file(scenario);
    if (all_orderings) {
      code = cli_detail::cmd_construct_all(out, json(), env, max_orderings, out_path);
      return;
    }
    Ordering ordering = Ordering::identity(env.adversary_pair_count());
    if (opt_ordering->count() > 0) {
      ordering.sequence = cli_detail::parse_csv_labels(ordering_text, "--ordering");
      try {
        ordering.validate(env.adversary_pair_count());
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--ordering: ") + e.what());
      }
    }
    code = cli_detail::cmd_construct_single(out, json(), env, ordering, out_path);
  });

  CLI::App* classes = app.add_subcommand("classes", "equivalence classes of outcomes");
  classes->add_option("scenario", scenario, "scenario file")->required();
  classes->add_option("--max", max_orderings, "ordering budget")->required();
  classes->callback([&] { code = cli_detail::cmd_classes(out, json(), scenario, max_orderings); });

  CLI::App* oracle = app.add_subcommand("oracle", "grid-search cross-validation");
  oracle->add_option("scenario", scenario, "scenario file")->required();
  oracle->add_option("strategy", strategy, "strategy file")->required();
  oracle->add_option("--resolution", resolution, "grid step (rational)")->required();
  oracle->add_option("--cap", cap, "per-country row cap");
  oracle->callback(
      [&] { code = cli_detail::cmd_oracle(out, json(), scenario, strategy, resolution, cap); });

  CLI::App* dot = app.add_subcommand("export-dot", "graph description of the environment");
  dot->add_option("scenario", scenario, "scenario file")->required();
  dot->add_option("strategy", strategy, "strategy file (optional)");
  dot->callback([&] { code = cli_detail::cmd_export_dot(out, scenario, strategy); });

  for (CLI::App* sub : {validate, states, check, construct, classes, oracle, dot})
    sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace pag

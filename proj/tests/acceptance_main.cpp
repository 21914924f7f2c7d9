// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails. Run from the repository root so the scenarios/
// fixtures resolve (ctest sets the working directory accordingly).

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "generators.hpp"
#include "pag/pag.hpp"

using namespace pag;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::string pair_set(const std::vector<LabelPair>& pairs) {
  std::string s = "{";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k) s += ",";
    s += to_string(pairs[k]);
  }
  return s + "}";
}

std::string env_summary(const Environment& env) {
  std::ostringstream s;
  s << "n=" << env.country_count() << " p=[";
  for (int i = 1; i <= env.country_count(); ++i) {
    if (i > 1) s << ",";
    s << format_rational(env.power(i));
  }
  s << "] adversaries" << pair_set(env.adversary_pairs());
  if (!env.friend_pairs().empty()) s << " friends" << pair_set(env.friend_pairs());
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string round1(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(1);
  s << x;
  return s.str();
}

// Criteria 1 and 2 share one ensemble: 500 seeded random environments, greedy
// construction with the default ordering, then the equilibrium check (1) and
// the exact decomposition conditions plus power conservation (2).
std::pair<Criterion, Criterion> construction_criteria() {
  const auto start = std::chrono::steady_clock::now();
  gen::Rng rng(20260821);
  const int total = 500;
  int verified = 0;
  int decomposition_ok = 0;
  std::string first_refuted, first_bad_decomposition;

  for (int t = 0; t < total; ++t) {
    const Environment env = gen::random_environment(rng);
    const ConstructionResult built = construct_equilibrium(env);

    const DecompositionCheck check = check_decomposition(env, built.decomposition);
    Rational committed = 0, reserved = 0, total_power = 0;
    for (const Rational& d : built.decomposition.d) committed += d;
    for (const Rational& c : built.decomposition.c) reserved += c;
    for (const Rational& p : env.powers()) total_power += p;
    const bool conserved = total_power == 2 * committed + reserved;
    if (check.ok && conserved) {
      ++decomposition_ok;
    } else if (first_bad_decomposition.empty()) {
      first_bad_decomposition = env_summary(env);
    }

    const NashReport nash = is_nash(env, built.matrix);
    if (nash.is_equilibrium) {
      ++verified;
    } else if (first_refuted.empty()) {
      const NashWitness& w = nash.witnesses.front();
      std::ostringstream s;
      s << env_summary(env) << ": country " << w.deviator << " flips coordinate " << w.coordinate
        << " (margin " << format_rational(w.margin) << ")";
      first_refuted = std::move(s).str();
    }
  }

  const std::string elapsed = round1(seconds_since(start)) + "s";
  std::ostringstream d1;
  d1 << verified << "/" << total << " constructions verify in " << elapsed;
  if (!first_refuted.empty()) d1 << "; first counterexample: " << first_refuted;
  std::ostringstream d2;
  d2 << decomposition_ok << "/" << total << " decompositions exact, feasible, and conserving";
  if (!first_bad_decomposition.empty()) d2 << "; first failure: " << first_bad_decomposition;

  return {Criterion{1, "greedy construction verifies as equilibrium on random environments",
                    verified == total, std::move(d1).str()},
          Criterion{2, "constructed decompositions are exact and feasible",
                    decomposition_ok == total, std::move(d2).str()}};
}

// Equal-power adversary triangle: every ordering must construct a verified
// equilibrium; the distinct matrices number 3 and split into 3 outcome
// classes.
Criterion criterion_3() {
  const Environment tri =
      Environment::build({"A", "B", "C"}, {Rational(1), Rational(1), Rational(1)}, {},
                         {LabelPair(1, 2), LabelPair(1, 3), LabelPair(2, 3)});
  const EnumerationResult result = enumerate_equilibria(tri, 6);

  const bool tried_all = result.orderings_tried == 6 && !result.truncated;
  const bool distinct_3 = result.entries.size() == 3;
  std::vector<StrategyMatrix> matrices;
  int verified = 0;
  for (const EnumeratedConstruction& e : result.entries) {
    matrices.push_back(e.matrix);
    if (e.nash.is_equilibrium) ++verified;
  }
  const bool classes_3 = group_by_state_vector(tri, matrices).size() == 3;
  const bool all_verified = result.all_verified;

  std::ostringstream d;
  d << result.orderings_tried << " orderings, " << result.entries.size()
    << " distinct matrices (expected 3), "
    << group_by_state_vector(tri, matrices).size() << " outcome classes (expected 3), "
    << verified << "/" << result.entries.size() << " verify as equilibria (expected all)";
  if (!all_verified && !result.entries.empty()) {
    const auto& witnesses = result.entries.front().nash.witnesses;
    if (!witnesses.empty())
      d << "; e.g. country " << witnesses.front().deviator << " flips coordinate "
        << witnesses.front().coordinate << " (margin "
        << format_rational(witnesses.front().margin) << ")";
  }
  return {3, "equal-power adversary triangle: orderings, distinct matrices, outcome classes",
          tried_all && distinct_3 && classes_3 && all_verified, std::move(d).str()};
}

struct OracleStats {
  long envs = 0;
  long matrices = 0;
  long refuted = 0;
  long equilibria = 0;
  long disagreements = 0;
  std::string first_disagreement;
};

void oracle_block(const Environment& env, gen::Rng& rng, int per_env, OracleStats& stats) {
  const GridSpec grid{Rational(1), 1'000'000};
  for (int t = 0; t < per_env; ++t) {
    const StrategyMatrix u = gen::random_strategy(rng, env);
    const OracleReport report = cross_validate(env, u, grid);
    switch (report.verdict) {
      case OracleVerdict::AgreeEquilibrium:
        ++stats.equilibria;
        break;
      case OracleVerdict::AgreeRefuted:
        ++stats.refuted;
        break;
      default:
        ++stats.disagreements;
        if (stats.first_disagreement.empty())
          stats.first_disagreement = std::string(to_string(report.verdict)) + " on " +
                                     env_summary(env);
        break;
    }
  }
  ++stats.envs;
  stats.matrices += per_env;
}

// Closed-form equilibrium test against the exhaustive unit-resolution grid
// search: every relation structure on up to 3 countries with every integer
// power vector in {0..3}^n, plus a seeded sample of 4-country environments
// (q <= 4), 200 seeded valid matrices each. Integer powers sit on the unit
// grid and the optimal deviations are all-in rows, so the two tests must
// agree everywhere.
Criterion criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  OracleStats stats;
  gen::Rng rng(20260804);
  const int per_env = 200;

  for (int n = 1; n <= 3; ++n) {
    std::vector<LabelPair> all_pairs;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) all_pairs.push_back(LabelPair(i, j));

    long structures = 1;
    for (std::size_t k = 0; k < all_pairs.size(); ++k) structures *= 3;
    long power_vectors = 1;
    for (int i = 0; i < n; ++i) power_vectors *= 4;

    for (long s = 0; s < structures; ++s) {
      std::vector<LabelPair> friends, adversaries;
      long code = s;
      for (const LabelPair& p : all_pairs) {
        switch (code % 3) {
          case 1: friends.push_back(p); break;
          case 2: adversaries.push_back(p); break;
          default: break;
        }
        code /= 3;
      }
      for (long pv = 0; pv < power_vectors; ++pv) {
        std::vector<std::string> names;
        std::vector<Rational> powers;
        long rest = pv;
        for (int i = 1; i <= n; ++i) {
          names.push_back("C" + std::to_string(i));
          powers.push_back(Rational(rest % 4));
          rest /= 4;
        }
        const Environment env = Environment::build(std::move(names), std::move(powers), friends,
                                                   adversaries);
        oracle_block(env, rng, per_env, stats);
      }
    }
  }

  for (int sample = 0; sample < 60; ++sample) {
    std::vector<LabelPair> friends, adversaries;
    do {
      friends.clear();
      adversaries.clear();
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) switch (rng.uniform(0, 2)) {
            case 1: friends.push_back(LabelPair(i, j)); break;
            case 2: adversaries.push_back(LabelPair(i, j)); break;
            default: break;
          }
    } while (adversaries.size() > 4);
    std::vector<std::string> names;
    std::vector<Rational> powers;
    for (int i = 1; i <= 4; ++i) {
      names.push_back("C" + std::to_string(i));
      powers.push_back(Rational(rng.uniform(0, 3)));
    }
    const Environment env = Environment::build(std::move(names), std::move(powers),
                                               std::move(friends), std::move(adversaries));
    oracle_block(env, rng, per_env, stats);
  }

  std::ostringstream d;
  d << stats.envs << " environments x " << per_env << " matrices (" << stats.equilibria
    << " agree-equilibrium, " << stats.refuted << " agree-refuted, " << stats.disagreements
    << " disagreements) in " << round1(seconds_since(start)) << "s";
  if (!stats.first_disagreement.empty()) d << "; first: " << stats.first_disagreement;
  return {4, "closed-form equilibrium test agrees with exhaustive grid search",
          stats.disagreements == 0, std::move(d).str()};
}

// Hand-traced goldens on the two-country duel and the friend chain.
Criterion criterion_5() {
  std::vector<std::string> problems;

  const Environment duel =
      Environment::build({"A", "B"}, {Rational(2), Rational(1)}, {}, {LabelPair(1, 2)});
  const ConstructionResult built = construct_equilibrium(duel);
  if (built.matrix.cells() != Matrix::from_rows({{1, 1}, {1, 0}}))
    problems.push_back("duel constructed matrix is not [[1,1],[1,0]]");
  if (state_vector(duel, built.matrix) !=
      StateVector{CountryState::Safe, CountryState::Precarious})
    problems.push_back("duel constructed states are not [safe, precarious]");
  if (!is_nash(duel, built.matrix).is_equilibrium)
    problems.push_back("duel constructed matrix does not verify");

  const StrategyMatrix reserve =
      StrategyMatrix::validated(duel, Matrix::from_rows({{2, 0}, {0, 1}}));
  const NashReport nash = is_nash(duel, reserve);
  const bool witness_ok = !nash.is_equilibrium && nash.witnesses.size() == 1 &&
                          nash.witnesses[0].deviator == 1 && nash.witnesses[0].coordinate == 2 &&
                          nash.witnesses[0].margin == 1;
  if (!witness_ok)
    problems.push_back("duel all-reserve is not refuted exactly by (1, 2, margin 1)");

  const Environment chain =
      Environment::build({"A", "B", "C"}, {Rational(1), Rational(1), Rational(3)},
                         {LabelPair(1, 2)}, {LabelPair(2, 3)});
  const ConstructionResult chain_built = construct_equilibrium(chain);
  if (state_vector(chain, chain_built.matrix) !=
      StateVector{CountryState::Safe, CountryState::Precarious, CountryState::Safe})
    problems.push_back("chain constructed states are not [safe, precarious, safe]");
  if (!is_nash(chain, chain_built.matrix).is_equilibrium)
    problems.push_back("chain constructed matrix does not verify");

  std::string detail = "duel golden matrix, refutation witness, and chain states all exact";
  if (!problems.empty()) {
    detail.clear();
    for (std::size_t k = 0; k < problems.size(); ++k) {
      if (k) detail += "; ";
      detail += problems[k];
    }
  }
  return {5, "hand-traced goldens: two-country duel and friend chain", problems.empty(),
          std::move(detail)};
}

// Preference laws on 1000 seeded samples: reflexivity and transitivity of the
// weak preference, and invariance of states and goodness under uniform
// positive scaling of powers and allocations.
Criterion criterion_6() {
  gen::Rng rng(20260806);
  const int total = 1000;
  int reflexive_failures = 0, transitivity_failures = 0, scaling_failures = 0;
  int transitivity_checked = 0;
  const std::vector<Rational> lambdas = {Rational(3), Rational(1, 2), Rational(5, 7)};

  for (int t = 0; t < total; ++t) {
    const Environment env = gen::random_environment(rng);
    const StrategyMatrix u = gen::random_strategy(rng, env);
    const StrategyMatrix v = gen::random_strategy(rng, env);
    const StrategyMatrix w = gen::random_strategy(rng, env);
    const int i = static_cast<int>(rng.uniform(1, env.country_count()));

    if (!weakly_preferred(env, i, u, u)) ++reflexive_failures;
    if (weakly_preferred(env, i, u, v) && weakly_preferred(env, i, v, w)) {
      ++transitivity_checked;
      if (!weakly_preferred(env, i, u, w)) ++transitivity_failures;
    }

    const Rational& lambda = lambdas[static_cast<std::size_t>(t % 3)];
    std::vector<std::string> names;
    std::vector<Rational> powers;
    for (int c = 1; c <= env.country_count(); ++c) {
      names.push_back(env.name(c));
      powers.push_back(env.power(c) * lambda);
    }
    const Environment scaled_env = Environment::build(std::move(names), std::move(powers),
                                                      env.friend_pairs(), env.adversary_pairs());
    Matrix scaled_cells = u.cells();
    for (int r = 1; r <= env.country_count(); ++r)
      for (int c = 1; c <= env.country_count(); ++c) scaled_cells(r, c) *= lambda;
    const StrategyMatrix scaled = StrategyMatrix::validated(scaled_env, std::move(scaled_cells));
    if (state_vector(env, u) != state_vector(scaled_env, scaled) ||
        !(goodness_vector(env, u, i) == goodness_vector(scaled_env, scaled, i)))
      ++scaling_failures;
  }

  std::ostringstream d;
  d << total << " samples; reflexivity failures " << reflexive_failures
    << ", transitivity failures " << transitivity_failures << " (" << transitivity_checked
    << " applicable), scaling failures " << scaling_failures;
  return {6, "preference laws: reflexivity, transitivity, scale invariance",
          reflexive_failures == 0 && transitivity_failures == 0 && scaling_failures == 0,
          std::move(d).str()};
}

// Exhaustive half-step sweep of the equal-power duel: 9 grid matrices, and
// the reachable state vectors stay within the 3^n space and are reported
// deterministically.
Criterion criterion_7() {
  const Environment duel =
      Environment::build({"A", "B"}, {Rational(1), Rational(1)}, {}, {LabelPair(1, 2)});
  const GridSpec grid{Rational(1, 2), 1000};

  auto sweep = [&] {
    const auto rows1 = enumerate_grid_deviations(duel, 1, grid);
    const auto rows2 = enumerate_grid_deviations(duel, 2, grid);
    std::size_t matrices = 0;
    std::vector<StateVector> first_seen;
    std::set<StateVector> seen;
    for (const auto& r1 : rows1)
      for (const auto& r2 : rows2) {
        Matrix u(2);
        u.set_row(1, r1);
        u.set_row(2, r2);
        ++matrices;
        const StateVector x = state_vector(duel, u);
        if (seen.insert(x).second) first_seen.push_back(x);
      }
    std::string report;
    for (const StateVector& x : first_seen) report += to_string(x) + " ";
    return std::make_pair(matrices, std::make_pair(seen.size(), report));
  };

  const auto first = sweep();
  const auto second = sweep();
  const bool nine_matrices = first.first == 9;
  const bool within_bound = first.second.first <= 9;
  const bool deterministic = first.second == second.second && first.first == second.first;

  std::ostringstream d;
  d << first.first << " grid matrices, " << first.second.first
    << " reachable state vectors of 9 possible; reachable set "
    << (deterministic ? "identical across two sweeps" : "differs between sweeps") << ": "
    << first.second.second;
  return {7, "exhaustive sweep stays within the 3^n state space",
          nine_matrices && within_bound && deterministic, std::move(d).str()};
}

bool environments_equal(const Environment& a, const Environment& b) {
  if (a.country_count() != b.country_count()) return false;
  for (int i = 1; i <= a.country_count(); ++i)
    if (a.name(i) != b.name(i) || a.power(i) != b.power(i)) return false;
  return a.friend_pairs() == b.friend_pairs() && a.adversary_pairs() == b.adversary_pairs();
}

// Parse/serialize identity and byte-identical graph export over every shipped
// scenario fixture.
Criterion criterion_8() {
  std::vector<std::string> fixtures;
  if (std::filesystem::exists("scenarios"))
    for (const auto& entry : std::filesystem::directory_iterator("scenarios"))
      if (entry.path().extension() == ".scn") fixtures.push_back(entry.path().string());
  std::sort(fixtures.begin(), fixtures.end());
  if (fixtures.empty())
    return {8, "file round-trips and byte-identical graph export", false,
            "no scenarios/*.scn fixtures found; run from the repository root"};

  std::vector<std::string> problems;
  for (const std::string& path : fixtures) {
    try {
      const Environment env = parse_scenario_file(path);
      const std::string text = serialize_scenario(env);
      const Environment back = parse_scenario_text(text);
      if (!environments_equal(env, back)) problems.push_back(path + ": scenario round-trip");
      if (serialize_scenario(back) != text) problems.push_back(path + ": serialization unstable");

      const ConstructionResult built = construct_equilibrium(env);
      const std::string strategy_text = serialize_strategy(built.matrix);
      if (parse_strategy_text(strategy_text) != built.matrix.cells())
        problems.push_back(path + ": strategy round-trip");

      if (export_dot(env) != export_dot(env)) problems.push_back(path + ": graph export unstable");
      const std::string dot = export_dot(env, built.matrix);
      if (dot != export_dot(env, built.matrix))
        problems.push_back(path + ": weighted graph export unstable");

      std::size_t edges = 0;
      for (std::size_t pos = dot.find(" -> "); pos != std::string::npos;
           pos = dot.find(" -> ", pos + 1))
        ++edges;
      if (edges != static_cast<std::size_t>(2 * env.relation_count()))
        problems.push_back(path + ": edge count is not 2m");
    } catch (const std::exception& e) {
      problems.push_back(path + ": " + e.what());
    }
  }

  std::string detail = std::to_string(fixtures.size()) + " fixtures round-trip with stable bytes";
  if (!problems.empty()) {
    detail.clear();
    for (std::size_t k = 0; k < problems.size(); ++k) {
      if (k) detail += "; ";
      detail += problems[k];
    }
  }
  return {8, "file round-trips and byte-identical graph export", problems.empty(),
          std::move(detail)};
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  auto [c1, c2] = construction_criteria();
  results.push_back(std::move(c1));
  results.push_back(std::move(c2));
  results.push_back(criterion_3());
  results.push_back(criterion_4());
  results.push_back(criterion_5());
  results.push_back(criterion_6());
  results.push_back(criterion_7());
  results.push_back(criterion_8());

  bool all_pass = true;
  for (const Criterion& c : results) {
    all_pass = all_pass && c.pass;
    std::cout << "[criterion " << c.id << "] " << (c.pass ? "PASS" : "FAIL") << " - " << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << (all_pass ? "all criteria pass" : "some criteria fail") << "\n";
  return all_pass ? 0 : 1;
}

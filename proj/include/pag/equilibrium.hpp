#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pag/environment.hpp"
#include "pag/preference.hpp"
#include "pag/strategy.hpp"

namespace pag {

// Processing order for adversary pairs: sequence[k] is the label (in the
// environment's sorted pair labeling) of the pair handled at step k+1.
struct Ordering {
  std::vector<int> sequence;

  static Ordering identity(int q) {
    Ordering o;
    o.sequence.resize(q);
    std::iota(o.sequence.begin(), o.sequence.end(), 1);
    return o;
  }

  void validate(int q) const {
    if (static_cast<int>(sequence.size()) != q)
      throw std::invalid_argument("ordering has " + std::to_string(sequence.size()) +
                                  " entries, expected " + std::to_string(q));
    std::vector<bool> seen(q + 1, false);
    for (int label : sequence) {
      if (label < 1 || label > q)
        throw std::invalid_argument("ordering entry out of range: " + std::to_string(label));
      if (seen[label])
        throw std::invalid_argument("ordering repeats label " + std::to_string(label));
      seen[label] = true;
    }
  }

  bool operator==(const Ordering&) const = default;
};

inline std::string to_string(const Ordering& o) {
  std::string s = "[";
  for (std::size_t k = 0; k < o.sequence.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(o.sequence[k]);
  }
  return s + "]";
}

// Country-by-pair incidence of the adversary relation: cell (i,k) is 1 when
// country i is an endpoint of adversary pair k. Each column has exactly two
// ones.
struct IncidenceMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cells;

  int operator()(int i, int k) const {
    if (i < 1 || i > rows || k < 1 || k > cols)
      throw std::out_of_range("incidence index out of range");
    return cells[static_cast<std::size_t>(i - 1) * cols + (k - 1)];
  }
};

inline IncidenceMatrix incidence_matrix(const Environment& env) {
  IncidenceMatrix b;
  b.rows = env.country_count();
  b.cols = env.adversary_pair_count();
  b.cells.assign(static_cast<std::size_t>(b.rows) * b.cols, 0);
  for (int k = 1; k <= b.cols; ++k) {
    const LabelPair& p = env.adversary_pair(k);
    b.cells[static_cast<std::size_t>(p.lo - 1) * b.cols + (k - 1)] = 1;
    b.cells[static_cast<std::size_t>(p.hi - 1) * b.cols + (k - 1)] = 1;
  }
  return b;
}

// Split of the power vector into pairwise adversary commitments d (indexed by
// the environment's adversary pair labels, not by processing order) and
// reserves c.
struct Decomposition {
  std::vector<Rational> d;
  std::vector<Rational> c;
};

struct DecompositionViolation {
  enum class Kind { PowerMismatch, NegativeCommitment, NegativeReserve, PairBothReserved };
  Kind kind;
  int index;       // country for PowerMismatch/NegativeReserve, pair label otherwise
  Rational actual;
  Rational expected;
};

inline std::string to_string(const DecompositionViolation& v) {
  switch (v.kind) {
    case DecompositionViolation::Kind::PowerMismatch:
      return "country " + std::to_string(v.index) + ": commitments plus reserve give " +
             format_rational(v.actual) + ", power is " + format_rational(v.expected);
    case DecompositionViolation::Kind::NegativeCommitment:
      return "pair " + std::to_string(v.index) + ": negative commitment " +
             format_rational(v.actual);
    case DecompositionViolation::Kind::NegativeReserve:
      return "country " + std::to_string(v.index) + ": negative reserve " +
             format_rational(v.actual);
    case DecompositionViolation::Kind::PairBothReserved:
      return "adversary pair " + std::to_string(v.index) +
             ": both endpoints hold positive reserve";
  }
  return {};
}

struct DecompositionCheck {
  bool ok = false;
  std::vector<DecompositionViolation> violations;
};

// Exact test of the three decomposition conditions: p = B d + c, both parts
// nonnegative, and no adversary pair with positive reserve at both ends.
inline DecompositionCheck check_decomposition(const Environment& env, const Decomposition& dec) {
  const int n = env.country_count();
  const int q = env.adversary_pair_count();
  if (static_cast<int>(dec.d.size()) != q)
    throw std::invalid_argument("commitment vector has " + std::to_string(dec.d.size()) +
                                " entries, expected " + std::to_string(q));
  if (static_cast<int>(dec.c.size()) != n)
    throw std::invalid_argument("reserve vector has " + std::to_string(dec.c.size()) +
                                " entries, expected " + std::to_string(n));

  DecompositionCheck out;
  for (int k = 1; k <= q; ++k)
    if (dec.d[k - 1] < 0)
      out.violations.push_back({DecompositionViolation::Kind::NegativeCommitment, k,
                                dec.d[k - 1], 0});
  for (int i = 1; i <= n; ++i)
    if (dec.c[i - 1] < 0)
      out.violations.push_back({DecompositionViolation::Kind::NegativeReserve, i,
                                dec.c[i - 1], 0});
  for (int i = 1; i <= n; ++i) {
    Rational lhs = dec.c[i - 1];
    for (int j : env.adversaries_of(i)) lhs += dec.d[env.adversary_label(LabelPair(i, j)) - 1];
    if (lhs != env.power(i))
      out.violations.push_back({DecompositionViolation::Kind::PowerMismatch, i, lhs,
                                env.power(i)});
  }
  for (int k = 1; k <= q; ++k) {
    const LabelPair& p = env.adversary_pair(k);
    if (dec.c[p.lo - 1] > 0 && dec.c[p.hi - 1] > 0)
      out.violations.push_back({DecompositionViolation::Kind::PairBothReserved, k, 0, 0});
  }
  out.ok = out.violations.empty();
  return out;
}

struct ConstructionStep {
  int pair_label;          // label in the environment's pair ordering
  LabelPair pair;
  Rational amount;         // min of the two residuals when processed
  std::vector<Rational> residual;  // residual vector after this step
};

struct ConstructionResult {
  StrategyMatrix matrix;
  Decomposition decomposition;
  std::vector<ConstructionStep> steps;
};

// Greedy pairwise matching: walk the adversary pairs in the given order,
// commit the smaller of the two remaining residuals to each pair, and leave
// the final residuals as reserves. Friends receive nothing.
inline ConstructionResult construct_equilibrium(const Environment& env, const Ordering& ordering) {
  const int n = env.country_count();
  const int q = env.adversary_pair_count();
  ordering.validate(q);

  std::vector<Rational> z = env.powers();
  Matrix u(n);
  Decomposition dec;
  dec.d.assign(q, 0);
  std::vector<ConstructionStep> steps;
  steps.reserve(q);

  for (int label : ordering.sequence) {
    const LabelPair& pair = env.adversary_pair(label);
    const Rational amount = std::min(z[pair.lo - 1], z[pair.hi - 1]);
    z[pair.lo - 1] -= amount;
    z[pair.hi - 1] -= amount;
    u(pair.lo, pair.hi) = amount;
    u(pair.hi, pair.lo) = amount;
    dec.d[label - 1] = amount;
    steps.push_back({label, pair, amount, z});
  }
  for (int i = 1; i <= n; ++i) u(i, i) = z[i - 1];
  dec.c = std::move(z);

  for (int i = 1; i <= n; ++i) {
    Rational total = dec.c[i - 1];
    for (int j : env.adversaries_of(i)) total += dec.d[env.adversary_label(LabelPair(i, j)) - 1];
    if (total != env.power(i))
      throw std::logic_error("construction lost power for country " + std::to_string(i));
  }

  return {StrategyMatrix::validated(env, std::move(u)), std::move(dec), std::move(steps)};
}

inline ConstructionResult construct_equilibrium(const Environment& env) {
  return construct_equilibrium(env, Ordering::identity(env.adversary_pair_count()));
}

struct FlipResult {
  bool possible = false;
  Rational margin;  // best achievable lead of the flipped side; >= 0 means possible
};

// Whether country i, rewriting only its own row, can turn coordinate j good.
// The optimum is always an all-in row, so a closed-form margin decides it:
// precarious is enough to flip either direction.
inline FlipResult can_flip_coordinate(const Environment& env, const StrategyMatrix& u, int i,
                                      int j) {
  if (!env.is_relevant_to(i, j))
    throw std::invalid_argument("country " + std::to_string(j) + " is not relevant to " +
                                std::to_string(i));
  if (state_good_for(env, i, j, country_state(env, u, j)))
    throw std::invalid_argument("coordinate " + std::to_string(j) + " is already good for " +
                                std::to_string(i));

  Rational margin;
  if (j == i) {
    Rational best_support = env.power(i);
    for (int k : env.friends_of(i)) best_support += u(k, i);
    margin = best_support - threat(env, u, i);
  } else if (env.are_friends(i, j)) {
    margin = support(env, u, j) - u(i, j) + env.power(i) - threat(env, u, j);
  } else {
    margin = threat(env, u, j) - u(i, j) + env.power(i) - support(env, u, j);
  }
  return {margin >= 0, margin};
}

struct NashWitness {
  int deviator;
  int coordinate;
  Rational margin;
};

struct NashReport {
  bool is_equilibrium = false;
  std::vector<NashWitness> witnesses;  // ascending (deviator, coordinate)
};

// Equilibrium test by unilateral deviation analysis: U stands iff no country
// can flip any of its bad coordinates. Witnesses list every flippable bad
// coordinate with its margin.
inline NashReport is_nash(const Environment& env, const StrategyMatrix& u) {
  NashReport report;
  for (int i = 1; i <= env.country_count(); ++i) {
    const GoodnessVector g = goodness_vector(env, u, i);
    for (int j : g.labels()) {
      if (g.good(j)) continue;
      const FlipResult flip = can_flip_coordinate(env, u, i, j);
      if (flip.possible) report.witnesses.push_back({i, j, flip.margin});
    }
  }
  report.is_equilibrium = report.witnesses.empty();
  return report;
}

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

struct EnumeratedConstruction {
  Ordering ordering;  // first ordering (lexicographically) producing this matrix
  StrategyMatrix matrix;
  Decomposition decomposition;
  StateVector states;
  NashReport nash;
};

struct EnumerationResult {
  std::vector<EnumeratedConstruction> entries;  // in order of first appearance
  std::uint64_t orderings_tried = 0;
  BigInt total_orderings;  // q!
  bool truncated = false;
  bool all_verified = false;

  std::vector<StrategyMatrix> verified_matrices() const {
    std::vector<StrategyMatrix> out;
    for (const auto& e : entries)
      if (e.nash.is_equilibrium) out.push_back(e.matrix);
    return out;
  }
};

// Runs the greedy construction over orderings in lexicographic permutation
// order (up to max_orderings of the q! total), deduplicates identical result
// matrices, and verifies each distinct one.
inline EnumerationResult enumerate_equilibria(const Environment& env,
                                              std::uint64_t max_orderings) {
  const int q = env.adversary_pair_count();
  EnumerationResult result;
  result.total_orderings = factorial(q);

  Ordering ordering = Ordering::identity(q);
  std::set<Matrix> seen;
  bool more = true;
  while (more && result.orderings_tried < max_orderings) {
    ConstructionResult built = construct_equilibrium(env, ordering);
    ++result.orderings_tried;
    if (seen.insert(built.matrix.cells()).second) {
      StateVector states = state_vector(env, built.matrix);
      NashReport nash = is_nash(env, built.matrix);
      result.entries.push_back({ordering, std::move(built.matrix), std::move(built.decomposition),
                                std::move(states), std::move(nash)});
    }
    more = std::next_permutation(ordering.sequence.begin(), ordering.sequence.end());
  }
  result.truncated = BigInt(result.orderings_tried) < result.total_orderings;
  result.all_verified = true;
  for (const auto& e : result.entries)
    if (!e.nash.is_equilibrium) result.all_verified = false;
  return result;
}

struct EquivalenceClass {
  StateVector states;
  std::vector<std::size_t> members;  // indices into the input list
};

// Groups matrices by their state vector without requiring anything of them.
inline std::vector<EquivalenceClass> group_by_state_vector(
    const Environment& env, const std::vector<StrategyMatrix>& matrices) {
  std::map<StateVector, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < matrices.size(); ++k)
    buckets[state_vector(env, matrices[k])].push_back(k);
  std::vector<EquivalenceClass> out;
  out.reserve(buckets.size());
  for (auto& [states, members] : buckets) out.push_back({states, std::move(members)});
  return out;
}

// Partition of a set of equilibria by outcome: two equilibria are equivalent
// when they induce the same state vector. Inputs that fail the equilibrium
// test are rejected.
inline std::vector<EquivalenceClass> equivalence_classes(
    const Environment& env, const std::vector<StrategyMatrix>& matrices) {
  for (std::size_t k = 0; k < matrices.size(); ++k)
    if (!is_nash(env, matrices[k]).is_equilibrium)
      throw std::invalid_argument("matrix at index " + std::to_string(k) +
                                  " is not an equilibrium");
  return group_by_state_vector(env, matrices);
}

}  // namespace pag

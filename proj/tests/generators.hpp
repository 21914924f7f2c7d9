#pragma once

// Seeded generators for property tests. Randomness goes through mt19937_64
// with hand-rolled range mapping so the same seed produces the same cases on
// every platform and standard library.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pag/environment.hpp"
#include "pag/equilibrium.hpp"
#include "pag/strategy.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi]; ranges here are tiny, so modulo bias is
  // irrelevant.
  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k)
      std::swap(v[k - 1], v[static_cast<std::size_t>(uniform(0, static_cast<long long>(k) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

struct EnvironmentLimits {
  int max_countries = 8;
  int max_adversary_pairs = 12;
  int max_friend_pairs = 12;
  int max_numerator = 16;
  int max_denominator = 16;
};

inline pag::Environment random_environment(Rng& rng, const EnvironmentLimits& limits = {}) {
  const int n = static_cast<int>(rng.uniform(1, limits.max_countries));

  std::vector<pag::LabelPair> all_pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) all_pairs.push_back(pag::LabelPair(i, j));
  rng.shuffle(all_pairs);

  const int available = static_cast<int>(all_pairs.size());
  const int q = static_cast<int>(rng.uniform(0, std::min(limits.max_adversary_pairs, available)));
  const int m_extra =
      static_cast<int>(rng.uniform(0, std::min(limits.max_friend_pairs, available - q)));

  std::vector<pag::LabelPair> adversaries(all_pairs.begin(), all_pairs.begin() + q);
  std::vector<pag::LabelPair> friends(all_pairs.begin() + q, all_pairs.begin() + q + m_extra);

  std::vector<std::string> names;
  std::vector<pag::Rational> powers;
  for (int i = 1; i <= n; ++i) {
    names.push_back("C" + std::to_string(i));
    powers.push_back(pag::Rational(rng.uniform(0, limits.max_numerator),
                                   rng.uniform(1, limits.max_denominator)));
  }
  return pag::Environment::build(std::move(names), std::move(powers), std::move(friends),
                                 std::move(adversaries));
}

// Valid strategy: each row splits the country's power across its support by
// random integer weights (all-reserve when every weight lands on zero).
inline pag::StrategyMatrix random_strategy(Rng& rng, const pag::Environment& env) {
  const int n = env.country_count();
  pag::Matrix u(n);
  for (int i = 1; i <= n; ++i) {
    const auto& support = env.relevant_to(i);
    std::vector<long long> weights(support.size());
    long long total = 0;
    for (auto& w : weights) {
      w = rng.uniform(0, 4);
      total += w;
    }
    if (total == 0) {
      u(i, i) = env.power(i);
      continue;
    }
    pag::Rational assigned = 0;
    for (std::size_t k = 0; k + 1 < support.size(); ++k) {
      u(i, support[k]) = env.power(i) * weights[k] / total;
      assigned += u(i, support[k]);
    }
    u(i, support.back()) = env.power(i) - assigned;
  }
  return pag::StrategyMatrix::validated(env, std::move(u));
}

inline pag::Ordering random_ordering(Rng& rng, int q) {
  pag::Ordering o = pag::Ordering::identity(q);
  rng.shuffle(o.sequence);
  return o;
}

// Strategy with every entry on the grid: distributes the power of each
// country step by step across its support.
inline pag::StrategyMatrix random_grid_strategy(Rng& rng, const pag::Environment& env,
                                                const pag::Rational& resolution) {
  const int n = env.country_count();
  pag::Matrix u(n);
  for (int i = 1; i <= n; ++i) {
    const auto& support = env.relevant_to(i);
    const pag::Rational steps_exact = env.power(i) / resolution;
    long long steps = static_cast<long long>(numerator(steps_exact));
    for (long long s = 0; s < steps; ++s) {
      const int target = support[static_cast<std::size_t>(
          rng.uniform(0, static_cast<long long>(support.size()) - 1))];
      u(i, target) += resolution;
    }
  }
  return pag::StrategyMatrix::validated(env, std::move(u));
}

// Random decomposition satisfying all three feasibility conditions: start
// from partial greedy commitments along a random order, then push shared
// reserve of each adversary pair into its commitment until at most one
// endpoint keeps any.
inline pag::Decomposition random_feasible_decomposition(Rng& rng, const pag::Environment& env) {
  const int q = env.adversary_pair_count();
  std::vector<pag::Rational> z = env.powers();
  pag::Decomposition dec;
  dec.d.assign(q, 0);

  pag::Ordering order = random_ordering(rng, q);
  for (int label : order.sequence) {
    const pag::LabelPair& pair = env.adversary_pair(label);
    const pag::Rational cap = std::min(z[pair.lo - 1], z[pair.hi - 1]);
    const pag::Rational amount = cap * rng.uniform(0, 4) / 4;
    z[pair.lo - 1] -= amount;
    z[pair.hi - 1] -= amount;
    dec.d[label - 1] = amount;
  }
  for (int label = 1; label <= q; ++label) {
    const pag::LabelPair& pair = env.adversary_pair(label);
    const pag::Rational shared = std::min(z[pair.lo - 1], z[pair.hi - 1]);
    if (shared > 0) {
      dec.d[label - 1] += shared;
      z[pair.lo - 1] -= shared;
      z[pair.hi - 1] -= shared;
    }
  }
  dec.c = std::move(z);
  return dec;
}

// The four expansion rules: adversary pairs get their commitment on both
// sides, reserves sit on the diagonal, friends and unrelated countries get
// nothing.
inline pag::StrategyMatrix expand_decomposition(const pag::Environment& env,
                                                const pag::Decomposition& dec) {
  const int n = env.country_count();
  pag::Matrix u(n);
  for (int k = 1; k <= env.adversary_pair_count(); ++k) {
    const pag::LabelPair& pair = env.adversary_pair(k);
    u(pair.lo, pair.hi) = dec.d[k - 1];
    u(pair.hi, pair.lo) = dec.d[k - 1];
  }
  for (int i = 1; i <= n; ++i) u(i, i) = dec.c[i - 1];
  return pag::StrategyMatrix::validated(env, std::move(u));
}

}  // namespace gen

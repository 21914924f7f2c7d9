#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pag/environment.hpp"
#include "pag/strategy.hpp"

namespace pag {

// One country's binary reading of an outcome. For itself and its friends a
// coordinate is good when the state is safe or precarious; for an adversary,
// when the state is unsafe or precarious. Countries unrelated to the
// evaluator carry no entry.
class GoodnessVector {
 public:
  GoodnessVector(int evaluator, std::vector<int> labels, std::vector<bool> good)
      : evaluator_(evaluator), labels_(std::move(labels)), good_(std::move(good)) {}

  int evaluator() const { return evaluator_; }
  const std::vector<int>& labels() const { return labels_; }

  bool good(int j) const {
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (labels_[k] == j) return good_[k];
    throw std::out_of_range("country " + std::to_string(j) + " is not relevant to " +
                            std::to_string(evaluator_));
  }

  bool all_good() const {
    for (bool g : good_)
      if (!g) return false;
    return true;
  }

  // True when every coordinate good here is also good in `other`.
  bool dominated_by(const GoodnessVector& other) const {
    for (std::size_t k = 0; k < labels_.size(); ++k)
      if (good_[k] && !other.good_[k]) return false;
    return true;
  }

  bool operator==(const GoodnessVector&) const = default;

 private:
  int evaluator_;
  std::vector<int> labels_;  // sorted; {i} with i's friends and adversaries
  std::vector<bool> good_;
};

inline bool state_good_for(const Environment& env, int evaluator, int j, CountryState x) {
  if (j == evaluator || env.are_friends(evaluator, j))
    return x != CountryState::Unsafe;
  if (env.are_adversaries(evaluator, j))
    return x != CountryState::Safe;
  throw std::invalid_argument("country " + std::to_string(j) + " is not relevant to " +
                              std::to_string(evaluator));
}

inline GoodnessVector goodness_vector(const Environment& env, const Matrix& u, int i) {
  const auto& labels = env.relevant_to(i);
  std::vector<bool> good;
  good.reserve(labels.size());
  for (int j : labels) good.push_back(state_good_for(env, i, j, country_state(env, u, j)));
  return GoodnessVector(i, labels, std::move(good));
}

inline GoodnessVector goodness_vector(const Environment& env, const StrategyMatrix& u, int i) {
  return goodness_vector(env, u.cells(), i);
}

// Weak preference from i's perspective: V is at least as good as U when every
// coordinate good under U stays good under V.
inline bool weakly_preferred(const Environment& env, int i, const StrategyMatrix& u,
                             const StrategyMatrix& v) {
  return goodness_vector(env, u, i).dominated_by(goodness_vector(env, v, i));
}

// Survival jump: V pulls i itself out of the unsafe state.
inline bool strictly_self_preferred(const Environment& env, int i, const StrategyMatrix& u,
                                    const StrategyMatrix& v) {
  return country_state(env, u, i) == CountryState::Unsafe &&
         country_state(env, v, i) != CountryState::Unsafe;
}

enum class Axiom1Result {
  VWeaklyPreferred,
  UWeaklyPreferred,
  Indifferent,
  Incomparable,
  NotAdmissible,
};

inline const char* to_string(Axiom1Result r) {
  switch (r) {
    case Axiom1Result::VWeaklyPreferred: return "V-weakly-preferred";
    case Axiom1Result::UWeaklyPreferred: return "U-weakly-preferred";
    case Axiom1Result::Indifferent: return "indifferent";
    case Axiom1Result::Incomparable: return "incomparable";
    case Axiom1Result::NotAdmissible: return "not-admissible";
  }
  return "";
}

// Single-coordinate comparison: admissible only when the two outcomes differ
// in at most one country's state. With one differing coordinate the verdict
// follows that coordinate's goodness for i (ties are indifference), so the
// incomparable verdict cannot arise here; it is part of the result type for
// callers that fold this into wider comparisons.
inline Axiom1Result axiom1_compare(const Environment& env, int i, const StrategyMatrix& u,
                                   const StrategyMatrix& v) {
  const StateVector xu = state_vector(env, u);
  const StateVector xv = state_vector(env, v);
  int differing = 0;
  for (int j = 1; j <= env.country_count(); ++j)
    if (xu[j - 1] != xv[j - 1]) {
      if (++differing > 1) return Axiom1Result::NotAdmissible;
    }
  if (differing == 0) return Axiom1Result::Indifferent;

  int j = 0;
  for (int k = 1; k <= env.country_count(); ++k)
    if (xu[k - 1] != xv[k - 1]) j = k;
  if (!env.is_relevant_to(i, j)) return Axiom1Result::Indifferent;

  const bool good_u = state_good_for(env, i, j, xu[j - 1]);
  const bool good_v = state_good_for(env, i, j, xv[j - 1]);
  if (good_u == good_v) return Axiom1Result::Indifferent;
  return good_v ? Axiom1Result::VWeaklyPreferred : Axiom1Result::UWeaklyPreferred;
}

}  // namespace pag

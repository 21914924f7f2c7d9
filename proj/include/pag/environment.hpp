#pragma once

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pag/rational.hpp"

namespace pag {

// Unordered pair of distinct country labels, stored with lo < hi so that
// sorting pairs gives the deterministic labeling order.
struct LabelPair {
  int lo = 0;
  int hi = 0;

  LabelPair() = default;
  LabelPair(int a, int b) : lo(std::min(a, b)), hi(std::max(a, b)) {}

  bool contains(int x) const { return x == lo || x == hi; }
  int other(int x) const { return x == lo ? hi : lo; }

  auto operator<=>(const LabelPair&) const = default;
};

inline std::string to_string(const LabelPair& p) {
  return "{" + std::to_string(p.lo) + "," + std::to_string(p.hi) + "}";
}

enum class RelationKind { Friend, Adversary };

// An international environment: countries 1..n with power vector p,
// a symmetric friend relation and a symmetric adversary relation.
// Relation pairs carry two labelings, both induced by sorted pair order:
// one over all relations (1..m) and one over adversary pairs alone (1..q).
class Environment {
 public:
  static Environment build(std::vector<std::string> names,
                           std::vector<Rational> powers,
                           std::vector<LabelPair> friend_pairs,
                           std::vector<LabelPair> adversary_pairs) {
    Environment env;
    if (names.empty()) throw std::invalid_argument("no countries");
    if (powers.size() != names.size())
      throw std::invalid_argument("power vector length " + std::to_string(powers.size()) +
                                  " does not match country count " + std::to_string(names.size()));
    const int n = static_cast<int>(names.size());
    for (int i = 1; i <= n; ++i)
      if (powers[i - 1] < 0)
        throw std::invalid_argument("negative power for country " + std::to_string(i));

    auto check_pairs = [n](std::vector<LabelPair>& pairs, const char* set_name) {
      for (const LabelPair& p : pairs) {
        if (p.lo == p.hi)
          throw std::invalid_argument("self-pair " + to_string(p) + " in " + set_name);
        if (p.lo < 1 || p.hi > n)
          throw std::invalid_argument("label out of range in " + std::string(set_name) + " pair " +
                                      to_string(p) + " (n=" + std::to_string(n) + ")");
      }
      std::sort(pairs.begin(), pairs.end());
      auto dup = std::adjacent_find(pairs.begin(), pairs.end());
      if (dup != pairs.end())
        throw std::invalid_argument("duplicate pair " + to_string(*dup) + " in " + set_name);
    };
    check_pairs(friend_pairs, "friends");
    check_pairs(adversary_pairs, "adversaries");

    std::vector<LabelPair> overlap;
    std::set_intersection(friend_pairs.begin(), friend_pairs.end(), adversary_pairs.begin(),
                          adversary_pairs.end(), std::back_inserter(overlap));
    if (!overlap.empty())
      throw std::invalid_argument("pair in both relation sets: " + to_string(overlap.front()));

    env.names_ = std::move(names);
    env.powers_ = std::move(powers);
    env.friends_ = std::move(friend_pairs);
    env.adversaries_ = std::move(adversary_pairs);

    env.relations_.reserve(env.friends_.size() + env.adversaries_.size());
    for (const LabelPair& p : env.friends_) env.relations_.push_back({p, RelationKind::Friend});
    for (const LabelPair& p : env.adversaries_)
      env.relations_.push_back({p, RelationKind::Adversary});
    std::sort(env.relations_.begin(), env.relations_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    env.friends_of_.assign(n + 1, {});
    env.adversaries_of_.assign(n + 1, {});
    for (const LabelPair& p : env.friends_) {
      env.friends_of_[p.lo].push_back(p.hi);
      env.friends_of_[p.hi].push_back(p.lo);
    }
    for (const LabelPair& p : env.adversaries_) {
      env.adversaries_of_[p.lo].push_back(p.hi);
      env.adversaries_of_[p.hi].push_back(p.lo);
    }
    for (int i = 1; i <= n; ++i) {
      std::sort(env.friends_of_[i].begin(), env.friends_of_[i].end());
      std::sort(env.adversaries_of_[i].begin(), env.adversaries_of_[i].end());
      std::vector<int> rel{i};
      rel.insert(rel.end(), env.friends_of_[i].begin(), env.friends_of_[i].end());
      rel.insert(rel.end(), env.adversaries_of_[i].begin(), env.adversaries_of_[i].end());
      std::sort(rel.begin(), rel.end());
      env.relevant_of_.push_back(std::move(rel));
    }
    return env;
  }

  int country_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[index(i)]; }
  const Rational& power(int i) const { return powers_[index(i)]; }
  const std::vector<Rational>& powers() const { return powers_; }

  const std::vector<LabelPair>& friend_pairs() const { return friends_; }
  const std::vector<LabelPair>& adversary_pairs() const { return adversaries_; }
  const std::vector<std::pair<LabelPair, RelationKind>>& relations() const { return relations_; }

  int relation_count() const { return static_cast<int>(relations_.size()); }
  int adversary_pair_count() const { return static_cast<int>(adversaries_.size()); }

  // Friends / adversaries of one country, as sorted label lists.
  const std::vector<int>& friends_of(int i) const { return friends_of_[check(i)]; }
  const std::vector<int>& adversaries_of(int i) const { return adversaries_of_[check(i)]; }

  // {i} together with i's friends and adversaries; the coordinates country
  // i's preferences can see.
  const std::vector<int>& relevant_to(int i) const { return relevant_of_[index(i)]; }

  bool are_friends(int i, int j) const {
    return std::binary_search(friends_.begin(), friends_.end(), LabelPair(i, j));
  }
  bool are_adversaries(int i, int j) const {
    return std::binary_search(adversaries_.begin(), adversaries_.end(), LabelPair(i, j));
  }
  bool is_relevant_to(int i, int j) const {
    const auto& rel = relevant_to(i);
    return std::binary_search(rel.begin(), rel.end(), j);
  }

  // Label of an adversary pair in 1..q (sorted pair order).
  int adversary_label(const LabelPair& p) const {
    auto it = std::lower_bound(adversaries_.begin(), adversaries_.end(), p);
    if (it == adversaries_.end() || *it != p)
      throw std::out_of_range("not an adversary pair: " + to_string(p));
    return static_cast<int>(it - adversaries_.begin()) + 1;
  }
  const LabelPair& adversary_pair(int label) const {
    if (label < 1 || label > adversary_pair_count())
      throw std::out_of_range("adversary label out of range: " + std::to_string(label));
    return adversaries_[label - 1];
  }

  // Label of any relation pair in 1..m (sorted pair order over both sets).
  int relation_label(const LabelPair& p) const {
    auto it = std::lower_bound(relations_.begin(), relations_.end(), p,
                               [](const auto& r, const LabelPair& q) { return r.first < q; });
    if (it == relations_.end() || it->first != p)
      throw std::out_of_range("not a relation pair: " + to_string(p));
    return static_cast<int>(it - relations_.begin()) + 1;
  }

 private:
  int index(int i) const { return check(i) - 1; }
  int check(int i) const {
    if (i < 1 || i > country_count())
      throw std::out_of_range("country label out of range: " + std::to_string(i));
    return i;
  }

  std::vector<std::string> names_;
  std::vector<Rational> powers_;
  std::vector<LabelPair> friends_;
  std::vector<LabelPair> adversaries_;
  std::vector<std::pair<LabelPair, RelationKind>> relations_;
  std::vector<std::vector<int>> friends_of_;
  std::vector<std::vector<int>> adversaries_of_;
  std::vector<std::vector<int>> relevant_of_;
};

}  // namespace pag

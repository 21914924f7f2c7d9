#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pag/equilibrium.hpp"
#include "pag/preference.hpp"
#include "pag/strategy.hpp"

namespace pag {

// Brute-force cross-check for the closed-form equilibrium test: enumerate one
// country's alternative rows on a rational grid and look for a rewrite that
// turns one of its bad coordinates good.

struct GridSpec {
  Rational resolution;                  // grid step, > 0
  std::uint64_t cap = 1'000'000;        // refuse to enumerate more rows than this per country
};

class DivisibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridCapError : public std::runtime_error {
 public:
  GridCapError(std::string message, BigInt count) : std::runtime_error(std::move(message)),
                                                    count_(std::move(count)) {}
  const BigInt& count() const { return count_; }

 private:
  BigInt count_;
};

namespace detail {

inline BigInt grid_steps(const Environment& env, int i, const GridSpec& grid) {
  if (grid.resolution <= 0) throw std::invalid_argument("grid resolution must be positive");
  const Rational ratio = env.power(i) / grid.resolution;
  if (denominator(ratio) != 1)
    throw DivisibilityError("power of country " + std::to_string(i) + " (" +
                            format_rational(env.power(i)) + ") is not a multiple of resolution " +
                            format_rational(grid.resolution));
  return numerator(ratio);
}

inline BigInt compositions(const BigInt& t, int parts) {
  // weak compositions of t into `parts` nonnegative terms: C(t + parts - 1, parts - 1)
  BigInt count = 1;
  for (int k = 1; k <= parts - 1; ++k) {
    count *= t + k;
    count /= k;
  }
  return count;
}

}  // namespace detail

// Exact number of grid rows available to country i.
inline BigInt grid_row_count(const Environment& env, int i, const GridSpec& grid) {
  const BigInt t = detail::grid_steps(env, i, grid);
  return detail::compositions(t, static_cast<int>(env.relevant_to(i).size()));
}

namespace detail {

inline void check_cap(const Environment& env, int i, const GridSpec& grid) {
  const BigInt count = grid_row_count(env, i, grid);
  if (count > grid.cap)
    throw GridCapError("country " + std::to_string(i) + " has " + count.str() +
                           " grid rows, cap is " + std::to_string(grid.cap),
                       count);
}

// Walks country i's grid rows in ascending lexicographic order (coordinates
// in label order, off-support entries zero). Stops early when fn returns
// false. Assumes divisibility and cap were checked.
template <typename Fn>
bool for_each_grid_row(const Environment& env, int i, const GridSpec& grid, Fn&& fn) {
  const std::vector<int>& support = env.relevant_to(i);
  std::vector<Rational> row(env.country_count(), Rational(0));

  std::function<bool(std::size_t, const Rational&)> walk =
      [&](std::size_t pos, const Rational& remaining) -> bool {
    if (pos + 1 == support.size()) {
      row[support[pos] - 1] = remaining;
      const bool go_on = fn(static_cast<const std::vector<Rational>&>(row));
      row[support[pos] - 1] = 0;
      return go_on;
    }
    for (Rational v = 0; v <= remaining; v += grid.resolution) {
      row[support[pos] - 1] = v;
      if (!walk(pos + 1, remaining - v)) {
        row[support[pos] - 1] = 0;
        return false;
      }
    }
    row[support[pos] - 1] = 0;
    return true;
  };
  return walk(0, env.power(i));
}

}  // namespace detail

// Materializes country i's full grid of alternative rows.
inline std::vector<std::vector<Rational>> enumerate_grid_deviations(const Environment& env, int i,
                                                                    const GridSpec& grid) {
  detail::grid_steps(env, i, grid);
  detail::check_cap(env, i, grid);
  std::vector<std::vector<Rational>> rows;
  detail::for_each_grid_row(env, i, grid, [&](const std::vector<Rational>& row) {
    rows.push_back(row);
    return true;
  });
  return rows;
}

struct SearchWitness {
  int deviator;
  std::vector<Rational> row;  // the replacement row for the deviator
  int flipped;                // first coordinate turned good by the rewrite
};

namespace detail {

// First refuting rewrite for one country, in lexicographic row order, or
// nothing. `scratch` must equal u on entry and is restored on exit.
inline std::optional<SearchWitness> search_country(const Environment& env, Matrix& scratch,
                                                   const StrategyMatrix& u, int i,
                                                   const GridSpec& grid) {
  const GoodnessVector base = goodness_vector(env, u, i);
  if (base.all_good()) return std::nullopt;

  std::optional<SearchWitness> found;
  for_each_grid_row(env, i, grid, [&](const std::vector<Rational>& row) {
    scratch.set_row(i, row);
    for (int j : base.labels()) {
      if (base.good(j)) continue;
      if (state_good_for(env, i, j, country_state(env, scratch, j))) {
        found = SearchWitness{i, row, j};
        return false;
      }
    }
    return true;
  });
  scratch.set_row(i, u.cells().row(i));
  return found;
}

}  // namespace detail

// Exhaustive refutation over the grid: tries every country's every grid row,
// lowest country first, rows in lexicographic order, and returns the first
// rewrite that turns a bad coordinate good.
inline std::optional<SearchWitness> refute_by_search(const Environment& env,
                                                     const StrategyMatrix& u,
                                                     const GridSpec& grid) {
  const int n = env.country_count();
  if (u.size() != n)
    throw std::invalid_argument("matrix size does not match country count");
  for (int i = 1; i <= n; ++i) detail::grid_steps(env, i, grid);
  for (int i = 1; i <= n; ++i) detail::check_cap(env, i, grid);

  Matrix scratch = u.cells();
  for (int i = 1; i <= n; ++i)
    if (auto witness = detail::search_country(env, scratch, u, i, grid)) return witness;
  return std::nullopt;
}

enum class OracleVerdict { AgreeEquilibrium, AgreeRefuted, GridTooCoarse, HardDisagreement };

inline const char* to_string(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::AgreeEquilibrium: return "agree-equilibrium";
    case OracleVerdict::AgreeRefuted: return "agree-refuted";
    case OracleVerdict::GridTooCoarse: return "grid-too-coarse";
    case OracleVerdict::HardDisagreement: return "hard-disagreement";
  }
  return "";
}

struct GridSkip {
  enum class Reason { Resolution, Cap };
  int country;
  Reason reason;
};

struct OracleReport {
  OracleVerdict verdict;
  NashReport closed_form;
  std::optional<SearchWitness> search;
  std::vector<GridSkip> skipped;  // countries the search could not cover
};

// Runs the closed-form test and the grid search side by side. Countries whose
// power does not sit on the grid (or whose row count exceeds the cap) are
// skipped by the search; when every closed-form witness comes from a skipped
// country the mismatch is reported as grid coarseness rather than a
// disagreement. A search refutation the closed form misses, or a coverable
// closed-form refutation the search misses, is a hard disagreement.
inline OracleReport cross_validate(const Environment& env, const StrategyMatrix& u,
                                   const GridSpec& grid) {
  OracleReport report;
  report.closed_form = is_nash(env, u);

  Matrix scratch = u.cells();
  std::vector<bool> covered(env.country_count() + 1, false);
  for (int i = 1; i <= env.country_count(); ++i) {
    try {
      detail::grid_steps(env, i, grid);
      detail::check_cap(env, i, grid);
      covered[i] = true;
    } catch (const DivisibilityError&) {
      report.skipped.push_back({i, GridSkip::Reason::Resolution});
    } catch (const GridCapError&) {
      report.skipped.push_back({i, GridSkip::Reason::Cap});
    }
  }
  for (int i = 1; i <= env.country_count() && !report.search; ++i)
    if (covered[i]) report.search = detail::search_country(env, scratch, u, i, grid);

  if (report.search) {
    report.verdict = report.closed_form.is_equilibrium ? OracleVerdict::HardDisagreement
                                                       : OracleVerdict::AgreeRefuted;
  } else if (report.closed_form.is_equilibrium) {
    report.verdict = OracleVerdict::AgreeEquilibrium;
  } else {
    bool all_witnesses_skipped = true;
    for (const NashWitness& w : report.closed_form.witnesses)
      if (covered[w.deviator]) all_witnesses_skipped = false;
    report.verdict = all_witnesses_skipped ? OracleVerdict::GridTooCoarse
                                           : OracleVerdict::HardDisagreement;
  }
  return report;
}

}  // namespace pag

#pragma once

#include <vector>

#include "fitztk/slack.hpp"

namespace fitztk {

// Sampled extended-real function on a 1-D or 2-D rectangular grid.
// Axes are strictly increasing; values are stored row-major (the second
// axis varies fastest). A grid function is proper: at least one finite
// value and no -inf entries.
struct GridFunction {
  std::vector<std::vector<double>> axes;
  std::vector<ExtendedReal> values;

  GridFunction() = default;
  GridFunction(std::vector<double> xs, std::vector<ExtendedReal> vals);
  GridFunction(std::vector<double> xs, std::vector<double> ys, std::vector<ExtendedReal> vals);

  int dims() const { return static_cast<int>(axes.size()); }
  std::size_t node_count() const;
  ExtendedReal at(std::size_t i) const { return values[i]; }
  ExtendedReal at(std::size_t i, std::size_t j) const { return values[i * axes[1].size() + j]; }

  void validate() const;
};

// Default dual axis: slopes spanning the finite-difference slope range of f
// along the axis, expanded by 10%, with the cardinality of the primal axis.
std::vector<double> default_dual_axis(const std::vector<double>& xs,
                                      const std::vector<ExtendedReal>& vals);

/// f*(s) = max over grid nodes of <x,s> - f(x); O(N M) reference transform.
GridFunction brute_conjugate(const GridFunction& f,
                             const std::vector<std::vector<double>>& dual_axes);

// Same values as brute_conjugate in O(N + M) per axis: the argmax over the
// lower convex hull of the samples advances monotonically with the slope.
// 2-D inputs factor into two 1-D passes because <x,s> separates by axis.
GridFunction fast_conjugate(const GridFunction& f,
                            const std::vector<std::vector<double>>& dual_axes);

GridFunction brute_conjugate(const GridFunction& f);  // default dual axes
GridFunction fast_conjugate(const GridFunction& f);

// Conjugation twice over matched grids; result <= f pointwise and
// idempotent. The intermediate dual axis is enriched with the actual
// finite-difference slopes so grid-convex inputs reconstruct exactly.
GridFunction biconjugate(const GridFunction& f);

/// f(x) + f*(s) - <x,s> >= 0 at sampled grid node pairs.
std::vector<SlackReport> fenchel_young_check(const GridFunction& f, const GridFunction& fstar,
                                             int samples, Rng& rng,
                                             const TolerancePolicy& pol = {});

}  // namespace fitztk

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fitztk/extended_real.hpp"

namespace fitztk {

// Closed interval of parameters, possibly unbounded. lo <= hi; either end
// may be infinite. The degenerate single-point range is {0, 0}.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;

  static ParamRange single() { return {0.0, 0.0}; }
  static ParamRange unit() { return {0.0, 1.0}; }
  static ParamRange nonnegative() { return {0.0, std::numeric_limits<double>::infinity()}; }
  static ParamRange full_line() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  bool lo_finite() const { return std::isfinite(lo); }
  bool hi_finite() const { return std::isfinite(hi); }
  bool unbounded_above() const { return !hi_finite(); }
  bool unbounded_below() const { return !lo_finite(); }
  double clamp(double t) const { return std::min(std::max(t, lo), hi); }
  bool contains(double t, double slack) const { return t >= lo - slack && t <= hi + slack; }
};

// Extremum of a 1-D quadratic over a range. `arg` is the attaining parameter
// when the extremum is finite; empty when the value is infinite.
struct QuadExtremum {
  ExtendedReal value;
  std::optional<double> arg;
};

// Exact maximum of q2 t^2 + q1 t + q0 over the range. Coefficients with
// |q2| <= zero_tol are treated as exactly affine, and affine slopes with
// |q1| <= zero_tol as exactly constant, so round-off cannot manufacture
// spurious infinities on unbounded ranges.
QuadExtremum maximize_quadratic(double q2, double q1, double q0, ParamRange range,
                                double zero_tol);

QuadExtremum minimize_quadratic(double q2, double q1, double q0, ParamRange range,
                                double zero_tol);

// q(t, s) = q0 + gt t + gs s + htt t^2 + hss s^2 + hts t s over a box of
// ranges, each possibly unbounded.
struct BoxQuadratic {
  double q0 = 0, gt = 0, gs = 0, htt = 0, hss = 0, hts = 0;
  ParamRange rt;
  ParamRange rs;

  double eval(double t, double s) const {
    return q0 + gt * t + gs * s + htt * t * t + hss * s * s + hts * t * s;
  }
};

struct BoxMinimum {
  ExtendedReal value;
  double t = 0.0;  // attaining point when value is finite
  double s = 0.0;
};

// Exact global minimum of a bivariate quadratic over a (possibly unbounded)
// box. Unboundedness below is decided by recession analysis of the quadratic
// form restricted to the admissible cone: curvature directions via 2x2
// copositivity, zero-curvature directions via the sign of the slope over the
// whole box. Bounded problems attain their minimum and are resolved by
// enumerating the interior critical set, the edges, and the corners.
BoxMinimum minimize_over_box(const BoxQuadratic& q, double zero_tol);

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 = 0, Newton-polished. Degrades
// gracefully to the quadratic/linear cases when leading coefficients vanish.
std::vector<double> solve_cubic_real(double c3, double c2, double c1, double c0);

}  // namespace fitztk

#pragma once

#include "fitztk/core.hpp"
#include "fitztk/operator_graph.hpp"

namespace fitztk {

// Outcome of projecting q onto conv(points) + cone(rays).
//
// kkt_residual is the largest violation among: complementarity of the point
// weights (lambda_i * (g.p_i - nu)), complementarity of the ray weights
// (mu_j * |g.r_j|), dual feasibility of the rays ((-g.r_j)_+), and the
// simplex defect |sum lambda - 1|, where g is the weighted gradient at the
// solution and nu the smallest point score.
struct ProjectionResult {
  Vector point;
  std::vector<double> point_weights;
  std::vector<double> ray_weights;
  double distance = 0.0;
  double kkt_residual = 0.0;
};

// Min-norm-point projection under the delta-weighted pair norm. For even
// dimension 2k the first k coordinates carry weight delta and the last k
// weight 1/delta; delta must be 1 for odd dimensions. Active-set scheme over
// the generator weights: the conditional-gradient rule picks the entering
// generator, an equality-constrained solve optimizes the active support, and
// away (drop) steps release exhausted generators. Duality-gap stopping at
// tol_iter^2, round cap 10000.
ProjectionResult project(const HullGenerators& hull, const Vector& q,
                         const WeightedNorm& norm = {}, const TolerancePolicy& pol = {});

/// distance(q, hull) <= tol_iter under the weighted norm.
bool membership(const HullGenerators& hull, const Vector& q, const WeightedNorm& norm = {},
                const TolerancePolicy& pol = {});

// Strictly separating direction for q outside the hull: returns p with
// <g - q, p> <= -dist^2 for every generator point g and <r, p> <= 0 for
// every ray (up to solver residuals). Requires a strictly positive
// projection distance.
Vector separating_direction(const HullGenerators& hull, const Vector& q,
                            const WeightedNorm& norm = {}, const TolerancePolicy& pol = {});

// Both sides of the support-function membership equivalence, computed
// independently: membership of the origin via projection, and the existence
// of a direction with negative support via the separating witness plus
// random sampling. Returns whether the two sides agree.
bool support_membership_check(const std::vector<Vector>& points, const std::vector<Vector>& rays,
                              Rng& rng, const TolerancePolicy& pol = {});

}  // namespace fitztk

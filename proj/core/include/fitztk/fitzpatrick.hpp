#pragma once

#include <optional>
#include <vector>

#include "fitztk/hull.hpp"
#include "fitztk/operator_graph.hpp"
#include "fitztk/slack.hpp"

namespace fitztk {

// phi_T(z) = sup { z.alpha - c(alpha) : alpha in Graph T }. Exact per
// representation: piecewise closed-form quadratic maxima for polygonal
// graphs, a pseudo-inverse formula for linear operators, and stationary
// points of a quartic for the cubic curve. Never returns -inf.
ExtendedReal fitzpatrick(const OperatorGraph& op, const PairedPoint& z,
                         const TolerancePolicy& pol = {});

/// (phi_T - c)(z); +inf exactly when fitzpatrick is +inf.
ExtendedReal gap(const OperatorGraph& op, const PairedPoint& z, const TolerancePolicy& pol = {});

/// sigma_{T-z}(p) = sup over Graph T of (alpha - z).p; positively homogeneous in p.
ExtendedReal support_shifted(const OperatorGraph& op, const PairedPoint& z, const PairedPoint& p,
                             const TolerancePolicy& pol = {});

/// inf over Graph T of c(z - alpha); equals (c - phi_T)(z).
ExtendedReal monotonically_related_gap(const OperatorGraph& op, const PairedPoint& z,
                                       const TolerancePolicy& pol = {});

/// z in Graph T+ = [phi_T <= c], i.e. z is monotonically related to T.
bool tplus_contains(const OperatorGraph& op, const PairedPoint& z,
                    const TolerancePolicy& pol = {});

// --- inequality evaluators --------------------------------------------------
// Each returns the two sides and the signed slack of one instance; the
// inequality holds iff slack >= 0 (tested against -tol_slack).

/// gap(z + t p) <= gap(z) - t^2 c(p) + t sigma_{T-z}(p), any T, t >= 0.
SlackReport estimate_translation(const OperatorGraph& op, const PairedPoint& z,
                                 const PairedPoint& p, double t,
                                 const TolerancePolicy& pol = {});

/// gap(z) >= t^2 c(p) - t sigma_{T-z}(p); meaningful for NI operators.
SlackReport estimate_ni_lower_bound(const OperatorGraph& op, const PairedPoint& z,
                                    const PairedPoint& p, double t,
                                    const TolerancePolicy& pol = {});

/// gap(z) >= max over candidates with sigma < 0 of -sigma^2 / (4 c(p)).
/// Candidates with sigma < 0 but c(p) >= 0 would falsify the NI property and
/// are reported through the thrown SearchFailure.
SlackReport estimate_support_ratio(const OperatorGraph& op, const PairedPoint& z,
                                   const std::vector<PairedPoint>& candidates,
                                   const TolerancePolicy& pol = {});

/// sigma_{T-z}(p) + 2 sqrt(gap(z)) sqrt(|c(p)|) >= 0 for NI operators.
SlackReport estimate_support_positivity(const OperatorGraph& op, const PairedPoint& z,
                                        const PairedPoint& p, const TolerancePolicy& pol = {});

/// gap(z) >= (1/2) dist^2(z, conv Graph T) under the weighted pair norm.
SlackReport estimate_hull_distance(const OperatorGraph& op, const PairedPoint& z,
                                   const HullGenerators& hull, const WeightedNorm& norm = {},
                                   const TolerancePolicy& pol = {});

// --- sign implications for NI operators ------------------------------------

enum class SignImplication {
  Ok,
  PositiveCouplingFiniteSupport,  // c(p) > 0 but sigma finite
  NullCouplingNegativeSupport,    // c(p) = 0 but sigma < 0
  NegativeSupportCouplingNotNegative,
};

/// The three sign implications relating c(p) and sigma_{T-z}(p) when T is NI
/// and z has finite gap.
SignImplication support_sign_implications(const OperatorGraph& op, const PairedPoint& z, const PairedPoint& p,
                         const TolerancePolicy& pol = {});

const char* sign_implication_name(SignImplication s);

// --- constructive witnesses -------------------------------------------------

// For monotone T and gap(z) > tol_slack: a point w of T+ with
// c(z - w) < 0, found as a near-minimizer of c(z - .) over Graph T.
PairedPoint negative_coupling_witness(const OperatorGraph& op, const PairedPoint& z,
                                      const TolerancePolicy& pol = {});

struct BoundaryPoint {
  PairedPoint w;
  double t = 0.0;       // in (0, 1]
  double residual = 0;  // |gap(w)|
};

// Bisection of t -> gap(z + t (u - z)) on [0, 1] down to bisect_width.
// Requires tol_slack < gap(z) < inf, gap(u) <= tol_slack and
// c(z - u) < -tol_exact; the returned w has |gap(w)| <= tol_iter and
// c(z - w) = t^2 c(z - u) < 0.
BoundaryPoint boundary_point(const OperatorGraph& op, const PairedPoint& z, const PairedPoint& u,
                             const TolerancePolicy& pol = {});

// For monotone non-maximal T, z with gap(z) < -tol_slack and t in (0,1):
// a graph point w with gap(t z + (1-t) w) < -tol_exact.
PairedPoint segment_probe(const OperatorGraph& op, const PairedPoint& z, double t,
                          const TolerancePolicy& pol = {});

// --- NI falsification search ------------------------------------------------

struct NiFalsification {
  PairedPoint z;
  double gap_value = 0.0;  // < -tol_slack
};

struct NiSamplerConfig {
  std::uint64_t seed = 0;
  int count = 256;
  double box_halfwidth = 4.0;
  double graph_perturbation = 0.75;
};

// Randomized search for z with gap(z) < -tol_slack. Absence of a witness is
// not a certificate that T is NI.
std::optional<NiFalsification> ni_falsify(const OperatorGraph& op, const NiSamplerConfig& cfg,
                                          const TolerancePolicy& pol = {});

}  // namespace fitztk

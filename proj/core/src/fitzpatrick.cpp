#include "fitztk/fitzpatrick.hpp"

#include <algorithm>
#include <cmath>

namespace fitztk {

namespace {

// objective of the cubic-curve supremum: (x - a) a^3 + a x*
double cubic_sup_objective(double a, double x, double xs) {
  return (x - a) * a * a * a + a * xs;
}

ExtendedReal fitzpatrick_linear(const LinearMonotoneOperator& lin, const PairedPoint& z,
                                const TolerancePolicy& pol) {
  Vector u = lin.a().transpose() * z.x + z.xstar - lin.b();
  double thr = scaled_tol(pol.tol_exact, u.norm());
  if (lin.range_residual(u) > thr) return ExtendedReal::plus_inf();
  return ExtendedReal(z.x.dot(lin.b()) + 0.25 * u.dot(lin.pinv_apply(u)));
}

ExtendedReal fitzpatrick_cubic(const PairedPoint& z) {
  const double x = z.x[0], xs = z.xstar[0];
  // stationary points of a -> (x - a) a^3 + a x*
  std::vector<double> roots = solve_cubic_real(-4.0, 3.0 * x, 0.0, xs);
  double best = cubic_sup_objective(0.0, x, xs);
  for (double a : roots) best = std::max(best, cubic_sup_objective(a, x, xs));
  return ExtendedReal(best);
}

}  // namespace

ExtendedReal fitzpatrick(const OperatorGraph& op, const PairedPoint& z,
                         const TolerancePolicy& pol) {
  if (operator_dim(op) != z.dim()) throw DimensionError("fitzpatrick: dimension mismatch");
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    ExtendedReal best = ExtendedReal::minus_inf();
    for (const GraphPiece& piece : poly->pieces) {
      best = max(best, piece_sup_affine_quadratic(piece, z, pol).value);
    }
    return best;
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    return fitzpatrick_linear(*lin, z, pol);
  }
  return fitzpatrick_cubic(z);
}

ExtendedReal gap(const OperatorGraph& op, const PairedPoint& z, const TolerancePolicy& pol) {
  return fitzpatrick(op, z, pol) - ExtendedReal(coupling(z));
}

ExtendedReal support_shifted(const OperatorGraph& op, const PairedPoint& z, const PairedPoint& p,
                             const TolerancePolicy& pol) {
  if (operator_dim(op) != z.dim() || z.dim() != p.dim()) {
    throw DimensionError("support_shifted: dimension mismatch");
  }
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    ExtendedReal best = ExtendedReal::minus_inf();
    for (const GraphPiece& piece : poly->pieces) {
      double v0 = pair_dot(p, piece.base() - z);
      double slope = pair_dot(p, piece.direction());
      double thr = scaled_tol(pol.tol_exact, p.norm() * piece.direction().norm());
      switch (piece.kind()) {
        case PieceKind::Point:
          best = max(best, ExtendedReal(v0));
          break;
        case PieceKind::Segment:
          best = max(best, ExtendedReal(std::max(v0, pair_dot(p, piece.second() - z))));
          break;
        case PieceKind::Ray:
          if (slope > thr) return ExtendedReal::plus_inf();
          best = max(best, ExtendedReal(v0));
          break;
        case PieceKind::Line:
          if (std::abs(slope) > thr) return ExtendedReal::plus_inf();
          best = max(best, ExtendedReal(v0));
          break;
      }
    }
    return best;
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    Vector w = lin->a().transpose() * p.x + p.xstar;
    double thr = scaled_tol(pol.tol_exact, p.norm() * (1.0 + lin->a().norm()));
    if (w.norm() > thr) return ExtendedReal::plus_inf();
    return ExtendedReal(p.x.dot(lin->b()) - pair_dot(p, z));
  }
  // cubic curve: sup over a of p.x a^3 + p.xstar a - p.(z)
  double thr = scaled_tol(pol.tol_exact, p.norm());
  if (std::abs(p.x[0]) > thr) return ExtendedReal::plus_inf();
  if (std::abs(p.xstar[0]) > thr) return ExtendedReal::plus_inf();
  return ExtendedReal(-pair_dot(p, z));
}

ExtendedReal monotonically_related_gap(const OperatorGraph& op, const PairedPoint& z,
                                       const TolerancePolicy& pol) {
  if (operator_dim(op) != z.dim()) {
    throw DimensionError("monotonically_related_gap: dimension mismatch");
  }
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    ExtendedReal best = ExtendedReal::plus_inf();
    for (const GraphPiece& piece : poly->pieces) {
      best = min(best, piece_inf_coupling(piece, z, pol).value);
    }
    return best;
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    Vector u = lin->a().transpose() * z.x + z.xstar - lin->b();
    double thr = scaled_tol(pol.tol_exact, u.norm());
    if (lin->range_residual(u) > thr) return ExtendedReal::minus_inf();
    return ExtendedReal(coupling(z) - z.x.dot(lin->b()) - 0.25 * u.dot(lin->pinv_apply(u)));
  }
  const double x = z.x[0], xs = z.xstar[0];
  // stationary points of a -> (x - a)(x* - a^3), a quartic with +a^4 leading
  std::vector<double> roots = solve_cubic_real(4.0, -3.0 * x, 0.0, -xs);
  double best = (x - 0.0) * (xs - 0.0);
  bool first = true;
  for (double a : roots) {
    double v = (x - a) * (xs - a * a * a);
    if (first || v < best) best = v;
    first = false;
  }
  return ExtendedReal(best);
}

bool tplus_contains(const OperatorGraph& op, const PairedPoint& z, const TolerancePolicy& pol) {
  return monotonically_related_gap(op, z, pol) >= ExtendedReal(-pol.tol_slack);
}

namespace {

/// t * sigma with the t = 0 convention (the estimate degenerates to its
/// base inequality and the sigma term drops out).
ExtendedReal scale_support(double t, ExtendedReal sigma) {
  if (t == 0.0) return ExtendedReal(0.0);
  return t * sigma;
}

}  // namespace

SlackReport estimate_translation(const OperatorGraph& op, const PairedPoint& z,
                                 const PairedPoint& p, double t, const TolerancePolicy& pol) {
  if (t < 0.0) throw PreconditionError("estimate_translation: t must be nonnegative");
  ExtendedReal lhs = gap(op, z + t * p, pol);
  ExtendedReal rhs = gap(op, z, pol) + ExtendedReal(-t * t * coupling(p)) +
                     scale_support(t, support_shifted(op, z, p, pol));
  return make_slack(lhs, rhs, pol);
}

SlackReport estimate_ni_lower_bound(const OperatorGraph& op, const PairedPoint& z,
                                    const PairedPoint& p, double t, const TolerancePolicy& pol) {
  if (t < 0.0) throw PreconditionError("estimate_ni_lower_bound: t must be nonnegative");
  ExtendedReal lhs = ExtendedReal(t * t * coupling(p)) -
                     scale_support(t, support_shifted(op, z, p, pol));
  ExtendedReal rhs = gap(op, z, pol);
  return make_slack(lhs, rhs, pol);
}

SlackReport estimate_support_ratio(const OperatorGraph& op, const PairedPoint& z,
                                   const std::vector<PairedPoint>& candidates,
                                   const TolerancePolicy& pol) {
  ExtendedReal rhs = gap(op, z, pol);
  if (!rhs.is_finite()) return make_slack(ExtendedReal::minus_inf(), rhs, pol);

  // For an NI operator, sigma can dip to -2 sqrt(gap) sqrt(|c|) with |c|
  // inside the zero band, so the negativity filter carries that leak on top
  // of tol_exact; surviving candidates then provably have c < -tol_exact.
  double leak = 2.0 * std::sqrt(std::max(rhs.value(), 0.0)) * std::sqrt(pol.tol_exact);

  ExtendedReal lhs = ExtendedReal::minus_inf();
  for (const PairedPoint& p : candidates) {
    ExtendedReal sigma = support_shifted(op, z, p, pol);
    if (!sigma.is_finite() || sigma.value() >= -(pol.tol_exact + leak)) continue;
    double cp = coupling(p);
    if (cp >= -pol.tol_exact) {
      throw SearchFailure(
          "estimate_support_ratio: candidate with negative support but c(p) >= 0 "
          "(falsifies the NI sign implication)");
    }
    double s = sigma.value();
    lhs = max(lhs, ExtendedReal(-(s * s) / (4.0 * cp)));
  }
  return make_slack(lhs, rhs, pol);
}

SlackReport estimate_support_positivity(const OperatorGraph& op, const PairedPoint& z,
                                        const PairedPoint& p, const TolerancePolicy& pol) {
  ExtendedReal g = gap(op, z, pol);
  if (g.is_finite() && g.value() < -pol.tol_slack) {
    throw SearchFailure("estimate_support_positivity: gap(z) < -tol_slack falsifies NI");
  }
  ExtendedReal sigma = support_shifted(op, z, p, pol);
  ExtendedReal lhs = -sigma;
  ExtendedReal rhs;
  if (g.is_plus_inf()) {
    rhs = ExtendedReal::plus_inf();
  } else {
    double gv = std::max(g.value(), 0.0);  // clamp round-off at tight instances
    rhs = ExtendedReal(2.0 * std::sqrt(gv) * std::sqrt(std::abs(coupling(p))));
  }
  return make_slack(lhs, rhs, pol);
}

SlackReport estimate_hull_distance(const OperatorGraph& op, const PairedPoint& z,
                                   const HullGenerators& hull, const WeightedNorm& norm,
                                   const TolerancePolicy& pol) {
  ExtendedReal rhs = gap(op, z, pol);
  if (rhs.is_plus_inf()) {
    return make_slack(ExtendedReal(0.0), rhs, pol);
  }
  ProjectionResult proj = project(hull, z.flatten(), norm, pol);
  return make_slack(ExtendedReal(0.5 * proj.distance * proj.distance), rhs, pol);
}

SignImplication support_sign_implications(const OperatorGraph& op, const PairedPoint& z, const PairedPoint& p,
                         const TolerancePolicy& pol) {
  double cp = coupling(p);
  ExtendedReal sigma = support_shifted(op, z, p, pol);
  double thr_c = scaled_tol(pol.tol_exact, p.norm() * p.norm());
  double thr_s = scaled_tol(pol.tol_exact, p.norm());

  // couplings inside the zero band legitimately admit sigma down to
  // -2 sqrt(gap) sqrt(thr_c); only deeper dips count as violations
  ExtendedReal g = gap(op, z, pol);
  double gv = g.is_finite() ? std::max(g.value(), 0.0) : 0.0;
  double neg_thr = thr_s + 2.0 * std::sqrt(gv) * std::sqrt(thr_c);

  if (cp > thr_c && !sigma.is_plus_inf()) return SignImplication::PositiveCouplingFiniteSupport;
  bool sigma_negative = sigma.is_finite() && sigma.value() < -neg_thr;
  if (std::abs(cp) <= thr_c && sigma_negative) return SignImplication::NullCouplingNegativeSupport;
  if (sigma_negative && cp >= -thr_c) return SignImplication::NegativeSupportCouplingNotNegative;
  return SignImplication::Ok;
}

const char* sign_implication_name(SignImplication s) {
  switch (s) {
    case SignImplication::Ok:
      return "ok";
    case SignImplication::PositiveCouplingFiniteSupport:
      return "positive-coupling-finite-support";
    case SignImplication::NullCouplingNegativeSupport:
      return "null-coupling-negative-support";
    case SignImplication::NegativeSupportCouplingNotNegative:
      return "negative-support-coupling-not-negative";
  }
  return "?";
}

namespace {

// Walk outward along a piece whose coupling objective is unbounded below
// until the value is clearly negative.
std::optional<PairedPoint> walk_to_negative(const GraphPiece& piece, const PairedPoint& z) {
  for (double r = 1.0; r <= 0x1p60; r *= 2.0) {
    for (double t : {piece.range().clamp(r), piece.range().clamp(-r)}) {
      if (!std::isfinite(t)) continue;
      PairedPoint w = piece.at(t);
      if (coupling(z - w) < -1.0) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

PairedPoint negative_coupling_witness(const OperatorGraph& op, const PairedPoint& z,
                                      const TolerancePolicy& pol) {
  ExtendedReal gz = gap(op, z, pol);
  if (!(gz > ExtendedReal(pol.tol_slack))) {
    throw PreconditionError("negative_coupling_witness: requires gap(z) > tol_slack");
  }

  std::optional<PairedPoint> best;
  double best_value = std::numeric_limits<double>::infinity();
  auto offer = [&](const PairedPoint& w) {
    double v = coupling(z - w);
    if (v < best_value) {
      best_value = v;
      best = w;
    }
  };

  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    for (const GraphPiece& piece : poly->pieces) {
      QuadExtremum e = piece_inf_coupling(piece, z, pol);
      if (e.value.is_minus_inf()) {
        if (auto w = walk_to_negative(piece, z)) offer(*w);
      } else if (e.arg) {
        offer(piece.at(*e.arg));
      }
    }
  } else if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    Vector u = lin->a().transpose() * z.x + z.xstar - lin->b();
    double thr = scaled_tol(pol.tol_exact, u.norm());
    if (lin->range_residual(u) > thr) {
      // walk along the component of u outside range(A_s); coupling decreases
      // linearly in that direction
      Vector nullpart = u - lin->symmetric_part() * lin->pinv_apply(u);
      for (double r = 1.0; r <= 0x1p60; r *= 2.0) {
        Vector a = r * nullpart;
        PairedPoint w(a, lin->apply(a));
        if (coupling(z - w) < -1.0) {
          offer(w);
          break;
        }
      }
    } else {
      Vector a = 0.5 * lin->pinv_apply(u);
      offer(PairedPoint(a, lin->apply(a)));
    }
  } else {
    const double x = z.x[0], xs = z.xstar[0];
    for (double a : solve_cubic_real(4.0, -3.0 * x, 0.0, -xs)) {
      offer(PairedPoint(Vector::Constant(1, a), Vector::Constant(1, a * a * a)));
    }
  }

  if (!best || !(coupling(z - *best) < -pol.tol_exact) || !tplus_contains(op, *best, pol)) {
    throw SearchFailure("negative_coupling_witness: no admissible witness found");
  }
  return *best;
}

BoundaryPoint boundary_point(const OperatorGraph& op, const PairedPoint& z, const PairedPoint& u,
                             const TolerancePolicy& pol) {
  ExtendedReal gz = gap(op, z, pol);
  if (!gz.is_finite() || gz.value() <= pol.tol_slack) {
    throw PreconditionError("boundary_point: requires tol_slack < gap(z) < +inf");
  }
  ExtendedReal gu = gap(op, u, pol);
  if (!gu.is_finite() || gu.value() > pol.tol_slack) {
    throw PreconditionError("boundary_point: requires gap(u) <= tol_slack");
  }
  if (!(coupling(z - u) < -pol.tol_exact)) {
    throw PreconditionError("boundary_point: requires c(z - u) < -tol_exact");
  }

  auto f = [&](double t) {
    ExtendedReal v = gap(op, z + t * (u - z), pol);
    if (!v.is_finite()) {
      throw DomainExitError("boundary_point: segment leaves dom(phi), instance must be re-sampled");
    }
    return v.value();
  };

  BoundaryPoint out;
  if (gu.value() >= 0.0) {
    out.t = 1.0;
    out.w = u;
    out.residual = gu.value();
    return out;
  }

  double lo = 0.0, hi = 1.0;
  while (hi - lo > pol.bisect_width) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double fhi = f(hi);
  double flo = f(lo);
  out.t = std::abs(fhi) <= std::abs(flo) ? hi : lo;
  out.w = z + out.t * (u - z);
  out.residual = std::abs(f(out.t));
  if (out.residual > pol.tol_iter) {
    throw SearchFailure("boundary_point: bisection landed outside the tol_iter band");
  }
  if (!(coupling(z - out.w) < 0.0)) {
    throw SearchFailure("boundary_point: coupling sign postcondition failed");
  }
  return out;
}

PairedPoint segment_probe(const OperatorGraph& op, const PairedPoint& z, double t,
                          const TolerancePolicy& pol) {
  if (!(t > 0.0 && t < 1.0)) throw PreconditionError("segment_probe: t must lie in (0,1)");
  ExtendedReal gz = gap(op, z, pol);
  if (!gz.is_finite() || gz.value() >= -pol.tol_slack) {
    throw PreconditionError("segment_probe: requires gap(z) < -tol_slack");
  }

  std::vector<PairedPoint> candidates;
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    for (const GraphPiece& piece : poly->pieces) {
      QuadExtremum e = piece_inf_coupling(piece, z, pol);
      if (e.arg && e.value.is_finite()) candidates.push_back(piece.at(*e.arg));
      candidates.push_back(piece.base());
      if (piece.kind() == PieceKind::Segment) candidates.push_back(piece.second());
    }
  } else {
    candidates.push_back(negative_coupling_witness(op, z, pol));  // unreachable for maximal T
  }

  std::optional<PairedPoint> best;
  ExtendedReal best_gap = ExtendedReal::plus_inf();
  for (const PairedPoint& w : candidates) {
    ExtendedReal g = gap(op, t * z + (1.0 - t) * w, pol);
    if (g < best_gap) {
      best_gap = g;
      best = w;
    }
  }
  if (!best || !best_gap.is_finite() || best_gap.value() >= -pol.tol_exact) {
    throw SearchFailure("segment_probe: no graph point keeps the convex combination below c");
  }
  return *best;
}

std::optional<NiFalsification> ni_falsify(const OperatorGraph& op, const NiSamplerConfig& cfg,
                                          const TolerancePolicy& pol) {
  Rng rng(cfg.seed);
  Eigen::Index n = operator_dim(op);
  PairedPoint anchor = some_graph_point(op);
  for (int k = 0; k < cfg.count; ++k) {
    PairedPoint z = PairedPoint::zero(n);
    double pick = rng.uniform();
    if (pick < 0.5) {
      for (Eigen::Index i = 0; i < n; ++i) {
        z.x[i] = rng.uniform(-cfg.box_halfwidth, cfg.box_halfwidth);
        z.xstar[i] = rng.uniform(-cfg.box_halfwidth, cfg.box_halfwidth);
      }
    } else if (pick < 0.8) {
      z = anchor + rng.normal_pair(n, cfg.graph_perturbation);
    } else {
      z = rng.normal_pair(n, 1.5);
    }
    ExtendedReal g = gap(op, z, pol);
    if (g.is_finite() && g.value() < -pol.tol_slack) {
      return NiFalsification{z, g.value()};
    }
  }
  return std::nullopt;
}

}  // namespace fitztk

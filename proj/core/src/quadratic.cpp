#include "fitztk/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fitztk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

namespace {

double eval1(double q2, double q1, double q0, double t) { return (q2 * t + q1) * t + q0; }

}  // namespace

QuadExtremum maximize_quadratic(double q2, double q1, double q0, ParamRange range,
                                double zero_tol) {
  if (range.lo == range.hi) {
    return {ExtendedReal(eval1(q2, q1, q0, range.lo)), range.lo};
  }

  if (std::abs(q2) <= zero_tol) {
    // affine
    if (std::abs(q1) <= zero_tol) {
      double t0 = range.clamp(0.0);
      if (!std::isfinite(t0)) t0 = range.lo_finite() ? range.lo : range.hi;
      return {ExtendedReal(eval1(q2, q1, q0, t0)), t0};
    }
    if (q1 > 0.0) {
      if (!range.hi_finite()) return {ExtendedReal::plus_inf(), std::nullopt};
      return {ExtendedReal(eval1(q2, q1, q0, range.hi)), range.hi};
    }
    if (!range.lo_finite()) return {ExtendedReal::plus_inf(), std::nullopt};
    return {ExtendedReal(eval1(q2, q1, q0, range.lo)), range.lo};
  }

  if (q2 < 0.0) {
    // concave: clamped vertex
    double tv = -q1 / (2.0 * q2);
    double ta = range.clamp(tv);
    return {ExtendedReal(eval1(q2, q1, q0, ta)), ta};
  }

  // convex: sup at the range ends
  if (!range.lo_finite() || !range.hi_finite()) {
    return {ExtendedReal::plus_inf(), std::nullopt};
  }
  double vlo = eval1(q2, q1, q0, range.lo);
  double vhi = eval1(q2, q1, q0, range.hi);
  return vlo >= vhi ? QuadExtremum{ExtendedReal(vlo), range.lo}
                    : QuadExtremum{ExtendedReal(vhi), range.hi};
}

QuadExtremum minimize_quadratic(double q2, double q1, double q0, ParamRange range,
                                double zero_tol) {
  QuadExtremum m = maximize_quadratic(-q2, -q1, -q0, range, zero_tol);
  return {-m.value, m.arg};
}

namespace {

struct Dir {
  double dt, ds;
};

double curvature(const BoxQuadratic& q, const Dir& d) {
  return q.htt * d.dt * d.dt + q.hss * d.ds * d.ds + q.hts * d.dt * d.ds;
}

// Infimum of w * t over the range, with |w| <= thr treated as zero slope.
ExtendedReal inf_linear_term(double w, const ParamRange& r, double thr) {
  if (std::abs(w) <= thr) return ExtendedReal(0.0);
  if (w > 0.0) {
    if (!r.lo_finite()) return ExtendedReal::minus_inf();
    return ExtendedReal(w * r.lo);
  }
  if (!r.hi_finite()) return ExtendedReal::minus_inf();
  return ExtendedReal(w * r.hi);
}

// True when the slope of q along direction d can become negative somewhere on
// the box, in which case q decreases without bound along d.
bool slope_negative_somewhere(const BoxQuadratic& q, const Dir& d, double thr) {
  double wt = 2.0 * q.htt * d.dt + q.hts * d.ds;
  double ws = q.hts * d.dt + 2.0 * q.hss * d.ds;
  double w0 = q.gt * d.dt + q.gs * d.ds;
  ExtendedReal inf = ExtendedReal(w0) + inf_linear_term(wt, q.rt, thr) +
                     inf_linear_term(ws, q.rs, thr);
  if (inf.is_minus_inf()) return true;
  return inf.value() < -thr;
}

}  // namespace

BoxMinimum minimize_over_box(const BoxQuadratic& q, double zero_tol) {
  const double cmag = std::abs(q.htt) + std::abs(q.hss) + std::abs(q.hts);
  const double ct = zero_tol * std::max(1.0, cmag);                           // curvature
  const double st = zero_tol * std::max(1.0, cmag + std::abs(q.gt) + std::abs(q.gs));

  std::vector<Dir> ext;
  if (q.rt.unbounded_above()) ext.push_back({1.0, 0.0});
  if (q.rt.unbounded_below()) ext.push_back({-1.0, 0.0});
  if (q.rs.unbounded_above()) ext.push_back({0.0, 1.0});
  if (q.rs.unbounded_below()) ext.push_back({0.0, -1.0});

  std::vector<Dir> zero_dirs;
  for (const Dir& d : ext) {
    double c = curvature(q, d);
    if (c < -ct) return {ExtendedReal::minus_inf()};
    if (c <= ct) zero_dirs.push_back(d);
  }

  // copositivity of the recession quadratic form on each admissible quadrant
  for (const Dir& dt : ext) {
    if (dt.ds != 0.0) continue;
    for (const Dir& ds : ext) {
      if (ds.dt != 0.0) continue;
      double a = std::max(curvature(q, dt), 0.0);
      double c = std::max(curvature(q, ds), 0.0);
      double b = 0.5 * q.hts * dt.dt * ds.ds;
      if (b >= 0.0) continue;
      double margin = zero_tol * std::max(1.0, cmag * cmag);
      if (b * b > a * c + margin) return {ExtendedReal::minus_inf()};
      if (b * b >= a * c - margin && a > ct && c > ct) {
        // interior direction of vanishing curvature
        double nt = std::sqrt(c) * dt.dt;
        double ns = std::sqrt(a) * ds.ds;
        double nn = std::hypot(nt, ns);
        zero_dirs.push_back({nt / nn, ns / nn});
      }
    }
  }

  for (const Dir& d : zero_dirs) {
    if (slope_negative_somewhere(q, d, st)) return {ExtendedReal::minus_inf()};
  }

  // Bounded below from here on; the minimum is attained.
  BoxMinimum best{ExtendedReal::plus_inf()};
  auto consider = [&](double t, double s) {
    t = q.rt.clamp(t);
    s = q.rs.clamp(s);
    if (!std::isfinite(t) || !std::isfinite(s)) return;
    ExtendedReal v(q.eval(t, s));
    if (v < best.value) best = {v, t, s};
  };

  const double a = 2.0 * q.htt, b = q.hts, c = 2.0 * q.hss;
  const double det = a * c - b * b;
  const double tr = a + c;
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  const double min_eig = 0.5 * (tr - disc);
  const double hscale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});

  if (min_eig >= -zero_tol * hscale) {
    if (std::abs(det) > zero_tol * hscale * hscale) {
      // unique critical point
      double t0 = -(c * q.gt - b * q.gs) / det;
      double s0 = -(a * q.gs - b * q.gt) / det;
      consider(t0, s0);
    } else if (std::max({std::abs(a), std::abs(b), std::abs(c)}) > zero_tol * hscale) {
      // rank-1 Hessian: a whole critical line when g lies in its range
      double vx, vy;  // range direction
      if (std::abs(a) >= std::abs(c)) {
        vx = a;
        vy = b;
      } else {
        vx = b;
        vy = c;
      }
      double vn = std::hypot(vx, vy);
      vx /= vn;
      vy /= vn;
      double lambda = a * vx * vx + 2.0 * b * vx * vy + c * vy * vy;
      double gpar = q.gt * vx + q.gs * vy;
      double gperp = -q.gt * vy + q.gs * vx;
      if (std::abs(gperp) <= zero_tol * std::max(1.0, std::abs(q.gt) + std::abs(q.gs)) &&
          lambda > 0.0) {
        double t0 = -(gpar / lambda) * vx;
        double s0 = -(gpar / lambda) * vy;
        // null direction
        double nx = -vy, ny = vx;
        double glo = -std::numeric_limits<double>::infinity();
        double ghi = std::numeric_limits<double>::infinity();
        auto intersect = [&](double x0, double n, const ParamRange& r) {
          if (std::abs(n) <= 1e-15) {
            if (!r.contains(x0, zero_tol * hscale)) glo = 1.0, ghi = -1.0;  // empty
            return;
          }
          double g1 = (r.lo - x0) / n;
          double g2 = (r.hi - x0) / n;
          if (g1 > g2) std::swap(g1, g2);
          glo = std::max(glo, g1);
          ghi = std::min(ghi, g2);
        };
        intersect(t0, nx, q.rt);
        intersect(s0, ny, q.rs);
        if (glo <= ghi) {
          double g0 = std::min(std::max(0.0, glo), ghi);
          if (!std::isfinite(g0)) g0 = std::isfinite(glo) ? glo : ghi;
          if (std::isfinite(g0)) consider(t0 + g0 * nx, s0 + g0 * ny);
        }
      }
    }
  }

  auto edge_t = [&](double tb) {
    QuadExtremum e = minimize_quadratic(q.hss, q.hts * tb + q.gs,
                                        q.q0 + q.gt * tb + q.htt * tb * tb, q.rs, ct);
    if (e.value.is_minus_inf()) {
      best = {ExtendedReal::minus_inf()};
      return;
    }
    if (e.arg) consider(tb, *e.arg);
  };
  auto edge_s = [&](double sb) {
    QuadExtremum e = minimize_quadratic(q.htt, q.hts * sb + q.gt,
                                        q.q0 + q.gs * sb + q.hss * sb * sb, q.rt, ct);
    if (e.value.is_minus_inf()) {
      best = {ExtendedReal::minus_inf()};
      return;
    }
    if (e.arg) consider(*e.arg, sb);
  };

  if (q.rt.lo_finite()) edge_t(q.rt.lo);
  if (q.rt.hi_finite() && q.rt.hi != q.rt.lo) edge_t(q.rt.hi);
  if (q.rs.lo_finite()) edge_s(q.rs.lo);
  if (q.rs.hi_finite() && q.rs.hi != q.rs.lo) edge_s(q.rs.hi);
  if (best.value.is_minus_inf()) return best;

  if (best.value.is_plus_inf()) consider(0.0, 0.0);
  return best;
}

std::vector<double> solve_cubic_real(double c3, double c2, double c1, double c0) {
  const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return {};
  std::vector<double> roots;

  if (std::abs(c3) <= 1e-14 * scale) {
    if (std::abs(c2) <= 1e-14 * scale) {
      if (std::abs(c1) <= 1e-14 * scale) return {};
      return {-c0 / c1};
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return {};
    double sq = std::sqrt(disc);
    if (c1 == 0.0 && c0 == 0.0) return {0.0};
    double qq = -0.5 * (c1 + std::copysign(sq, c1 == 0.0 ? 1.0 : c1));
    roots.push_back(qq / c2);
    if (qq != 0.0) roots.push_back(c0 / qq);
    return roots;
  }

  const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  const double p = b - a * a / 3.0;
  const double qd = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = qd * qd / 4.0 + p * p * p / 27.0;
  const double dtol = 1e-13 * std::max({1.0, qd * qd, std::abs(p * p * p)});

  if (disc > dtol) {
    double sq = std::sqrt(disc);
    double u = std::cbrt(-qd / 2.0 + sq);
    double v = std::cbrt(-qd / 2.0 - sq);
    roots.push_back(u + v + shift);
  } else if (disc < -dtol) {
    double r = std::sqrt(-p / 3.0);
    double arg = std::clamp(-qd / (2.0 * r * r * r), -1.0, 1.0);
    double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(2.0 * r * std::cos((phi - kTwoPi * k) / 3.0) + shift);
    }
  } else {
    if (std::abs(qd) <= dtol && std::abs(p) <= dtol) {
      roots.push_back(shift);
    } else {
      double u = std::cbrt(-qd / 2.0);
      roots.push_back(2.0 * u + shift);
      roots.push_back(-u + shift);
    }
  }

  for (double& x : roots) {
    for (int it = 0; it < 2; ++it) {
      double f = ((c3 * x + c2) * x + c1) * x + c0;
      double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
      if (std::abs(df) < 1e-300) break;
      double step = f / df;
      if (!std::isfinite(step)) break;
      x -= step;
    }
  }
  return roots;
}

}  // namespace fitztk

#include "fitztk/hull.hpp"

#include <algorithm>
#include <cmath>

namespace fitztk {

namespace {

constexpr int kMaxRounds = 10000;

Vector weight_vector(Eigen::Index m, const WeightedNorm& norm) {
  Vector w = Vector::Ones(m);
  if (norm.delta == 1.0) return w;
  if (m % 2 != 0) {
    throw InvariantError("weighted projection requires an even (pair) dimension");
  }
  w.head(m / 2).setConstant(norm.delta);
  w.tail(m / 2).setConstant(1.0 / norm.delta);
  return w;
}

struct Workspace {
  std::vector<Vector> pts;  // sqrt(w)-scaled generators
  std::vector<Vector> rys;
  Vector q;                 // scaled target
  double gen_scale = 1.0;
};

Workspace scaled_problem(const HullGenerators& hull, const Vector& q, const Vector& w) {
  Workspace ws;
  Vector s = w.cwiseSqrt();
  ws.q = s.cwiseProduct(q);
  ws.pts.reserve(hull.points.size());
  ws.rys.reserve(hull.rays.size());
  double scale = std::max(1.0, ws.q.norm());
  for (const Vector& p : hull.points) {
    ws.pts.push_back(s.cwiseProduct(p));
    scale = std::max(scale, ws.pts.back().norm());
  }
  for (const Vector& r : hull.rays) {
    ws.rys.push_back(s.cwiseProduct(r));
    scale = std::max(scale, ws.rys.back().norm());
  }
  ws.gen_scale = scale;
  return ws;
}

Vector combine(const std::vector<Vector>& pts, const std::vector<Vector>& rys,
               const std::vector<double>& lam, const std::vector<double>& mu) {
  Vector x = Vector::Zero(pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (lam[i] != 0.0) x += lam[i] * pts[i];
  }
  for (std::size_t j = 0; j < rys.size(); ++j) {
    if (mu[j] != 0.0) x += mu[j] * rys[j];
  }
  return x;
}

// Active-set min-norm-point solver. The affine subproblem minimizes
// |q - B w|^2 subject to the point weights summing to one; infeasible
// affine optima are handled by Wolfe's minor cycle (move as far as
// feasibility allows, drop the vanishing generator, re-solve).
class MinNormPoint {
 public:
  MinNormPoint(const Workspace& ws, const TolerancePolicy& pol)
      : ws_(ws),
        lam_(ws.pts.size(), 0.0),
        mu_(ws.rys.size(), 0.0),
        in_p_(ws.pts.size(), 0),
        in_r_(ws.rys.size(), 0) {
    stop_ = 0.1 * pol.tol_iter * pol.tol_iter * std::max(1.0, ws.gen_scale);
    in_p_[0] = 1;
    lam_[0] = 1.0;
    x_ = ws.pts[0];
  }

  void run() {
    for (int round = 0; round < kMaxRounds; ++round) {
      Vector g = x_ - ws_.q;

      double nu = std::numeric_limits<double>::infinity();
      std::size_t i_fw = 0;
      for (std::size_t i = 0; i < ws_.pts.size(); ++i) {
        double sc = g.dot(ws_.pts[i]);
        if (sc < nu) {
          nu = sc;
          i_fw = i;
        }
      }
      double gap_fw = g.dot(x_) - nu;

      double ray_score = 0.0;
      std::size_t j_fw = 0;
      for (std::size_t j = 0; j < ws_.rys.size(); ++j) {
        double sc = g.dot(ws_.rys[j]);
        if (sc < ray_score) {
          ray_score = sc;
          j_fw = j;
        }
      }

      bool need_p = gap_fw > stop_;
      bool need_r = -ray_score > stop_;
      if (!need_p && !need_r) return;

      double f0 = g.squaredNorm();
      if (need_p) in_p_[i_fw] = 1;
      if (need_r) in_r_[j_fw] = 1;
      resolve_support();
      if ((x_ - ws_.q).squaredNorm() < f0) continue;

      // Degenerate supports (duplicate generators, opposite rays) can make
      // the entering generator leave the corral immediately; fall back to a
      // plain conditional-gradient step, which descends whenever the
      // optimality gap is positive.
      g = x_ - ws_.q;
      if (need_r) {
        const Vector& r = ws_.rys[j_fw];
        double gamma = -g.dot(r) / r.squaredNorm();
        if (gamma > 0.0) {
          mu_[j_fw] += gamma;
          in_r_[j_fw] = 1;
          x_ += gamma * r;
          if ((x_ - ws_.q).squaredNorm() < f0) continue;
          g = x_ - ws_.q;
        }
      }
      Vector d = ws_.pts[i_fw] - x_;
      double dd = d.squaredNorm();
      if (dd <= 0.0) return;
      double gamma = std::clamp(-g.dot(d) / dd, 0.0, 1.0);
      if (gamma <= 0.0) return;
      for (double& v : lam_) v *= 1.0 - gamma;
      lam_[i_fw] += gamma;
      in_p_[i_fw] = 1;
      x_ += gamma * d;
      if ((x_ - ws_.q).squaredNorm() >= f0) return;  // numerical floor
    }
  }

  const std::vector<double>& lam() const { return lam_; }
  const std::vector<double>& mu() const { return mu_; }
  const Vector& x() const { return x_; }

 private:
  // Solve on the current support, running minor cycles until feasible.
  // Returns whether the iterate strictly improved.
  bool resolve_support() {
    double before = (x_ - ws_.q).squaredNorm();
    for (int minor = 0; minor < 200; ++minor) {
      std::vector<std::size_t> sp, sr;
      for (std::size_t i = 0; i < lam_.size(); ++i) {
        if (in_p_[i]) sp.push_back(i);
      }
      for (std::size_t j = 0; j < mu_.size(); ++j) {
        if (in_r_[j]) sr.push_back(j);
      }
      const Eigen::Index k = static_cast<Eigen::Index>(sp.size() + sr.size());
      Matrix bt(k, ws_.q.size());
      for (std::size_t c = 0; c < sp.size(); ++c) bt.row(c) = ws_.pts[sp[c]].transpose();
      for (std::size_t c = 0; c < sr.size(); ++c) {
        bt.row(static_cast<Eigen::Index>(sp.size() + c)) = ws_.rys[sr[c]].transpose();
      }
      Matrix kkt = Matrix::Zero(k + 1, k + 1);
      kkt.topLeftCorner(k, k) = bt * bt.transpose();
      for (std::size_t c = 0; c < sp.size(); ++c) {
        kkt(static_cast<Eigen::Index>(c), k) = 1.0;
        kkt(k, static_cast<Eigen::Index>(c)) = 1.0;
      }
      Vector rhs(k + 1);
      rhs.head(k) = bt * ws_.q;
      rhs[k] = 1.0;
      Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);

      bool feasible = true;
      for (Eigen::Index c = 0; c < k; ++c) {
        if (sol[c] < -1e-12) feasible = false;
      }
      if (feasible) {
        apply_solution(sp, sr, sol);
        break;
      }

      // minor cycle: blend toward the affine optimum until a weight dies
      double theta = 1.0;
      for (std::size_t c = 0; c < sp.size(); ++c) {
        double cur = lam_[sp[c]], aff = sol[static_cast<Eigen::Index>(c)];
        if (aff < 0.0 && cur > aff) theta = std::min(theta, cur / (cur - aff));
      }
      for (std::size_t c = 0; c < sr.size(); ++c) {
        double cur = mu_[sr[c]], aff = sol[static_cast<Eigen::Index>(sp.size() + c)];
        if (aff < 0.0 && cur > aff) theta = std::min(theta, cur / (cur - aff));
      }
      theta = std::clamp(theta, 0.0, 1.0);
      for (std::size_t c = 0; c < sp.size(); ++c) {
        double aff = sol[static_cast<Eigen::Index>(c)];
        lam_[sp[c]] = (1.0 - theta) * lam_[sp[c]] + theta * aff;
        if (lam_[sp[c]] <= 1e-12) {
          lam_[sp[c]] = 0.0;
          in_p_[sp[c]] = 0;
        }
      }
      for (std::size_t c = 0; c < sr.size(); ++c) {
        double aff = sol[static_cast<Eigen::Index>(sp.size() + c)];
        mu_[sr[c]] = (1.0 - theta) * mu_[sr[c]] + theta * aff;
        if (mu_[sr[c]] <= 1e-12) {
          mu_[sr[c]] = 0.0;
          in_r_[sr[c]] = 0;
        }
      }
      // keep at least one point active
      bool any_point = false;
      for (std::size_t i = 0; i < lam_.size(); ++i) any_point = any_point || in_p_[i];
      if (!any_point) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < lam_.size(); ++i) {
          if (lam_[i] > lam_[best]) best = i;
        }
        in_p_[best] = 1;
        if (lam_[best] <= 0.0) lam_[best] = 1.0;
      }
      renormalize();
      x_ = combine(ws_.pts, ws_.rys, lam_, mu_);
    }
    return (x_ - ws_.q).squaredNorm() < before - 1e-18 * ws_.gen_scale;
  }

  void apply_solution(const std::vector<std::size_t>& sp, const std::vector<std::size_t>& sr,
                      const Vector& sol) {
    std::fill(lam_.begin(), lam_.end(), 0.0);
    std::fill(mu_.begin(), mu_.end(), 0.0);
    std::fill(in_p_.begin(), in_p_.end(), 0);
    std::fill(in_r_.begin(), in_r_.end(), 0);
    for (std::size_t c = 0; c < sp.size(); ++c) {
      double v = std::max(sol[static_cast<Eigen::Index>(c)], 0.0);
      if (v > 0.0) {
        lam_[sp[c]] = v;
        in_p_[sp[c]] = 1;
      }
    }
    for (std::size_t c = 0; c < sr.size(); ++c) {
      double v = std::max(sol[static_cast<Eigen::Index>(sp.size() + c)], 0.0);
      if (v > 0.0) {
        mu_[sr[c]] = v;
        in_r_[sr[c]] = 1;
      }
    }
    bool any_point = false;
    for (std::size_t i = 0; i < lam_.size(); ++i) any_point = any_point || in_p_[i];
    if (!any_point) {
      in_p_[sp.empty() ? 0 : sp[0]] = 1;
      lam_[sp.empty() ? 0 : sp[0]] = 1.0;
    }
    renormalize();
    x_ = combine(ws_.pts, ws_.rys, lam_, mu_);
  }

  void renormalize() {
    double tot = 0.0;
    for (double v : lam_) tot += v;
    if (tot > 0.0) {
      for (double& v : lam_) v /= tot;
    }
  }

  const Workspace& ws_;
  std::vector<double> lam_;
  std::vector<double> mu_;
  std::vector<char> in_p_;
  std::vector<char> in_r_;
  Vector x_;
  double stop_ = 0.0;
};

}  // namespace

ProjectionResult project(const HullGenerators& hull, const Vector& q, const WeightedNorm& norm,
                         const TolerancePolicy& pol) {
  if (q.size() != hull.dim()) throw DimensionError("project: target dimension mismatch");
  Vector w = weight_vector(q.size(), norm);
  Workspace ws = scaled_problem(hull, q, w);

  MinNormPoint solver(ws, pol);
  solver.run();
  const std::vector<double>& lam = solver.lam();
  const std::vector<double>& mu = solver.mu();
  const Vector& x = solver.x();

  // KKT residual at the final iterate
  Vector g = x - ws.q;
  double nu = std::numeric_limits<double>::infinity();
  for (const Vector& p : ws.pts) nu = std::min(nu, g.dot(p));
  double kkt = 0.0;
  double lam_sum = 0.0;
  for (std::size_t i = 0; i < ws.pts.size(); ++i) {
    kkt = std::max(kkt, lam[i] * (g.dot(ws.pts[i]) - nu));
    lam_sum += lam[i];
  }
  for (std::size_t j = 0; j < ws.rys.size(); ++j) {
    double sc = g.dot(ws.rys[j]);
    kkt = std::max(kkt, std::max(-sc, 0.0));
    kkt = std::max(kkt, mu[j] * std::abs(sc));
  }
  kkt = std::max(kkt, std::abs(lam_sum - 1.0));

  if (kkt > pol.tol_iter * std::max(1.0, ws.gen_scale)) {
    throw ConvergenceError("project: iteration cap reached with KKT residual above tol_iter");
  }

  ProjectionResult res;
  res.point = combine(hull.points, hull.rays, lam, mu);
  res.point_weights = lam;
  res.ray_weights = mu;
  res.distance = (x - ws.q).norm();
  res.kkt_residual = kkt;
  return res;
}

bool membership(const HullGenerators& hull, const Vector& q, const WeightedNorm& norm,
                const TolerancePolicy& pol) {
  return project(hull, q, norm, pol).distance <= pol.tol_iter;
}

Vector separating_direction(const HullGenerators& hull, const Vector& q,
                            const WeightedNorm& norm, const TolerancePolicy& pol) {
  ProjectionResult res = project(hull, q, norm, pol);
  if (res.distance <= pol.tol_iter) {
    throw PreconditionError("separating_direction: target is inside the hull");
  }
  Vector w = weight_vector(q.size(), norm);
  return w.cwiseProduct(q - res.point);
}

bool support_membership_check(const std::vector<Vector>& points, const std::vector<Vector>& rays,
                              Rng& rng, const TolerancePolicy& pol) {
  HullGenerators hull(points, rays);
  Eigen::Index m = hull.dim();

  auto support_at = [&](const Vector& p) -> ExtendedReal {
    for (const Vector& r : rays) {
      if (r.dot(p) > scaled_tol(pol.tol_exact, r.norm() * p.norm())) {
        return ExtendedReal::plus_inf();
      }
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Vector& a : points) best = std::max(best, a.dot(p));
    return ExtendedReal(best);
  };

  ProjectionResult res = project(hull, Vector::Zero(m), WeightedNorm{}, pol);
  bool member = res.distance <= pol.tol_iter;

  bool found_negative = false;
  if (!member) {
    Vector witness = separating_direction(hull, Vector::Zero(m), WeightedNorm{}, pol);
    ExtendedReal s = support_at(witness);
    found_negative = s.is_finite() && s.value() < -0.25 * res.distance * res.distance;
  }
  if (!found_negative) {
    for (int k = 0; k < 64; ++k) {
      Vector p = rng.normal_vector(m);
      ExtendedReal s = support_at(p);
      if (s.is_finite() && s.value() < -scaled_tol(pol.tol_exact, p.norm())) {
        found_negative = true;
        break;
      }
    }
  }
  return member == !found_negative;
}

}  // namespace fitztk

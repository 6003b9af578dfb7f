#include "fitztk/generators.hpp"

#include <algorithm>
#include <cmath>

namespace fitztk {

PolygonalOperator cross_operator() {
  Vector one = Vector::Constant(1, 1.0);
  Vector zero = Vector::Zero(1);
  std::vector<GraphPiece> pieces;
  pieces.push_back(GraphPiece::line(PairedPoint(zero, zero), PairedPoint(one, zero)));
  pieces.push_back(GraphPiece::line(PairedPoint(zero, zero), PairedPoint(zero, one)));
  return PolygonalOperator(1, std::move(pieces));
}

PolygonalOperator identity_line() {
  Vector one = Vector::Constant(1, 1.0);
  Vector zero = Vector::Zero(1);
  std::vector<GraphPiece> pieces;
  pieces.push_back(GraphPiece::line(PairedPoint(zero, zero), PairedPoint(one, one)));
  return PolygonalOperator(1, std::move(pieces));
}

LinearMonotoneOperator gen_linear_monotone(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix gauss(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) gauss(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ();
  Vector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda[i] = rng.uniform(0.05, 3.0);
  if (n > 1 && rng.uniform() < 0.3) lambda[rng.uniform_int(0, static_cast<int>(n) - 1)] = 0.0;
  Matrix s = q * lambda.asDiagonal() * q.transpose();
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.normal();
  }
  Matrix k = 0.5 * (m - m.transpose());
  Vector b = rng.normal_vector(n);
  return LinearMonotoneOperator(s + k, b);
}

PolygonalOperator gen_maximal_1d(std::uint64_t seed) {
  Rng rng(seed);
  int corners = rng.uniform_int(2, 5);
  std::vector<double> xs(corners), ys(corners);
  xs[0] = rng.uniform(-2.0, 0.0);
  ys[0] = rng.uniform(-2.0, 0.0);
  for (int i = 1; i < corners; ++i) {
    xs[i] = xs[i - 1] + rng.uniform(0.3, 1.5);
    ys[i] = ys[i - 1] + rng.uniform(0.3, 1.5);
  }
  auto pp = [](double x, double y) {
    return PairedPoint(Vector::Constant(1, x), Vector::Constant(1, y));
  };
  std::vector<GraphPiece> pieces;
  pieces.push_back(GraphPiece::ray(pp(xs[0], ys[0]), pp(-1.0, 0.0)));
  for (int i = 0; i + 1 < corners; ++i) {
    pieces.push_back(GraphPiece::segment(pp(xs[i], ys[i]), pp(xs[i + 1], ys[i])));
    pieces.push_back(GraphPiece::segment(pp(xs[i + 1], ys[i]), pp(xs[i + 1], ys[i + 1])));
  }
  pieces.push_back(GraphPiece::ray(pp(xs[corners - 1], ys[corners - 1]), pp(1.0, 0.0)));
  return PolygonalOperator(1, std::move(pieces));
}

PolygonalOperator gen_point_cloud_monotone(Eigen::Index n, int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PairedPoint> accepted;
  accepted.push_back(rng.normal_pair(n, 1.0));
  int attempts = 0;
  while (static_cast<int>(accepted.size()) < m && attempts < 400 * m) {
    ++attempts;
    PairedPoint cand = rng.normal_pair(n, 1.5);
    bool ok = true;
    for (const PairedPoint& z : accepted) {
      if (coupling(cand - z) < 0.0) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(std::move(cand));
  }
  std::vector<GraphPiece> pieces;
  pieces.reserve(accepted.size());
  for (PairedPoint& z : accepted) pieces.push_back(GraphPiece::point(std::move(z)));
  return PolygonalOperator(n, std::move(pieces));
}

PolygonalOperator gen_polygonal_soup(Eigen::Index n, int num_pieces, std::uint64_t seed,
                                     bool bounded_only) {
  Rng rng(seed);
  std::vector<GraphPiece> pieces;
  while (static_cast<int>(pieces.size()) < num_pieces) {
    double pick = rng.uniform();
    if (bounded_only) pick *= 0.7;
    if (pick < 0.35) {
      pieces.push_back(GraphPiece::point(rng.normal_pair(n, 1.5)));
    } else if (pick < 0.7) {
      PairedPoint a = rng.normal_pair(n, 1.5);
      PairedPoint b = rng.normal_pair(n, 1.5);
      if ((a - b).norm() < 1e-9) continue;
      pieces.push_back(GraphPiece::segment(std::move(a), std::move(b)));
    } else if (pick < 0.9) {
      PairedPoint dir = rng.normal_pair(n, 1.0);
      if (dir.norm() < 1e-9) continue;
      pieces.push_back(GraphPiece::ray(rng.normal_pair(n, 1.5), std::move(dir)));
    } else {
      PairedPoint dir = rng.normal_pair(n, 1.0);
      if (dir.norm() < 1e-9) continue;
      pieces.push_back(GraphPiece::line(rng.normal_pair(n, 1.5), std::move(dir)));
    }
  }
  return PolygonalOperator(n, std::move(pieces));
}

std::vector<PairedPoint> ratio_candidates(Eigen::Index n, Rng& rng, int count) {
  std::vector<PairedPoint> out;
  out.reserve(count);
  for (Eigen::Index i = 0; i < n && static_cast<int>(out.size()) < count; ++i) {
    for (Eigen::Index j = 0; j < n && static_cast<int>(out.size()) < count; ++j) {
      for (double s : {1.0, -1.0}) {
        Vector x = Vector::Zero(n);
        Vector xs = Vector::Zero(n);
        x[i] = s;
        xs[j] = -s;
        out.emplace_back(x, xs);
        if (static_cast<int>(out.size()) >= count) break;
      }
    }
  }
  while (static_cast<int>(out.size()) < count) {
    PairedPoint p = rng.normal_pair(n, 1.0);
    if (p.norm() > 1e-9) out.push_back(std::move(p));
  }
  return out;
}

PairedPoint coupling_null_pair(Eigen::Index n, Rng& rng) {
  if (n == 1) {
    // in one dimension <u, u*> = 0 forces a zero component
    if (rng.uniform() < 0.5) return PairedPoint(Vector::Constant(1, rng.normal()), Vector::Zero(1));
    return PairedPoint(Vector::Zero(1), Vector::Constant(1, rng.normal()));
  }
  Vector u = rng.normal_vector(n);
  if (u.norm() < 1e-12) u[0] = 1.0;
  Vector us = rng.normal_vector(n);
  us -= (u.dot(us) / u.squaredNorm()) * u;
  return PairedPoint(u, us);
}

}  // namespace fitztk

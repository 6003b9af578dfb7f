#include "fitztk/operator_graph.hpp"

#include <algorithm>
#include <cmath>

namespace fitztk {

GraphPiece GraphPiece::point(PairedPoint z) {
  PairedPoint zero = PairedPoint::zero(z.dim());
  return GraphPiece(PieceKind::Point, std::move(z), zero, zero);
}

GraphPiece GraphPiece::segment(PairedPoint a, PairedPoint b) {
  if (a.dim() != b.dim()) throw DimensionError("segment: endpoint dimension mismatch");
  PairedPoint dir = b - a;
  if (dir.x.norm() == 0.0 && dir.xstar.norm() == 0.0) {
    throw InvariantError("segment: coincident endpoints must be a point piece");
  }
  return GraphPiece(PieceKind::Segment, std::move(a), std::move(dir), std::move(b));
}

GraphPiece GraphPiece::ray(PairedPoint base, PairedPoint dir) {
  if (base.dim() != dir.dim()) throw DimensionError("ray: dimension mismatch");
  if (dir.x.norm() == 0.0 && dir.xstar.norm() == 0.0) {
    throw InvariantError("ray: direction must be nonzero");
  }
  PairedPoint b = base;
  return GraphPiece(PieceKind::Ray, std::move(base), std::move(dir), std::move(b));
}

GraphPiece GraphPiece::line(PairedPoint base, PairedPoint dir) {
  if (base.dim() != dir.dim()) throw DimensionError("line: dimension mismatch");
  if (dir.x.norm() == 0.0 && dir.xstar.norm() == 0.0) {
    throw InvariantError("line: direction must be nonzero");
  }
  PairedPoint b = base;
  return GraphPiece(PieceKind::Line, std::move(base), std::move(dir), std::move(b));
}

ParamRange GraphPiece::range() const {
  switch (kind_) {
    case PieceKind::Point:
      return ParamRange::single();
    case PieceKind::Segment:
      return ParamRange::unit();
    case PieceKind::Ray:
      return ParamRange::nonnegative();
    case PieceKind::Line:
      return ParamRange::full_line();
  }
  return ParamRange::single();
}

PairedPoint GraphPiece::at(double t) const {
  if (kind_ == PieceKind::Point) return base_;
  if (kind_ == PieceKind::Segment && t == 1.0) return second_;
  return base_ + t * dir_;
}

const char* piece_kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::Point:
      return "point";
    case PieceKind::Segment:
      return "segment";
    case PieceKind::Ray:
      return "ray";
    case PieceKind::Line:
      return "line";
  }
  return "?";
}

PolygonalOperator::PolygonalOperator(Eigen::Index n, std::vector<GraphPiece> ps)
    : dimension(n), pieces(std::move(ps)) {
  if (pieces.empty()) throw InvariantError("PolygonalOperator: pieces must be nonempty");
  for (const GraphPiece& p : pieces) {
    if (p.dim() != dimension) {
      throw DimensionError("PolygonalOperator: piece dimension mismatch");
    }
  }
}

LinearMonotoneOperator::LinearMonotoneOperator(Matrix A, Vector b, const TolerancePolicy& pol)
    : a_(std::move(A)), b_(std::move(b)) {
  if (a_.rows() != a_.cols() || a_.rows() != b_.size() || b_.size() < 1) {
    throw DimensionError("LinearMonotoneOperator: A must be n x n and b length n");
  }
  as_ = 0.5 * (a_ + a_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(as_);
  eigenvectors_ = es.eigenvectors();
  eigenvalues_ = es.eigenvalues();
  double min_eig = eigenvalues_.minCoeff();
  double max_eig = eigenvalues_.size() ? eigenvalues_.maxCoeff() : 0.0;
  if (min_eig < -scaled_tol(pol.tol_exact, std::abs(max_eig))) {
    throw NotMonotoneError("LinearMonotoneOperator: symmetric part is not PSD", min_eig);
  }
  eigenvalues_ = eigenvalues_.cwiseMax(0.0);
  eig_zero_threshold_ = scaled_tol(pol.tol_exact, eigenvalues_.maxCoeff());
}

Vector LinearMonotoneOperator::pinv_apply(const Vector& u) const {
  Vector w = eigenvectors_.transpose() * u;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w[i] = eigenvalues_[i] > eig_zero_threshold_ ? w[i] / eigenvalues_[i] : 0.0;
  }
  return eigenvectors_ * w;
}

double LinearMonotoneOperator::range_residual(const Vector& u) const {
  Vector w = eigenvectors_.transpose() * u;
  double sq = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (eigenvalues_[i] <= eig_zero_threshold_) sq += w[i] * w[i];
  }
  return std::sqrt(sq);
}

Eigen::Index operator_dim(const OperatorGraph& op) {
  return std::visit([](const auto& t) -> Eigen::Index {
    using T = std::decay_t<decltype(t)>;
    if constexpr (std::is_same_v<T, PolygonalOperator>) return t.dimension;
    else return t.dim();
  }, op);
}

const char* operator_kind_name(const OperatorGraph& op) {
  if (std::holds_alternative<PolygonalOperator>(op)) return "polygonal";
  if (std::holds_alternative<LinearMonotoneOperator>(op)) return "linear";
  return "cubic1d";
}

PairedPoint some_graph_point(const OperatorGraph& op) {
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    return poly->pieces.front().base();
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    return PairedPoint(Vector::Zero(lin->dim()), lin->b());
  }
  return PairedPoint(Vector::Zero(1), Vector::Zero(1));
}

namespace {

double kernel_scale(const PairedPoint& z, const GraphPiece& piece) {
  double dn = piece.direction().norm();
  double bn = piece.base().norm();
  double zn = z.norm();
  return std::max({1.0, dn * dn, dn * (1.0 + zn + bn)});
}

}  // namespace

QuadExtremum piece_sup_affine_quadratic(const GraphPiece& piece, const PairedPoint& z,
                                        const TolerancePolicy& pol) {
  if (piece.dim() != z.dim()) throw DimensionError("piece_sup_affine_quadratic: dimension mismatch");
  const PairedPoint& base = piece.base();
  const PairedPoint& dir = piece.direction();
  double q2 = -coupling(dir);
  double q1 = pair_dot(z, dir) - pair_dot(base, dir);
  double q0 = pair_dot(z, base) - coupling(base);
  double zt = pol.tol_exact * kernel_scale(z, piece);
  return maximize_quadratic(q2, q1, q0, piece.range(), zt);
}

QuadExtremum piece_inf_coupling(const GraphPiece& piece, const PairedPoint& z,
                                const TolerancePolicy& pol) {
  if (piece.dim() != z.dim()) throw DimensionError("piece_inf_coupling: dimension mismatch");
  PairedPoint d = z - piece.base();
  const PairedPoint& dir = piece.direction();
  double q2 = coupling(dir);
  double q1 = -pair_dot(d, dir);
  double q0 = coupling(d);
  double zt = pol.tol_exact * kernel_scale(z, piece);
  return minimize_quadratic(q2, q1, q0, piece.range(), zt);
}

namespace {

// c(alpha_i(t) - alpha_j(s)) as a bivariate quadratic over the piece ranges.
BoxQuadratic pair_coupling_quadratic(const GraphPiece& pi, const GraphPiece& pj) {
  const PairedPoint d = pi.base() - pj.base();
  const PairedPoint& u = pi.direction();
  const PairedPoint& v = pj.direction();
  BoxQuadratic q;
  q.q0 = coupling(d);
  q.gt = pair_dot(d, u);
  q.gs = -pair_dot(d, v);
  q.htt = coupling(u);
  q.hss = coupling(v);
  q.hts = -pair_dot(u, v);
  q.rt = pi.range();
  q.rs = pj.range();
  return q;
}

}  // namespace

MonotonicityResult is_monotone(const OperatorGraph& op, const TolerancePolicy& pol) {
  const auto* poly = std::get_if<PolygonalOperator>(&op);
  if (!poly) return {true, std::nullopt};  // linear: PSD by construction; cubic: increasing

  for (std::size_t i = 0; i < poly->pieces.size(); ++i) {
    for (std::size_t j = i; j < poly->pieces.size(); ++j) {
      const GraphPiece& pi = poly->pieces[i];
      const GraphPiece& pj = poly->pieces[j];
      BoxQuadratic q = pair_coupling_quadratic(pi, pj);
      BoxMinimum m = minimize_over_box(q, pol.tol_exact);
      if (m.value.is_minus_inf()) {
        // unbounded below: pick a concrete violating parameter pair by
        // doubling along the box until the value turns negative
        for (double r = 1.0; r <= 1e9; r *= 2.0) {
          for (double t : {q.rt.clamp(r), q.rt.clamp(-r)}) {
            for (double s : {q.rs.clamp(r), q.rs.clamp(-r)}) {
              if (q.eval(t, s) < -pol.tol_exact) {
                return {false, std::make_pair(pi.at(t), pj.at(s))};
              }
            }
          }
        }
        return {false, std::make_pair(pi.base(), pj.base())};
      }
      if (m.value.value() < -pol.tol_exact) {
        return {false, std::make_pair(pi.at(m.t), pj.at(m.s))};
      }
    }
  }
  return {true, std::nullopt};
}

HullGenerators::HullGenerators(std::vector<Vector> pts, std::vector<Vector> rs)
    : points(std::move(pts)), rays(std::move(rs)) {
  if (points.empty()) throw InvariantError("HullGenerators: points must be nonempty");
  Eigen::Index m = points.front().size();
  for (const Vector& p : points) {
    if (p.size() != m) throw DimensionError("HullGenerators: point dimension mismatch");
  }
  for (const Vector& r : rays) {
    if (r.size() != m) throw DimensionError("HullGenerators: ray dimension mismatch");
    if (r.norm() == 0.0) throw InvariantError("HullGenerators: rays must be nonzero");
  }
}

namespace {

// Shared projection logic: extract(piece pair point) gives the factor
// coordinates (x for the domain, xstar for the range, [x;xstar] for graphs).
template <typename Extract>
HullGenerators projected_hull(const PolygonalOperator& poly, Extract extract) {
  std::vector<Vector> points;
  std::vector<Vector> rays;
  for (const GraphPiece& p : poly.pieces) {
    switch (p.kind()) {
      case PieceKind::Point:
        points.push_back(extract(p.base()));
        break;
      case PieceKind::Segment:
        points.push_back(extract(p.base()));
        points.push_back(extract(p.second()));
        break;
      case PieceKind::Ray: {
        points.push_back(extract(p.base()));
        Vector d = extract(p.direction());
        if (d.norm() > 0.0) rays.push_back(d);
        break;
      }
      case PieceKind::Line: {
        points.push_back(extract(p.base()));
        Vector d = extract(p.direction());
        if (d.norm() > 0.0) {
          rays.push_back(d);
          rays.push_back(-d);
        }
        break;
      }
    }
  }
  return HullGenerators(std::move(points), std::move(rays));
}

HullGenerators full_space_hull(Eigen::Index n) {
  std::vector<Vector> points{Vector::Zero(n)};
  std::vector<Vector> rays;
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    rays.push_back(e);
    rays.push_back(-e);
  }
  return HullGenerators(std::move(points), std::move(rays));
}

}  // namespace

HullGenerators domain_hull(const OperatorGraph& op) {
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    return projected_hull(*poly, [](const PairedPoint& z) { return z.x; });
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    return full_space_hull(lin->dim());
  }
  return full_space_hull(1);
}

HullGenerators range_hull(const OperatorGraph& op) {
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    return projected_hull(*poly, [](const PairedPoint& z) { return z.xstar; });
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    std::vector<Vector> points{lin->b()};
    std::vector<Vector> rays;
    for (Eigen::Index i = 0; i < lin->dim(); ++i) {
      Vector col = lin->a().col(i);
      if (col.norm() > 0.0) {
        rays.push_back(col);
        rays.push_back(-col);
      }
    }
    return HullGenerators(std::move(points), std::move(rays));
  }
  return full_space_hull(1);
}

HullGenerators graph_hull(const OperatorGraph& op) {
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    return projected_hull(*poly, [](const PairedPoint& z) { return z.flatten(); });
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    Eigen::Index n = lin->dim();
    std::vector<Vector> points{PairedPoint(Vector::Zero(n), lin->b()).flatten()};
    std::vector<Vector> rays;
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector e = Vector::Zero(n);
      e[i] = 1.0;
      Vector d = PairedPoint(e, lin->a() * e).flatten();
      rays.push_back(d);
      rays.push_back(-d);
    }
    return HullGenerators(std::move(points), std::move(rays));
  }
  // conv of the cubic curve is the whole plane
  return full_space_hull(2);
}

std::vector<Vector> domain_affine_sample(const OperatorGraph& op) {
  std::vector<Vector> pts;
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    for (const GraphPiece& p : poly->pieces) {
      pts.push_back(p.base().x);
      if (p.kind() == PieceKind::Segment) {
        pts.push_back(p.second().x);
      } else if (p.kind() != PieceKind::Point) {
        pts.push_back(p.base().x + p.direction().x);
      }
    }
    return pts;
  }
  Eigen::Index n = operator_dim(op);
  pts.push_back(Vector::Zero(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    pts.push_back(e);
  }
  return pts;
}

double AffineHullBasis::residual(const Vector& x) const {
  return orthogonal_component(x).norm();
}

Vector AffineHullBasis::orthogonal_component(const Vector& x) const {
  Vector r = x - base;
  for (const Vector& b : basis) r -= b.dot(r) * b;
  return r;
}

AffineHullBasis affine_hull_basis(const std::vector<Vector>& points,
                                  const TolerancePolicy& pol) {
  if (points.empty()) throw InvariantError("affine_hull_basis: points must be nonempty");
  AffineHullBasis hull;
  hull.base = points.front();
  double scale = 0.0;
  for (const Vector& p : points) scale = std::max(scale, (p - hull.base).norm());
  double pivot = scaled_tol(pol.tol_exact, scale);
  for (const Vector& p : points) {
    Vector r = p - hull.base;
    for (const Vector& b : hull.basis) r -= b.dot(r) * b;
    if (r.norm() > pivot) hull.basis.push_back(r.normalized());
  }
  return hull;
}

}  // namespace fitztk

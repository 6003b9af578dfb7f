#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fitztk/core.hpp"
#include "fitztk/quadratic.hpp"

namespace fitztk {

enum class PieceKind { Point, Segment, Ray, Line };

// One exactly-represented component of a graph in Z: a single pair, a
// segment between two pairs, or a half/full line base + t * dir. The
// parameterization alpha(t) = base + t * dir is shared by all kinds; the
// admissible t-range depends on the kind.
class GraphPiece {
 public:
  static GraphPiece point(PairedPoint z);
  static GraphPiece segment(PairedPoint a, PairedPoint b);  // rejects a == b
  static GraphPiece ray(PairedPoint base, PairedPoint dir);   // rejects dir == 0
  static GraphPiece line(PairedPoint base, PairedPoint dir);  // rejects dir == 0

  PieceKind kind() const { return kind_; }
  Eigen::Index dim() const { return base_.dim(); }

  const PairedPoint& base() const { return base_; }
  const PairedPoint& direction() const { return dir_; }
  /// Second endpoint; only meaningful for segments.
  const PairedPoint& second() const { return second_; }

  ParamRange range() const;
  PairedPoint at(double t) const;

 private:
  GraphPiece(PieceKind k, PairedPoint base, PairedPoint dir, PairedPoint second)
      : kind_(k), base_(std::move(base)), dir_(std::move(dir)), second_(std::move(second)) {}

  PieceKind kind_;
  PairedPoint base_;
  PairedPoint dir_;
  PairedPoint second_;
};

const char* piece_kind_name(PieceKind k);

// Graph T as a soup of pieces, all of one dimension.
struct PolygonalOperator {
  Eigen::Index dimension = 0;
  std::vector<GraphPiece> pieces;

  PolygonalOperator(Eigen::Index n, std::vector<GraphPiece> ps);
};

// Single-valued affine map x -> A x + b whose symmetric part is positive
// semidefinite; the eigendecomposition of (A + A^T)/2 and the derived
// pseudo-inverse are cached at construction.
class LinearMonotoneOperator {
 public:
  LinearMonotoneOperator(Matrix A, Vector b, const TolerancePolicy& pol = {});

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  Eigen::Index dim() const { return b_.size(); }
  const Matrix& symmetric_part() const { return as_; }
  double min_eigenvalue() const { return eigenvalues_.minCoeff(); }

  Vector apply(const Vector& x) const { return a_ * x + b_; }

  /// Pseudo-inverse of the symmetric part applied to u.
  Vector pinv_apply(const Vector& u) const;
  /// Norm of the component of u outside range((A+A^T)/2).
  double range_residual(const Vector& u) const;

 private:
  Matrix a_;
  Vector b_;
  Matrix as_;
  Matrix eigenvectors_;
  Vector eigenvalues_;  // clamped at zero
  double eig_zero_threshold_;
};

// The curve {(a, a^3) : a in R}; dimension 1. Evaluation logic lives with
// the Fitzpatrick-function code since the curve is not polygonal.
struct CubicOperator {
  Eigen::Index dim() const { return 1; }
};

using OperatorGraph = std::variant<PolygonalOperator, LinearMonotoneOperator, CubicOperator>;

Eigen::Index operator_dim(const OperatorGraph& op);
const char* operator_kind_name(const OperatorGraph& op);

/// Any point of Graph T; used as a finite anchor by samplers.
PairedPoint some_graph_point(const OperatorGraph& op);

// --- piece-level optimization kernels -------------------------------------

/// Exact sup over the piece of  t -> pair_dot(z, alpha(t)) - c(alpha(t)),
/// the per-piece Fitzpatrick objective. Quadratic in t with leading
/// coefficient -c(dir).
QuadExtremum piece_sup_affine_quadratic(const GraphPiece& piece, const PairedPoint& z,
                                        const TolerancePolicy& pol = {});

/// Exact inf over the piece of  t -> c(z - alpha(t)).
QuadExtremum piece_inf_coupling(const GraphPiece& piece, const PairedPoint& z,
                                const TolerancePolicy& pol = {});

// --- monotonicity ----------------------------------------------------------

struct MonotonicityResult {
  bool monotone = true;
  /// A pair of graph points with c(first - second) < 0 when not monotone.
  std::optional<std::pair<PairedPoint, PairedPoint>> witness;
};

/// Exact check of c(z - z') >= 0 over all pairs of graph points, by global
/// minimization of a bivariate quadratic per ordered piece pair. Linear
/// operators answer from the PSD invariant; the cubic curve is monotone.
MonotonicityResult is_monotone(const OperatorGraph& op, const TolerancePolicy& pol = {});

// --- hulls and affine hulls -------------------------------------------------

// conv(points) + cone(rays) generators of a projected or flattened graph.
struct HullGenerators {
  std::vector<Vector> points;
  std::vector<Vector> rays;

  HullGenerators() = default;
  HullGenerators(std::vector<Vector> pts, std::vector<Vector> rs);
  Eigen::Index dim() const { return points.empty() ? 0 : points.front().size(); }
};

/// Generators of conv D(T) = conv Pr_X(Graph T).
HullGenerators domain_hull(const OperatorGraph& op);
/// Generators of conv R(T) = conv Pr_{X*}(Graph T).
HullGenerators range_hull(const OperatorGraph& op);
/// Generators of conv Graph T in flattened coordinates [x; xstar].
HullGenerators graph_hull(const OperatorGraph& op);

/// Points spanning aff D(T) (bases and base+dir of every piece, projected).
std::vector<Vector> domain_affine_sample(const OperatorGraph& op);

struct AffineHullBasis {
  Vector base;
  std::vector<Vector> basis;  // orthonormal

  /// Residual distance from x to base + span(basis).
  double residual(const Vector& x) const;
  bool contains(const Vector& x, double tol) const { return residual(x) <= tol; }
  /// Component of x - base orthogonal to the span; zero vector when inside.
  Vector orthogonal_component(const Vector& x) const;
};

/// Orthonormal basis of aff(points) via Gram-Schmidt with a pivot threshold.
AffineHullBasis affine_hull_basis(const std::vector<Vector>& points,
                                  const TolerancePolicy& pol = {});

}  // namespace fitztk

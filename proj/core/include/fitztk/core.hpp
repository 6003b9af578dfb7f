#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "fitztk/errors.hpp"

namespace fitztk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Tolerances shared by the whole toolkit.
//   tol_exact   closed-form comparisons
//   tol_iter    iterative results (projections, bisections)
//   tol_slack   minimum admissible signed slack of an inequality instance
//   bisect_width  termination width of 1-D bisections
struct TolerancePolicy {
  double tol_exact = 1e-9;
  double tol_iter = 1e-7;
  double tol_slack = 1e-8;
  double bisect_width = 1e-12;

  void validate() const {
    if (tol_exact <= 0 || tol_iter <= 0 || tol_slack <= 0 || bisect_width <= 0) {
      throw InvariantError("TolerancePolicy fields must be strictly positive");
    }
  }
};

/// Absolute tolerance scaled by the magnitude of the quantities it compares.
inline double scaled_tol(double tol, double magnitude) {
  return tol * std::max(1.0, magnitude);
}

// Weight for the pair norm  ||(x,x*)||_delta = sqrt(delta |x|^2 + (1/delta) |x*|^2).
// delta = 1 recovers the plain Euclidean pair norm.
struct WeightedNorm {
  double delta = 1.0;

  WeightedNorm() = default;
  explicit WeightedNorm(double d) : delta(d) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw InvariantError("WeightedNorm delta must be a positive finite real");
    }
  }
};

// An element z = (x, x*) of Z = R^n x R^n. Primal coordinates in x,
// dual coordinates in xstar; both the same length with finite entries.
struct PairedPoint {
  Vector x;
  Vector xstar;

  PairedPoint() = default;
  PairedPoint(Vector x_, Vector xstar_);

  Eigen::Index dim() const { return x.size(); }

  static PairedPoint zero(Eigen::Index n) {
    return PairedPoint(Vector::Zero(n), Vector::Zero(n));
  }

  /// Concatenated [x; xstar], the flattened coordinates in Z.
  Vector flatten() const;
  static PairedPoint unflatten(const Vector& v);

  double norm() const { return std::sqrt(x.squaredNorm() + xstar.squaredNorm()); }
};

PairedPoint operator+(const PairedPoint& a, const PairedPoint& b);
PairedPoint operator-(const PairedPoint& a, const PairedPoint& b);
PairedPoint operator*(double s, const PairedPoint& a);
PairedPoint operator-(const PairedPoint& a);

/// c(z) = <x, x*>.
double coupling(const PairedPoint& z);

/// z . w = <z.x, w.xstar> + <w.x, z.xstar>; the self-duality product of Z.
double pair_dot(const PairedPoint& z, const PairedPoint& w);

/// sqrt(delta |x|^2 + (1/delta) |x*|^2).
double weighted_norm(const PairedPoint& z, const WeightedNorm& w);

// Deterministic random source. mt19937_64 output is fully pinned by the
// standard and the derived draws below avoid implementation-defined
// distributions, so identical seeds give identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Box-Muller; consumes exactly two uniform draws per call.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(eng_() % span);
  }

  Vector normal_vector(Eigen::Index n, double scale = 1.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * normal();
    return v;
  }

  PairedPoint normal_pair(Eigen::Index n, double scale = 1.0) {
    return PairedPoint(normal_vector(n, scale), normal_vector(n, scale));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fitztk

#include "fitztk/core.hpp"

namespace fitztk {

namespace {

void check_finite(const Vector& v, const char* which) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvariantError(std::string("PairedPoint ") + which + " has a non-finite coordinate");
    }
  }
}

}  // namespace

PairedPoint::PairedPoint(Vector x_, Vector xstar_) : x(std::move(x_)), xstar(std::move(xstar_)) {
  if (x.size() != xstar.size()) {
    throw DimensionError("PairedPoint: x and xstar must have the same length");
  }
  if (x.size() < 1) {
    throw InvariantError("PairedPoint: dimension must be at least 1");
  }
  check_finite(x, "x");
  check_finite(xstar, "xstar");
}

Vector PairedPoint::flatten() const {
  Vector v(2 * dim());
  v.head(dim()) = x;
  v.tail(dim()) = xstar;
  return v;
}

PairedPoint PairedPoint::unflatten(const Vector& v) {
  if (v.size() % 2 != 0 || v.size() == 0) {
    throw DimensionError("PairedPoint::unflatten: length must be a positive even number");
  }
  Eigen::Index n = v.size() / 2;
  return PairedPoint(v.head(n), v.tail(n));
}

PairedPoint operator+(const PairedPoint& a, const PairedPoint& b) {
  if (a.dim() != b.dim()) throw DimensionError("PairedPoint +: dimension mismatch");
  return PairedPoint(a.x + b.x, a.xstar + b.xstar);
}

PairedPoint operator-(const PairedPoint& a, const PairedPoint& b) {
  if (a.dim() != b.dim()) throw DimensionError("PairedPoint -: dimension mismatch");
  return PairedPoint(a.x - b.x, a.xstar - b.xstar);
}

PairedPoint operator*(double s, const PairedPoint& a) {
  return PairedPoint(s * a.x, s * a.xstar);
}

PairedPoint operator-(const PairedPoint& a) { return PairedPoint(-a.x, -a.xstar); }

double coupling(const PairedPoint& z) { return z.x.dot(z.xstar); }

double pair_dot(const PairedPoint& z, const PairedPoint& w) {
  if (z.dim() != w.dim()) throw DimensionError("pair_dot: dimension mismatch");
  return z.x.dot(w.xstar) + w.x.dot(z.xstar);
}

double weighted_norm(const PairedPoint& z, const WeightedNorm& w) {
  return std::sqrt(w.delta * z.x.squaredNorm() + z.xstar.squaredNorm() / w.delta);
}

}  // namespace fitztk

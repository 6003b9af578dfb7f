#include <doctest.h>

#include "fitztk/fitzpatrick.hpp"
#include "fitztk/generators.hpp"

using namespace fitztk;

namespace {

PairedPoint pp1(double x, double s) {
  return PairedPoint(Vector::Constant(1, x), Vector::Constant(1, s));
}

OperatorGraph point_origin() {
  return PolygonalOperator(1, {GraphPiece::point(pp1(0, 0))});
}

// dense-grid oracle for 1-D operators: sup over sampled graph points
double grid_phi(const OperatorGraph& op, const PairedPoint& z, double window, int steps) {
  double best = -std::numeric_limits<double>::infinity();
  auto offer = [&](const PairedPoint& a) {
    best = std::max(best, pair_dot(z, a) - coupling(a));
  };
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    for (const GraphPiece& p : poly->pieces) {
      for (int i = 0; i <= steps; ++i) {
        double t = -window + 2.0 * window * i / steps;
        double tc = p.range().clamp(t);
        if (std::isfinite(tc)) offer(p.at(tc));
      }
    }
  } else {
    for (int i = 0; i <= steps; ++i) {
      double a = -window + 2.0 * window * i / steps;
      offer(PairedPoint(Vector::Constant(1, a), Vector::Constant(1, a * a * a)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("cross operator: indicator of the origin") {
  OperatorGraph cross = cross_operator();
  CHECK(fitzpatrick(cross, pp1(0, 0)).value() == 0.0);
  CHECK(fitzpatrick(cross, pp1(1, 0)).is_plus_inf());
  CHECK(fitzpatrick(cross, pp1(0, 1)).is_plus_inf());
  Rng rng(51);
  for (int k = 0; k < 50; ++k) {
    PairedPoint z = rng.normal_pair(1);
    if (z.norm() < 1e-6) continue;
    CHECK(fitzpatrick(cross, z).is_plus_inf());
  }
}

TEST_CASE("identity line closed form") {
  OperatorGraph line = identity_line();
  CHECK(fitzpatrick(line, pp1(1, 1)).value() == doctest::Approx(1.0));
  Rng rng(52);
  for (int k = 0; k < 200; ++k) {
    double x = rng.uniform(-3, 3), s = rng.uniform(-3, 3);
    double expect = 0.25 * (x + s) * (x + s);
    CHECK(fitzpatrick(line, pp1(x, s)).value() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(gap(line, pp1(x, s)).value() ==
          doctest::Approx(0.25 * (x - s) * (x - s)).epsilon(1e-9));
  }
  CHECK(gap(line, pp1(1, -1)).value() == doctest::Approx(1.0));
}

TEST_CASE("single point operator") {
  OperatorGraph pt = point_origin();
  Rng rng(53);
  for (int k = 0; k < 50; ++k) {
    CHECK(fitzpatrick(pt, rng.normal_pair(1)).value() == doctest::Approx(0.0));
  }
  CHECK(gap(pt, pp1(1, 1)).value() == doctest::Approx(-1.0));
}

TEST_CASE("cubic curve values against a dense grid") {
  OperatorGraph cub = CubicOperator{};
  CHECK(fitzpatrick(cub, pp1(0, 0)).value() == doctest::Approx(0.0));
  Rng rng(54);
  for (int k = 0; k < 100; ++k) {
    PairedPoint z = rng.normal_pair(1, 1.5);
    double exact = fitzpatrick(cub, z).value();
    double grid = grid_phi(cub, z, 6.0, 60000);
    CHECK(exact >= grid - 1e-7);
    CHECK(exact <= grid + 1e-4);  // grid resolution bound
  }
}

TEST_CASE("polygonal values against a dense grid") {
  Rng rng(55);
  for (int k = 0; k < 40; ++k) {
    OperatorGraph op = gen_polygonal_soup(1, 3, 900 + k, /*bounded_only=*/true);
    PairedPoint z = rng.normal_pair(1, 1.5);
    ExtendedReal phi = fitzpatrick(op, z);
    REQUIRE(phi.is_finite());
    double grid = grid_phi(op, z, 1.0, 4000);
    CHECK(phi.value() >= grid - 1e-9);
    CHECK(phi.value() <= grid + 1e-4);
  }
}

TEST_CASE("linear operator closed form for symmetric positive definite A") {
  Rng rng(56);
  for (int k = 0; k < 30; ++k) {
    Eigen::Index n = 1 + k % 3;
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rng.normal();
    Matrix a = m * m.transpose() + Matrix::Identity(n, n);  // SPD
    LinearMonotoneOperator lin(a, Vector::Zero(n));
    OperatorGraph op(lin);
    PairedPoint z = rng.normal_pair(n, 1.5);
    Vector r = a * z.x - z.xstar;
    double expect = 0.25 * r.dot(a.inverse() * r);
    CHECK(gap(op, z).value() == doctest::Approx(expect).epsilon(1e-9));
    CHECK(gap(op, z).value() >= -1e-12);
  }
}

TEST_CASE("linear operator with singular symmetric part") {
  // A = [[1,0],[0,0]]: u must stay in range(A_s) for phi to be finite
  Matrix a(2, 2);
  a << 1, 0, 0, 0;
  LinearMonotoneOperator lin(a, Vector::Zero(2));
  OperatorGraph op(lin);
  Vector x(2), good(2), bad(2);
  x << 1, 0;
  good << 0, 0;
  bad << 0, 1;
  CHECK(fitzpatrick(op, PairedPoint(x, good)).is_finite());
  CHECK(fitzpatrick(op, PairedPoint(x, bad)).is_plus_inf());
  CHECK(monotonically_related_gap(op, PairedPoint(x, bad)).is_minus_inf());
}

TEST_CASE("shifted support function examples") {
  OperatorGraph pt = PolygonalOperator(1, {GraphPiece::point(pp1(1, 2))});
  CHECK(support_shifted(pt, pp1(0, 0), pp1(3, 4)).value() == doctest::Approx(10.0));

  OperatorGraph ray = PolygonalOperator(1, {GraphPiece::ray(pp1(0, 0), pp1(1, 0))});
  CHECK(support_shifted(ray, pp1(0, 0), pp1(0, 1)).is_plus_inf());

  OperatorGraph line = identity_line();
  for (double s : {0.5, 1.0, 2.0}) {
    PairedPoint p = pp1(s, -s);
    CHECK(support_shifted(line, pp1(1, -1), p).value() == doctest::Approx(2.0 * s));
  }
}

TEST_CASE("support is positively homogeneous") {
  Rng rng(57);
  for (int k = 0; k < 100; ++k) {
    OperatorGraph op = gen_polygonal_soup(2, 3, 700 + k);
    PairedPoint z = rng.normal_pair(2);
    PairedPoint p = rng.normal_pair(2);
    double lam = rng.uniform(0.1, 5.0);
    ExtendedReal a = support_shifted(op, z, p);
    ExtendedReal b = support_shifted(op, z, lam * p);
    if (a.is_plus_inf()) {
      CHECK(b.is_plus_inf());
    } else {
      REQUIRE(b.is_finite());
      CHECK(b.value() == doctest::Approx(lam * a.value()).epsilon(1e-7));
    }
  }
}

TEST_CASE("monotonically related gap examples") {
  OperatorGraph pt = point_origin();
  CHECK(monotonically_related_gap(pt, pp1(1, 1)).value() == doctest::Approx(1.0));
  CHECK(monotonically_related_gap(pt, pp1(1, -1)).value() == doctest::Approx(-1.0));
  OperatorGraph line = identity_line();
  CHECK(monotonically_related_gap(line, pp1(1, -1)).value() == doctest::Approx(-1.0));
}

TEST_CASE("identity between phi and the related-gap infimum") {
  Rng rng(58);
  for (int k = 0; k < 300; ++k) {
    OperatorGraph op = [&]() -> OperatorGraph {
      switch (k % 4) {
        case 0:
          return gen_polygonal_soup(1 + k % 3, 4, 800 + k);
        case 1:
          return gen_linear_monotone(2, 800 + k);
        case 2:
          return gen_maximal_1d(800 + k);
        default:
          return CubicOperator{};
      }
    }();
    PairedPoint z = rng.normal_pair(operator_dim(op), 2.0);
    ExtendedReal phi = fitzpatrick(op, z);
    ExtendedReal rel = monotonically_related_gap(op, z);
    if (phi.is_finite()) {
      REQUIRE(rel.is_finite());
      double scale = 1.0 + std::abs(phi.value()) + std::abs(coupling(z));
      CHECK(std::abs(phi.value() + rel.value() - coupling(z)) <= 1e-9 * scale);
    } else {
      CHECK(rel.is_minus_inf());
    }
  }
}

TEST_CASE("monotone polar membership") {
  OperatorGraph pt = point_origin();
  CHECK(tplus_contains(pt, pp1(1, 1)));
  CHECK(!tplus_contains(pt, pp1(1, -1)));
  CHECK(tplus_contains(identity_line(), pp1(0, 0)));
}

TEST_CASE("phi is convex along segments") {
  Rng rng(59);
  for (int k = 0; k < 200; ++k) {
    OperatorGraph op = gen_polygonal_soup(1 + k % 2, 4, 600 + k, /*bounded_only=*/true);
    PairedPoint z = rng.normal_pair(operator_dim(op), 1.5);
    PairedPoint w = rng.normal_pair(operator_dim(op), 1.5);
    double t = rng.uniform();
    double lhs = fitzpatrick(op, t * z + (1.0 - t) * w).value();
    double rhs = t * fitzpatrick(op, z).value() + (1.0 - t) * fitzpatrick(op, w).value();
    CHECK(lhs <= rhs + 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("gap is plus-infinite exactly when phi is") {
  Rng rng(60);
  for (int k = 0; k < 100; ++k) {
    OperatorGraph op = gen_polygonal_soup(1, 4, 500 + k);
    PairedPoint z = rng.normal_pair(1, 2.0);
    CHECK(gap(op, z).is_plus_inf() == fitzpatrick(op, z).is_plus_inf());
  }
}

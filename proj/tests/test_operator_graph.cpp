#include <doctest.h>

#include <algorithm>

#include "fitztk/generators.hpp"
#include "fitztk/operator_graph.hpp"

using namespace fitztk;

namespace {

PairedPoint pp1(double x, double s) {
  return PairedPoint(Vector::Constant(1, x), Vector::Constant(1, s));
}

// dense-parameter oracle for the per-piece objectives
double piece_objective(const GraphPiece& p, const PairedPoint& z, double t) {
  PairedPoint a = p.at(t);
  return pair_dot(z, a) - coupling(a);
}

GraphPiece identity_piece() { return GraphPiece::line(pp1(0, 0), pp1(1, 1)); }

}  // namespace

TEST_CASE("piece construction invariants") {
  CHECK_THROWS_AS(GraphPiece::segment(pp1(1, 1), pp1(1, 1)), InvariantError);
  CHECK_THROWS_AS(GraphPiece::ray(pp1(0, 0), pp1(0, 0)), InvariantError);
  CHECK_THROWS_AS(GraphPiece::line(pp1(0, 0), pp1(0, 0)), InvariantError);
  CHECK_NOTHROW(GraphPiece::point(pp1(0, 0)));
  CHECK_THROWS_AS(PolygonalOperator(1, {}), InvariantError);
}

TEST_CASE("piece sup of the affine-quadratic objective") {
  // single point: the objective of the origin pair is identically zero
  GraphPiece pt = GraphPiece::point(pp1(0, 0));
  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    CHECK(piece_sup_affine_quadratic(pt, rng.normal_pair(1)).value.value() ==
          doctest::Approx(0.0));
  }

  // identity line at z = (1,1): maximize 2t - t^2 = 1
  QuadExtremum m = piece_sup_affine_quadratic(identity_piece(), pp1(1, 1));
  CHECK(m.value.value() == doctest::Approx(1.0));

  // ray with flat coupling and positive slope: unbounded
  GraphPiece ray = GraphPiece::ray(pp1(0, 0), pp1(1, 0));
  CHECK(piece_sup_affine_quadratic(ray, pp1(0, 1)).value.is_plus_inf());

  CHECK_THROWS_AS(
      piece_sup_affine_quadratic(pt, PairedPoint(Vector::Zero(2), Vector::Zero(2))),
      DimensionError);
}

TEST_CASE("piece inf of the coupling") {
  GraphPiece pt = GraphPiece::point(pp1(0, 0));
  CHECK(piece_inf_coupling(pt, pp1(1, 1)).value.value() == doctest::Approx(1.0));

  // identity line at z = (1,-1): minimize (1-t)(-1-t) = t^2 - 1 at t = 0
  QuadExtremum m = piece_inf_coupling(identity_piece(), pp1(1, -1));
  CHECK(m.value.value() == doctest::Approx(-1.0));
  CHECK(*m.arg == doctest::Approx(0.0));

  // ray (t, 0) against z = (0,1): c(z - alpha(t)) = -t, unbounded below
  GraphPiece ray = GraphPiece::ray(pp1(0, 0), pp1(1, 0));
  CHECK(piece_inf_coupling(ray, pp1(0, 1)).value.is_minus_inf());
}

TEST_CASE("piece kernels dominate sampled objective values") {
  Rng rng(32);
  for (int k = 0; k < 60; ++k) {
    Eigen::Index n = 1 + k % 3;
    PolygonalOperator soup = gen_polygonal_soup(n, 3, 1000 + k);
    PairedPoint z = rng.normal_pair(n, 1.5);
    for (const GraphPiece& p : soup.pieces) {
      QuadExtremum sup = piece_sup_affine_quadratic(p, z);
      QuadExtremum inf = piece_inf_coupling(p, z);
      for (int s = 0; s < 1000; ++s) {
        double t = p.range().clamp(rng.normal() * 3.0);
        if (!std::isfinite(t)) continue;
        double val = piece_objective(p, z, t);
        if (sup.value.is_finite()) CHECK(sup.value.value() >= val - 1e-9 * (1.0 + std::abs(val)));
        double cv = coupling(z - p.at(t));
        if (inf.value.is_finite()) CHECK(inf.value.value() <= cv + 1e-9 * (1.0 + std::abs(cv)));
      }
    }
  }
}

TEST_CASE("monotonicity of two-point operators") {
  std::vector<GraphPiece> good{GraphPiece::point(pp1(0, 0)), GraphPiece::point(pp1(1, 1))};
  CHECK(is_monotone(PolygonalOperator(1, good)).monotone);

  std::vector<GraphPiece> bad{GraphPiece::point(pp1(0, 1)), GraphPiece::point(pp1(1, 0))};
  MonotonicityResult r = is_monotone(PolygonalOperator(1, bad));
  CHECK(!r.monotone);
  REQUIRE(r.witness.has_value());
  CHECK(coupling(r.witness->first - r.witness->second) < 0.0);
}

TEST_CASE("cross operator is not monotone, with a witnessing pair") {
  MonotonicityResult r = is_monotone(cross_operator());
  CHECK(!r.monotone);
  REQUIRE(r.witness.has_value());
  CHECK(coupling(r.witness->first - r.witness->second) < -1e-9);
}

TEST_CASE("monotonicity is invariant under reordering and segment splitting") {
  Rng rng(33);
  for (int k = 0; k < 30; ++k) {
    PolygonalOperator op = gen_polygonal_soup(2, 4, 50 + k);
    bool base = is_monotone(op).monotone;

    std::vector<GraphPiece> reversed(op.pieces.rbegin(), op.pieces.rend());
    CHECK(is_monotone(PolygonalOperator(2, reversed)).monotone == base);

    std::vector<GraphPiece> split;
    for (const GraphPiece& p : op.pieces) {
      if (p.kind() == PieceKind::Segment) {
        PairedPoint mid = p.at(0.5);
        split.push_back(GraphPiece::segment(p.base(), mid));
        split.push_back(GraphPiece::segment(mid, p.second()));
      } else {
        split.push_back(p);
      }
    }
    CHECK(is_monotone(PolygonalOperator(2, split)).monotone == base);
  }
}

TEST_CASE("monotonicity against a pairwise sampling oracle") {
  Rng rng(34);
  for (int k = 0; k < 40; ++k) {
    PolygonalOperator op = gen_polygonal_soup(1 + k % 2, 3, 300 + k);
    MonotonicityResult r = is_monotone(op);
    if (!r.monotone) {
      REQUIRE(r.witness.has_value());
      CHECK(coupling(r.witness->first - r.witness->second) < 0.0);
      continue;
    }
    for (int s = 0; s < 300; ++s) {
      const GraphPiece& a = op.pieces[rng.uniform_int(0, static_cast<int>(op.pieces.size()) - 1)];
      const GraphPiece& b = op.pieces[rng.uniform_int(0, static_cast<int>(op.pieces.size()) - 1)];
      double ta = a.range().clamp(rng.normal() * 4.0);
      double tb = b.range().clamp(rng.normal() * 4.0);
      if (!std::isfinite(ta) || !std::isfinite(tb)) continue;
      CHECK(coupling(a.at(ta) - b.at(tb)) >= -1e-7);
    }
  }
}

TEST_CASE("curated generators produce monotone operators") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    CHECK(is_monotone(OperatorGraph(gen_maximal_1d(s))).monotone);
    CHECK(is_monotone(OperatorGraph(gen_point_cloud_monotone(2, 6, s))).monotone);
  }
}

TEST_CASE("linear operator PSD invariant") {
  Matrix bad(1, 1);
  bad << -1.0;
  try {
    LinearMonotoneOperator op(bad, Vector::Zero(1));
    CHECK(false);
  } catch (const NotMonotoneError& e) {
    CHECK(e.min_eigenvalue() == doctest::Approx(-1.0));
  }

  // rotation: skew part only, symmetric part zero, still admissible
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK_NOTHROW(LinearMonotoneOperator(rot, Vector::Zero(2)));

  Rng rng(35);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    LinearMonotoneOperator op = gen_linear_monotone(3, s);
    CHECK(op.min_eigenvalue() >= -1e-9);
    // randomized quadratic-form sampler agrees with the eigenvalue check
    for (int k = 0; k < 200; ++k) {
      Vector v = rng.normal_vector(3);
      CHECK(v.dot(op.symmetric_part() * v) >= -1e-7 * v.squaredNorm());
    }
  }
}

TEST_CASE("domain and range hull extraction") {
  // cross: domain is the whole line, encoded as base point plus both rays
  HullGenerators dom = domain_hull(cross_operator());
  CHECK(dom.points.size() == 2);  // both line bases project to the origin
  CHECK(dom.rays.size() == 2);    // the x-axis line contributes +/- 1
  bool plus = false, minus = false;
  for (const Vector& r : dom.rays) {
    plus = plus || r[0] > 0;
    minus = minus || r[0] < 0;
  }
  CHECK(plus);
  CHECK(minus);

  std::vector<GraphPiece> two{GraphPiece::point(pp1(0, 0)), GraphPiece::point(pp1(1, 1))};
  HullGenerators dom2 = domain_hull(OperatorGraph(PolygonalOperator(1, two)));
  CHECK(dom2.points.size() == 2);
  CHECK(dom2.rays.empty());

  std::vector<GraphPiece> one{GraphPiece::point(pp1(2, 5))};
  HullGenerators dom3 = domain_hull(OperatorGraph(PolygonalOperator(1, one)));
  REQUIRE(dom3.points.size() == 1);
  CHECK(dom3.points[0][0] == doctest::Approx(2.0));
  HullGenerators ran3 = range_hull(OperatorGraph(PolygonalOperator(1, one)));
  CHECK(ran3.points[0][0] == doctest::Approx(5.0));
}

TEST_CASE("affine hull basis") {
  std::vector<Vector> pts;
  Vector a(2), b(2);
  a << 0, 0;
  b << 1, 0;
  pts = {a, b};
  AffineHullBasis hull = affine_hull_basis(pts);
  CHECK(hull.basis.size() == 1);
  CHECK(std::abs(hull.basis[0][0]) == doctest::Approx(1.0));

  AffineHullBasis single = affine_hull_basis({a});
  CHECK(single.basis.empty());

  Vector c(2), d(2), e(2);
  c << 0, 0;
  d << 1, 1;
  e << 2, 2;
  AffineHullBasis collinear = affine_hull_basis({c, d, e});
  CHECK(collinear.basis.size() == 1);

  // rank oracle: full-pivot elimination on the difference matrix
  Rng rng(36);
  for (int k = 0; k < 50; ++k) {
    int m = rng.uniform_int(1, 6);
    Eigen::Index n = rng.uniform_int(1, 4);
    std::vector<Vector> sample;
    for (int i = 0; i < m; ++i) sample.push_back(rng.normal_vector(n));
    AffineHullBasis h = affine_hull_basis(sample);
    Matrix diffs(n, std::max(m - 1, 1));
    diffs.setZero();
    for (int i = 1; i < m; ++i) diffs.col(i - 1) = sample[i] - sample[0];
    Eigen::FullPivLU<Matrix> lu(diffs);
    lu.setThreshold(1e-9);
    CHECK(static_cast<int>(h.basis.size()) == lu.rank());
    for (const Vector& p : sample) CHECK(h.residual(p) <= 1e-7);
  }
}

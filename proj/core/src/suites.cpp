#include "fitztk/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "fitztk/generators.hpp"
#include "fitztk/operator_io.hpp"

namespace fitztk {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// instance aggregation

class SuiteRun {
 public:
  SuiteRun(std::string name, const SuiteConfig& cfg) : cfg_(cfg) {
    report_.suite = std::move(name);
    report_.seed = cfg.seed;
  }

  const TolerancePolicy& pol() const { return cfg_.tolerances; }

  void pass(ExtendedReal slack) {
    ++report_.instances;
    ++report_.passes;
    note_slack(slack);
  }

  void fail(ExtendedReal slack, const OperatorGraph* op, const std::string& inputs_json) {
    ++report_.instances;
    ++report_.failures;
    note_slack(slack);
    dump_failure(op, inputs_json);
  }

  void record(const SlackReport& r, const OperatorGraph* op, const std::string& inputs_json) {
    if (r.pass) {
      pass(r.slack);
    } else {
      fail(r.slack, op, inputs_json);
    }
  }

  void record_bool(bool ok, const OperatorGraph* op, const std::string& inputs_json) {
    if (ok) {
      pass(ExtendedReal(0.0));
    } else {
      fail(ExtendedReal(-1.0), op, inputs_json);
    }
  }

  void indeterminate() {
    ++report_.instances;
    ++report_.indeterminate;
  }

  void resampled() { ++report_.resampled; }

  SuiteReport finish() { return std::move(report_); }

 private:
  void note_slack(ExtendedReal s) { report_.worst_slack = min(report_.worst_slack, s); }

  void dump_failure(const OperatorGraph* op, const std::string& inputs_json) {
    if (!cfg_.write_failures || report_.failure_dumps.size() >= 5) return;
    std::string path = cfg_.dump_dir + "/" + report_.suite + "-fail-" +
                       std::to_string(report_.instances - 1) + ".json";
    std::ofstream out(path);
    if (!out) return;
    out << "{\n  \"suite\": \"" << report_.suite << "\",\n  \"seed\": " << report_.seed
        << ",\n  \"instance\": " << report_.instances - 1 << ",\n  \"operator\": ";
    out << (op ? serialize_operator(*op) : std::string("null"));
    out << ",\n  \"inputs\": " << (inputs_json.empty() ? "{}" : inputs_json) << "\n}\n";
    report_.failure_dumps.push_back(path);
  }

  SuiteConfig cfg_;
  SuiteReport report_;
};

std::string point_json(const char* key, const PairedPoint& z) {
  std::ostringstream ss;
  ss << "\"" << key << "\": {\"x\": [";
  for (Eigen::Index i = 0; i < z.dim(); ++i) ss << (i ? "," : "") << fmt_double(z.x[i]);
  ss << "], \"xstar\": [";
  for (Eigen::Index i = 0; i < z.dim(); ++i) ss << (i ? "," : "") << fmt_double(z.xstar[i]);
  ss << "]}";
  return ss.str();
}

std::string inputs_json(std::initializer_list<std::string> parts) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ", ";
    out += p;
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// operator family pools

OperatorGraph ni_family(std::uint64_t seed, std::uint64_t index) {
  switch (index % 8) {
    case 0:
      return gen_linear_monotone(1, mix_seed(seed, index));
    case 1:
      return gen_linear_monotone(2, mix_seed(seed, index));
    case 2:
      return gen_linear_monotone(3, mix_seed(seed, index));
    case 3:
      return gen_linear_monotone(5, mix_seed(seed, index));
    case 4:
    case 5:
      return gen_maximal_1d(mix_seed(seed, index));
    case 6:
      return cross_operator();
    default:
      return CubicOperator{};
  }
}

OperatorGraph monotone_family(std::uint64_t seed, std::uint64_t index) {
  switch (index % 6) {
    case 0:
      return gen_point_cloud_monotone(1, 4, mix_seed(seed, index));
    case 1:
      return gen_point_cloud_monotone(2, 5, mix_seed(seed, index));
    case 2:
      return gen_point_cloud_monotone(3, 6, mix_seed(seed, index));
    case 3:
      return gen_maximal_1d(mix_seed(seed, index));
    case 4:
      return gen_linear_monotone(2, mix_seed(seed, index));
    default:
      return CubicOperator{};
  }
}

OperatorGraph any_family(std::uint64_t seed, std::uint64_t index) {
  switch (index % 10) {
    case 0:
      return gen_polygonal_soup(1, 4, mix_seed(seed, index));
    case 1:
      return gen_polygonal_soup(2, 5, mix_seed(seed, index));
    case 2:
      return gen_polygonal_soup(3, 4, mix_seed(seed, index));
    case 3:
      return gen_polygonal_soup(2, 3, mix_seed(seed, index), /*bounded_only=*/true);
    case 4:
      return gen_point_cloud_monotone(2, 5, mix_seed(seed, index));
    case 5:
      return gen_maximal_1d(mix_seed(seed, index));
    case 6:
      return gen_linear_monotone(2, mix_seed(seed, index));
    case 7:
      return gen_linear_monotone(3, mix_seed(seed, index));
    case 8:
      return cross_operator();
    default:
      return CubicOperator{};
  }
}

// Monotone point cloud whose domain spans only a line inside R^2, so the
// affine-hull shift branch gets exercised.
OperatorGraph flat_cloud(std::uint64_t seed) {
  Rng rng(seed);
  Vector a0 = rng.normal_vector(2);
  Vector d = rng.normal_vector(2);
  if (d.norm() < 1e-9) d << 1.0, 0.0;
  d.normalize();
  int m = rng.uniform_int(3, 5);
  std::vector<double> s(m), t(m);
  s[0] = rng.uniform(-1.0, 0.0);
  t[0] = rng.uniform(-1.0, 0.0);
  for (int i = 1; i < m; ++i) {
    s[i] = s[i - 1] + rng.uniform(0.2, 1.0);
    t[i] = t[i - 1] + rng.uniform(0.0, 1.0);
  }
  std::vector<GraphPiece> pieces;
  for (int i = 0; i < m; ++i) {
    pieces.push_back(GraphPiece::point(PairedPoint(a0 + s[i] * d, t[i] * d)));
  }
  return PolygonalOperator(2, std::move(pieces));
}

// ---------------------------------------------------------------------------
// samplers

PairedPoint sample_graph_point(Rng& rng, const OperatorGraph& op) {
  if (const auto* poly = std::get_if<PolygonalOperator>(&op)) {
    const GraphPiece& p = poly->pieces[rng.uniform_int(0, static_cast<int>(poly->pieces.size()) - 1)];
    switch (p.kind()) {
      case PieceKind::Point:
        return p.base();
      case PieceKind::Segment:
        return p.at(rng.uniform());
      case PieceKind::Ray:
        return p.at(std::abs(rng.normal()) * 1.2);
      case PieceKind::Line:
        return p.at(rng.normal() * 1.2);
    }
  }
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    Vector a = rng.normal_vector(lin->dim(), 1.2);
    return PairedPoint(a, lin->apply(a));
  }
  double a = rng.normal() * 1.2;
  return PairedPoint(Vector::Constant(1, a), Vector::Constant(1, a * a * a));
}

PairedPoint sample_z(Rng& rng, const OperatorGraph& op) {
  Eigen::Index n = operator_dim(op);
  double pick = rng.uniform();
  if (pick < 0.4) return rng.normal_pair(n, 1.5);
  if (pick < 0.8) return sample_graph_point(rng, op) + rng.normal_pair(n, 0.5);
  return sample_graph_point(rng, op);
}

PairedPoint sample_p(Rng& rng, Eigen::Index n) {
  double pick = rng.uniform();
  if (pick < 0.5) return rng.normal_pair(n, 1.0);
  if (pick < 0.8) return coupling_null_pair(n, rng);
  PairedPoint p = rng.normal_pair(n, 0.3);
  return p;
}

// z with finite gap. Linear operators admit an exact parameterization of
// dom(phi); polygonal ones fall back to anchored rejection.
std::optional<PairedPoint> sample_dom_phi(Rng& rng, const OperatorGraph& op,
                                          const TolerancePolicy& pol, int tries = 60) {
  Eigen::Index n = operator_dim(op);
  if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
    Vector x = rng.normal_vector(n, 1.2);
    Vector v = rng.normal_vector(n, 1.2);
    Vector xstar = lin->b() - lin->a().transpose() * x + lin->symmetric_part() * v;
    return PairedPoint(x, xstar);
  }
  if (std::holds_alternative<CubicOperator>(op)) {
    return rng.normal_pair(1, 1.5);
  }
  for (int k = 0; k < tries; ++k) {
    PairedPoint z = PairedPoint::zero(n);
    switch (k % 3) {
      case 0:
        z = sample_graph_point(rng, op) + rng.normal_pair(n, 0.35);
        break;
      case 1:
        z = sample_graph_point(rng, op);
        break;
      default:
        break;  // the origin
    }
    if (gap(op, z, pol).is_finite()) return z;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// constructive samplers for the monotone propositions

// z = z0 + (d, -d) has gap >= |d|^2 above any graph point z0.
std::optional<PairedPoint> sample_positive_gap(Rng& rng, const OperatorGraph& op,
                                               const TolerancePolicy& pol) {
  Eigen::Index n = operator_dim(op);
  for (int k = 0; k < 80; ++k) {
    PairedPoint z0 = sample_graph_point(rng, op);
    Vector d = rng.normal_vector(n, 0.6);
    if (d.norm() < 0.05) continue;
    PairedPoint z = z0 + PairedPoint(d, -d);
    ExtendedReal g = gap(op, z, pol);
    if (g.is_finite() && g.value() > 1e-4) return z;
  }
  return std::nullopt;
}

// Walk far enough along (d, d) from a graph point that every piece keeps
// c(z - alpha) strictly positive; then gap(z) <= -margin.
std::optional<PairedPoint> sample_negative_gap(Rng& rng, const OperatorGraph& op,
                                               const TolerancePolicy& pol) {
  Eigen::Index n = operator_dim(op);
  for (int k = 0; k < 40; ++k) {
    PairedPoint z0 = sample_graph_point(rng, op);
    Vector d = rng.normal_vector(n, 1.0);
    if (d.norm() < 0.1) continue;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      PairedPoint z = z0 + PairedPoint(t * d, t * d);
      ExtendedReal g = gap(op, z, pol);
      if (g.is_finite() && g.value() < -1e-4) return z;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// individual suites

using SuiteFn = std::function<void(SuiteRun&, std::uint64_t, int)>;

void suite_main(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 1000 + i));
    OperatorGraph op = any_family(seed, i);
    PairedPoint z = sample_z(rng, op);
    PairedPoint p = sample_p(rng, operator_dim(op));
    double t = rng.uniform(0.0, 10.0);
    try {
      SlackReport r = estimate_translation(op, z, p, t, run.pol());
      run.record(r, &op, inputs_json({point_json("z", z), point_json("p", p),
                                      "\"t\": " + fmt_double(t)}));
    } catch (const IndeterminateSum&) {
      run.indeterminate();
    }
  }
}

void suite_m2(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 2000 + i));
    OperatorGraph op = ni_family(seed, i);
    PairedPoint z = sample_z(rng, op);
    PairedPoint p = sample_p(rng, operator_dim(op));
    double t = rng.uniform(0.0, 10.0);
    try {
      SlackReport r = estimate_ni_lower_bound(op, z, p, t, run.pol());
      run.record(r, &op, inputs_json({point_json("z", z), point_json("p", p),
                                      "\"t\": " + fmt_double(t)}));
    } catch (const IndeterminateSum&) {
      run.indeterminate();
    }
  }
}

void suite_m3(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 3000 + i));
    OperatorGraph op = ni_family(seed, i);
    auto z = sample_dom_phi(rng, op, run.pol());
    if (!z) {
      run.resampled();
      continue;
    }
    std::vector<PairedPoint> cands = ratio_candidates(operator_dim(op), rng);
    if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
      // directions with finite support for an affine graph: p = (u, -A^T u)
      for (int c = 0; c < 16; ++c) {
        Vector u = rng.normal_vector(lin->dim());
        cands.emplace_back(u, -(lin->a().transpose() * u));
      }
    }
    try {
      SlackReport r = estimate_support_ratio(op, *z, cands, run.pol());
      run.record(r, &op, inputs_json({point_json("z", *z)}));
    } catch (const SearchFailure&) {
      run.fail(ExtendedReal::minus_inf(), &op, inputs_json({point_json("z", *z)}));
    } catch (const IndeterminateSum&) {
      run.indeterminate();
    }
  }
}

void suite_m4(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 4000 + i));
    OperatorGraph op = ni_family(seed, i);
    auto z = sample_dom_phi(rng, op, run.pol());
    if (!z) {
      run.resampled();
      continue;
    }
    PairedPoint p = sample_p(rng, operator_dim(op));
    try {
      SlackReport r = estimate_support_positivity(op, *z, p, run.pol());
      run.record(r, &op, inputs_json({point_json("z", *z), point_json("p", p)}));
    } catch (const SearchFailure&) {
      run.fail(ExtendedReal::minus_inf(), &op, inputs_json({point_json("z", *z)}));
    } catch (const IndeterminateSum&) {
      run.indeterminate();
    }
  }
}

void suite_m7(SuiteRun& run, std::uint64_t seed, int count) {
  const double deltas[] = {1.0, 1.0, 0.1, 0.5, 2.0, 10.0};
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 7000 + i));
    OperatorGraph op = ni_family(seed, i);
    HullGenerators hull = graph_hull(op);
    auto z = sample_dom_phi(rng, op, run.pol());
    if (!z) {
      run.resampled();
      continue;
    }
    WeightedNorm norm(deltas[i % 6]);
    try {
      SlackReport r = estimate_hull_distance(op, *z, hull, norm, run.pol());
      run.record(r, &op,
                 inputs_json({point_json("z", *z), "\"delta\": " + fmt_double(norm.delta)}));
    } catch (const ConvergenceError&) {
      run.fail(ExtendedReal::minus_inf(), &op, inputs_json({point_json("z", *z)}));
    }
  }
}

void suite_m9(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 9000 + i));
    OperatorGraph op = (i % 2 == 0)
                           ? OperatorGraph(gen_polygonal_soup(1 + i % 3, 4, mix_seed(seed, i),
                                                              /*bounded_only=*/true))
                           : OperatorGraph(gen_point_cloud_monotone(1 + i % 3, 5,
                                                                    mix_seed(seed, i)));
    PairedPoint z = sample_z(rng, op);
    ExtendedReal g = gap(op, z, run.pol());
    if (!g.is_finite()) {
      run.resampled();
      continue;
    }

    bool ok = true;
    for (int side = 0; side < 2 && ok; ++side) {
      bool primal = side == 0;
      HullGenerators hull = primal ? domain_hull(op) : range_hull(op);
      const Vector coord = primal ? z.x : z.xstar;
      ProjectionResult proj = project(hull, coord, WeightedNorm{}, run.pol());
      if (proj.distance <= run.pol().tol_iter) continue;
      Vector u = coord - proj.point;  // separating direction
      PairedPoint p = primal ? PairedPoint(Vector::Zero(z.dim()), u)
                             : PairedPoint(u, Vector::Zero(z.dim()));
      ExtendedReal sigma = support_shifted(op, z, p, run.pol());
      if (!sigma.is_finite() || sigma.value() >= 0.0) {
        ok = false;
        break;
      }
      double ts = (std::max(g.value(), 0.0) + 1.0) / (-sigma.value());
      ExtendedReal g2 = gap(op, z + ts * p, run.pol());
      ok = g2.is_finite() ? g2.value() <= run.pol().tol_slack : false;
    }
    run.record_bool(ok, &op, inputs_json({point_json("z", z)}));
  }
}

void suite_eq5(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 5000 + i));
    OperatorGraph op = any_family(seed, i);
    PairedPoint z = sample_z(rng, op);
    ExtendedReal phi = fitzpatrick(op, z, run.pol());
    ExtendedReal related = monotonically_related_gap(op, z, run.pol());
    std::string in = inputs_json({point_json("z", z)});
    if (phi.is_finite() != related.is_finite()) {
      run.fail(ExtendedReal::minus_inf(), &op, in);
      continue;
    }
    if (!phi.is_finite()) {
      run.record_bool(phi.is_plus_inf() && related.is_minus_inf(), &op, in);
      continue;
    }
    double err = std::abs(phi.value() + related.value() - coupling(z));
    ExtendedReal slack(run.pol().tol_slack - err);
    if (err <= run.pol().tol_slack) {
      run.pass(slack);
    } else {
      run.fail(slack, &op, in);
    }
  }
}

void suite_i1_i3(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 11000 + i));
    OperatorGraph op = monotone_family(seed, i);
    PairedPoint z = sample_z(rng, op);
    PairedPoint w = sample_z(rng, op);
    PairedPoint wg = sample_graph_point(rng, op);
    double t = rng.uniform(0.0, 1.0);

    // convex-combination coupling identity (exact arithmetic)
    PairedPoint mix = t * z + (1.0 - t) * w;
    double lhs1 = coupling(mix);
    double rhs1 = t * coupling(z) + (1.0 - t) * coupling(w) - t * (1.0 - t) * coupling(z - w);
    double thr = scaled_tol(run.pol().tol_exact,
                            std::abs(coupling(z)) + std::abs(coupling(w)) +
                                z.norm() * z.norm() + w.norm() * w.norm());
    ExtendedReal s1(thr - std::abs(lhs1 - rhs1));
    bool ok1 = std::abs(lhs1 - rhs1) <= thr;

    std::string in = inputs_json({point_json("z", z), point_json("w", w),
                                  "\"t\": " + fmt_double(t)});
    try {
      // gap convexity estimate along the segment
      ExtendedReal lhs2 = gap(op, mix, run.pol());
      ExtendedReal rhs2 = t * gap(op, z, run.pol()) + (1.0 - t) * gap(op, w, run.pol()) +
                          ExtendedReal(t * (1.0 - t) * coupling(z - w));
      SlackReport r2 = make_slack(lhs2, rhs2, run.pol());

      // graph-anchored variant for monotone operators
      PairedPoint mixg = t * z + (1.0 - t) * wg;
      ExtendedReal lhs3 = gap(op, mixg, run.pol());
      ExtendedReal rhs3 = t == 0.0
                              ? ExtendedReal(0.0)
                              : t * (gap(op, z, run.pol()) +
                                     ExtendedReal((1.0 - t) * coupling(z - wg)));
      SlackReport r3 = make_slack(lhs3, rhs3, run.pol());

      bool ok = ok1 && r2.pass && r3.pass;
      ExtendedReal slack = min(s1, min(r2.slack, r3.slack));
      if (ok) {
        run.pass(slack);
      } else {
        run.fail(slack, &op, in);
      }
    } catch (const IndeterminateSum&) {
      run.indeterminate();
    }
  }
}

void suite_r1(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 12000 + i));
    OperatorGraph op = ni_family(seed, i);
    auto z = sample_dom_phi(rng, op, run.pol());
    if (!z) {
      run.resampled();
      continue;
    }
    Eigen::Index n = operator_dim(op);
    PairedPoint p = PairedPoint::zero(n);
    double pick = rng.uniform();
    if (pick < 0.4) {
      p = rng.normal_pair(n, 1.0);
    } else if (pick < 0.8) {
      p = coupling_null_pair(n, rng);
    } else {
      p = sample_graph_point(rng, op) - sample_graph_point(rng, op);
      if (p.norm() < 1e-12) p = rng.normal_pair(n, 1.0);
    }
    SignImplication st = support_sign_implications(op, *z, p, run.pol());
    run.record_bool(st == SignImplication::Ok, &op,
                    inputs_json({point_json("z", *z), point_json("p", p),
                                 std::string("\"violation\": \"") + sign_implication_name(st) + "\""}));
  }
}

void suite_props(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 13000 + i));
    bool cloud_instance = (i % 3) != 2;
    OperatorGraph op = cloud_instance
                           ? OperatorGraph(gen_point_cloud_monotone(1 + i % 3, 5,
                                                                    mix_seed(seed, i)))
                           : OperatorGraph(gen_maximal_1d(mix_seed(seed, i)));

    auto zpos = sample_positive_gap(rng, op, run.pol());
    if (!zpos) {
      run.resampled();
      continue;
    }
    std::string in = inputs_json({point_json("z", *zpos)});
    try {
      PairedPoint w = negative_coupling_witness(op, *zpos, run.pol());
      bool ok = coupling(*zpos - w) < -1e-9 && tplus_contains(op, w, run.pol());

      BoundaryPoint bp = boundary_point(op, *zpos, w, run.pol());
      ok = ok && bp.residual <= run.pol().tol_iter && coupling(*zpos - bp.w) < 0.0 &&
           bp.t > 0.0 && bp.t <= 1.0;

      if (cloud_instance) {
        auto zneg = sample_negative_gap(rng, op, run.pol());
        if (!zneg) {
          run.resampled();
          continue;
        }
        double t = rng.uniform(0.05, 0.95);
        PairedPoint wp = segment_probe(op, *zneg, t, run.pol());
        ExtendedReal gp = gap(op, t * *zneg + (1.0 - t) * wp, run.pol());
        ok = ok && gp.is_finite() && gp.value() < -run.pol().tol_exact;
      }
      run.record_bool(ok, &op, in);
    } catch (const DomainExitError&) {
      run.resampled();
    } catch (const Error& e) {
      run.fail(ExtendedReal::minus_inf(), &op,
               inputs_json({point_json("z", *zpos),
                            std::string("\"error\": \"") + e.what() + "\""}));
    }
  }
}

void suite_argmin_sigma(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 14000 + i));
    Eigen::Index dim = rng.uniform_int(1, 4);
    int m = rng.uniform_int(2, 8);
    std::vector<Vector> points;
    for (int k = 0; k < m; ++k) points.push_back(rng.normal_vector(dim, 1.2));
    if (rng.uniform() < 0.5) {
      // shift so the origin lands inside the hull
      Vector mean = Vector::Zero(dim);
      for (const Vector& p : points) mean += p;
      mean /= static_cast<double>(m);
      for (Vector& p : points) p -= mean;
    }
    std::vector<Vector> rays;
    if (rng.uniform() < 0.3) {
      int nr = rng.uniform_int(1, 2);
      for (int k = 0; k < nr; ++k) {
        Vector r = rng.normal_vector(dim, 1.0);
        if (r.norm() > 1e-9) rays.push_back(r);
      }
    }
    bool agree = support_membership_check(points, rays, rng, run.pol());
    run.record_bool(agree, nullptr, "{\"dim\": " + std::to_string(dim) + "}");
  }
}

void suite_m8(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 15000 + i));
    bool flat_instance = (i % 4) == 3;
    OperatorGraph op = flat_instance ? flat_cloud(mix_seed(seed, i)) : ni_family(seed, i);
    auto z = sample_dom_phi(rng, op, run.pol());
    if (!z) {
      run.resampled();
      continue;
    }
    bool ok = true;
    std::string in = inputs_json({point_json("z", *z)});

    if (!flat_instance) {
      // domain / range projections of dom(phi) for NI operators
      ok = membership(domain_hull(op), z->x, WeightedNorm{}, run.pol()) &&
           membership(range_hull(op), z->xstar, WeightedNorm{}, run.pol());
    }

    // affine-hull alternative for any operator
    if (ok) {
      AffineHullBasis aff = affine_hull_basis(domain_affine_sample(op), run.pol());
      if (aff.residual(z->x) > run.pol().tol_iter) {
        Vector ustar = aff.orthogonal_component(z->x);
        ExtendedReal g = gap(op, *z, run.pol());
        if (!g.is_finite()) {
          ok = false;
        } else {
          double gamma = g.value() / ustar.squaredNorm();
          PairedPoint shifted(z->x, z->xstar + gamma * ustar);
          ExtendedReal g2 = gap(op, shifted, run.pol());
          double thr = scaled_tol(run.pol().tol_iter, std::abs(gamma) * ustar.norm());
          ok = g2.is_finite() && std::abs(g2.value()) <= thr;
        }
      }
    }
    run.record_bool(ok, &op, in);
  }
}

void suite_eq3_eq4(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 16000 + i));
    OperatorGraph op = gen_point_cloud_monotone(1 + i % 3, 5, mix_seed(seed, i));
    Eigen::Index n = operator_dim(op);

    // T+ sample: graph points plus perturbations kept in [phi <= c]
    std::vector<PairedPoint> tplus;
    tplus.push_back(sample_graph_point(rng, op));
    for (int k = 0; k < 24 && static_cast<int>(tplus.size()) < 8; ++k) {
      PairedPoint cand = sample_graph_point(rng, op) + rng.normal_pair(n, 0.4);
      if (tplus_contains(op, cand, run.pol())) tplus.push_back(cand);
    }

    // proxy for Pr_X dom(phi): wide finite-gap samples plus the T+ abscissas
    std::vector<Vector> proxy;
    for (int k = 0; k < 24; ++k) {
      PairedPoint zc = (k % 2 == 0) ? rng.normal_pair(n, 3.0)
                                    : sample_graph_point(rng, op) + rng.normal_pair(n, 1.0);
      if (gap(op, zc, run.pol()).is_finite()) proxy.push_back(zc.x);
    }
    for (const PairedPoint& w : tplus) {
      if (gap(op, w, run.pol()).is_finite()) proxy.push_back(w.x);
    }
    if (proxy.empty()) {
      run.resampled();
      continue;
    }

    HullGenerators hull(proxy, {});
    bool ok = true;
    for (const PairedPoint& w : tplus) {
      if (!membership(hull, w.x, WeightedNorm{}, run.pol())) {
        ok = false;
        break;
      }
    }
    run.record_bool(ok, &op, "{}");
  }
}

void suite_graph_inclusion(SuiteRun& run, std::uint64_t seed, int count) {
  for (int i = 0; i < count; ++i) {
    Rng rng(mix_seed(seed, 17000 + i));
    OperatorGraph op = monotone_family(seed, i);
    bool maximal = std::holds_alternative<LinearMonotoneOperator>(op) ||
                   std::holds_alternative<CubicOperator>(op) || (i % 6 == 3);
    bool ok = true;
    ExtendedReal worst = ExtendedReal::plus_inf();
    for (int k = 0; k < 8; ++k) {
      PairedPoint w = sample_graph_point(rng, op);
      ExtendedReal g = gap(op, w, run.pol());
      if (!g.is_finite()) {
        ok = false;
        break;
      }
      ExtendedReal slack(run.pol().tol_slack - std::abs(g.value()));
      if (maximal) {
        worst = min(worst, slack);
        ok = ok && std::abs(g.value()) <= run.pol().tol_slack;
      } else {
        ExtendedReal upper(run.pol().tol_slack - g.value());
        worst = min(worst, upper);
        ok = ok && g.value() <= run.pol().tol_slack;
      }
    }
    if (ok) {
      run.pass(worst);
    } else {
      run.fail(worst, &op, "{}");
    }
  }
}

struct SuiteEntry {
  const char* name;
  int default_count;
  void (*fn)(SuiteRun&, std::uint64_t, int);
};

const SuiteEntry kSuites[] = {
    {"main", 10000, suite_main},
    {"m2", 8000, suite_m2},
    {"m3", 2000, suite_m3},
    {"m4", 8000, suite_m4},
    {"m7", 1500, suite_m7},
    {"m9", 1500, suite_m9},
    {"eq5-identity", 10000, suite_eq5},
    {"i1-i3", 4000, suite_i1_i3},
    {"r1", 4000, suite_r1},
    {"prop-i-ii-iii", 600, suite_props},
    {"argmin-sigma", 2000, suite_argmin_sigma},
    {"m8-projections", 1200, suite_m8},
    {"eq3-eq4", 600, suite_eq3_eq4},
    {"graph-in-phi-le-c", 4000, suite_graph_inclusion},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const SuiteEntry& e : kSuites) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  cfg.tolerances.validate();
  for (const SuiteEntry& e : kSuites) {
    if (name == e.name) {
      SuiteRun run(name, cfg);
      int count = cfg.count > 0 ? cfg.count : e.default_count;
      e.fn(run, cfg.seed, count);
      return run.finish();
    }
  }
  throw PreconditionError("run_suite: unknown suite '" + name + "'");
}

std::string report_text(const SuiteReport& r) {
  std::ostringstream ss;
  ss << "suite=" << r.suite << " seed=" << r.seed << " instances=" << r.instances
     << " passes=" << r.passes << " failures=" << r.failures
     << " indeterminate=" << r.indeterminate << " resampled=" << r.resampled
     << " worst_slack=" << r.worst_slack.str() << "\n";
  for (const std::string& p : r.failure_dumps) ss << "failure_dump=" << p << "\n";
  return ss.str();
}

std::string report_csv_header() {
  return "suite,seed,instances,passes,failures,indeterminate,resampled,worst_slack,"
         "failure_dumps\n";
}

std::string report_csv(const SuiteReport& r) {
  std::ostringstream ss;
  ss << r.suite << "," << r.seed << "," << r.instances << "," << r.passes << "," << r.failures
     << "," << r.indeterminate << "," << r.resampled << "," << r.worst_slack.str() << ",";
  for (std::size_t i = 0; i < r.failure_dumps.size(); ++i) {
    if (i) ss << ";";
    ss << r.failure_dumps[i];
  }
  ss << "\n";
  return ss.str();
}

}  // namespace fitztk

// Acceptance suite: every release criterion, printed one pass/fail line at
// a time, exit 0 only when all pass. Thresholds and counts are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fitztk/conjugate.hpp"
#include "fitztk/fitzpatrick.hpp"
#include "fitztk/generators.hpp"
#include "fitztk/suites.hpp"

using namespace fitztk;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] C%d %s%s%s\n", pass ? "PASS" : "FAIL", idx, name,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++g_failures;
}

PairedPoint pp1(double x, double s) {
  return PairedPoint(Vector::Constant(1, x), Vector::Constant(1, s));
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion1_cross_exactness() {
  double t0 = now_seconds();
  OperatorGraph cross = cross_operator();
  bool ok = fitzpatrick(cross, pp1(0, 0)).value() == 0.0;

  Rng rng(101);
  for (int k = 0; k < 100; ++k) {
    PairedPoint z = rng.normal_pair(1, 2.0);
    while (z.norm() < 1e-12) z = rng.normal_pair(1, 2.0);
    ok = ok && fitzpatrick(cross, z).is_plus_inf();
  }

  // D(T) = R is not inside Pr_X dom phi = {0}: the abscissa 1 belongs to the
  // domain but no pair (1, v) has finite phi
  bool domain_point_outside = true;
  for (double v : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    domain_point_outside = domain_point_outside && fitzpatrick(cross, pp1(1, v)).is_plus_inf();
  }
  ok = ok && domain_point_outside;

  double dt = now_seconds() - t0;
  ok = ok && dt < 1.0;
  report(1, "cross-operator exactness", ok, "runtime " + fmt(dt) + " s");
}

void criterion2_identity_closed_forms() {
  OperatorGraph line = identity_line();
  HullGenerators hull = graph_hull(line);
  double worst_phi = 0.0, worst_m7 = 0.0, worst_tight = 0.0;
  bool ok = true;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double x = -3.0 + 6.0 * i / (n - 1);
      double s = -3.0 + 6.0 * j / (n - 1);
      PairedPoint z = pp1(x, s);
      double phi = fitzpatrick(line, z).value();
      worst_phi = std::max(worst_phi, std::abs(phi - 0.25 * (x + s) * (x + s)));

      double g = gap(line, z).value();
      ProjectionResult proj = project(hull, z.flatten());
      worst_m7 = std::max(worst_m7, std::abs(g - 0.5 * proj.distance * proj.distance));

      if (std::abs(x - s) > 0.1) {
        double sv = (x > s) ? -1.0 : 1.0;
        PairedPoint p = pp1(sv, -sv);
        SlackReport r3 = estimate_support_ratio(line, z, {p});
        SlackReport r4 = estimate_support_positivity(line, z, p);
        worst_tight = std::max(worst_tight, std::abs(r3.slack.value()));
        worst_tight = std::max(worst_tight, std::abs(r4.slack.value()));
      }
    }
  }
  ok = worst_phi <= 1e-9 && worst_m7 <= 1e-7 && worst_tight <= 1e-9;
  report(2, "identity-operator closed forms", ok,
         "|phi err| " + fmt(worst_phi) + ", |m7 err| " + fmt(worst_m7) + ", |tightness| " +
             fmt(worst_tight));
}

void criterion3_infimum_identity() {
  Rng rng(103);
  double worst = 0.0;
  int checked = 0, infinite = 0;
  bool ok = true;
  for (int k = 0; k < 10000; ++k) {
    OperatorGraph op = gen_polygonal_soup(1 + k % 3, 2 + k % 4, 40000 + k);
    PairedPoint z = rng.normal_pair(operator_dim(op), 2.0);
    ExtendedReal phi = fitzpatrick(op, z);
    ExtendedReal rel = monotonically_related_gap(op, z);
    if (phi.is_finite()) {
      if (!rel.is_finite()) {
        ok = false;
        continue;
      }
      double err = std::abs(phi.value() + rel.value() - coupling(z));
      worst = std::max(worst, err);
      ++checked;
    } else {
      ok = ok && rel.is_minus_inf();
      ++infinite;
    }
  }
  ok = ok && worst <= 1e-8 && checked > 1000;
  report(3, "phi + inf c(z - .) = c identity", ok,
         std::to_string(checked) + " finite (worst " + fmt(worst) + "), " +
             std::to_string(infinite) + " infinite, consistent");
}

void criterion4_translation_universality() {
  Rng rng(104);
  double worst = 0.0, worst_singleton = 0.0;
  bool ok = true;
  for (int k = 0; k < 100000; ++k) {
    bool singleton = (k % 10 == 9);
    OperatorGraph op = [&]() -> OperatorGraph {
      if (singleton) {
        return PolygonalOperator(1 + k % 3,
                                 {GraphPiece::point(rng.normal_pair(1 + k % 3, 1.5))});
      }
      switch (k % 6) {
        case 0:
          return gen_polygonal_soup(1 + k % 3, 4, 50000 + k);
        case 1:
          return gen_point_cloud_monotone(2, 4, 50000 + k);
        case 2:
          return gen_maximal_1d(50000 + k);
        case 3:
          return gen_linear_monotone(2, 50000 + k);
        case 4:
          return cross_operator();
        default:
          return CubicOperator{};
      }
    }();
    Eigen::Index n = operator_dim(op);
    PairedPoint z = rng.normal_pair(n, 1.5);
    PairedPoint p = rng.normal_pair(n, 1.0);
    double t = rng.uniform(0.0, 10.0);
    SlackReport r = estimate_translation(op, z, p, t);
    if (r.slack.is_finite()) {
      worst = std::min(worst, r.slack.value());
      if (singleton) {
        worst_singleton = std::max(worst_singleton, std::abs(r.slack.value()) /
                                                       (1.0 + std::abs(r.rhs.value())));
      }
    }
    ok = ok && r.pass;
  }
  ok = ok && worst >= -1e-8 && worst_singleton <= 1e-10;
  report(4, "translation estimate universality", ok,
         "worst slack " + fmt(worst) + ", singleton defect " + fmt(worst_singleton));
}

void criterion5_ni_estimates() {
  Rng rng(105);
  double worst = 0.0;
  int violations = 0;
  bool ok = true;
  for (int k = 0; k < 10000; ++k) {
    OperatorGraph op = (k % 2 == 0)
                           ? OperatorGraph(gen_linear_monotone(1 + k % 5, 60000 + k))
                           : OperatorGraph(gen_maximal_1d(60000 + k));
    Eigen::Index n = operator_dim(op);

    PairedPoint z = some_graph_point(op) + rng.normal_pair(n, 0.5);
    if (const auto* lin = std::get_if<LinearMonotoneOperator>(&op)) {
      Vector x = rng.normal_vector(n, 1.2);
      Vector v = rng.normal_vector(n, 1.2);
      z = PairedPoint(x, lin->b() - lin->a().transpose() * x + lin->symmetric_part() * v);
    }
    if (!gap(op, z).is_finite()) continue;
    PairedPoint p = (k % 3 == 0) ? coupling_null_pair(n, rng) : rng.normal_pair(n);
    double t = rng.uniform(0.0, 6.0);

    SlackReport r2 = estimate_ni_lower_bound(op, z, p, t);
    SlackReport r4 = estimate_support_positivity(op, z, p);
    if (r2.slack.is_finite()) worst = std::min(worst, r2.slack.value());
    if (r4.slack.is_finite()) worst = std::min(worst, r4.slack.value());
    ok = ok && r2.pass && r4.pass;

    if (k % 3 == 0) {
      SlackReport r7 = estimate_hull_distance(op, z, graph_hull(op));
      if (r7.slack.is_finite()) worst = std::min(worst, r7.slack.value());
      ok = ok && r7.pass;
    }
    if (support_sign_implications(op, z, p) != SignImplication::Ok) ++violations;
  }
  ok = ok && worst >= -1e-6 && violations == 0;
  report(5, "NI estimates and sign implications", ok,
         "worst slack " + fmt(worst) + ", r1 violations " + std::to_string(violations));
}

void criterion6_argmin_sigma() {
  Rng rng(106);
  bool ok = true;
  int members = 0, separated = 0;
  for (int k = 0; k < 1000; ++k) {
    Eigen::Index dim = 1 + k % 4;
    int m = rng.uniform_int(2, 7);
    std::vector<Vector> pts;
    for (int i = 0; i < m; ++i) pts.push_back(rng.normal_vector(dim, 1.2));
    if (k % 2 == 0) {
      Vector mean = Vector::Zero(dim);
      for (const Vector& p : pts) mean += p;
      mean /= static_cast<double>(m);
      for (Vector& p : pts) p -= mean;
    }
    ok = ok && support_membership_check(pts, {}, rng);

    // every non-member must yield a strict separating witness
    HullGenerators hull(pts, {});
    ProjectionResult proj = project(hull, Vector::Zero(dim));
    if (proj.distance > 1e-7) {
      Vector p = separating_direction(hull, Vector::Zero(dim));
      double sup = -std::numeric_limits<double>::infinity();
      for (const Vector& g : pts) sup = std::max(sup, g.dot(p));
      ok = ok && sup < 0.0;
      ++separated;
    } else {
      ++members;
    }
  }
  ok = ok && members > 100 && separated > 100;
  report(6, "support membership equivalence", ok,
         std::to_string(members) + " members, " + std::to_string(separated) + " separated");
}

void criterion7_conjugation() {
  Rng rng(107);
  bool ok = true;
  double worst_eq = 0.0, worst_fy = 0.0;
  for (int k = 0; k < 200; ++k) {
    int n = rng.uniform_int(2, 512);
    std::vector<double> xs(n);
    xs[0] = rng.uniform(-3.0, -2.0);
    for (int i = 1; i < n; ++i) xs[i] = xs[i - 1] + rng.uniform(0.005, 0.05);
    std::vector<ExtendedReal> vals;
    for (int i = 0; i < n; ++i) {
      vals.push_back(rng.uniform() < 0.1 ? ExtendedReal::plus_inf()
                                         : ExtendedReal(rng.normal() * 2.0));
    }
    vals[0] = ExtendedReal(0.0);
    GridFunction f(xs, vals);
    GridFunction fast = fast_conjugate(f);
    GridFunction brute = brute_conjugate(f);
    for (std::size_t i = 0; i < fast.values.size(); ++i) {
      worst_eq = std::max(worst_eq, std::abs(fast.values[i].value() - brute.values[i].value()));
    }

    GridFunction bc = biconjugate(f);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i].is_finite()) {
        ok = ok && bc.values[i].value() <= f.values[i].value() + 1e-10;
      }
    }
    GridFunction bc2 = biconjugate(bc);
    for (std::size_t i = 0; i < bc.values.size(); ++i) {
      ok = ok && std::abs(bc.values[i].value() - bc2.values[i].value()) <= 1e-10;
    }

    if (k < 10) {
      for (const SlackReport& r : fenchel_young_check(f, fast, 1000, rng)) {
        if (r.slack.is_finite()) worst_fy = std::min(worst_fy, r.slack.value());
        ok = ok && r.slack >= ExtendedReal(-1e-12);
      }
    }
  }
  ok = ok && worst_eq <= 1e-12 && worst_fy >= -1e-12;
  report(7, "conjugation transforms", ok,
         "fast vs brute " + fmt(worst_eq) + ", Fenchel-Young worst " + fmt(worst_fy));
}

void criterion8_constructive_witnesses() {
  Rng rng(108);
  int witness_ok = 0, boundary_ok = 0, probe_ok = 0, resampled = 0;
  int instances = 0;
  bool ok = true;

  // witness + boundary instances: z above the graph with finite gap
  for (int k = 0; witness_ok < 1000 && k < 4000; ++k) {
    ++instances;
    OperatorGraph op = (k % 3 == 2)
                           ? OperatorGraph(gen_maximal_1d(70000 + k))
                           : OperatorGraph(gen_point_cloud_monotone(1 + k % 3, 5, 70000 + k));
    Eigen::Index n = operator_dim(op);

    std::optional<PairedPoint> z;
    for (int a = 0; a < 16 && !z; ++a) {
      Vector d = rng.normal_vector(n, 0.8);
      if (d.norm() < 0.05) continue;
      PairedPoint cand = some_graph_point(op) + PairedPoint(d, -d);
      ExtendedReal g = gap(op, cand);
      if (g.is_finite() && g.value() > 1e-4) z = cand;
    }
    if (!z) {
      ++resampled;  // could not place z inside dom(phi) above the graph
      continue;
    }
    try {
      PairedPoint w = negative_coupling_witness(op, *z);
      if (coupling(*z - w) < -1e-9 && tplus_contains(op, w)) {
        ++witness_ok;
      } else {
        ok = false;
      }
      BoundaryPoint bp = boundary_point(op, *z, w);
      if (bp.residual <= 1e-7 && coupling(*z - bp.w) < 0.0) {
        ++boundary_ok;
      } else {
        ok = false;
      }
    } catch (const DomainExitError&) {
      ++resampled;
    } catch (const Error&) {
      ok = false;
    }
  }

  // probe instances: clouds with z strictly below c somewhere
  for (int k = 0; probe_ok < 1000 && k < 4000; ++k) {
    ++instances;
    OperatorGraph op = gen_point_cloud_monotone(1 + k % 3, 5, 71000 + k);
    Eigen::Index n = operator_dim(op);
    std::optional<PairedPoint> zn;
    for (int a = 0; a < 8 && !zn; ++a) {
      PairedPoint z0 = some_graph_point(op);
      Vector dd = rng.normal_vector(n, 1.0);
      if (dd.norm() < 0.1) continue;
      for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        PairedPoint cand = z0 + PairedPoint(t * dd, t * dd);
        ExtendedReal gg = gap(op, cand);
        if (gg.is_finite() && gg.value() < -1e-4) {
          zn = cand;
          break;
        }
      }
    }
    if (!zn) {
      ++resampled;
      continue;
    }
    double t = rng.uniform(0.05, 0.95);
    try {
      PairedPoint w = segment_probe(op, *zn, t);
      if (gap(op, t * *zn + (1.0 - t) * w).value() < -1e-9) {
        ++probe_ok;
      } else {
        ok = false;
      }
    } catch (const Error&) {
      ok = false;
    }
  }

  double resample_rate = static_cast<double>(resampled) / instances;
  ok = ok && witness_ok >= 1000 && boundary_ok >= 1000 && probe_ok >= 1000 &&
       resample_rate < 0.05;
  report(8, "constructive witnesses", ok,
         std::to_string(witness_ok) + " witnesses, " + std::to_string(boundary_ok) +
             " boundary points, " + std::to_string(probe_ok) + " probes, resample rate " +
             fmt(resample_rate));
}

void criterion9_graph_inclusion() {
  Rng rng(109);
  double worst_mono = 0.0, worst_max = 0.0;
  for (int k = 0; k < 500; ++k) {
    OperatorGraph cloud = gen_point_cloud_monotone(1 + k % 3, 6, 80000 + k);
    OperatorGraph stairs = gen_maximal_1d(80000 + k);
    for (int s = 0; s < 8; ++s) {
      PairedPoint w = some_graph_point(cloud);
      if (const auto* poly = std::get_if<PolygonalOperator>(&cloud)) {
        const GraphPiece& piece =
            poly->pieces[rng.uniform_int(0, static_cast<int>(poly->pieces.size()) - 1)];
        w = piece.base();
      }
      worst_mono = std::max(worst_mono, gap(cloud, w).value());

      const auto* poly = std::get_if<PolygonalOperator>(&stairs);
      const GraphPiece& piece =
          poly->pieces[rng.uniform_int(0, static_cast<int>(poly->pieces.size()) - 1)];
      double t = piece.range().clamp(std::abs(rng.normal()) * 1.2);
      ExtendedReal g = gap(stairs, piece.at(t));
      worst_max = std::max(worst_max, std::abs(g.value()));
    }
  }
  bool ok = worst_mono <= 1e-8 && worst_max <= 1e-8;
  report(9, "graph inclusion in [phi <= c]", ok,
         "monotone max gap " + fmt(worst_mono) + ", maximal |gap| " + fmt(worst_max));
}

void criterion10_full_suite() {
  double t0 = now_seconds();
  std::string first, second;
  bool all_pass = true;
  SuiteConfig cfg;
  cfg.seed = 7;
  cfg.write_failures = false;
  for (const std::string& name : suite_names()) {
    SuiteReport rep = run_suite(name, cfg);
    all_pass = all_pass && rep.all_passed() && rep.indeterminate == 0;
    first += report_text(rep);
  }
  double dt = now_seconds() - t0;
  for (const std::string& name : suite_names()) {
    second += report_text(run_suite(name, cfg));
  }
  bool ok = all_pass && dt < 60.0 && first == second;
  report(10, "full suite timing and determinism", ok,
         "wall " + fmt(dt) + " s, reports byte-identical: " + (first == second ? "yes" : "no"));
}

}  // namespace

int main() {
  criterion1_cross_exactness();
  criterion2_identity_closed_forms();
  criterion3_infimum_identity();
  criterion4_translation_universality();
  criterion5_ni_estimates();
  criterion6_argmin_sigma();
  criterion7_conjugation();
  criterion8_constructive_witnesses();
  criterion9_graph_inclusion();
  criterion10_full_suite();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", g_failures);
  return 1;
}

// Command line front end: evaluate Fitzpatrick values, gaps, supports and
// monotone-polar membership of operators from spec files, project onto
// hulls, conjugate sampled functions, dump gap landscapes, and run the
// randomized verification suites.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fitztk/conjugate.hpp"
#include "fitztk/fitzpatrick.hpp"
#include "fitztk/generators.hpp"
#include "fitztk/grid_io.hpp"
#include "fitztk/operator_io.hpp"
#include "fitztk/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

struct GlobalOptions {
  std::uint64_t seed = 7;
  int count = 0;
  fitztk::TolerancePolicy tolerances;
  double delta = 1.0;
  std::string format = "text";
};

fitztk::Vector parse_flat_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  fitztk::Vector v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fitzpatrick-function toolkit for exactly represented operators"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed for suites and samplers");
  app.add_option("--count", g.count, "Instance count override for check suites");
  app.add_option("--tol-exact", g.tolerances.tol_exact, "Closed-form comparison tolerance");
  app.add_option("--tol-iter", g.tolerances.tol_iter, "Iterative-result tolerance");
  app.add_option("--tol-slack", g.tolerances.tol_slack, "Minimum admissible inequality slack");
  app.add_option("--delta", g.delta, "Weighted pair-norm parameter");
  app.add_option("--format", g.format, "Report format: text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  std::string op_path, z_text, p_text, q_text, target = "graph";
  std::string in_path, out_path, window_text = "-2,2,-2,2";
  int resolution = 41;
  bool do_biconjugate = false;
  std::string suite_name;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the Fitzpatrick function at z");
  eval->add_option("--op", op_path, "Operator spec file")->required();
  eval->add_option("--z", z_text, "Paired point \"x1,..;s1,..\"")->required();

  CLI::App* gap_cmd = app.add_subcommand("gap", "Evaluate the gap (phi - c) at z");
  gap_cmd->add_option("--op", op_path, "Operator spec file")->required();
  gap_cmd->add_option("--z", z_text, "Paired point")->required();

  CLI::App* support = app.add_subcommand("support", "Shifted support function at direction p");
  support->add_option("--op", op_path, "Operator spec file")->required();
  support->add_option("--z", z_text, "Paired point")->required();
  support->add_option("--p", p_text, "Direction as a paired point")->required();

  CLI::App* tplus = app.add_subcommand("tplus", "Is z monotonically related to the operator");
  tplus->add_option("--op", op_path, "Operator spec file")->required();
  tplus->add_option("--z", z_text, "Paired point")->required();

  CLI::App* project_cmd = app.add_subcommand("project", "Project a point onto an operator hull");
  project_cmd->add_option("--op", op_path, "Operator spec file")->required();
  project_cmd->add_option("--q", q_text, "Flat coordinates q1,..,qm")->required();
  project_cmd->add_option("--target", target, "Hull: graph, domain or range")
      ->check(CLI::IsMember({"graph", "domain", "range"}));

  CLI::App* conj = app.add_subcommand("conj", "Conjugate a sampled function (CSV in/out)");
  conj->add_option("--in", in_path, "Input grid CSV")->required();
  conj->add_option("--out", out_path, "Output grid CSV")->required();
  conj->add_flag("--biconjugate", do_biconjugate, "Emit the biconjugate instead");

  CLI::App* check = app.add_subcommand("check", "Run a randomized verification suite");
  check->add_option("suite", suite_name, "Suite name; 'all' runs every suite")->required();

  CLI::App* grid = app.add_subcommand("grid", "CSV dump of phi/c/gap over a window (1-D)");
  grid->add_option("--op", op_path, "Operator spec file")->required();
  grid->add_option("--window", window_text, "xmin,xmax,ymin,ymax");
  grid->add_option("--resolution", resolution, "Grid points per axis");
  grid->add_option("--out", out_path, "Output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    g.tolerances.validate();
    const fitztk::TolerancePolicy& pol = g.tolerances;

    if (eval->parsed() || gap_cmd->parsed() || support->parsed() || tplus->parsed()) {
      fitztk::OperatorGraph op = fitztk::load_operator(op_path, pol);
      fitztk::PairedPoint z = fitztk::parse_paired_point(z_text);
      if (eval->parsed()) {
        std::cout << fitztk::fitzpatrick(op, z, pol).str() << "\n";
      } else if (gap_cmd->parsed()) {
        std::cout << fitztk::gap(op, z, pol).str() << "\n";
      } else if (support->parsed()) {
        fitztk::PairedPoint p = fitztk::parse_paired_point(p_text);
        std::cout << fitztk::support_shifted(op, z, p, pol).str() << "\n";
      } else {
        std::cout << (fitztk::tplus_contains(op, z, pol) ? "true" : "false") << "\n";
      }
      return kExitPass;
    }

    if (project_cmd->parsed()) {
      fitztk::OperatorGraph op = fitztk::load_operator(op_path, pol);
      fitztk::HullGenerators hull = target == "graph"    ? fitztk::graph_hull(op)
                                    : target == "domain" ? fitztk::domain_hull(op)
                                                         : fitztk::range_hull(op);
      fitztk::Vector q = parse_flat_vector(q_text);
      fitztk::WeightedNorm norm(g.delta);
      fitztk::ProjectionResult res = fitztk::project(hull, q, norm, pol);
      std::cout << "distance=" << res.distance << "\n";
      std::cout << "kkt_residual=" << res.kkt_residual << "\n";
      std::cout << "point=";
      for (Eigen::Index i = 0; i < res.point.size(); ++i) {
        std::cout << (i ? "," : "") << res.point[i];
      }
      std::cout << "\n";
      return kExitPass;
    }

    if (conj->parsed()) {
      fitztk::GridFunction f = fitztk::load_grid_csv(in_path);
      fitztk::GridFunction out = do_biconjugate ? fitztk::biconjugate(f)
                                                : fitztk::fast_conjugate(f);
      fitztk::save_grid_csv(out, out_path);
      return kExitPass;
    }

    if (grid->parsed()) {
      fitztk::OperatorGraph op = fitztk::load_operator(op_path, pol);
      fitztk::Vector w = parse_flat_vector(window_text);
      if (w.size() != 4) throw fitztk::FileParseError("--window: expected xmin,xmax,ymin,ymax");
      fitztk::GridWindow win{w[0], w[1], w[2], w[3]};
      if (out_path.empty()) {
        fitztk::grid_dump(op, win, resolution, std::cout, pol);
      } else {
        std::ofstream out(out_path);
        if (!out) throw fitztk::FileParseError("cannot write " + out_path);
        fitztk::grid_dump(op, win, resolution, out, pol);
      }
      return kExitPass;
    }

    if (check->parsed()) {
      fitztk::SuiteConfig cfg;
      cfg.seed = g.seed;
      cfg.count = g.count;
      cfg.tolerances = pol;
      std::vector<std::string> to_run;
      if (suite_name == "all") {
        to_run = fitztk::suite_names();
      } else {
        to_run.push_back(suite_name);
      }
      bool any_failure = false;
      if (g.format == "csv") std::cout << fitztk::report_csv_header();
      for (const std::string& name : to_run) {
        fitztk::SuiteReport rep = fitztk::run_suite(name, cfg);
        any_failure = any_failure || !rep.all_passed();
        std::cout << (g.format == "csv" ? fitztk::report_csv(rep) : fitztk::report_text(rep));
      }
      return any_failure ? kExitFailure : kExitPass;
    }
  } catch (const fitztk::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const fitztk::FileParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fitztk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

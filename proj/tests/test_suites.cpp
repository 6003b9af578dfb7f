#include <doctest.h>

#include "fitztk/suites.hpp"

using namespace fitztk;

namespace {

SuiteConfig quick_config(std::uint64_t seed, int count) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  cfg.write_failures = false;
  return cfg;
}

}  // namespace

TEST_CASE("unknown suite names are rejected") {
  CHECK_THROWS_AS(run_suite("nope", quick_config(1, 10)), PreconditionError);
}

TEST_CASE("suite catalogue") {
  const auto& names = suite_names();
  CHECK(names.size() == 14);
  CHECK(std::find(names.begin(), names.end(), "main") != names.end());
  CHECK(std::find(names.begin(), names.end(), "eq5-identity") != names.end());
  CHECK(std::find(names.begin(), names.end(), "graph-in-phi-le-c") != names.end());
}

TEST_CASE("every suite passes at reduced counts") {
  for (const std::string& name : suite_names()) {
    SuiteReport rep = run_suite(name, quick_config(7, 60));
    INFO("suite ", name, ": ", report_text(rep));
    CHECK(rep.failures == 0);
    CHECK(rep.indeterminate == 0);
    CHECK(rep.passes > 0);
    CHECK(rep.passes + rep.failures + rep.indeterminate == rep.instances);
    CHECK(rep.all_passed());
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  for (const std::string& name : {std::string("main"), std::string("m7"),
                                  std::string("prop-i-ii-iii")}) {
    SuiteReport a = run_suite(name, quick_config(13, 40));
    SuiteReport b = run_suite(name, quick_config(13, 40));
    CHECK(report_text(a) == report_text(b));
    CHECK(report_csv(a) == report_csv(b));
  }
}

TEST_CASE("different seeds give different draws") {
  SuiteReport a = run_suite("main", quick_config(1, 60));
  SuiteReport b = run_suite("main", quick_config(2, 60));
  // same instance counts, but the worst observed slack differs
  CHECK(report_text(a) != report_text(b));
}

TEST_CASE("report serialization shape") {
  SuiteReport rep = run_suite("eq5-identity", quick_config(5, 30));
  std::string text = report_text(rep);
  CHECK(text.find("suite=eq5-identity") == 0);
  CHECK(text.find("seed=5") != std::string::npos);
  CHECK(text.find("worst_slack=") != std::string::npos);
  std::string csv = report_csv(rep);
  CHECK(csv.find("eq5-identity,5,30,") == 0);
  CHECK(report_csv_header().find("suite,seed,") == 0);
}

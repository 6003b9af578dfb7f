#pragma once

#include <string>
#include <vector>

#include "fitztk/fitzpatrick.hpp"

namespace fitztk {

struct SuiteConfig {
  std::uint64_t seed = 7;
  int count = 0;  // 0 selects the suite's default count
  TolerancePolicy tolerances;
  std::string dump_dir = ".";
  bool write_failures = true;
};

// Aggregated outcome of one randomized suite. Deterministic for a fixed
// (suite, seed, count): the serialization is byte-identical across runs.
struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int instances = 0;
  int passes = 0;
  int failures = 0;
  int indeterminate = 0;  // (+inf) + (-inf) instances, counted, never passed
  int resampled = 0;      // instances redrawn after leaving dom(phi)
  ExtendedReal worst_slack = ExtendedReal::plus_inf();
  std::vector<std::string> failure_dumps;

  bool all_passed() const { return failures == 0; }
};

/// The known suite names, one per verified statement.
const std::vector<std::string>& suite_names();

// Runs `count` randomized instances of the named suite. Unknown names throw
// PreconditionError. Every failed instance serializes the operator and the
// sampled inputs to a replay file under cfg.dump_dir (at most five per run).
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

std::string report_text(const SuiteReport& r);
std::string report_csv_header();
std::string report_csv(const SuiteReport& r);

}  // namespace fitztk

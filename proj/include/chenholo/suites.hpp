#pragma once

#include <string>
#include <vector>

#include "chenholo/scenario.hpp"

namespace chenholo {

struct CheckResult {
  std::string name;
  bool exact = true;
  bool passed = false;
  double max_abs = 0.0;  // numeric checks only
  double elapsed_s = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

enum class Mode { exact, floating };

struct SuiteOptions {
  Mode mode = Mode::exact;   // floating: run only the numeric checks
  double tolerance = 1e-6;   // numeric checks only; exact checks ignore it
  double ode_step = 1e-3;
  std::optional<int> max_order;  // fallback order for flag-less series
  int iterations = 0;            // 0: per-suite default
};

const std::vector<std::string>& suite_names();

// Runs one named suite (or "all") against the scenario. Deterministic for
// fixed (scenario, options).
SuiteReport run_suite(const std::string& suite, const Scenario& scenario,
                      const SuiteOptions& options);

nlohmann::json suite_report_to_json(const SuiteReport& rep);
std::string suite_report_to_text(const SuiteReport& rep);

}  // namespace chenholo

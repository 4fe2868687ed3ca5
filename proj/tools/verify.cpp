// Scenario-driven verification CLI. Links only the C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chen_verify.h"

namespace {

// "m=2,n=1,nu=2,deg=1" -> four ints (defaults kept for missing keys)
bool parse_profile(const std::string& text, int& m, int& n, int& nu, int& deg) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) return false;
    std::string key = item.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (...) {
      return false;
    }
    if (key == "m")
      m = value;
    else if (key == "n")
      n = value;
    else if (key == "nu")
      nu = value;
    else if (key == "deg")
      deg = value;
    else
      return false;
  }
  return true;
}

void print_human(const nlohmann::json& rep) {
  std::cout << "suite " << rep.at("suite").get<std::string>() << ": "
            << (rep.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : rep.at("checks")) {
    std::cout << "  [" << (c.at("passed").get<bool>() ? "ok" : "FAIL") << "] "
              << c.at("name").get<std::string>();
    if (c.at("exact").get<bool>())
      std::cout << " (exact)";
    else
      std::cout << " (max_abs " << c.at("max_abs").get<double>() << ")";
    std::string detail = c.at("detail").get<std::string>();
    if (!detail.empty()) std::cout << " - " << detail;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of iterated-integral holonomy identities"};

  std::string suite;
  std::string scenario_path;
  std::string profile_text;
  std::string mode = "exact";
  std::string report_path;
  uint64_t seed = 1;
  int max_order = -1;
  double tolerance = 1e-6;
  int iterations = 0;

  app.add_option("--suite", suite, "Suite name (see --list)")->default_val("all");
  app.add_option("--scenario", scenario_path, "Scenario JSON file (otherwise generated)");
  app.add_option("--seed", seed, "Seed for generated scenarios");
  app.add_option("--profile", profile_text, "Generation bounds, e.g. m=2,n=1,nu=2,deg=1");
  app.add_option("--max-order", max_order, "Series truncation order when no flag certifies");
  app.add_option("--mode", mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tolerance", tolerance, "Tolerance for numeric checks");
  app.add_option("--iterations", iterations, "Override per-suite case counts");
  app.add_option("--report", report_path, "Write the JSON report here");
  bool list = false;
  app.add_flag("--list", list, "List suite names and exit");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    std::cout << cv_suite_names() << "\n";
    return 0;
  }

  cv_scenario* sc = nullptr;
  if (!scenario_path.empty()) {
    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "error: cannot open " << scenario_path << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    if (cv_scenario_load(buf.str().c_str(), &sc) != 0) {
      std::cerr << "error: " << cv_last_error() << "\n";
      return 2;
    }
  } else {
    int m = 1, n = 1, nu = 2, deg = 1;
    if (!profile_text.empty() && !parse_profile(profile_text, m, n, nu, deg)) {
      std::cerr << "error: malformed --profile (expected m=..,n=..,nu=..,deg=..)\n";
      return 2;
    }
    if (cv_scenario_generate(seed, m, n, nu, deg, &sc) != 0) {
      std::cerr << "error: " << cv_last_error() << "\n";
      return 2;
    }
  }

  nlohmann::json options{{"mode", mode}, {"tolerance", tolerance}};
  if (max_order >= 0) options["max_order"] = max_order;
  if (iterations > 0) options["iterations"] = iterations;

  char* report_json = nullptr;
  int rc = cv_run_suite(sc, suite.c_str(), options.dump().c_str(), &report_json);
  cv_scenario_free(sc);
  if (rc == 2) {
    std::cerr << "error: " << cv_last_error() << "\n";
    return 2;
  }

  nlohmann::json rep = nlohmann::json::parse(report_json);
  print_human(rep);

  if (report_path.empty()) {
    if (const char* dir = std::getenv("CHENVERIFY_REPORT_DIR"))
      report_path = std::string(dir) + "/" + suite + ".json";
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      cv_string_free(report_json);
      return 2;
    }
    out << report_json << "\n";
  }
  cv_string_free(report_json);
  return rc;
}

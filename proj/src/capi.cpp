#include "chen_verify.h"

#include <cstring>
#include <string>

#include "chenholo/suites.hpp"

using namespace chenholo;

struct cv_scenario {
  Scenario sc;
};

namespace {
thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(const std::string& msg, int code = 2) {
  g_last_error = msg;
  return code;
}

SuiteOptions parse_options(const char* options_json) {
  SuiteOptions opt;
  if (!options_json || !*options_json) return opt;
  nlohmann::json j = nlohmann::json::parse(options_json);
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "exact")
      opt.mode = Mode::exact;
    else if (m == "float")
      opt.mode = Mode::floating;
    else
      throw std::invalid_argument("options.mode must be \"exact\" or \"float\"");
  }
  if (j.contains("tolerance")) opt.tolerance = j.at("tolerance").get<double>();
  if (j.contains("ode_step")) opt.ode_step = j.at("ode_step").get<double>();
  if (j.contains("max_order")) opt.max_order = j.at("max_order").get<int>();
  if (j.contains("iterations")) opt.iterations = j.at("iterations").get<int>();
  return opt;
}
}  // namespace

extern "C" {

int cv_scenario_load(const char* json_text, cv_scenario** out) {
  if (!json_text || !out) return fail("null argument");
  try {
    auto* sc = new cv_scenario{scenario_from_string(json_text)};
    *out = sc;
    return 0;
  } catch (const std::exception& e) {
    return fail(std::string("scenario load: ") + e.what());
  }
}

int cv_scenario_generate(uint64_t seed, int m, int n, int nu, int deg, cv_scenario** out) {
  if (!out) return fail("null argument");
  try {
    Profile p;
    p.m = m;
    p.n = n;
    p.nu = nu;
    p.deg = deg;
    *out = new cv_scenario{generate_scenario(seed, p)};
    return 0;
  } catch (const std::exception& e) {
    return fail(std::string("scenario generate: ") + e.what());
  }
}

void cv_scenario_free(cv_scenario* sc) { delete sc; }

int cv_scenario_serialize(const cv_scenario* sc, char** out_json) {
  if (!sc || !out_json) return fail("null argument");
  try {
    *out_json = dup_string(scenario_to_string(sc->sc));
    return 0;
  } catch (const std::exception& e) {
    return fail(std::string("scenario serialize: ") + e.what());
  }
}

int cv_run_suite(const cv_scenario* sc, const char* suite, const char* options_json,
                 char** out_report_json) {
  if (!sc || !suite || !out_report_json) return fail("null argument");
  try {
    SuiteOptions opt = parse_options(options_json);
    SuiteReport rep = run_suite(suite, sc->sc, opt);
    *out_report_json = dup_string(suite_report_to_json(rep).dump(2));
    if (rep.passed()) return 0;
    g_last_error = "suite " + rep.suite + " had failing checks";
    return 1;
  } catch (const std::exception& e) {
    return fail(std::string("run suite: ") + e.what());
  }
}

const char* cv_suite_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : suite_names()) {
      if (!s.empty()) s += ",";
      s += n;
    }
    return s;
  }();
  return names.c_str();
}

const char* cv_last_error(void) { return g_last_error.c_str(); }

void cv_string_free(char* s) { delete[] s; }

}  // extern "C"

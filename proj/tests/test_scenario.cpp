#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "chenholo/suites.hpp"

using namespace chenholo;

namespace {
Scenario sample(uint64_t seed) {
  Profile p;
  p.m = 2;
  p.n = 2;
  p.nu = 3;
  p.deg = 2;
  return generate_scenario(seed, p);
}
}  // namespace

TEST_CASE("piecewise serializers round trip") {
  CHECK(rational_from_json(rational_to_json(Rational(-7, 3))) == Rational(-7, 3));
  MultiPoly p = MultiPoly::variable("x1") * MultiPoly::variable(kTimeVar) +
                MultiPoly(Rational(1, 2));
  CHECK(poly_from_json(poly_to_json(p)) == p);
  GradedSpace v;
  v.dims[-1] = 2;
  v.dims[1] = 1;
  CHECK(space_from_json(space_to_json(v)) == v);
  Flag f;
  f.space = v;
  f.layers = {{0, 2}, {1}};
  Flag f2 = flag_from_json(flag_to_json(f), v);
  CHECK(f2.layers == f.layers);
  HomForm w(2, true, v, v);
  PolyMat blk(1, 2);
  blk(0, 1) = p;
  w.add_term(FormMonomial{1, true}, -1, 1, blk);
  CHECK(homform_from_json(homform_to_json(w)) == w);
}

TEST_CASE("scenario serialization is canonical") {
  Scenario sc = sample(99);
  std::string text = scenario_to_string(sc);
  Scenario back = scenario_from_string(text);
  back.validate();
  // byte-identical after a round trip
  CHECK(scenario_to_string(back) == text);
  CHECK(back.systems.size() == sc.systems.size());
  CHECK(back.chains.size() == 1);
  CHECK(back.chain(0).n() == sc.chain(0).n());
  CHECK(back.seed == sc.seed);
}

TEST_CASE("generation is deterministic in the seed") {
  CHECK(scenario_to_string(sample(5)) == scenario_to_string(sample(5)));
  CHECK(scenario_to_string(sample(5)) != scenario_to_string(sample(6)));
}

TEST_CASE("generated scenarios are flat and certified") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    Scenario sc = sample(seed);
    sc.validate();
    for (const auto& s : sc.systems) {
      CHECK(mc_residual(s).is_zero());
      CHECK(s.flag.has_value());
    }
    CHECK(sc.gauges.size() == sc.systems.size());
    SuiteOptions opt;
    SuiteReport rep = run_suite("mc", sc, opt);
    CHECK(rep.passed());
  }
}

TEST_CASE("degenerate profile yields the zero scenario") {
  Profile p;
  p.nu = 1;
  Scenario sc = generate_scenario(7, p);
  sc.validate();
  for (const auto& s : sc.systems) CHECK(s.alpha.is_zero());
}

TEST_CASE("reports are deterministic and named") {
  Scenario sc = sample(11);
  SuiteOptions opt;
  opt.iterations = 4;
  SuiteReport r1 = run_suite("lambda", sc, opt);
  SuiteReport r2 = run_suite("lambda", sc, opt);
  CHECK(suite_report_to_json(r1).dump(2) == suite_report_to_json(r2).dump(2));
  CHECK(r1.suite == "lambda");
  CHECK(!r1.checks.empty());
  // the human rendering mentions every check
  std::string text = suite_report_to_text(r1);
  for (const auto& c : r1.checks) CHECK(text.find(c.name) != std::string::npos);
}

TEST_CASE("unknown suite names are rejected") {
  Scenario sc = sample(1);
  CHECK_THROWS(run_suite("nope", sc, SuiteOptions{}));
  // the advertised list includes the catch-all name
  const auto& names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "all") != names.end());
  CHECK(std::find(names.begin(), names.end(), "mc") != names.end());
}

TEST_CASE("floating mode keeps only numeric checks") {
  Scenario sc = sample(3);
  SuiteOptions opt;
  opt.mode = Mode::floating;
  opt.iterations = 2;
  SuiteReport rep = run_suite("prop32ode", sc, opt);
  CHECK(rep.passed());
  for (const auto& c : rep.checks) CHECK(!c.exact);
}

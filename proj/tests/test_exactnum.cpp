#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chenholo/multipoly.hpp"

using namespace chenholo;

namespace {
MultiPoly rand_poly(std::mt19937& rng) {
  static const std::vector<std::string> vars{"x1", "x2", "t"};
  std::uniform_int_distribution<int> nterms(0, 3), coef(-3, 3), expo(0, 2);
  MultiPoly p;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<int> e{expo(rng), expo(rng), expo(rng)};
    p += MultiPoly::monomial(Rational(coef(rng)), vars, e);
  }
  return p;
}
}  // namespace

TEST_CASE("rational string round trip") {
  CHECK(rational_to_string(Rational(3, 6)) == "1/2");
  CHECK(rational_to_string(Rational(-4)) == "-4");
  CHECK(rational_from_string("7/21") == Rational(1, 3));
  CHECK(rational_from_string("-5") == Rational(-5));
  CHECK_THROWS(rational_from_string("1/0"));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    MultiPoly a = rand_poly(rng), b = rand_poly(rng), c = rand_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == MultiPoly());
    CHECK(a * MultiPoly(Rational(1)) == a);
    CHECK(a * MultiPoly() == MultiPoly());
  }
}

TEST_CASE("canonical representation trims variables") {
  MultiPoly x = MultiPoly::variable("x1");
  MultiPoly y = MultiPoly::variable("x2");
  MultiPoly p = x + y - y;
  CHECK(p == x);
  CHECK(p.vars() == std::vector<std::string>{"x1"});
  CHECK(!p.depends_on("x2"));
}

TEST_CASE("derivative and definite integral") {
  std::mt19937 rng(23);
  MultiPoly u = MultiPoly::variable("u");
  for (int i = 0; i < 30; ++i) {
    MultiPoly p = rand_poly(rng);
    // d/du int_0^u p(.., t := s)|... : integrate p in t from 0 to u, then
    // differentiate in u; must give p with t := u.
    MultiPoly integ = p.integrate("t", MultiPoly(Rational(0)), u);
    CHECK(integ.diff("u") == p.subst("t", u));
    // additivity of the integral over [0, a] + [a, b]
    MultiPoly a(Rational(1, 2)), b(Rational(2));
    CHECK(p.integrate("t", a, b) ==
          p.integrate("t", MultiPoly(Rational(0)), b) - p.integrate("t", MultiPoly(Rational(0)), a));
  }
  CHECK_THROWS(MultiPoly::variable("t").integrate("t", MultiPoly(Rational(0)),
                                                  MultiPoly::variable("t")));
}

TEST_CASE("leibniz rule for diff") {
  std::mt19937 rng(31);
  for (int i = 0; i < 30; ++i) {
    MultiPoly a = rand_poly(rng), b = rand_poly(rng);
    CHECK((a * b).diff("t") == a.diff("t") * b + a * b.diff("t"));
  }
}

TEST_CASE("substitution") {
  MultiPoly x = MultiPoly::variable("x1");
  MultiPoly t = MultiPoly::variable("t");
  MultiPoly p = x * x * t + t * MultiPoly(Rational(2)) + MultiPoly(Rational(1));
  CHECK(p.subst("t", Rational(0)) == MultiPoly(Rational(1)));
  CHECK(p.subst("t", x) == x * x * x + x * MultiPoly(Rational(2)) + MultiPoly(Rational(1)));
  // substitution composes
  std::mt19937 rng(47);
  for (int i = 0; i < 20; ++i) {
    MultiPoly q = rand_poly(rng);
    CHECK(q.subst("t", x).subst("x1", Rational(2)) ==
          q.subst("x1", Rational(2)).subst("t", Rational(2)));
  }
}

TEST_CASE("degrees and evaluation") {
  MultiPoly x = MultiPoly::variable("x1");
  MultiPoly t = MultiPoly::variable("t");
  MultiPoly p = x * x * t - t;
  CHECK(p.total_degree() == 3);
  CHECK(p.degree_in("t") == 1);
  CHECK(p.degree_in("x1") == 2);
  CHECK(MultiPoly().total_degree() == -1);
  CHECK(p.constant_term() == Rational(0));
  CHECK(p.eval({{"x1", 2.0}, {"t", 3.0}}) == doctest::Approx(9.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chenholo/randgen.hpp"

using namespace chenholo;

namespace {
GradedSpace v2() {
  GradedSpace v;
  v.dims[0] = 1;
  v.dims[1] = 1;
  return v;
}

// scalar form c * mono on a one-dimensional space in degree `deg`
HomForm scalar_form(int m, bool cyl, FormMonomial mono, const MultiPoly& c, int src_deg = 0,
                    int tgt_deg = 0) {
  GradedSpace v = v2();
  HomForm w(m, cyl, v, v);
  PolyMat mat(1, 1);
  mat(0, 0) = c;
  w.add_term(mono, src_deg, tgt_deg, mat);
  return w;
}
}  // namespace

TEST_CASE("monomial merge signs") {
  FormMonomial out;
  CHECK(monomial_merge(FormMonomial{1, false}, FormMonomial{2, false}, out) == 1);
  CHECK(out.dx == 3);
  CHECK(monomial_merge(FormMonomial{2, false}, FormMonomial{1, false}, out) == -1);
  CHECK(monomial_merge(FormMonomial{1, false}, FormMonomial{1, false}, out) == 0);
  CHECK(monomial_merge(FormMonomial{0, true}, FormMonomial{0, true}, out) == 0);
  // dt passes over dx: dt ^ dx1 = -(dx1 ^ dt)
  CHECK(monomial_merge(FormMonomial{0, true}, FormMonomial{1, false}, out) == -1);
  CHECK(out.dx == 1);
  CHECK(out.dt);
  CHECK(monomial_merge(FormMonomial{1, false}, FormMonomial{0, true}, out) == 1);
  // dx1 ^ (dx2 ^ dt) = +dx1 dx2 dt; (dx2 ^ dt) ^ dx1 has two inversions
  CHECK(monomial_merge(FormMonomial{1, false}, FormMonomial{2, true}, out) == 1);
  CHECK(monomial_merge(FormMonomial{2, true}, FormMonomial{1, false}, out) == 1);
}

TEST_CASE("wedge koszul sign on decomposables") {
  // a = dx1 (x) A with A of internal degree 1, b = dx2 (x) B internal degree 0.
  GradedSpace v = v2();
  HomForm a(2, false, v, v);
  PolyMat am(1, 1);
  am(0, 0) = MultiPoly(Rational(1));
  a.add_term(FormMonomial{1, false}, 0, 1, am);  // A : V^0 -> V^1
  HomForm b(2, false, v, v);
  PolyMat bm(1, 1);
  bm(0, 0) = MultiPoly(Rational(1));
  b.add_term(FormMonomial{2, false}, 0, 0, bm);  // B : V^0 -> V^0
  // (dx1 (x) A) ^ (dx2 (x) B) = (-1)^{1*1} dx1 dx2 (x) AB
  HomForm w = wedge(a, b);
  REQUIRE(w.terms().size() == 1);
  const auto& [k, mat] = *w.terms().begin();
  CHECK(k.mono.dx == 3);
  CHECK(k.src_deg == 0);
  CHECK(k.tgt_deg == 1);
  CHECK(mat(0, 0) == MultiPoly(Rational(-1)));

  // same composition with A of internal degree 0 picks up no sign
  HomForm a0(2, false, v, v);
  a0.add_term(FormMonomial{1, false}, 0, 0, am);
  HomForm w0 = wedge(a0, b);
  CHECK(w0.terms().begin()->second(0, 0) == MultiPoly(Rational(1)));
}

TEST_CASE("exterior derivative insertion signs") {
  MultiPoly x1 = MultiPoly::variable(xvar(1));
  MultiPoly x2 = MultiPoly::variable(xvar(2));
  // d(x2 dx1) = dx2 ^ dx1 = -dx1 dx2
  HomForm w = scalar_form(2, false, FormMonomial{1, false}, x2);
  HomForm dw = exterior_d(w);
  REQUIRE(dw.terms().size() == 1);
  CHECK(dw.terms().begin()->first.mono.dx == 3);
  CHECK(dw.terms().begin()->second(0, 0) == MultiPoly(Rational(-1)));
  // d(t dx1) on the cylinder has the dt term dt ^ dx1 = -dx1 dt
  HomForm wc = scalar_form(2, true, FormMonomial{1, false}, MultiPoly::variable(kTimeVar));
  HomForm dwc = exterior_d(wc);
  REQUIRE(dwc.terms().size() == 1);
  CHECK(dwc.terms().begin()->first.mono.dt);
  CHECK(dwc.terms().begin()->second(0, 0) == MultiPoly(Rational(-1)));
  // base forms never see t
  HomForm wb = scalar_form(2, false, FormMonomial{1, false}, MultiPoly::variable(kTimeVar));
  CHECK(exterior_d(wb).is_zero());
  CHECK(exterior_d(scalar_form(2, false, FormMonomial{}, x1 * x2)).terms().size() == 2);
}

TEST_CASE("contract dt") {
  // contract(dx1 ^ dt) = -dx1, contract(dt) = 1, contract(dx1) = 0
  HomForm a = scalar_form(2, true, FormMonomial{1, true}, MultiPoly(Rational(1)));
  HomForm ca = contract_dt(a);
  REQUIRE(ca.terms().size() == 1);
  CHECK(ca.terms().begin()->first.mono.dx == 1);
  CHECK(ca.terms().begin()->second(0, 0) == MultiPoly(Rational(-1)));
  CHECK(contract_dt(scalar_form(2, true, FormMonomial{1, false}, MultiPoly(Rational(1)))).is_zero());
  HomForm b = contract_dt(scalar_form(2, true, FormMonomial{0, true}, MultiPoly(Rational(2))));
  CHECK(b.terms().begin()->second(0, 0) == MultiPoly(Rational(2)));
}

TEST_CASE("random d-squared leibniz associativity") {
  std::mt19937_64 rng(2024);
  GradedSpace v = v2();
  std::uniform_int_distribution<int> dd(0, 2);
  for (int i = 0; i < 40; ++i) {
    int m = 1 + i % 3;
    HomForm a = rand_homform(rng, m, true, v, v, dd(rng), 2);
    HomForm b = rand_homform(rng, m, true, v, v, dd(rng), 2);
    HomForm c = rand_homform(rng, m, true, v, v, dd(rng), 2);
    CHECK(exterior_d(exterior_d(a)).is_zero());
    int da = 0;
    a.is_homogeneous(&da);
    HomForm lhs = exterior_d(wedge(a, b));
    HomForm rhs = wedge(exterior_d(a), b);
    HomForm snd = wedge(a, exterior_d(b));
    rhs = (da % 2 == 0) ? rhs + snd : rhs - snd;
    CHECK((lhs - rhs).is_zero());
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("restriction") {
  MultiPoly t = MultiPoly::variable(kTimeVar);
  MultiPoly x1 = MultiPoly::variable(xvar(1));
  HomForm w = scalar_form(1, true, FormMonomial{1, false}, t * x1);
  HomForm w0 = restrict_t(w, Rational(0));
  CHECK(w0.is_zero());
  HomForm wh = restrict_t(w, Rational(1, 2));
  CHECK(!wh.cylinder());
  CHECK(wh.terms().begin()->second(0, 0) == MultiPoly(Rational(1, 2)) * x1);
  // dt terms die under restriction
  CHECK(restrict_t(scalar_form(1, true, FormMonomial{0, true}, x1), Rational(1)).is_zero());
  // substituting the time variable itself keeps it as a parameter
  HomForm wt = restrict_t(w, t);
  CHECK(wt.terms().begin()->second(0, 0) == t * x1);
}

TEST_CASE("pullback is a dga map") {
  std::mt19937_64 rng(99);
  GradedSpace v = v2();
  std::uniform_int_distribution<int> dd(0, 2);
  // phi : R^1 -> R^2, u -> (u, u^2)
  MultiPoly u = MultiPoly::variable(xvar(1));
  std::vector<MultiPoly> phi{u, u * u};
  for (int i = 0; i < 25; ++i) {
    HomForm a = rand_homform(rng, 2, false, v, v, dd(rng), 2);
    HomForm b = rand_homform(rng, 2, false, v, v, dd(rng), 2);
    HomForm pa = pullback_map(a, phi, 1, false);
    HomForm pb = pullback_map(b, phi, 1, false);
    CHECK(pullback_map(wedge(a, b), phi, 1, false) == wedge(pa, pb));
    CHECK(pullback_map(exterior_d(a), phi, 1, false) == exterior_d(pa));
  }
  // constant map kills positive form degrees and evaluates coefficients
  std::vector<MultiPoly> cst{MultiPoly(Rational(2)), MultiPoly(Rational(-1))};
  HomForm w = scalar_form(2, false, FormMonomial{1, false}, MultiPoly(Rational(1)));
  CHECK(pullback_map(w, cst, 1, false).is_zero());
  HomForm z = scalar_form(2, false, FormMonomial{}, MultiPoly::variable(xvar(1)));
  HomForm pz = pullback_map(z, cst, 1, false);
  CHECK(pz.terms().begin()->second(0, 0) == MultiPoly(Rational(2)));
  // identity map is the identity
  std::vector<MultiPoly> id2{MultiPoly::variable(xvar(1)), MultiPoly::variable(xvar(2))};
  for (int i = 0; i < 10; ++i) {
    HomForm a = rand_homform(rng, 2, true, v, v, dd(rng), 2);
    CHECK(pullback_map(a, id2, 2, true) == a);
  }
}

TEST_CASE("pullback composes contravariantly") {
  std::mt19937_64 rng(7);
  GradedSpace v = v2();
  MultiPoly u = MultiPoly::variable(xvar(1));
  std::vector<MultiPoly> f{u + MultiPoly(Rational(1))};           // R -> R
  std::vector<MultiPoly> g{u * u, u};                              // R -> R^2
  // (f after nothing) here: compose g with f componentwise: g . f
  std::vector<MultiPoly> gf;
  for (const auto& comp : g) gf.push_back(comp.subst(xvar(1), f[0]));
  for (int i = 0; i < 15; ++i) {
    HomForm a = rand_homform(rng, 2, false, v, v, int(rng() % 3), 2);
    CHECK(pullback_map(pullback_map(a, g, 1, false), f, 1, false) ==
          pullback_map(a, gf, 1, false));
  }
}

TEST_CASE("numeric fiber evaluation matches the algebra") {
  std::mt19937_64 rng(55);
  GradedSpace v = v2();
  for (int i = 0; i < 15; ++i) {
    HomForm a = rand_homform(rng, 2, false, v, v, int(rng() % 3), 2);
    HomForm b = rand_homform(rng, 2, false, v, v, int(rng() % 3), 2);
    std::vector<double> x{0.7, -0.3};
    ExteriorValue ea = eval_at_point(a, x, 0.25);
    ExteriorValue eb = eval_at_point(b, x, 0.25);
    ExteriorValue ew = eval_at_point(wedge(a, b), x, 0.25);
    double diff = (ew + wedge(ea, eb).scaled(-1.0)).max_abs();
    CHECK(diff == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK_THROWS(eval_at_point(scalar_form(1, true, FormMonomial{0, true}, MultiPoly(Rational(1))),
                             {0.0}, 0.0));
}

TEST_CASE("homogeneity bookkeeping") {
  GradedSpace v = v2();
  HomForm w(2, false, v, v);
  PolyMat mat(1, 1);
  mat(0, 0) = MultiPoly(Rational(1));
  w.add_term(FormMonomial{1, false}, 0, 0, mat);  // total degree 1
  w.add_term(FormMonomial{}, 0, 1, mat);          // total degree 1
  CHECK(w.is_homogeneous());
  w.add_term(FormMonomial{3, false}, 0, 0, mat);  // total degree 2
  CHECK(!w.is_homogeneous());
  CHECK(w.total_degrees() == std::set<int>{1, 2});
  CHECK(w.homogeneous_component(2).terms().size() == 1);
  CHECK(w.form_degree_component(0).terms().size() == 1);
  CHECK(w.homogeneous_component(1) + w.homogeneous_component(2) == w);
}

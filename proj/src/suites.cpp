#include "chenholo/suites.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "chenholo/randgen.hpp"

namespace chenholo {

namespace {
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Aggregates many exact sub-cases into one check line.
struct Agg {
  bool ok = true;
  int cases = 0;
  std::string witness;

  void add(bool zero, const std::string& w = "") {
    ++cases;
    if (!zero && ok) {
      ok = false;
      witness = w;
    }
  }
  void add(const ResidualReport& r) { add(r.zero, r.witness); }
};

void finish_exact(SuiteReport& rep, const std::string& name, const Agg& agg,
                  Clock::time_point t0) {
  CheckResult c;
  c.name = name;
  c.exact = true;
  c.passed = agg.ok;
  c.elapsed_s = seconds_since(t0);
  c.detail = std::to_string(agg.cases) + " cases";
  if (!agg.ok) c.detail += "; witness: " + agg.witness;
  rep.checks.push_back(std::move(c));
}

int iters(const SuiteOptions& opt, int dflt) {
  return opt.iterations > 0 ? opt.iterations : dflt;
}

uint64_t base_seed(const Scenario& sc) { return sc.seed.value_or(1); }

GradedSpace small_space(int variant) {
  GradedSpace v;
  switch (variant % 4) {
    case 0: v.dims[0] = 2; break;
    case 1: v.dims[0] = 1; v.dims[1] = 1; break;
    case 2: v.dims[-1] = 1; v.dims[0] = 1; break;
    default: v.dims[0] = 2; v.dims[1] = 1; break;
  }
  return v;
}

// One basis vector per layer, shuffled.
Flag shuffled_flag(std::mt19937_64& rng, const GradedSpace& v) {
  std::vector<int> globals;
  for (int g = 0; g < v.total_dim(); ++g) globals.push_back(g);
  std::shuffle(globals.begin(), globals.end(), rng);
  Flag f;
  f.space = v;
  for (int g : globals) f.layers.push_back({g});
  return f;
}

// Nonzero homogeneous draw (retries a few times, may still be zero).
HomForm draw_form(std::mt19937_64& rng, int m, bool cyl, const GradedSpace& src,
                  const GradedSpace& tgt, int deg, int maxdeg) {
  for (int i = 0; i < 4; ++i) {
    HomForm w = rand_homform(rng, m, cyl, src, tgt, deg, maxdeg);
    if (!w.is_zero()) return w;
  }
  return rand_homform(rng, m, cyl, src, tgt, deg, maxdeg);
}

// ---------------------------------------------------------------- suites

void suite_forms(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg dsq, leib, assoc;
  int n = iters(opt, 34);
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(base_seed(sc) + uint64_t(i));
    int m = 1 + i % 3;
    GradedSpace v = small_space(i);
    std::uniform_int_distribution<int> dd(0, 2);
    HomForm a = draw_form(rng, m, true, v, v, dd(rng), 2);
    HomForm b = draw_form(rng, m, true, v, v, dd(rng), 2);
    HomForm c = draw_form(rng, m, true, v, v, dd(rng), 2);

    dsq.add(exterior_d(exterior_d(a)).is_zero(), "d^2 on draw " + std::to_string(i));
    dsq.add(exterior_d(exterior_d(b)).is_zero());
    dsq.add(exterior_d(exterior_d(c)).is_zero());

    int da = 0;
    a.is_homogeneous(&da);
    HomForm lhs = exterior_d(wedge(a, b));
    HomForm rhs = wedge(exterior_d(a), b);
    HomForm second = wedge(a, exterior_d(b));
    rhs = (da % 2 == 0) ? rhs + second : rhs - second;
    leib.add((lhs - rhs).is_zero(), "Leibniz on draw " + std::to_string(i));

    assoc.add((wedge(wedge(a, b), c) == wedge(a, wedge(b, c))),
              "associativity on draw " + std::to_string(i));
  }
  finish_exact(rep, "forms/d-squared", dsq, t0);
  finish_exact(rep, "forms/leibniz", leib, t0);
  finish_exact(rep, "forms/associativity", assoc, t0);
}

FlatDraw seeded_draw(const Scenario& sc, int i, int nu, int m, int deg, bool cylinder) {
  std::mt19937_64 rng(base_seed(sc) * 1000003u + uint64_t(i));
  GradedSpace v = small_space(i + nu);
  while (v.total_dim() < nu) v.dims[0] += 1;
  Flag f = shuffled_flag(rng, v);
  // collapse to nu layers by merging the tail
  while (int(f.layers.size()) > nu) {
    auto last = f.layers.back();
    f.layers.pop_back();
    for (int g : last) f.layers.back().push_back(g);
  }
  return generate_flat(rng(), v, f, m, deg, cylinder);
}

void suite_chen(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 8);
    for (int i = 0; i < n; ++i) {
      std::mt19937_64 rng(base_seed(sc) + 77u * uint64_t(i));
      int m = 1 + i % 2;
      GradedSpace v = small_space(i);
      HomForm omega = draw_form(rng, m, true, v, v, 1, 1);
      ChenSeries s = phi_series(omega, nullptr, 3);
      for (int k = 0; k < int(s.terms.size()); ++k)
        agg.add(s.terms[size_t(k)] == phi_term(omega, k),
                "series term " + std::to_string(k) + " draw " + std::to_string(i));
    }
    finish_exact(rep, "chen/series-matches-nested-integrals", agg, t0);
  }
  {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 10);
    for (int i = 0; i < n; ++i) {
      FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 1, true);
      agg.add(phi_derivative_residual(phi_series(d.s.alpha, &*d.s.flag)));
    }
    finish_exact(rep, "chen/derivative-identity", agg, t0);
  }
}

void suite_mc(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  {
    auto t0 = Clock::now();
    Agg agg;
    for (const auto& s : sc.systems) agg.add(mc_residual(s).is_zero(), "scenario system");
    if (sc.systems.empty()) agg.add(true);
    finish_exact(rep, "mc/scenario-flat", agg, t0);
  }
  {
    auto t0 = Clock::now();
    Agg agg;
    for (const auto& s : sc.systems) {
      HomForm total = mc_residual(s);
      HomForm sum(total.m(), total.cylinder(), total.src(), total.tgt());
      for (const auto& [p, comp] : mc_component_residuals(s)) sum = sum + comp;
      agg.add(sum == total, "component split");
    }
    if (sc.systems.empty()) agg.add(true);
    finish_exact(rep, "mc/component-split", agg, t0);
  }
  {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 10);
    for (int i = 0; i < n; ++i) {
      FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 3, 1 + i % 2, true);
      agg.add(mc_residual(d.s).is_zero(), "generator seed " + std::to_string(i));
    }
    finish_exact(rep, "mc/generator-flat", agg, t0);
  }
}

void suite_lemma35(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg agg;
  int n = iters(opt, 20);
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(base_seed(sc) + 31u * uint64_t(i));
    int len = 1 + i % 3;
    int m = 1 + i % 2;
    std::vector<GradedSpace> spaces;
    for (int j = 0; j <= len; ++j) spaces.push_back(small_space(int(rng() % 3)));
    std::uniform_int_distribution<int> dd(0, 2);
    std::vector<HomForm> chain;
    for (int j = 0; j < len; ++j)
      chain.push_back(draw_form(rng, m, true, spaces[size_t(len) - j - 1],
                                spaces[size_t(len) - j], dd(rng), 2));
    agg.add(lemma35_residual(chain));
  }
  finish_exact(rep, "lemma35/derivative-expansion", agg, t0);
}

void suite_prop34(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg agg;
  int n = iters(opt, 20);
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(base_seed(sc) + 13u * uint64_t(i));
    int m = 1 + i % 2;
    GradedSpace v = small_space(i);
    std::uniform_int_distribution<int> dd(0, 2);
    HomForm omega = draw_form(rng, m, true, v, v, dd(rng), 1);
    int maxn = 2 + i % 3;  // up to 4
    for (int k = 1; k <= maxn; ++k)
      agg.add(phi_term(omega, k) == phi_homogeneous_sign_form(omega, k),
              "order " + std::to_string(k) + " draw " + std::to_string(i));
  }
  finish_exact(rep, "prop34/ordering-sign-cross-oracle", agg, t0);
}

void suite_prop36(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg agg;
  int n = iters(opt, 20);
  for (int i = 0; i < n; ++i) {
    FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 1, true);
    agg.add(dphi_expansion_residual(d.s.alpha, *d.s.flag));
  }
  finish_exact(rep, "prop36/series-derivative-expansion", agg, t0);
}

void suite_prop32ode(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  {
    auto t0 = Clock::now();
    CheckResult c;
    c.name = "prop32/ode-cross-check";
    c.exact = false;
    double worst = 0.0;
    int n = iters(opt, 5);
    std::vector<double> grid{0.2, 0.4, 0.6, 0.8, 1.0};
    for (int i = 0; i < n; ++i) {
      FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 2, true);
      HomForm exact = phi_series(d.s.alpha, &*d.s.flag).sum();
      std::vector<double> x;
      for (int k = 0; k < d.s.m(); ++k) x.push_back(0.3 + 0.2 * k);
      std::vector<ExteriorValue> ode = phi_ode(d.s.alpha, x, grid, opt.ode_step);
      for (size_t g = 0; g < grid.size(); ++g) {
        ExteriorValue ref = eval_at_point(exact, x, grid[g]);
        double scale = std::max(1.0, ref.max_abs());
        double err = (ode[g] + ref.scaled(-1.0)).max_abs() / scale;
        worst = std::max(worst, err);
      }
    }
    c.max_abs = worst;
    c.passed = worst <= opt.tolerance;
    c.elapsed_s = seconds_since(t0);
    c.detail = std::to_string(n) + " systems x " + std::to_string(grid.size()) + " points";
    rep.checks.push_back(std::move(c));
  }
  if (opt.mode == Mode::exact) {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 5);
    for (int i = 0; i < n; ++i) {
      FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 2, true);
      agg.add(phi_derivative_residual(phi_series(d.s.alpha, &*d.s.flag)));
    }
    finish_exact(rep, "prop32/derivative-identity-exact", agg, t0);
  }
}

void suite_prop33(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg agg;
  int n = iters(opt, 50);
  for (int i = 0; i < n; ++i) {
    FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 1 + i % 2, true);
    HomForm eta = HomForm::from_hom(d.alpha_c, d.s.m(), true);
    HomForm direct = phi_series(d.s.alpha, &*d.s.flag).sum();
    HomForm transported = gauge_transport(eta, d.g, *d.s.flag);
    agg.add(direct == transported, "seed " + std::to_string(i));
  }
  finish_exact(rep, "prop33/gauge-transport", agg, t0);
}

void suite_lemma41(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 50);
    for (int i = 0; i < n; ++i) {
      FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 3, 1 + i % 2, true);
      HolonomyResult h = holonomy_iso(d.s);
      agg.add(h.report.zero, "morphism residual, seed " + std::to_string(i));
    }
    finish_exact(rep, "lemma41/holonomy-morphism-and-inverse", agg, t0);
  }
  {
    auto t0 = Clock::now();
    Agg agg;
    // alpha = A dt with A constant square-zero: Phi(t) = id + tA.
    {
      GradedSpace v;
      v.dims[0] = 2;
      PolyMat a(2, 2);
      a(1, 0) = MultiPoly(Rational(1));
      HomForm alpha(1, true, v, v);
      alpha.add_term(FormMonomial{0, true}, 0, 0, a);
      Flag f;
      f.space = v;
      f.layers = {{1}, {0}};
      HolonomyResult h = holonomy_iso(Superconnection{v, alpha, f});
      HomForm want = HomForm::identity(1, false, v);
      want.add_term(FormMonomial{}, 0, 0, a);
      agg.add(h.phi == want, "Phi = id + tA at t = 1");
      agg.add(h.report.zero, "morphism residual (constant dt twist)");
    }
    // alpha = N (t dx + x dt): Phi(1) = id + xN, inverse id - xN.
    {
      GradedSpace v;
      v.dims[0] = 2;
      PolyMat n(2, 2);
      n(1, 0) = MultiPoly(Rational(1));
      HomForm alpha(1, true, v, v);
      alpha.add_term(FormMonomial{1, false}, 0, 0, n.scaled(MultiPoly::variable(kTimeVar)));
      alpha.add_term(FormMonomial{0, true}, 0, 0, n.scaled(MultiPoly::variable(xvar(1))));
      Flag f;
      f.space = v;
      f.layers = {{1}, {0}};
      HolonomyResult h = holonomy_iso(Superconnection{v, alpha, f});
      HomForm want = HomForm::identity(1, false, v);
      want.add_term(FormMonomial{}, 0, 0, n.scaled(MultiPoly::variable(xvar(1))));
      HomForm want_inv = HomForm::identity(1, false, v);
      want_inv.add_term(FormMonomial{}, 0, 0,
                        n.scaled(-MultiPoly::variable(xvar(1))));
      agg.add(h.phi == want, "Phi = id + xN");
      agg.add(h.phi_inv == want_inv, "inverse = id - xN");
      agg.add(h.report.zero, "morphism residual (xN family)");
    }
    // alpha = -g^{-1} dg for g = id + tN: Phi(1) = id - N.
    {
      GradedSpace v;
      v.dims[0] = 2;
      PolyMat n(2, 2);
      n(1, 0) = MultiPoly(Rational(1));
      HomForm g = HomForm::identity(1, true, v);
      g.add_term(FormMonomial{}, 0, 0, n.scaled(MultiPoly::variable(kTimeVar)));
      HomForm alpha = -wedge(homform_inverse(g), exterior_d(g));
      Flag f;
      f.space = v;
      f.layers = {{1}, {0}};
      HolonomyResult h = holonomy_iso(Superconnection{v, alpha, f});
      HomForm want = HomForm::identity(1, false, v);
      want.add_term(FormMonomial{}, 0, 0, -n);
      agg.add(h.phi == want, "Phi = id - N for pure gauge");
    }
    finish_exact(rep, "lemma41/closed-form-holonomies", agg, t0);
  }
}

void suite_lemma42(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg agg;
  int n = iters(opt, 50);
  for (int i = 0; i < n; ++i) {
    FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 1 + i % 2, true);
    Superconnection sw{d.s.space, HomForm::from_hom(d.alpha_c, d.s.m(), true), d.s.flag};
    agg.add(gauge_compat_check(d.s, sw, d.g));
  }
  finish_exact(rep, "lemma42/gauge-holonomy-compat", agg, t0);
}

TensorChain seeded_chain(const Scenario& sc, int i, int len, bool with_flags) {
  Profile p;
  p.m = 1 + i % 2;
  p.n = len;
  p.nu = 3;
  p.deg = len >= 3 ? 1 : 2;
  Scenario gen = generate_scenario(base_seed(sc) * 2654435761u + uint64_t(i), p);
  TensorChain c = gen.chain(0);
  if (!with_flags)
    for (auto& s : c.systems) s.flag.reset();
  return c;
}

void suite_binfty(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg agg;
  int n = iters(opt, 50);
  for (int i = 0; i < n; ++i) {
    int len = 1 + i % 3;
    if (i % 2 == 0) {
      // flat contexts from the generator
      agg.add(b_square_residual(seeded_chain(sc, i, len, true)));
    } else {
      // flat contexts with arbitrary (non-generator) entries: b^2 = 0 needs
      // each context to be an honest complex, the entries are unconstrained
      std::mt19937_64 rng(base_seed(sc) + 997u * uint64_t(i));
      int m = 1 + i % 2;
      std::uniform_int_distribution<int> dd(0, 2);
      TensorChain c;
      for (int j = 0; j <= len; ++j) {
        FlatDraw d = seeded_draw(sc, 1000 * i + j, 2 + (i + j) % 2, m, 1, true);
        d.s.flag.reset();  // flags play no role in the chain differential
        c.systems.push_back(d.s);
      }
      for (int j = 0; j < len; ++j)
        c.xis.push_back(draw_form(rng, m, true, c.systems[size_t(j)].space,
                                  c.systems[size_t(j) + 1].space, dd(rng), 1));
      agg.add(b_square_residual(c));
    }
  }
  finish_exact(rep, "binfty/b-square", agg, t0);
}

void suite_lambda(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  {
    auto t0 = Clock::now();
    Agg agg;
    GradedSpace pt;
    pt.dims[0] = 1;
    HomForm zero_alpha(1, true, pt, pt);
    Superconnection trivial{pt, zero_alpha, std::nullopt};
    // n = 1: xi = c x dt gives lambda = c x.
    {
      Rational c(3, 2);
      HomForm xi(1, true, pt, pt);
      PolyMat e(1, 1);
      e(0, 0) = MultiPoly(c) * MultiPoly::variable(xvar(1));
      xi.add_term(FormMonomial{0, true}, 0, 0, e);
      TensorChain chain{{trivial, trivial}, {xi}};
      HomForm want(1, false, pt, pt);
      want.add_term(FormMonomial{}, 0, 0, e);
      agg.add(lambda_eval(chain) == want, "lambda_1(c x dt) = c x");
    }
    // n = 2: constants a dt, b dt give lambda = ab/2.
    {
      Rational a(2), b(5);
      HomForm xi0(1, true, pt, pt), xi1(1, true, pt, pt);
      PolyMat ea(1, 1), eb(1, 1), eab(1, 1);
      ea(0, 0) = MultiPoly(a);
      eb(0, 0) = MultiPoly(b);
      eab(0, 0) = MultiPoly(a * b / 2);
      xi0.add_term(FormMonomial{0, true}, 0, 0, ea);
      xi1.add_term(FormMonomial{0, true}, 0, 0, eb);
      TensorChain chain{{trivial, trivial, trivial}, {xi0, xi1}};
      HomForm want(1, false, pt, pt);
      want.add_term(FormMonomial{}, 0, 0, eab);
      agg.add(lambda_eval(chain) == want, "lambda_2(b dt, a dt) = ab/2");
    }
    finish_exact(rep, "lambda/known-values", agg, t0);
  }
  {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 6);
    for (int i = 0; i < n; ++i) {
      TensorChain chain = seeded_chain(sc, i, 1 + i % 3, true);
      agg.add(lambda_degree_check(chain));
      // n = 0 equals the holonomy
      TensorChain zero{{chain.systems[0]}, {}};
      agg.add(lambda_eval(zero) == holonomy_iso(chain.systems[0]).phi,
              "lambda_0 = holonomy, seed " + std::to_string(i));
    }
    finish_exact(rep, "lambda/degree-and-holonomy", agg, t0);
  }
}

void suite_appendixA(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg rel, degc, cov;
  int n = iters(opt, 30);
  for (int i = 0; i < n; ++i) {
    Profile p;
    p.m = 1 + i % 2;
    p.n = 1 + i % 3;
    p.nu = 3;
    p.deg = p.n >= 3 ? 1 : 2;
    Scenario gen = generate_scenario(base_seed(sc) * 7919u + uint64_t(i), p);
    TensorChain chain = gen.chain(0);
    rel.add(ainfty_relation_residual(chain));
    degc.add(lambda_degree_check(chain));

    // gauge covariance against the constant trivialization
    TensorChain beta = chain;
    std::vector<HomForm> gs;
    for (size_t j = 0; j < gen.systems.size(); ++j) {
      beta.systems[j].alpha = gen.gauges[j].beta_alpha;
      gs.push_back(gen.gauges[j].g);
    }
    for (size_t j = 0; j < chain.xis.size(); ++j)
      beta.xis[j] = wedge(wedge(gs[j + 1], chain.xis[j]), homform_inverse(gs[j]));
    cov.add(lambda_gauge_covariance_residual(chain, beta, gs));
  }
  finish_exact(rep, "appendixA/relation-residual", rel, t0);
  finish_exact(rep, "appendixA/lambda-degree", degc, t0);
  finish_exact(rep, "appendixA/gauge-covariance", cov, t0);
}

void suite_poincare(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  {
    auto t0 = Clock::now();
    Agg agg;
    int n = iters(opt, 20);
    for (int i = 0; i < n; ++i) {
      FlatDraw d = seeded_draw(sc, i, 2 + i % 2, 1 + i % 2, 1 + i % 2, false);
      std::vector<Rational> x0(size_t(d.s.m()), Rational(0));
      if (i % 3 == 1) x0[0] = Rational(1, 2);
      PoincareResult r = poincare_trivialization(d.s, x0);
      agg.add(r.report.zero, "morphism residual, seed " + std::to_string(i));
      HomForm id = HomForm::identity(d.s.m(), false, d.s.space);
      agg.add(wedge(r.psi, r.psi_inv) == id && wedge(r.psi_inv, r.psi) == id,
              "inverse identities, seed " + std::to_string(i));
    }
    finish_exact(rep, "poincare/seeded-trivializations", agg, t0);
  }
  {
    auto t0 = Clock::now();
    Agg agg;
    // alpha = N dx on R: Psi = id + xN, constant system (V, d).
    GradedSpace v;
    v.dims[0] = 2;
    PolyMat nmat(2, 2);
    nmat(1, 0) = MultiPoly(Rational(1));
    HomForm alpha(1, false, v, v);
    alpha.add_term(FormMonomial{1, false}, 0, 0, nmat);
    Flag f;
    f.space = v;
    f.layers = {{1}, {0}};
    PoincareResult r = poincare_trivialization(Superconnection{v, alpha, f}, {Rational(0)});
    HomForm want = HomForm::identity(1, false, v);
    want.add_term(FormMonomial{}, 0, 0, nmat.scaled(MultiPoly::variable(xvar(1))));
    agg.add(r.psi == want, "Psi = id + xN");
    agg.add(r.constant_system.alpha.is_zero(), "constant system is (V, d)");
    agg.add(r.report.zero, "morphism residual (N dx)");
    finish_exact(rep, "poincare/worked-example", agg, t0);
  }
}

void suite_compose(const Scenario& sc, const SuiteOptions& opt, SuiteReport& rep) {
  auto t0 = Clock::now();
  Agg rel, ident;
  int count = iters(opt, 10);
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(base_seed(sc) + 4099u * uint64_t(i));
    int m = 1 + i % 2;
    int len = i % 3;
    std::uniform_int_distribution<int> dd(0, 2);
    TensorChain chain;
    std::vector<GradedSpace> spaces;
    for (int j = 0; j <= len; ++j) {
      FlatDraw d = seeded_draw(sc, 100 * i + j, 2, m, 1, false);
      spaces.push_back(d.s.space);
      chain.systems.push_back(d.s);
    }
    for (int j = 0; j < len; ++j)
      chain.xis.push_back(
          draw_form(rng, m, false, spaces[size_t(j)], spaces[size_t(j) + 1], dd(rng), 1));

    // A: contraction to the origin; B: translation by 1/2 in each variable.
    std::vector<MultiPoly> ha, hb;
    for (int k = 1; k <= m; ++k) {
      ha.push_back(MultiPoly::variable(kTimeVar) * MultiPoly::variable(xvar(k)));
      hb.push_back(MultiPoly::variable(xvar(k)) +
                   MultiPoly::variable(kTimeVar) * MultiPoly(Rational(1, 2)));
    }
    LambdaOracle a = hol_transformation(ha, m);
    LambdaOracle b = hol_transformation(hb, m);
    LambdaOracle ab = compose_oracles(b, a);
    rel.add(ainfty_relation_residual(chain, &ab));

    // identity-transformation sanity: composing with the constant homotopy
    // reproduces A's values
    std::vector<MultiPoly> hid;
    for (int k = 1; k <= m; ++k) hid.push_back(MultiPoly::variable(xvar(k)));
    LambdaOracle idb = hol_transformation(hid, m);
    HomForm composed = compose_transformations(idb, a, chain);
    ident.add(composed == a.eval(chain), "identity composite, seed " + std::to_string(i));
  }
  finish_exact(rep, "compose/composite-relation", rel, t0);
  finish_exact(rep, "compose/identity-composite", ident, t0);
}

using SuiteFn = void (*)(const Scenario&, const SuiteOptions&, SuiteReport&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"forms", suite_forms},       {"chen", suite_chen},
      {"mc", suite_mc},             {"lemma35", suite_lemma35},
      {"prop34", suite_prop34},     {"prop36", suite_prop36},
      {"prop32ode", suite_prop32ode}, {"prop33", suite_prop33},
      {"lemma41", suite_lemma41},   {"lemma42", suite_lemma42},
      {"binfty", suite_binfty},     {"lambda", suite_lambda},
      {"appendixA", suite_appendixA}, {"poincare", suite_poincare},
      {"compose", suite_compose},
  };
  return table;
}
}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, fn] : suite_table()) v.push_back(n);
    v.push_back("all");
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& suite, const Scenario& scenario,
                      const SuiteOptions& options) {
  scenario.validate();
  SuiteReport rep;
  rep.suite = suite;
  bool found = false;
  for (const auto& [name, fn] : suite_table()) {
    if (suite == "all" || suite == name) {
      fn(scenario, options, rep);
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("unknown suite: " + suite);
  if (options.mode == Mode::floating) {
    std::vector<CheckResult> numeric;
    for (auto& c : rep.checks)
      if (!c.exact) numeric.push_back(std::move(c));
    if (numeric.empty()) {
      CheckResult c;
      c.name = suite + "/no-numeric-checks";
      c.exact = false;
      c.passed = true;
      c.detail = "suite has no float-mode checks";
      numeric.push_back(std::move(c));
    }
    rep.checks = std::move(numeric);
  }
  return rep;
}

nlohmann::json suite_report_to_json(const SuiteReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks)
    // elapsed_s is deliberately left out: reports must be byte-identical
    // across runs in exact mode
    checks.push_back(nlohmann::json{{"name", c.name},
                                    {"exact", c.exact},
                                    {"passed", c.passed},
                                    {"max_abs", c.max_abs},
                                    {"detail", c.detail}});
  return nlohmann::json{{"suite", rep.suite}, {"passed", rep.passed()}, {"checks", checks}};
}

std::string suite_report_to_text(const SuiteReport& rep) {
  std::string out = "suite " + rep.suite + ": " + (rep.passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& c : rep.checks) {
    out += "  [" + std::string(c.passed ? "ok" : "FAIL") + "] " + c.name;
    if (c.exact)
      out += " (exact)";
    else
      out += " (max_abs " + std::to_string(c.max_abs) + ")";
    out += " [" + std::to_string(c.elapsed_s) + "s]";
    if (!c.detail.empty()) out += " - " + c.detail;
    out += "\n";
  }
  return out;
}

}  // namespace chenholo

#include "chenholo/chen.hpp"

#include <cmath>
#include <stdexcept>

namespace chenholo {

namespace {
std::string svar(int j) { return "s" + std::to_string(j); }
std::string uvar(int depth) { return "u" + std::to_string(depth); }

HomForm integrate_coeffs(const HomForm& w, const std::string& v, const MultiPoly& lo,
                         const MultiPoly& hi) {
  return w.map_coeffs([&](const MultiPoly& p) { return p.integrate(v, lo, hi); });
}

int require_homogeneous(const HomForm& w, const char* what) {
  int deg = 0;
  if (!w.is_homogeneous(&deg)) throw std::invalid_argument(std::string(what) + ": inhomogeneous form");
  return deg;
}
}  // namespace

HomForm ChenSeries::sum() const {
  if (terms.empty()) throw std::logic_error("ChenSeries: empty");
  HomForm acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
  return acc;
}

HomForm ChenSeries::at(const Rational& t) const {
  MultiPoly val{t};
  return sum().map_coeffs([&](const MultiPoly& p) { return p.subst(kTimeVar, val); });
}

HomForm phi_term(const HomForm& omega, int n) {
  if (!omega.is_endo()) throw std::invalid_argument("phi_term: omega must be endomorphism-valued");
  if (n < 0) throw std::invalid_argument("phi_term: negative order");
  if (n == 0) return HomForm::identity(omega.m(), false, omega.src());
  HomForm contracted = contract_dt(omega);
  HomForm prod = restrict_t(contracted, MultiPoly::variable(svar(1)));
  for (int j = 2; j <= n; ++j)
    prod = wedge(prod, restrict_t(contracted, MultiPoly::variable(svar(j))));
  // Innermost-first: s_n over [0, s_{n-1}], ..., s_1 over [0, t].
  for (int j = n; j >= 2; --j)
    prod = integrate_coeffs(prod, svar(j), MultiPoly(Rational(0)), MultiPoly::variable(svar(j - 1)));
  return integrate_coeffs(prod, svar(1), MultiPoly(Rational(0)), MultiPoly::variable(kTimeVar));
}

ChenSeries phi_series(const HomForm& omega, const Flag* flag, std::optional<int> max_order) {
  ChenSeries s;
  s.omega = omega;
  if (flag) {
    if (!homform_strictly_lowering(omega, *flag)) {
      if (!max_order)
        throw std::invalid_argument("phi_series: flag certificate rejected (not strictly lowering)");
      flag = nullptr;  // fall back to truncation
    }
  }
  int order = flag ? int(flag->layers.size()) : (max_order ? *max_order + 1 : 0);
  if (order <= 0) throw std::invalid_argument("phi_series: no flag and no max_order");
  // Each term integrates the previous one: Phi_n(t) = int_0^t A(s) Phi_{n-1}(s) ds
  // with A = iota_s^* i_{d/ds} omega. Equivalent to phi_term at every order
  // (pinned by tests) but reuses the nested integrals.
  const std::string sv = "s0";
  HomForm a = restrict_t(contract_dt(omega), MultiPoly::variable(sv));
  s.terms.push_back(HomForm::identity(omega.m(), false, omega.src()));
  for (int n = 1; n < order; ++n) {
    HomForm prev = s.terms.back().map_coeffs(
        [&](const MultiPoly& p) { return p.subst(kTimeVar, MultiPoly::variable(sv)); });
    s.terms.push_back(
        integrate_coeffs(wedge(a, prev), sv, MultiPoly(Rational(0)), MultiPoly::variable(kTimeVar)));
  }
  s.finite = flag != nullptr;
  s.flag_layers = flag ? int(flag->layers.size()) : 0;
  return s;
}

namespace {
HomForm simplex_integral_rec(const std::vector<HomForm>& chain, size_t from, const MultiPoly& t,
                             int depth, const GradedSpace& empty_space, int m) {
  size_t n = chain.size() - from;
  if (n == 0) return HomForm::identity(m, false, empty_space);
  int deg1 = require_homogeneous(chain[from], "simplex_integral");
  MultiPoly u = MultiPoly::variable(uvar(depth));
  HomForm head = restrict_t(contract_dt(chain[from]), u);
  HomForm tail = simplex_integral_rec(chain, from + 1, u, depth + 1, empty_space, m);
  HomForm w = integrate_coeffs(wedge(head, tail), uvar(depth), MultiPoly(Rational(0)), t);
  if ((int(n - 1) * deg1) % 2 != 0) w = -w;
  return w;
}
}  // namespace

HomForm simplex_integral(const std::vector<HomForm>& chain, const MultiPoly& t,
                         const GradedSpace* empty_space) {
  if (chain.empty()) {
    if (!empty_space) throw std::invalid_argument("simplex_integral: empty chain without space");
    throw std::invalid_argument("simplex_integral: empty chain needs an ambient dimension");
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!(chain[i].src() == chain[i + 1].tgt()))
      throw std::invalid_argument("simplex_integral: non-composable chain");
  return simplex_integral_rec(chain, 0, t, 1, chain.back().src(), chain[0].m());
}

HomForm phi_homogeneous_sign_form(const HomForm& omega, int n) {
  int deg = require_homogeneous(omega, "phi_homogeneous_sign_form");
  if (n == 0) return HomForm::identity(omega.m(), false, omega.src());
  std::vector<HomForm> chain(size_t(n), omega);
  HomForm w = simplex_integral(chain, MultiPoly::variable(kTimeVar));
  return epsilon_sign(n, deg) < 0 ? -w : w;
}

namespace {
// Helper used by the two derivative-expansion residuals below.
HomForm prefix_integral(const std::vector<HomForm>& chain, size_t count, const MultiPoly& t,
                        const GradedSpace& id_space, int m) {
  if (count == 0) return HomForm::identity(m, false, id_space);
  std::vector<HomForm> part(chain.begin(), chain.begin() + count);
  return simplex_integral(part, t);
}

ResidualReport make_report(const std::string& identity, const HomForm& residual) {
  ResidualReport rep;
  rep.identity = identity;
  rep.exact = true;
  rep.zero = residual.is_zero();
  if (!rep.zero) rep.witness = residual.str();
  return rep;
}
}  // namespace

ResidualReport lemma35_residual(const std::vector<HomForm>& chain) {
  size_t n = chain.size();
  if (n == 0) throw std::invalid_argument("lemma35_residual: empty chain");
  std::vector<int> degs;
  for (const auto& w : chain) degs.push_back(require_homogeneous(w, "lemma35_residual"));
  MultiPoly t = MultiPoly::variable(kTimeVar);
  int m = chain[0].m();

  HomForm residual = exterior_d(simplex_integral(chain, t));

  // In-place derivative insertions.
  for (size_t i = 1; i <= n; ++i) {
    std::vector<HomForm> mod = chain;
    mod[i - 1] = exterior_d(chain[i - 1]);
    long sexp = long(n);
    for (size_t j = 1; j < i; ++j) sexp += degs[j - 1];
    HomForm term = simplex_integral(mod, t);
    residual = residual - (sexp % 2 == 0 ? term : -term);
  }
  // Adjacent merges.
  for (size_t i = 1; i + 1 <= n; ++i) {
    std::vector<HomForm> merged;
    for (size_t j = 0; j + 1 < i; ++j) merged.push_back(chain[j]);
    merged.push_back(wedge(chain[i - 1], chain[i]));
    for (size_t j = i + 1; j < n; ++j) merged.push_back(chain[j]);
    HomForm term = simplex_integral(merged, t);
    residual = residual - (i % 2 == 0 ? term : -term);
  }
  // Bottom boundary.
  {
    HomForm pre = prefix_integral(chain, n - 1, t, chain[n - 1].tgt(), m);
    HomForm term = wedge(pre, restrict_t(chain[n - 1], Rational(0)));
    residual = residual - (n % 2 == 0 ? term : -term);
  }
  // Top boundary.
  {
    std::vector<HomForm> suffix(chain.begin() + 1, chain.end());
    HomForm suf = suffix.empty() ? HomForm::identity(m, false, chain[0].src())
                                 : simplex_integral(suffix, t);
    HomForm term = wedge(restrict_t(chain[0], t), suf);
    long sexp = long(n - 1) * degs[0];
    residual = residual - (sexp % 2 == 0 ? term : -term);
  }
  return make_report("lemma35", residual);
}

ResidualReport dphi_expansion_residual(const HomForm& omega, const Flag& flag) {
  int deg = require_homogeneous(omega, "dphi_expansion_residual");
  ChenSeries series = phi_series(omega, &flag);
  MultiPoly t = MultiPoly::variable(kTimeVar);
  int nu = int(flag.layers.size());
  int m = omega.m();
  HomForm domega = exterior_d(omega);
  HomForm omega_sq = wedge(omega, omega);

  HomForm residual = exterior_d(series.sum());
  for (int n = 1; n <= nu; ++n) {
    long eps = epsilon_exponent(n);
    for (int i = 1; i <= n; ++i) {
      std::vector<HomForm> mod(size_t(n), omega);
      mod[i - 1] = domega;
      long sexp = n + (i - 1 + eps) * long(deg);
      HomForm term = simplex_integral(mod, t);
      residual = residual - (sexp % 2 == 0 ? term : -term);
    }
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<HomForm> mod(size_t(n - 1), omega);
      mod[i - 1] = omega_sq;
      long sexp = i + eps * long(deg);
      HomForm term = simplex_integral(mod, t);
      residual = residual - (sexp % 2 == 0 ? term : -term);
    }
    {
      std::vector<HomForm> copies(size_t(n - 1), omega);
      HomForm pre = prefix_integral(copies, copies.size(), t, omega.src(), m);
      long sexp = n + eps * long(deg);
      HomForm term = wedge(pre, restrict_t(omega, Rational(0)));
      residual = residual - (sexp % 2 == 0 ? term : -term);
    }
    {
      std::vector<HomForm> copies(size_t(n - 1), omega);
      HomForm suf = prefix_integral(copies, copies.size(), t, omega.src(), m);
      long sexp = (n - 1 + eps) * long(deg);
      HomForm term = wedge(restrict_t(omega, t), suf);
      residual = residual - (sexp % 2 == 0 ? term : -term);
    }
  }
  return make_report("prop36", residual);
}

ResidualReport phi_derivative_residual(const ChenSeries& series) {
  if (!series.finite)
    throw std::invalid_argument("phi_derivative_residual: refuses truncated series");
  HomForm phi = series.sum();
  HomForm dphi_dt = phi.map_coeffs([](const MultiPoly& p) { return p.diff(kTimeVar); });
  HomForm a = restrict_t(contract_dt(series.omega), MultiPoly::variable(kTimeVar));
  return make_report("prop32-exact", dphi_dt - wedge(a, phi));
}

std::vector<ExteriorValue> phi_ode(const HomForm& omega, const std::vector<double>& x,
                                   const std::vector<double>& t_grid, double step) {
  if (step <= 0) throw std::invalid_argument("phi_ode: step must be positive");
  HomForm contracted = contract_dt(omega);
  auto rhs = [&](double tau, const ExteriorValue& y) {
    return wedge(eval_at_point(contracted, x, tau), y);
  };
  ExteriorValue y = ExteriorValue::identity(omega.m(), omega.src());
  double tau = 0.0;
  std::vector<ExteriorValue> out;
  for (double tg : t_grid) {
    while (tau < tg - 1e-14) {
      double h = std::min(step, tg - tau);
      ExteriorValue k1 = rhs(tau, y);
      ExteriorValue k2 = rhs(tau + h / 2, y + k1.scaled(h / 2));
      ExteriorValue k3 = rhs(tau + h / 2, y + k2.scaled(h / 2));
      ExteriorValue k4 = rhs(tau + h, y + k3.scaled(h));
      y = y + (k1 + k2.scaled(2.0) + k3.scaled(2.0) + k4).scaled(h / 6);
      tau += h;
      if (!std::isfinite(y.max_abs())) throw std::runtime_error("phi_ode: non-finite value");
    }
    out.push_back(y);
  }
  return out;
}

HomForm homform_inverse(const HomForm& f, int max_steps) {
  // Split off the constant part of the 0-form internal-degree-0 component.
  GradedHom c{f.src(), f.tgt(), 0, {}};
  for (const auto& [k, mat] : f.terms()) {
    if (k.mono.degree() != 0 || k.src_deg != k.tgt_deg) continue;
    RatMat cm(mat.rows, mat.cols);
    for (size_t i = 0; i < mat.a.size(); ++i) cm.a[i] = mat.a[i].constant_term();
    if (!cm.is_zero()) c.blocks[k.src_deg] = cm;
  }
  GradedHom cinv{f.tgt(), f.src(), 0, {}};
  for (const auto& [k, dv] : f.src().dims) {
    if (f.tgt().dim(k) != dv) throw std::runtime_error("homform_inverse: degreewise dims differ");
    const RatMat* b = c.block(k);
    if (!b) throw std::runtime_error("homform_inverse: constant part singular");
    cinv.blocks[k] = rat_mat_inverse(*b);
  }
  HomForm cinv_form = HomForm::from_hom(cinv, f.m(), f.cylinder());
  HomForm id = HomForm::identity(f.m(), f.cylinder(), f.src());
  HomForm nil = id - wedge(cinv_form, f);
  HomForm acc = id;
  HomForm power = nil;
  int steps = 0;
  while (!power.is_zero()) {
    if (++steps > max_steps) throw std::runtime_error("homform_inverse: Neumann series did not terminate");
    acc = acc + power;
    power = wedge(power, nil);
  }
  return wedge(acc, cinv_form);
}

HomForm gauge_transport(const HomForm& eta, const HomForm& g, const Flag& eta_flag) {
  ChenSeries series = phi_series(eta, &eta_flag);
  HomForm phi_eta = series.sum();
  HomForm g_t = restrict_t(g, MultiPoly::variable(kTimeVar));
  HomForm g_0 = restrict_t(g, Rational(0));
  return wedge(wedge(homform_inverse(g_t), phi_eta), g_0);
}

}  // namespace chenholo

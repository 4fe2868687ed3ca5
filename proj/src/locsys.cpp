#include "chenholo/locsys.hpp"

#include <random>
#include <stdexcept>

#include "chenholo/randgen.hpp"

namespace chenholo {

void Superconnection::validate() const {
  if (!(alpha.src() == space) || !(alpha.tgt() == space))
    throw std::invalid_argument("Superconnection: alpha must be endo-valued on the space");
  for (int d : alpha.total_degrees())
    if (d != 1) throw std::invalid_argument("Superconnection: alpha must have total degree 1");
  if (flag) {
    if (!(flag->space == space))
      throw std::invalid_argument("Superconnection: flag over a different space");
    flag->validate();
  }
}

HomForm mc_residual(const Superconnection& s) {
  return exterior_d(s.alpha) - wedge(s.alpha, s.alpha);
}

std::map<int, HomForm> mc_component_residuals(const Superconnection& s) {
  HomForm r = mc_residual(s);
  std::map<int, HomForm> out;
  int top = s.m() + (s.cylinder() ? 1 : 0);
  for (int p = 0; p <= top; ++p) out[p] = r.form_degree_component(p);
  return out;
}

HomForm hom_differential(const HomForm& w, const Superconnection& s, const Superconnection& sp) {
  HomForm out(w.m(), w.cylinder(), w.src(), w.tgt());
  for (int k : w.total_degrees()) {
    HomForm wk = w.homogeneous_component(k);
    HomForm dk = exterior_d(wk) - wedge(sp.alpha, wk);
    HomForm tw = wedge(wk, s.alpha);
    out = out + (k % 2 == 0 ? dk + tw : dk - tw);
  }
  return out;
}

ResidualReport is_morphism(const HomForm& phi, const Superconnection& s,
                           const Superconnection& sp) {
  HomForm residual = exterior_d(phi) - wedge(sp.alpha, phi) + wedge(phi, s.alpha);
  ResidualReport rep;
  rep.identity = "morphism";
  rep.exact = true;
  rep.zero = residual.is_zero();
  if (!rep.zero) rep.witness = residual.str();
  return rep;
}

HolonomyResult holonomy_iso(const Superconnection& s) {
  s.validate();
  if (!s.cylinder()) throw std::invalid_argument("holonomy_iso: needs a cylinder chart");
  if (!s.flag) throw std::invalid_argument("holonomy_iso: needs a flag certificate");
  if (!mc_residual(s).is_zero()) throw std::invalid_argument("holonomy_iso: system is not flat");

  ChenSeries series = phi_series(s.alpha, &*s.flag);
  HolonomyResult out;
  out.phi = series.at(Rational(1));
  out.phi_inv = homform_inverse(out.phi);

  HomForm a1 = restrict_t(s.alpha, Rational(1));
  HomForm a0 = restrict_t(s.alpha, Rational(0));
  HomForm residual = exterior_d(out.phi) - wedge(a1, out.phi) + wedge(out.phi, a0);

  HomForm id = HomForm::identity(out.phi.m(), false, s.space);
  bool inv_ok = wedge(out.phi, out.phi_inv) == id && wedge(out.phi_inv, out.phi) == id;
  if (!inv_ok) throw std::runtime_error("holonomy_iso: inverse verification failed");

  out.report.identity = "holonomy-morphism";
  out.report.exact = true;
  out.report.zero = residual.is_zero();
  if (!out.report.zero) out.report.witness = residual.str();
  return out;
}

ResidualReport gauge_compat_check(const Superconnection& sv, const Superconnection& sw,
                                  const HomForm& g) {
  sv.validate();
  sw.validate();
  if (!sv.flag || !sw.flag)
    throw std::invalid_argument("gauge_compat_check: both systems need flags");
  HomForm g_inv = homform_inverse(g);
  HomForm gauge_res =
      sv.alpha - (wedge(wedge(g_inv, sw.alpha), g) - wedge(g_inv, exterior_d(g)));
  if (!gauge_res.is_zero())
    throw std::invalid_argument("gauge_compat_check: gauge relation violated");

  HomForm phi_a = phi_series(sv.alpha, &*sv.flag).at(Rational(1));
  HomForm phi_b = phi_series(sw.alpha, &*sw.flag).at(Rational(1));
  HomForm g1 = restrict_t(g, Rational(1));
  HomForm g0 = restrict_t(g, Rational(0));
  HomForm residual = phi_a - wedge(wedge(homform_inverse(g1), phi_b), g0);

  ResidualReport rep;
  rep.identity = "gauge-holonomy";
  rep.exact = true;
  rep.zero = residual.is_zero();
  if (!rep.zero) rep.witness = residual.str();
  return rep;
}

Superconnection pullback_superconnection(const Superconnection& s,
                                         const std::vector<MultiPoly>& f, int q) {
  if (int(f.size()) != s.m())
    throw std::invalid_argument("pullback_superconnection: map has wrong target dimension");
  Superconnection out;
  out.space = s.space;
  out.alpha = pullback_map(s.alpha, f, q, s.cylinder());
  out.flag = s.flag;
  HomForm naturality = pullback_map(mc_residual(s), f, q, s.cylinder()) - mc_residual(out);
  if (!naturality.is_zero())
    throw std::logic_error("pullback_superconnection: flatness residual is not natural");
  return out;
}

PoincareResult poincare_trivialization(const Superconnection& s,
                                       const std::vector<Rational>& x0) {
  s.validate();
  if (s.cylinder()) throw std::invalid_argument("poincare_trivialization: expects a base chart");
  if (!s.flag) throw std::invalid_argument("poincare_trivialization: needs a flag certificate");
  if (!mc_residual(s).is_zero())
    throw std::invalid_argument("poincare_trivialization: system is not flat");
  int m = s.m();
  if (int(x0.size()) != m)
    throw std::invalid_argument("poincare_trivialization: base point has wrong dimension");

  // Linear contraction h(x, t) = x0 + t (x - x0).
  std::vector<MultiPoly> h;
  for (int i = 1; i <= m; ++i) {
    MultiPoly xi = MultiPoly::variable(xvar(i));
    MultiPoly c(x0[size_t(i - 1)]);
    h.push_back(c + MultiPoly::variable(kTimeVar) * (xi - c));
  }
  Superconnection pulled;
  pulled.space = s.space;
  pulled.alpha = pullback_map(s.alpha, h, m, true);
  pulled.flag = s.flag;

  HolonomyResult hol = holonomy_iso(pulled);

  // Constant twist: the 0-form part of alpha evaluated at x0.
  HomForm alpha_c = s.alpha.form_degree_component(0);
  for (int i = 1; i <= m; ++i) {
    MultiPoly val(x0[size_t(i - 1)]);
    alpha_c = alpha_c.map_coeffs([&](const MultiPoly& p) { return p.subst(xvar(i), val); });
  }
  if (!wedge(alpha_c, alpha_c).is_zero())
    throw std::logic_error("poincare_trivialization: constant twist does not square to zero");

  PoincareResult out;
  out.psi = hol.phi;
  out.psi_inv = hol.phi_inv;
  out.constant_system = Superconnection{s.space, alpha_c, s.flag};
  out.report = is_morphism(out.psi, out.constant_system, s);
  out.report.identity = "poincare-trivialization";
  return out;
}

namespace {
// Constant internal-degree-1 map supported on the top flag layer (hence
// square-zero once strictly lowering).
GradedHom draw_alpha_c(std::mt19937_64& rng, const GradedSpace& v, const Flag& flag) {
  GradedHom a{v, v, 1, {}};
  int top = int(flag.layers.size());
  std::bernoulli_distribution keep(0.5);
  for (const auto& [k, dk] : v.dims) {
    int dk1 = v.dim(k + 1);
    if (dk1 == 0) continue;
    RatMat mat(dk1, dk);
    for (int c = 0; c < dk; ++c) {
      if (flag.layer_of(v.global_index(k, c)) != top) continue;
      for (int r = 0; r < dk1; ++r) {
        if (flag.layer_of(v.global_index(k + 1, r)) >= top) continue;
        if (keep(rng)) mat(r, c) = rand_rational(rng);
      }
    }
    a.set_block(k, mat);
  }
  return a;
}

// id + u with u strictly lowering of internal degree 0, polynomial entries.
HomForm draw_gauge(std::mt19937_64& rng, const GradedSpace& v, const Flag& flag, int m,
                   bool cylinder, int maxdeg) {
  HomForm g = HomForm::identity(m, cylinder, v);
  for (const auto& [k, dk] : v.dims) {
    PolyMat mat(dk, dk);
    bool any = false;
    for (int c = 0; c < dk; ++c)
      for (int r = 0; r < dk; ++r) {
        if (flag.layer_of(v.global_index(k, r)) >= flag.layer_of(v.global_index(k, c))) continue;
        MultiPoly p = rand_poly(rng, m, cylinder, maxdeg);
        if (p == MultiPoly()) continue;
        mat(r, c) = p;
        any = true;
      }
    if (any) g.add_term(FormMonomial{}, k, k, mat);
  }
  return g;
}
}  // namespace

FlatDraw generate_flat(uint64_t seed, const GradedSpace& v, const Flag& flag, int m,
                       int max_poly_degree, bool cylinder) {
  if (flag.layers.size() < 2) throw std::invalid_argument("generate_flat: need >= 2 flag layers");
  flag.validate();
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    FlatDraw draw;
    draw.alpha_c = draw_alpha_c(rng, v, flag);
    draw.g = draw_gauge(rng, v, flag, m, cylinder, max_poly_degree);
    HomForm g_inv = homform_inverse(draw.g);
    HomForm ac = HomForm::from_hom(draw.alpha_c, m, cylinder);
    HomForm alpha = wedge(wedge(g_inv, ac), draw.g) - wedge(g_inv, exterior_d(draw.g));
    draw.s = Superconnection{v, alpha, flag};
    if (!mc_residual(draw.s).is_zero()) continue;
    if (!alpha.is_zero() && !homform_strictly_lowering(alpha, flag)) continue;
    return draw;
  }
  throw std::runtime_error("generate_flat: draw failed assertions, seed " + std::to_string(seed));
}

}  // namespace chenholo

#include "chenholo/ainfty.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace chenholo {

void TensorChain::validate() const {
  if (systems.size() != xis.size() + 1)
    throw std::invalid_argument("TensorChain: need one system per endpoint");
  for (const auto& s : systems) s.validate();
  for (size_t i = 0; i < xis.size(); ++i) {
    if (!(xis[i].src() == systems[i].space) || !(xis[i].tgt() == systems[i + 1].space))
      throw std::invalid_argument("TensorChain: entry endpoints do not compose");
    if (xis[i].m() != systems[0].m() || xis[i].cylinder() != systems[0].cylinder())
      throw std::invalid_argument("TensorChain: entries live on different charts");
    if (!xis[i].is_homogeneous())
      throw std::invalid_argument("TensorChain: entries must be homogeneous");
  }
  for (const auto& s : systems)
    if (s.m() != systems[0].m() || s.cylinder() != systems[0].cylinder())
      throw std::invalid_argument("TensorChain: systems live on different charts");
}

std::vector<int> TensorChain::degrees() const {
  std::vector<int> out;
  for (const auto& w : xis) {
    int d = 0;
    if (!w.is_homogeneous(&d)) throw std::invalid_argument("TensorChain: inhomogeneous entry");
    out.push_back(d);
  }
  return out;
}

FormalChainSum hochschild_b(const TensorChain& chain) {
  chain.validate();
  int n = chain.n();
  std::vector<int> deg = chain.degrees();
  auto sexp = [&](int i) {  // sum_{j>i} |xi_j| + n - i - 1
    long s = n - i - 1;
    for (int j = i + 1; j < n; ++j) s += deg[size_t(j)];
    return s;
  };
  FormalChainSum out;
  auto push = [&](long exp, TensorChain c) {
    for (const auto& w : c.xis)
      if (w.is_zero()) return;
    out.terms.push_back(ChainTerm{exp % 2 == 0 ? 1 : -1, std::move(c)});
  };
  for (int i = 0; i < n; ++i) {
    TensorChain c = chain;
    c.xis[size_t(i)] = exterior_d(chain.xis[size_t(i)]);
    push(sexp(i), std::move(c));
  }
  for (int i = 0; i < n; ++i) {
    TensorChain c = chain;
    c.xis[size_t(i)] = wedge(chain.systems[size_t(i) + 1].alpha, chain.xis[size_t(i)]);
    push(sexp(i) + 1, std::move(c));
  }
  for (int i = 0; i < n; ++i) {
    TensorChain c = chain;
    c.xis[size_t(i)] = wedge(chain.xis[size_t(i)], chain.systems[size_t(i)].alpha);
    push(sexp(i) + deg[size_t(i)], std::move(c));
  }
  for (int i = 1; i < n; ++i) {
    TensorChain c;
    for (int j = 0; j <= n; ++j)
      if (j != i) c.systems.push_back(chain.systems[size_t(j)]);
    for (int j = 0; j < n; ++j) {
      if (j == i - 1) continue;
      if (j == i)
        c.xis.push_back(wedge(chain.xis[size_t(i)], chain.xis[size_t(i) - 1]));
      else
        c.xis.push_back(chain.xis[size_t(j)]);
    }
    push(sexp(i) + deg[size_t(i)], std::move(c));
  }
  return out;
}

namespace {
// Key identifying a chain up to the entry in slot `skip` (-1: full key).
std::string chain_key(const TensorChain& c, int skip) {
  std::string k = std::to_string(c.n()) + "#";
  for (const auto& s : c.systems) k += s.alpha.str() + "|";
  for (int i = 0; i < c.n(); ++i) {
    k += "@";
    if (i != skip) k += c.xis[size_t(i)].str();
  }
  return k;
}

// One collection pass at slot p: terms of equal length whose other slots
// agree have their slot-p entries summed with signs. Returns true if
// anything merged or vanished.
bool collect_at_slot(std::vector<ChainTerm>& terms, int p) {
  std::vector<ChainTerm> keep;
  std::map<std::string, std::pair<HomForm, TensorChain>> groups;
  std::vector<std::string> order;
  std::map<std::string, int> counts;
  for (auto& t : terms) {
    if (t.chain.n() <= p) {
      keep.push_back(std::move(t));
      continue;
    }
    std::string k = chain_key(t.chain, p);
    HomForm e = t.sign < 0 ? -t.chain.xis[size_t(p)] : t.chain.xis[size_t(p)];
    auto it = groups.find(k);
    if (it == groups.end()) {
      groups.emplace(k, std::make_pair(e, t.chain));
      order.push_back(k);
      counts[k] = 1;
    } else {
      it->second.first = it->second.first + e;
      ++counts[k];
    }
  }
  bool changed = false;
  for (const auto& k : order) {
    auto& [e, rep] = groups.at(k);
    if (counts[k] > 1) changed = true;
    if (e.is_zero()) {
      changed = true;
      continue;
    }
    ChainTerm t{1, rep};
    t.chain.xis[size_t(p)] = e;
    keep.push_back(std::move(t));
  }
  terms = std::move(keep);
  return changed;
}
}  // namespace

ResidualReport b_square_residual(const TensorChain& chain) {
  FormalChainSum first = hochschild_b(chain);
  std::vector<ChainTerm> terms;
  for (const auto& t : first.terms) {
    FormalChainSum second = hochschild_b(t.chain);
    for (auto& u : second.terms) {
      u.sign *= t.sign;
      terms.push_back(std::move(u));
    }
  }
  int maxlen = chain.n();
  bool changed = true;
  while (changed && !terms.empty()) {
    changed = false;
    for (int p = 0; p < maxlen; ++p)
      if (collect_at_slot(terms, p)) changed = true;
  }
  ResidualReport rep;
  rep.identity = "b-square";
  rep.exact = true;
  rep.zero = terms.empty();
  if (!rep.zero) rep.witness = chain_key(terms.front().chain, -1);
  return rep;
}

HomForm homform_block_extract(const HomForm& w, const DirectSum& ds, int row, int col) {
  const GradedSpace& rs = ds.parts.at(size_t(row));
  const GradedSpace& cs = ds.parts.at(size_t(col));
  HomForm out(w.m(), w.cylinder(), cs, rs);
  for (const auto& [k, mat] : w.terms()) {
    int nr = rs.dim(k.tgt_deg), nc = cs.dim(k.src_deg);
    if (nr == 0 || nc == 0) continue;
    int ro = ds.offset_in_degree(row, k.tgt_deg);
    int co = ds.offset_in_degree(col, k.src_deg);
    PolyMat sub(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) sub(r, c) = mat(ro + r, co + c);
    out.add_term(k.mono, k.src_deg, k.tgt_deg, sub);
  }
  return out;
}

HomForm homform_block_embed(const HomForm& w, const DirectSum& ds, int row, int col, int m,
                            bool cylinder) {
  HomForm out(m, cylinder, ds.total, ds.total);
  for (const auto& [k, mat] : w.terms()) {
    int nr = ds.total.dim(k.tgt_deg), nc = ds.total.dim(k.src_deg);
    PolyMat big(nr, nc);
    int ro = ds.offset_in_degree(row, k.tgt_deg);
    int co = ds.offset_in_degree(col, k.src_deg);
    for (int r = 0; r < mat.rows; ++r)
      for (int c = 0; c < mat.cols; ++c) big(ro + r, co + c) = mat(r, c);
    out.add_term(k.mono, k.src_deg, k.tgt_deg, big);
  }
  return out;
}

namespace {
struct Assembly {
  DirectSum ds;
  HomForm omega;
  Flag flag;
};

Assembly assemble(const TensorChain& chain) {
  chain.validate();
  if (!chain.systems[0].cylinder())
    throw std::invalid_argument("lambda_eval: needs cylinder-chart systems");
  int n = chain.n();
  int m = chain.systems[0].m();
  std::vector<GradedSpace> parts;
  for (const auto& s : chain.systems) parts.push_back(s.space);
  Assembly a;
  a.ds = direct_sum(parts);
  a.omega = HomForm(m, true, a.ds.total, a.ds.total);
  for (int i = 0; i <= n; ++i)
    a.omega = a.omega + homform_block_embed(chain.systems[size_t(i)].alpha, a.ds, i, i, m, true);
  for (int i = 0; i < n; ++i)
    a.omega = a.omega + homform_block_embed(chain.xis[size_t(i)], a.ds, i + 1, i, m, true);
  std::vector<int> order;
  for (int i = n; i >= 0; --i) order.push_back(i);
  std::vector<const Flag*> part_flags;
  for (const auto& s : chain.systems) part_flags.push_back(s.flag ? &*s.flag : nullptr);
  a.flag = direct_sum_flag(a.ds, order, part_flags);
  return a;
}
}  // namespace

HomForm lambda_eval(const TensorChain& chain) {
  Assembly a = assemble(chain);
  HomForm phi = phi_series(a.omega, &a.flag).at(Rational(1));
  return homform_block_extract(phi, a.ds, chain.n(), 0);
}

ResidualReport lambda_degree_check(const TensorChain& chain) {
  HomForm lam = lambda_eval(chain);
  int want = -chain.n();
  for (int d : chain.degrees()) want += d;
  ResidualReport rep;
  rep.identity = "lambda-degree";
  rep.exact = true;
  rep.zero = true;
  for (int d : lam.total_degrees())
    if (d != want) {
      rep.zero = false;
      rep.witness = "component of total degree " + std::to_string(d) + ", expected " +
                    std::to_string(want);
    }
  return rep;
}

LambdaOracle direct_lambda_oracle() {
  LambdaOracle o;
  o.eval = [](const TensorChain& c) { return lambda_eval(c); };
  o.f_act = [](const HomForm& w) { return restrict_t(w, Rational(0)); };
  o.g_act = [](const HomForm& w) { return restrict_t(w, Rational(1)); };
  return o;
}

namespace {
TensorChain subchain(const TensorChain& chain, int lo, int hi) {  // systems lo..hi
  TensorChain c;
  for (int i = lo; i <= hi; ++i) c.systems.push_back(chain.systems[size_t(i)]);
  for (int i = lo; i < hi; ++i) c.xis.push_back(chain.xis[size_t(i)]);
  return c;
}
}  // namespace

ResidualReport ainfty_relation_residual(const TensorChain& chain, const LambdaOracle* oracle) {
  LambdaOracle direct;
  if (!oracle) {
    direct = direct_lambda_oracle();
    oracle = &direct;
  }
  chain.validate();
  int n = chain.n();
  std::vector<int> deg = chain.degrees();
  long total = 0;
  for (int d : deg) total += d;

  HomForm lam = oracle->eval(chain);
  HomForm lhs = exterior_d(lam);

  HomForm rhs = wedge(oracle->g_act(chain.systems[size_t(n)].alpha), lam);
  {
    HomForm t2 = wedge(lam, oracle->f_act(chain.systems[0].alpha));
    rhs = ((total - n) % 2 == 0) ? rhs - t2 : rhs + t2;
  }
  if (n >= 1) {
    HomForm t3 = wedge(oracle->g_act(chain.xis[size_t(n) - 1]),
                       oracle->eval(subchain(chain, 0, n - 1)));
    rhs = rhs + t3;
    HomForm t4 = wedge(oracle->eval(subchain(chain, 1, n)), oracle->f_act(chain.xis[0]));
    long e4 = total - deg[0] - n + 1;
    rhs = (e4 % 2 == 0) ? rhs - t4 : rhs + t4;
  }
  for (const auto& t : hochschild_b(chain).terms) {
    HomForm v = oracle->eval(t.chain);
    rhs = (t.sign > 0) ? rhs - v : rhs + v;
  }

  HomForm residual = lhs - rhs;
  ResidualReport rep;
  rep.identity = "ainfty-relation";
  rep.exact = true;
  rep.zero = residual.is_zero();
  if (!rep.zero) rep.witness = residual.str();
  return rep;
}

ResidualReport lambda_gauge_covariance_residual(const TensorChain& alpha_chain,
                                                const TensorChain& beta_chain,
                                                const std::vector<HomForm>& gs) {
  alpha_chain.validate();
  beta_chain.validate();
  int n = alpha_chain.n();
  if (beta_chain.n() != n || int(gs.size()) != n + 1)
    throw std::invalid_argument("lambda_gauge_covariance_residual: shape mismatch");
  std::vector<HomForm> g_inv;
  for (const auto& g : gs) g_inv.push_back(homform_inverse(g));
  for (int i = 0; i <= n; ++i) {
    HomForm rel = alpha_chain.systems[size_t(i)].alpha -
                  (wedge(wedge(g_inv[size_t(i)], beta_chain.systems[size_t(i)].alpha),
                         gs[size_t(i)]) -
                   wedge(g_inv[size_t(i)], exterior_d(gs[size_t(i)])));
    if (!rel.is_zero())
      throw std::invalid_argument("lambda_gauge_covariance_residual: gauge relation violated");
  }
  for (int i = 0; i < n; ++i) {
    HomForm rel = alpha_chain.xis[size_t(i)] -
                  wedge(wedge(g_inv[size_t(i) + 1], beta_chain.xis[size_t(i)]), gs[size_t(i)]);
    if (!rel.is_zero())
      throw std::invalid_argument("lambda_gauge_covariance_residual: entry relation violated");
  }
  HomForm lam_a = lambda_eval(alpha_chain);
  HomForm lam_b = lambda_eval(beta_chain);
  HomForm residual =
      lam_a - wedge(wedge(homform_inverse(restrict_t(gs[size_t(n)], Rational(1))), lam_b),
                    restrict_t(gs[0], Rational(0)));
  ResidualReport rep;
  rep.identity = "lambda-gauge-covariance";
  rep.exact = true;
  rep.zero = residual.is_zero();
  if (!rep.zero) rep.witness = residual.str();
  return rep;
}

LambdaOracle compose_oracles(const LambdaOracle& b, const LambdaOracle& a) {
  LambdaOracle o;
  o.f_act = a.f_act;
  o.g_act = b.g_act;
  o.eval = [b, a](const TensorChain& chain) {
    int n = chain.n();
    HomForm acc;
    bool first = true;
    for (int i = 0; i <= n; ++i) {
      HomForm term = wedge(b.eval(subchain(chain, n - i, n)), a.eval(subchain(chain, 0, n - i)));
      if (first) {
        acc = term;
        first = false;
      } else {
        acc = acc + term;
      }
    }
    return acc;
  };
  return o;
}

HomForm compose_transformations(const LambdaOracle& b, const LambdaOracle& a,
                                const TensorChain& chain) {
  return compose_oracles(b, a).eval(chain);
}

LambdaOracle hol_transformation(const std::vector<MultiPoly>& h, int q) {
  auto pull_form = [h, q](const HomForm& w) { return pullback_map(w, h, q, true); };
  auto pull_sys = [pull_form](const Superconnection& s) {
    return Superconnection{s.space, pull_form(s.alpha), s.flag};
  };
  LambdaOracle o;
  o.eval = [pull_form, pull_sys](const TensorChain& chain) {
    TensorChain pulled;
    for (const auto& s : chain.systems) pulled.systems.push_back(pull_sys(s));
    for (const auto& w : chain.xis) pulled.xis.push_back(pull_form(w));
    return lambda_eval(pulled);
  };
  o.f_act = [pull_form](const HomForm& w) { return restrict_t(pull_form(w), Rational(0)); };
  o.g_act = [pull_form](const HomForm& w) { return restrict_t(pull_form(w), Rational(1)); };
  return o;
}

}  // namespace chenholo

#include "chenholo/forms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chenholo {

int monomial_merge(const FormMonomial& a, const FormMonomial& b, FormMonomial& out) {
  if ((a.dx & b.dx) != 0) return 0;
  if (a.dt && b.dt) return 0;
  out.dx = a.dx | b.dx;
  out.dt = a.dt || b.dt;
  // Count inversions between the ordered generator lists of a and b
  // (dx ascending, dt last): pairs (g in a, h in b) with h < g.
  int inv = 0;
  int b_count_below = 0;  // generators of b strictly below current threshold
  // For each dx generator of a, count b's dx generators with smaller index.
  for (uint32_t bits = a.dx; bits; bits &= bits - 1) {
    int i = std::countr_zero(bits);
    uint32_t mask = (i == 0) ? 0u : ((1u << i) - 1);
    inv += std::popcount(b.dx & mask);
  }
  (void)b_count_below;
  // a's dt (last generator of a, ordered above every dx) inverts with all of
  // b's dx generators.
  if (a.dt) inv += std::popcount(b.dx);
  // b's dt is above everything in a: no inversions.
  return (inv % 2 == 0) ? 1 : -1;
}

HomForm HomForm::identity(int m, bool cylinder, const GradedSpace& v) {
  return from_hom(GradedHom::identity(v), m, cylinder);
}

HomForm HomForm::from_hom(const GradedHom& h, int m, bool cylinder) {
  HomForm f(m, cylinder, h.src, h.tgt);
  for (const auto& [k, b] : h.blocks) {
    PolyMat pm(b.rows, b.cols);
    for (size_t i = 0; i < b.a.size(); ++i) pm.a[i] = MultiPoly(b.a[i]);
    f.add_term(FormMonomial{}, k, k + h.deg, pm);
  }
  return f;
}

void HomForm::add_term(const FormMonomial& mono, int src_deg, int tgt_deg, const PolyMat& coef) {
  int sd = src_.dim(src_deg), td = tgt_.dim(tgt_deg);
  if (sd == 0 || td == 0) {
    if (!coef.is_zero()) throw std::invalid_argument("add_term: block forced zero by grading");
    return;
  }
  if (coef.rows != td || coef.cols != sd) throw std::invalid_argument("add_term: shape mismatch");
  if (!cylinder_ && mono.dt) throw std::invalid_argument("add_term: dt term on a base form");
  FormTermKey key{mono, src_deg, tgt_deg};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (!coef.is_zero()) terms_[key] = coef;
  } else {
    it->second = it->second + coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void HomForm::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

HomForm HomForm::operator+(const HomForm& o) const {
  if (m_ != o.m_ || cylinder_ != o.cylinder_ || !(src_ == o.src_) || !(tgt_ == o.tgt_))
    throw std::invalid_argument("HomForm::+: incompatible forms");
  HomForm r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k.mono, k.src_deg, k.tgt_deg, c);
  return r;
}

HomForm HomForm::operator-() const {
  HomForm r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

HomForm HomForm::scaled(const Rational& c) const {
  HomForm r(m_, cylinder_, src_, tgt_);
  if (c == 0) return r;
  r = *this;
  for (auto& [k, mat] : r.terms_) mat = mat.scaled(MultiPoly(c));
  return r;
}

HomForm HomForm::scaled(const MultiPoly& p) const {
  HomForm r(m_, cylinder_, src_, tgt_);
  for (const auto& [k, mat] : terms_) r.add_term(k.mono, k.src_deg, k.tgt_deg, mat.scaled(p));
  return r;
}

bool HomForm::operator==(const HomForm& o) const {
  return m_ == o.m_ && cylinder_ == o.cylinder_ && src_ == o.src_ && tgt_ == o.tgt_ &&
         terms_ == o.terms_;
}

std::set<int> HomForm::total_degrees() const {
  std::set<int> degs;
  for (const auto& [k, c] : terms_) degs.insert(k.total_degree());
  return degs;
}

bool HomForm::is_homogeneous(int* degree_out) const {
  auto degs = total_degrees();
  if (degs.size() > 1) return false;
  if (degree_out) *degree_out = degs.empty() ? 0 : *degs.begin();
  return true;
}

HomForm HomForm::homogeneous_component(int total_degree) const {
  HomForm r(m_, cylinder_, src_, tgt_);
  for (const auto& [k, c] : terms_)
    if (k.total_degree() == total_degree) r.terms_[k] = c;
  return r;
}

HomForm HomForm::form_degree_component(int p) const {
  HomForm r(m_, cylinder_, src_, tgt_);
  for (const auto& [k, c] : terms_)
    if (k.mono.degree() == p) r.terms_[k] = c;
  return r;
}

HomForm HomForm::map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& fn) const {
  HomForm r(m_, cylinder_, src_, tgt_);
  for (const auto& [k, c] : terms_) {
    PolyMat nm(c.rows, c.cols);
    for (size_t i = 0; i < c.a.size(); ++i) nm.a[i] = fn(c.a[i]);
    r.add_term(k.mono, k.src_deg, k.tgt_deg, nm);
  }
  return r;
}

int HomForm::max_coeff_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_)
    for (const auto& p : c.a) d = std::max(d, p.total_degree());
  return d;
}

std::string HomForm::str() const {
  std::ostringstream os;
  for (const auto& [k, c] : terms_) {
    os << "[";
    for (int i = 1; i <= m_; ++i)
      if (k.mono.dx & (1u << (i - 1))) os << "dx" << i << " ";
    if (k.mono.dt) os << "dt ";
    os << "| " << k.src_deg << "->" << k.tgt_deg << "] ";
    for (const auto& p : c.a) os << p.str() << "; ";
    os << "\n";
  }
  return os.str();
}

HomForm wedge(const HomForm& a, const HomForm& b) {
  if (!(a.src() == b.tgt())) throw std::invalid_argument("wedge: non-composable Hom values");
  if (a.m() != b.m() || a.cylinder() != b.cylinder())
    throw std::invalid_argument("wedge: mismatched underlying space");
  HomForm r(a.m(), a.cylinder(), b.src(), a.tgt());
  for (const auto& [ka, ma] : a.terms()) {
    for (const auto& [kb, mb] : b.terms()) {
      if (kb.tgt_deg != ka.src_deg) continue;
      FormMonomial mono;
      int s = monomial_merge(ka.mono, kb.mono, mono);
      if (s == 0) continue;
      // Koszul: the left Hom value (internal degree) passes the right form factor.
      if ((ka.internal_degree() * kb.mono.degree()) % 2 != 0) s = -s;
      PolyMat prod = ma * mb;
      if (s < 0) prod = -prod;
      r.add_term(mono, kb.src_deg, ka.tgt_deg, prod);
    }
  }
  return r;
}

HomForm exterior_d(const HomForm& w) {
  HomForm r(w.m(), w.cylinder(), w.src(), w.tgt());
  for (const auto& [k, c] : w.terms()) {
    for (int i = 1; i <= w.m(); ++i) {
      uint32_t bit = 1u << (i - 1);
      if (k.mono.dx & bit) continue;
      PolyMat dc(c.rows, c.cols);
      bool nonzero = false;
      for (size_t j = 0; j < c.a.size(); ++j) {
        dc.a[j] = c.a[j].diff(xvar(i));
        nonzero = nonzero || !dc.a[j].is_zero();
      }
      if (!nonzero) continue;
      // dx_i ^ mono: moving dx_i past the smaller generators of mono.
      uint32_t below = (bit - 1) & k.mono.dx;
      int sign = (std::popcount(below) % 2 == 0) ? 1 : -1;
      FormMonomial mono = k.mono;
      mono.dx |= bit;
      r.add_term(mono, k.src_deg, k.tgt_deg, sign < 0 ? -dc : dc);
    }
    if (w.cylinder() && !k.mono.dt) {
      PolyMat dc(c.rows, c.cols);
      bool nonzero = false;
      for (size_t j = 0; j < c.a.size(); ++j) {
        dc.a[j] = c.a[j].diff(kTimeVar);
        nonzero = nonzero || !dc.a[j].is_zero();
      }
      if (nonzero) {
        // dt ^ dx_I = (-1)^{|I|} dx_I ^ dt
        int sign = (std::popcount(k.mono.dx) % 2 == 0) ? 1 : -1;
        FormMonomial mono = k.mono;
        mono.dt = true;
        r.add_term(mono, k.src_deg, k.tgt_deg, sign < 0 ? -dc : dc);
      }
    }
  }
  return r;
}

HomForm contract_dt(const HomForm& w) {
  HomForm r(w.m(), w.cylinder(), w.src(), w.tgt());
  for (const auto& [k, c] : w.terms()) {
    if (!k.mono.dt) continue;
    int sign = (std::popcount(k.mono.dx) % 2 == 0) ? 1 : -1;
    FormMonomial mono = k.mono;
    mono.dt = false;
    r.add_term(mono, k.src_deg, k.tgt_deg, sign < 0 ? -c : c);
  }
  return r;
}

HomForm restrict_t(const HomForm& w, const MultiPoly& s) {
  HomForm r(w.m(), false, w.src(), w.tgt());
  for (const auto& [k, c] : w.terms()) {
    if (k.mono.dt) continue;
    PolyMat nc(c.rows, c.cols);
    for (size_t j = 0; j < c.a.size(); ++j) nc.a[j] = c.a[j].subst(kTimeVar, s);
    r.add_term(k.mono, k.src_deg, k.tgt_deg, nc);
  }
  return r;
}

namespace {
using ScalarForm = std::map<FormMonomial, MultiPoly>;

ScalarForm scalar_wedge(const ScalarForm& a, const ScalarForm& b) {
  ScalarForm r;
  for (const auto& [ma, pa] : a)
    for (const auto& [mb, pb] : b) {
      FormMonomial mono;
      int s = monomial_merge(ma, mb, mono);
      if (s == 0) continue;
      MultiPoly prod = pa * pb;
      if (s < 0) prod = -prod;
      auto it = r.find(mono);
      if (it == r.end())
        r[mono] = prod;
      else
        it->second += prod;
    }
  for (auto it = r.begin(); it != r.end();)
    it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}
}  // namespace

HomForm pullback_map(const HomForm& w, const std::vector<MultiPoly>& phi, int q,
                     bool domain_cylinder) {
  int p = w.m();
  if (int(phi.size()) != p) throw std::invalid_argument("pullback_map: dimension mismatch");
  if (w.cylinder() && !domain_cylinder)
    throw std::invalid_argument("pullback_map: cylinder form needs a cylinder domain");
  // Substitute coordinates with a rename pass so that target x_i and domain
  // x_j cannot collide.
  auto subst_coords = [&](const MultiPoly& poly) {
    MultiPoly r = poly;
    for (int i = 1; i <= p; ++i) r = r.subst(xvar(i), MultiPoly::variable("__y" + std::to_string(i)));
    for (int i = 1; i <= p; ++i) r = r.subst("__y" + std::to_string(i), phi[i - 1]);
    return r;
  };
  // Differentials of the component maps as scalar 1-forms on the domain.
  std::vector<ScalarForm> dphi(p);
  for (int i = 0; i < p; ++i) {
    for (int j = 1; j <= q; ++j) {
      MultiPoly d = phi[i].diff(xvar(j));
      if (!d.is_zero()) dphi[i][FormMonomial{1u << (j - 1), false}] = d;
    }
    if (domain_cylinder) {
      MultiPoly d = phi[i].diff(kTimeVar);
      if (!d.is_zero()) dphi[i][FormMonomial{0, true}] = d;
    }
  }
  HomForm r(q, domain_cylinder, w.src(), w.tgt());
  for (const auto& [k, c] : w.terms()) {
    // Pull the exterior monomial back generator by generator, in order.
    ScalarForm acc;
    acc[FormMonomial{}] = MultiPoly(Rational(1));
    for (int i = 1; i <= p; ++i)
      if (k.mono.dx & (1u << (i - 1))) acc = scalar_wedge(acc, dphi[i - 1]);
    if (k.mono.dt) {
      ScalarForm dt_form;
      dt_form[FormMonomial{0, true}] = MultiPoly(Rational(1));
      acc = scalar_wedge(acc, dt_form);
    }
    if (acc.empty()) continue;
    PolyMat sub(c.rows, c.cols);
    for (size_t j = 0; j < c.a.size(); ++j) sub.a[j] = subst_coords(c.a[j]);
    for (const auto& [mono, poly] : acc) r.add_term(mono, k.src_deg, k.tgt_deg, sub.scaled(poly));
  }
  return r;
}

bool homform_strictly_lowering(const HomForm& w, const Flag& flag) {
  if (!(w.src() == flag.space) || !(w.tgt() == flag.space))
    throw std::invalid_argument("homform_strictly_lowering: flag/space mismatch");
  for (const auto& [k, c] : w.terms()) {
    for (int r = 0; r < c.rows; ++r)
      for (int col = 0; col < c.cols; ++col) {
        if (c(r, col).is_zero()) continue;
        int gs = flag.space.global_index(k.src_deg, col);
        int gt = flag.space.global_index(k.tgt_deg, r);
        if (flag.layer_of(gt) >= flag.layer_of(gs)) return false;
      }
  }
  return true;
}

ExteriorValue ExteriorValue::identity(int m, const GradedSpace& v) {
  ExteriorValue e;
  e.m = m;
  e.src = e.tgt = v;
  for (const auto& [k, d] : v.dims) e.terms[FormTermKey{FormMonomial{}, k, k}] = Mat<double>::identity(d);
  return e;
}

ExteriorValue ExteriorValue::operator+(const ExteriorValue& o) const {
  ExteriorValue r = *this;
  for (const auto& [k, mat] : o.terms) {
    auto it = r.terms.find(k);
    if (it == r.terms.end())
      r.terms[k] = mat;
    else
      for (size_t i = 0; i < mat.a.size(); ++i) it->second.a[i] += mat.a[i];
  }
  return r;
}

ExteriorValue ExteriorValue::scaled(double c) const {
  ExteriorValue r = *this;
  for (auto& [k, mat] : r.terms)
    for (auto& x : mat.a) x *= c;
  return r;
}

double ExteriorValue::max_abs() const {
  double mx = 0;
  for (const auto& [k, mat] : terms)
    for (double x : mat.a) mx = std::max(mx, std::abs(x));
  return mx;
}

ExteriorValue wedge(const ExteriorValue& a, const ExteriorValue& b) {
  ExteriorValue r;
  r.m = a.m;
  r.src = b.src;
  r.tgt = a.tgt;
  for (const auto& [ka, ma] : a.terms)
    for (const auto& [kb, mb] : b.terms) {
      if (kb.tgt_deg != ka.src_deg) continue;
      FormMonomial mono;
      int s = monomial_merge(ka.mono, kb.mono, mono);
      if (s == 0) continue;
      if ((ka.internal_degree() * kb.mono.degree()) % 2 != 0) s = -s;
      Mat<double> prod = ma * mb;
      if (s < 0)
        for (auto& x : prod.a) x = -x;
      FormTermKey key{mono, kb.src_deg, ka.tgt_deg};
      auto it = r.terms.find(key);
      if (it == r.terms.end())
        r.terms[key] = prod;
      else
        for (size_t i = 0; i < prod.a.size(); ++i) it->second.a[i] += prod.a[i];
    }
  return r;
}

ExteriorValue eval_at_point(const HomForm& w, const std::vector<double>& x, double t) {
  if (int(x.size()) != w.m()) throw std::invalid_argument("eval_at_point: wrong point dimension");
  std::map<std::string, double> point;
  for (int i = 1; i <= w.m(); ++i) point[xvar(i)] = x[i - 1];
  point[kTimeVar] = t;
  ExteriorValue r;
  r.m = w.m();
  r.src = w.src();
  r.tgt = w.tgt();
  for (const auto& [k, c] : w.terms()) {
    if (k.mono.dt) throw std::invalid_argument("eval_at_point: contract dt terms first");
    Mat<double> mat(c.rows, c.cols);
    bool nonzero = false;
    for (size_t i = 0; i < c.a.size(); ++i) {
      mat.a[i] = c.a[i].eval(point);
      nonzero = nonzero || mat.a[i] != 0.0;
    }
    if (nonzero) r.terms[k] = mat;
  }
  return r;
}

}  // namespace chenholo

#include "chenholo/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chenholo {

MultiPoly::MultiPoly(Rational c) {
  if (c != 0) terms_[{}] = std::move(c);
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  p.terms_[{1}] = Rational(1);
  return p;
}

MultiPoly MultiPoly::monomial(Rational coef, const std::vector<std::string>& vars,
                              const std::vector<int>& exps) {
  if (vars.size() != exps.size()) throw std::invalid_argument("monomial: vars/exps mismatch");
  MultiPoly p(std::move(coef));
  for (size_t i = 0; i < vars.size(); ++i) {
    MultiPoly v = MultiPoly::variable(vars[i]);
    for (int k = 0; k < exps[i]; ++k) p = p * v;
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Expo(vars_.size(), 0));
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Expo(vars_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool MultiPoly::depends_on(const std::string& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return false;
  size_t idx = it - vars_.begin();
  for (const auto& [e, c] : terms_)
    if (e[idx] != 0) return true;
  return false;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int MultiPoly::degree_in(const std::string& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return 0;
  size_t idx = it - vars_.begin();
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

void MultiPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  // Drop variables that no longer occur.
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) nv.push_back(vars_[i]);
  std::map<Expo, Rational> nt;
  for (const auto& [e, c] : terms_) {
    Expo ne;
    for (size_t i = 0; i < e.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    nt[ne] = c;
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

namespace {
// Remaps the terms of p onto the variable list target (a superset of p's vars).
std::map<MultiPoly::Expo, Rational> remap(const MultiPoly& p, const std::vector<std::string>& target) {
  std::vector<size_t> pos(p.vars().size());
  for (size_t i = 0; i < p.vars().size(); ++i) {
    auto it = std::lower_bound(target.begin(), target.end(), p.vars()[i]);
    pos[i] = it - target.begin();
  }
  std::map<MultiPoly::Expo, Rational> out;
  for (const auto& [e, c] : p.terms()) {
    MultiPoly::Expo ne(target.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    out[ne] = c;
  }
  return out;
}

std::vector<std::string> union_vars(const MultiPoly& a, const MultiPoly& b) {
  std::vector<std::string> u;
  std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(),
                 std::back_inserter(u));
  return u;
}
}  // namespace

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r;
  r.vars_ = union_vars(*this, o);
  r.terms_ = remap(*this, r.vars_);
  for (const auto& [e, c] : remap(o, r.vars_)) r.terms_[e] += c;
  r.normalize();
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  r.vars_ = union_vars(*this, o);
  auto ta = remap(*this, r.vars_);
  auto tb = remap(o, r.vars_);
  for (const auto& [ea, ca] : ta)
    for (const auto& [eb, cb] : tb) {
      Expo e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.terms_[e] += ca * cb;
    }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
  if (c == 0) return MultiPoly();
  MultiPoly p = *this;
  for (auto& [e, co] : p.terms_) co *= c;
  return p;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

bool MultiPoly::operator<(const MultiPoly& o) const {
  if (vars_ != o.vars_) return vars_ < o.vars_;
  return terms_ < o.terms_;
}

MultiPoly MultiPoly::diff(const std::string& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return MultiPoly();
  size_t idx = it - vars_.begin();
  MultiPoly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Expo ne = e;
    ne[idx] -= 1;
    r.terms_[ne] += c * Rational(e[idx]);
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::integrate(const std::string& v, const MultiPoly& lower,
                               const MultiPoly& upper) const {
  if (lower.depends_on(v) || upper.depends_on(v))
    throw std::invalid_argument("integrate: bounds depend on integration variable");
  // Antiderivative in v, then evaluate between the bounds.
  MultiPoly anti;
  std::vector<std::string> av = vars_;
  if (std::find(av.begin(), av.end(), v) == av.end()) {
    av.insert(std::lower_bound(av.begin(), av.end(), v), v);
  }
  anti.vars_ = av;
  size_t idx = std::lower_bound(av.begin(), av.end(), v) - av.begin();
  for (const auto& [e, c] : remap(*this, av)) {
    Expo ne = e;
    ne[idx] += 1;
    anti.terms_[ne] += c / Rational(ne[idx]);
  }
  anti.normalize();
  return anti.subst(v, upper) - anti.subst(v, lower);
}

MultiPoly MultiPoly::subst(const std::string& v, const MultiPoly& value) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) return *this;
  size_t idx = it - vars_.begin();
  // Group by exponent of v, then Horner in value.
  int dmax = degree_in(v);
  std::vector<MultiPoly> by_deg(dmax + 1);
  for (const auto& [e, c] : terms_) {
    MultiPoly m;
    m.vars_ = vars_;
    Expo ne = e;
    int k = ne[idx];
    ne[idx] = 0;
    m.terms_[ne] = c;
    m.normalize();
    by_deg[k] += m;
  }
  MultiPoly r = by_deg[dmax];
  for (int k = dmax - 1; k >= 0; --k) r = r * value + by_deg[k];
  return r;
}

double MultiPoly::eval(const std::map<std::string, double>& point) const {
  std::vector<double> vals(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = point.find(vars_[i]);
    if (it == point.end()) throw std::invalid_argument("eval: unbound variable " + vars_[i]);
    vals[i] = it->second;
  }
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = rational_to_double(c);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term *= vals[i];
    acc += term;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace chenholo

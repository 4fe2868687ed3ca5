#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chenholo/graded.hpp"

namespace chenholo {

// Chart coordinate names: x1..xm for the base, t for the interval factor.
inline std::string xvar(int i) { return "x" + std::to_string(i); }
inline const std::string kTimeVar = "t";

// Exterior monomial dx_{i1} ^ ... ^ dx_{ik} [^ dt], generators sorted
// ascending with dt, when present, always last.
struct FormMonomial {
  uint32_t dx = 0;  // bit (i-1) set means dx_i present
  bool dt = false;

  int degree() const { return std::popcount(dx) + (dt ? 1 : 0); }
  bool operator==(const FormMonomial& o) const { return dx == o.dx && dt == o.dt; }
  bool operator<(const FormMonomial& o) const {
    return dx != o.dx ? dx < o.dx : dt < o.dt;
  }
};

// Antisymmetric merge of two monomials (left factor's generators first).
// Returns sign in {-1,0,+1}; 0 means the product vanishes.
int monomial_merge(const FormMonomial& a, const FormMonomial& b, FormMonomial& out);

struct FormTermKey {
  FormMonomial mono;
  int src_deg = 0;  // internal degree on the source space
  int tgt_deg = 0;  // internal degree on the target space

  int internal_degree() const { return tgt_deg - src_deg; }
  int total_degree() const { return mono.degree() + internal_degree(); }
  bool operator==(const FormTermKey& o) const {
    return mono == o.mono && src_deg == o.src_deg && tgt_deg == o.tgt_deg;
  }
  bool operator<(const FormTermKey& o) const {
    if (!(mono == o.mono)) return mono < o.mono;
    if (src_deg != o.src_deg) return src_deg < o.src_deg;
    return tgt_deg < o.tgt_deg;
  }
};

// Hom(V,W)-valued polynomial differential form on R^m (cylinder=false) or
// R^m x [0,1] (cylinder=true). The coefficients are MultiPoly matrices; they
// may involve extra parameter variables (integration parameters), which are
// inert under the exterior derivative.
class HomForm {
 public:
  HomForm() = default;
  HomForm(int m, bool cylinder, GradedSpace src, GradedSpace tgt)
      : m_(m), cylinder_(cylinder), src_(std::move(src)), tgt_(std::move(tgt)) {}

  static HomForm identity(int m, bool cylinder, const GradedSpace& v);
  static HomForm from_hom(const GradedHom& h, int m, bool cylinder);

  int m() const { return m_; }
  bool cylinder() const { return cylinder_; }
  const GradedSpace& src() const { return src_; }
  const GradedSpace& tgt() const { return tgt_; }
  const std::map<FormTermKey, PolyMat>& terms() const { return terms_; }
  bool is_endo() const { return src_ == tgt_; }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates coef-matrix into the (mono, src_deg, tgt_deg) slot.
  void add_term(const FormMonomial& mono, int src_deg, int tgt_deg, const PolyMat& coef);

  HomForm operator+(const HomForm& o) const;
  HomForm operator-(const HomForm& o) const { return *this + (-o); }
  HomForm operator-() const;
  HomForm scaled(const Rational& c) const;
  HomForm scaled(const MultiPoly& p) const;
  bool operator==(const HomForm& o) const;
  bool operator!=(const HomForm& o) const { return !(*this == o); }

  // Set of total degrees present.
  std::set<int> total_degrees() const;
  bool is_homogeneous(int* degree_out = nullptr) const;
  HomForm homogeneous_component(int total_degree) const;
  // Component of the given form (partial) degree.
  HomForm form_degree_component(int p) const;

  // Applies fn to every polynomial coefficient.
  HomForm map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& fn) const;

  // Largest total polynomial degree among coefficients (-1 if zero).
  int max_coeff_degree() const;
  std::string str() const;

 private:
  void prune();
  int m_ = 0;
  bool cylinder_ = false;
  GradedSpace src_, tgt_;
  std::map<FormTermKey, PolyMat> terms_;
};

// Koszul-signed wedge/composition: Hom(W,X)-valued ^ Hom(V,W)-valued ->
// Hom(V,X)-valued. On decomposables (sigma (x) A) ^ (tau (x) B) =
// (-1)^{deg(A) * formdeg(tau)} (sigma ^ tau) (x) (A o B).
HomForm wedge(const HomForm& a, const HomForm& b);

// Exterior derivative over the chart coordinates (and t when the form lives
// on the cylinder); parameter variables in coefficients are untouched.
HomForm exterior_d(const HomForm& w);

// Contraction with d/dt: (dx_I ^ dt) (x) A  ->  (-1)^{|I|} dx_I (x) A,
// dt-free terms map to zero. The result is still a cylinder form (its
// coefficients may depend on t).
HomForm contract_dt(const HomForm& w);

// Restriction iota_s^*: kill dt terms, substitute t := s. Result is a form on
// the base (s may be a parameter polynomial, including the variable t itself).
HomForm restrict_t(const HomForm& w, const MultiPoly& s);
inline HomForm restrict_t(const HomForm& w, const Rational& s) {
  return restrict_t(w, MultiPoly(s));
}

// Pullback along the polynomial map phi: R^q[x [0,1]] -> R^p, given by p
// polynomials in x1..xq (and t when domain_cylinder). A cylinder form pulls
// back with t passed through.
HomForm pullback_map(const HomForm& w, const std::vector<MultiPoly>& phi, int q,
                     bool domain_cylinder);

// Every Hom coefficient of w strictly lowers the flag (w endo-shaped on
// flag.space).
bool homform_strictly_lowering(const HomForm& w, const Flag& flag);

// Numeric fiber of a dt-free form at a point, keeping the exterior-algebra
// structure.
struct ExteriorValue {
  int m = 0;
  GradedSpace src, tgt;
  std::map<FormTermKey, Mat<double>> terms;

  ExteriorValue operator+(const ExteriorValue& o) const;
  ExteriorValue scaled(double c) const;
  double max_abs() const;
  static ExteriorValue identity(int m, const GradedSpace& v);
};

ExteriorValue wedge(const ExteriorValue& a, const ExteriorValue& b);

// Evaluates a dt-free form at x (and t, for coefficients that carry t as a
// parameter). Throws if the form still has dt-carrying terms.
ExteriorValue eval_at_point(const HomForm& w, const std::vector<double>& x, double t);

}  // namespace chenholo

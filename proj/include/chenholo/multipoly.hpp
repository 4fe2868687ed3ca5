#pragma once

#include <map>
#include <string>
#include <vector>

#include "chenholo/rational.hpp"

namespace chenholo {

// Multivariate polynomial with exact rational coefficients. Variables are
// identified by name; the stored variable set is kept sorted and trimmed to
// the variables actually present, so representations are canonical and
// operator== is structural equality of polynomials.
class MultiPoly {
 public:
  using Expo = std::vector<int>;  // aligned with vars()

  MultiPoly() = default;  // zero
  explicit MultiPoly(Rational c);
  explicit MultiPoly(long c) : MultiPoly(Rational(c)) {}

  static MultiPoly variable(const std::string& name);
  // coefficient * prod(vars[i]^exps[i]); vars need not be sorted.
  static MultiPoly monomial(Rational coef, const std::vector<std::string>& vars,
                            const std::vector<int>& exps);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (coefficient of the all-zero exponent vector).
  Rational constant_term() const;
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Expo, Rational>& terms() const { return terms_; }
  bool depends_on(const std::string& v) const;
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(const std::string& v) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& c) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  bool operator<(const MultiPoly& o) const;  // arbitrary total order, for map keys

  // Formal partial derivative with respect to v.
  MultiPoly diff(const std::string& v) const;
  // Definite integral in v between bounds free of v (bounds may be any
  // polynomials not containing v).
  MultiPoly integrate(const std::string& v, const MultiPoly& lower, const MultiPoly& upper) const;
  MultiPoly integrate(const std::string& v, const Rational& lower, const Rational& upper) const {
    return integrate(v, MultiPoly(lower), MultiPoly(upper));
  }
  // Exact substitution v := value.
  MultiPoly subst(const std::string& v, const MultiPoly& value) const;
  MultiPoly subst(const std::string& v, const Rational& value) const {
    return subst(v, MultiPoly(value));
  }
  // Floating evaluation; every variable must be bound.
  double eval(const std::map<std::string, double>& point) const;

  std::string str() const;

 private:
  void normalize();
  std::vector<std::string> vars_;
  std::map<Expo, Rational> terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

}  // namespace chenholo

#pragma once

#include <optional>
#include <vector>

#include "chenholo/forms.hpp"
#include "chenholo/report.hpp"

namespace chenholo {

// eps(n) = sum_{i=1}^{n-1} (n-i) = n(n-1)/2.
inline long epsilon_exponent(int n) { return long(n) * (n - 1) / 2; }
inline int epsilon_sign(int n, int omega_degree) {
  return ((epsilon_exponent(n) * omega_degree) % 2 == 0) ? 1 : -1;
}

// The summed iterated-integral series of an endomorphism-valued cylinder
// form. terms[n] is the n-fold nested integral, a base form polynomial in t.
struct ChenSeries {
  HomForm omega;
  std::vector<HomForm> terms;
  bool finite = false;  // true: terms vanish identically from terms.size() on
  int flag_layers = 0;  // set when finiteness was certified by a flag

  // Phi(t) as a base form with t a free parameter.
  HomForm sum() const;
  // Phi evaluated at a rational height.
  HomForm at(const Rational& t) const;
};

// n-fold nested iterated integral of omega, integrating innermost-first.
// Result is a Hom-valued base form, polynomial in the free parameter t.
HomForm phi_term(const HomForm& omega, int n);

// Sums the series. With a flag certificate whose strict-lowering check
// passes, the series is exactly finite (order = number of layers). Without
// one, sums through max_order and marks the series truncated.
ChenSeries phi_series(const HomForm& omega, const Flag* flag, std::optional<int> max_order = {});

// Fiber integral over the width-t simplex of a composable chain of
// homogeneous cylinder forms, evaluated by the outermost-variable-first
// recursion (an evaluation order independent of phi_term's).
// For an empty chain the identity on `empty_space` is returned.
HomForm simplex_integral(const std::vector<HomForm>& chain, const MultiPoly& t,
                         const GradedSpace* empty_space = nullptr);

// (-1)^{eps(n)|omega|} times the n-fold simplex integral of omega; equal to
// phi_term(omega, n) for homogeneous omega.
HomForm phi_homogeneous_sign_form(const HomForm& omega, int n);

// Residual of the exterior-derivative expansion of a simplex integral of a
// homogeneous composable chain: boundary terms plus in-place derivatives and
// adjacent merges. Exactly zero when signs are right.
ResidualReport lemma35_residual(const std::vector<HomForm>& chain);

// Residual of the expansion of d Phi(t) for a flag-finite homogeneous omega.
ResidualReport dphi_expansion_residual(const HomForm& omega, const Flag& flag);

// Exact derivative identity: d/dt Phi(t) - iota_t^* i_{d/dt} omega ^ Phi(t)
// vanishes as a polynomial.
ResidualReport phi_derivative_residual(const ChenSeries& series);

// Fixed-step classical RK4 integration of dY/dt = (iota_t^* i_{d/dt} omega) ^ Y
// on the exterior-algebra fiber at x. Returns Y at each requested grid time
// (grid must be increasing, starting at 0 or later).
std::vector<ExteriorValue> phi_ode(const HomForm& omega, const std::vector<double>& x,
                                   const std::vector<double>& t_grid, double step);

// Exact inverse of a total-degree-0 form whose constant 0-form part is
// invertible and whose remainder is nilpotent (finite Neumann series).
// Throws if the series fails to terminate within max_steps.
HomForm homform_inverse(const HomForm& f, int max_steps = 64);

// Right-hand side of the gauge-transport identity:
// (iota_t^* g)^{-1} Phi^eta(t) iota_0^* g, as a base form in the parameter t.
HomForm gauge_transport(const HomForm& eta, const HomForm& g, const Flag& eta_flag);

}  // namespace chenholo

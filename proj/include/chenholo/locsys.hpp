#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chenholo/chen.hpp"

namespace chenholo {

// A trivialized graded local system on a polynomial chart: the operator
// d - alpha on V-valued forms, with alpha endomorphism-valued of total
// degree 1. A flag certificate, when present, makes the Chen series finite.
struct Superconnection {
  GradedSpace space;
  HomForm alpha;
  std::optional<Flag> flag;

  int m() const { return alpha.m(); }
  bool cylinder() const { return alpha.cylinder(); }
  // Checks the shape invariants (endo-valued on `space`, total degree 1 or
  // zero, flag over the same space). Throws on violation.
  void validate() const;
};

// Flatness residual exterior_d(alpha) - alpha ^ alpha; zero iff d - alpha
// squares to zero.
HomForm mc_residual(const Superconnection& s);

// The flatness residual split by form degree; simultaneous vanishing of all
// components is equivalent to flatness.
std::map<int, HomForm> mc_component_residuals(const Superconnection& s);

// Differential on Hom-valued forms between two systems:
// d w - alpha' ^ w + (-1)^k w ^ alpha on the total-degree-k component
// (inhomogeneous input is handled componentwise).
HomForm hom_differential(const HomForm& w, const Superconnection& s, const Superconnection& sp);

// Morphism residual d phi - alpha' ^ phi + phi ^ alpha for a total-degree-0
// map phi : s -> sp; exact zero means phi is a map of local systems.
ResidualReport is_morphism(const HomForm& phi, const Superconnection& s,
                           const Superconnection& sp);

struct HolonomyResult {
  HomForm phi;      // Phi(1), a base form on R^m
  HomForm phi_inv;  // exact two-sided inverse
  ResidualReport report;
};

// Holonomy across the cylinder of a flat, flag-certified system: Phi(1)
// together with its exact inverse. Asserts the morphism identity
// d Phi = iota_1^* alpha ^ Phi - Phi ^ iota_0^* alpha and both inverse
// identities exactly; throws on non-flat input.
HolonomyResult holonomy_iso(const Superconnection& s);

// Checks Phi^alpha(1) = (iota_1^* g)^{-1} Phi^beta(1) iota_0^* g for two
// trivializations related by alpha = g^{-1} beta g - g^{-1} dg. The gauge
// relation itself is asserted first (throws if violated); the returned
// report carries the holonomy residual.
ResidualReport gauge_compat_check(const Superconnection& sv, const Superconnection& sw,
                                  const HomForm& g);

// Pullback along the polynomial map f : R^q -> R^p (t passed through when
// the chart is a cylinder). Asserts that the flatness residual pulls back to
// the flatness residual of the pullback.
Superconnection pullback_superconnection(const Superconnection& s,
                                         const std::vector<MultiPoly>& f, int q);

struct PoincareResult {
  HomForm psi;      // isomorphism from the constant system into s
  HomForm psi_inv;
  Superconnection constant_system;  // d - alpha_0(x0)
  ResidualReport report;
};

// Constructive trivialization over a star-shaped chart: pulls the system
// back along the contraction h(x, s) = x0 + s (x - x0) and takes its
// holonomy. The constant system's twist is the 0-form part of alpha at x0
// (whose square vanishes by flatness); the morphism property and exact
// invertibility of psi are asserted.
PoincareResult poincare_trivialization(const Superconnection& s,
                                       const std::vector<Rational>& x0);

struct FlatDraw {
  Superconnection s;
  HomForm g;          // unipotent gauge, id + strictly-lowering 0-form
  GradedHom alpha_c;  // constant square-zero twist of the reference system
};

// Seeded generator of exactly flat, flag-certified superconnections on the
// gauge orbit alpha = g^{-1} alpha_c g - g^{-1} dg. alpha_c is constant of
// internal degree 1, supported on the top flag layer (hence square-zero);
// g = id + u with u a strictly-lowering polynomial of internal degree 0.
// Flatness and strict lowering are asserted before returning.
FlatDraw generate_flat(uint64_t seed, const GradedSpace& v, const Flag& flag, int m,
                       int max_poly_degree, bool cylinder = true);

}  // namespace chenholo

#pragma once

#include <random>

#include "chenholo/forms.hpp"

namespace chenholo {

// Small-coefficient random draws shared by the flat-system generator, the
// scenario generator, and the property tests. Everything is driven by a
// caller-owned mt19937_64 so draws are reproducible from a seed.

inline Rational rand_rational(std::mt19937_64& rng, bool allow_zero = true) {
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 3);
  int n = num(rng);
  if (!allow_zero && n == 0) n = 1;
  return Rational(n, den(rng));
}

// Random polynomial in x1..xm (and t when with_t) of total degree <= maxdeg,
// with a couple of small-coefficient monomials.
inline MultiPoly rand_poly(std::mt19937_64& rng, int m, bool with_t, int maxdeg) {
  std::uniform_int_distribution<int> nterms(1, 2);
  std::uniform_int_distribution<int> expo(0, maxdeg);
  MultiPoly p;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    MultiPoly mono(rand_rational(rng, false));
    int budget = maxdeg;
    for (int v = 1; v <= m && budget > 0; ++v) {
      int e = expo(rng) % (budget + 1);
      for (int j = 0; j < e; ++j) mono = mono * MultiPoly::variable(xvar(v));
      budget -= e;
    }
    if (with_t && budget > 0) {
      int e = expo(rng) % (budget + 1);
      for (int j = 0; j < e; ++j) mono = mono * MultiPoly::variable(kTimeVar);
    }
    p = p + mono;
  }
  return p;
}

// Random Hom(V,W)-valued form, homogeneous of the given total degree, with
// polynomial coefficients of degree <= maxdeg. May come out zero.
inline HomForm rand_homform(std::mt19937_64& rng, int m, bool cylinder, const GradedSpace& src,
                            const GradedSpace& tgt, int total_degree, int maxdeg) {
  HomForm w(m, cylinder, src, tgt);
  std::bernoulli_distribution keep(0.5);
  uint32_t full = (m >= 32) ? ~uint32_t(0) : ((uint32_t(1) << m) - 1);
  for (uint32_t dx = 0; dx <= full; ++dx) {
    if ((dx & ~full) != 0) continue;
    for (int dt = 0; dt <= (cylinder ? 1 : 0); ++dt) {
      FormMonomial mono{dx, dt != 0};
      int internal = total_degree - mono.degree();
      for (const auto& [ks, dims] : src.dims) {
        int kt = ks + internal;
        if (tgt.dim(kt) == 0) continue;
        PolyMat mat(tgt.dim(kt), dims);
        bool any = false;
        for (auto& e : mat.a) {
          if (!keep(rng)) continue;
          e = rand_poly(rng, m, cylinder, maxdeg);
          if (!(e == MultiPoly())) any = true;
        }
        if (any) w.add_term(mono, ks, kt, mat);
      }
    }
  }
  return w;
}

}  // namespace chenholo

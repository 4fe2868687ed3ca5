#pragma once

#include <functional>
#include <vector>

#include "chenholo/locsys.hpp"

namespace chenholo {

// A composable chain of homogeneous Hom-valued forms between local systems:
// xis[i] maps systems[i] into systems[i+1]. Entries are stored ascending
// (xis[0] innermost).
struct TensorChain {
  std::vector<Superconnection> systems;  // S_0 .. S_n
  std::vector<HomForm> xis;              // xi_0 .. xi_{n-1}

  int n() const { return int(xis.size()); }
  void validate() const;
  // Total degrees |xi_i| (each entry must be homogeneous).
  std::vector<int> degrees() const;
};

struct ChainTerm {
  int sign = 1;
  TensorChain chain;
};

// Signed formal sum of chains; terms may have length n or n-1 (after an
// adjacent merge) but always share the outer endpoints.
struct FormalChainSum {
  std::vector<ChainTerm> terms;
};

// The chain differential: with s(i) = sum_{j>i} |xi_j| + n - i - 1,
//   b(chain) =  sum_i (-1)^{s(i)}              [d xi_i at slot i]
//             - sum_i (-1)^{s(i)}              [alpha_{i+1} ^ xi_i at slot i]
//             + sum_i (-1)^{s(i) + |xi_i|}     [xi_i ^ alpha_i at slot i]
//             + sum_{i>=1} (-1)^{s(i)+|xi_i|}  [xi_i ^ xi_{i-1} merged, length n-1].
FormalChainSum hochschild_b(const TensorChain& chain);

// Applies b twice, extending linearly, and cancels the resulting formal sum
// by slotwise collection (terms equal outside one slot have their entries at
// that slot summed). Exact zero expected whenever every context is flat;
// curved contexts leave the residual -F_{i+1} ^ xi_i + xi_i ^ F_i per slot.
ResidualReport b_square_residual(const TensorChain& chain);

// Form-valued analogues of block_extract / block_embed for forms on a
// direct-sum space.
HomForm homform_block_extract(const HomForm& w, const DirectSum& ds, int row, int col);
HomForm homform_block_embed(const HomForm& w, const DirectSum& ds, int row, int col, int m,
                            bool cylinder);

// lambda_n of the chain: assemble omega = sum_i alpha_i + sum_i xi_i on
// the direct sum V_0 (+) ... (+) V_n (alpha_i on the diagonal, xi_i on block
// (i+1, i)), take the Chen series at t = 1 under the assembled flag (blocks
// ordered V_n, ..., V_0 so every xi_i strictly lowers), and extract block
// (n, 0). For n = 0 this is the holonomy of S_0.
HomForm lambda_eval(const TensorChain& chain);

// Every homogeneous component of lambda_eval has total degree
// sum_i |xi_i| - n.
ResidualReport lambda_degree_check(const TensorChain& chain);

// A transformation between the two endpoint restriction functors, given by
// its component evaluators. f_act / g_act push domain forms (alphas, xis)
// into the category where the lambda values live.
struct LambdaOracle {
  std::function<HomForm(const TensorChain&)> eval;
  std::function<HomForm(const HomForm&)> f_act;  // source endpoint
  std::function<HomForm(const HomForm&)> g_act;  // target endpoint
};

// The oracle of lambda_eval itself: endpoints are the height-0 and height-1
// restrictions of the cylinder.
LambdaOracle direct_lambda_oracle();

// Residual of the coherence identity
//   d lambda_n = g(alpha_n) ^ lambda_n
//              - (-1)^{sum |xi_j| - n} lambda_n ^ f(alpha_0)
//              + g(xi_{n-1}) ^ lambda_{n-1}(xi_{n-2} .. xi_0)
//              - (-1)^{sum_{j>=1} |xi_j| - n + 1} lambda_{n-1}(xi_{n-1} .. xi_1) ^ f(xi_0)
//              - lambda(b(chain)),
// checked exactly. With no oracle given, lambda_eval's own oracle is used.
ResidualReport ainfty_relation_residual(const TensorChain& chain,
                                        const LambdaOracle* oracle = nullptr);

// Gauge covariance: given the same chain in two trivializations related by
// transitions g_i (alpha_i = g_i^{-1} beta_i g_i - g_i^{-1} dg_i and
// xi_i = g_{i+1}^{-1} zeta_i g_i, both asserted), checks
// lambda^alpha(xi) = (iota_1^* g_n)^{-1} lambda^beta(zeta) iota_0^* g_0.
ResidualReport lambda_gauge_covariance_residual(const TensorChain& alpha_chain,
                                                const TensorChain& beta_chain,
                                                const std::vector<HomForm>& gs);

// Composite transformation (B after A): component n is
// sum_{i=0}^n B_i(xi_{n-i} .. xi_{n-1}) ^ A_{n-i}(xi_0 .. xi_{n-i-1}).
LambdaOracle compose_oracles(const LambdaOracle& b, const LambdaOracle& a);
HomForm compose_transformations(const LambdaOracle& b, const LambdaOracle& a,
                                const TensorChain& chain);

// Transformation attached to a polynomial homotopy h : R^q x [0,1] -> R^p
// between its two height restrictions: pulls every system and entry back
// along h and evaluates lambda there. The n = 0 component is the holonomy of
// the pulled-back system.
LambdaOracle hol_transformation(const std::vector<MultiPoly>& h, int q);

}  // namespace chenholo

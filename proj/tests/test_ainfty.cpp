#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chenholo/ainfty.hpp"
#include "chenholo/randgen.hpp"

using namespace chenholo;

namespace {
GradedSpace pt() {
  GradedSpace v;
  v.dims[0] = 1;
  return v;
}

GradedSpace v01() {
  GradedSpace v;
  v.dims[0] = 1;
  v.dims[1] = 1;
  return v;
}

Flag lowering_flag(const GradedSpace& v) {
  Flag f;
  f.space = v;
  f.layers.clear();
  for (int i = v.total_dim() - 1; i >= 0; --i) f.layers.push_back({i});
  return f;
}

Superconnection flat_system(uint64_t seed, int m, bool cylinder) {
  GradedSpace v;
  v.dims[0] = 2;
  v.dims[1] = 1;
  Flag f;
  f.space = v;
  f.layers = {{0}, {2}, {1}};
  return generate_flat(seed, v, f, m, 1, cylinder).s;
}

HomForm sum_length_n_terms(const FormalChainSum& s, size_t slot, int len, HomForm acc) {
  for (const auto& t : s.terms) {
    if (t.chain.n() != len) continue;
    acc = t.sign < 0 ? acc - t.chain.xis[slot] : acc + t.chain.xis[slot];
  }
  return acc;
}
}  // namespace

TEST_CASE("chain differential at length one is the twisted differential") {
  std::mt19937_64 rng(7);
  GradedSpace a = v01(), b = pt();
  for (int i = 0; i < 10; ++i) {
    Superconnection s0{a, rand_homform(rng, 1, true, a, a, 1, 1), std::nullopt};
    Superconnection s1{b, rand_homform(rng, 1, true, b, b, 1, 1), std::nullopt};
    int deg = int(rng() % 3);
    HomForm xi = rand_homform(rng, 1, true, a, b, deg, 1);
    TensorChain chain{{s0, s1}, {xi}};
    FormalChainSum bs = hochschild_b(chain);
    for (const auto& t : bs.terms) CHECK(t.chain.n() == 1);
    CHECK(sum_length_n_terms(bs, 0, 1, HomForm(1, true, a, b)) == hom_differential(xi, s0, s1));
  }
}

TEST_CASE("chain differential drops zero entries") {
  GradedSpace v = pt();
  Superconnection trivial{v, HomForm(1, true, v, v), std::nullopt};
  HomForm xi(1, true, v, v);
  PolyMat c(1, 1);
  c(0, 0) = MultiPoly(Rational(4));
  xi.add_term(FormMonomial{}, 0, 0, c);
  // constant scalar over trivial twists: every group vanishes
  CHECK(hochschild_b(TensorChain{{trivial, trivial}, {xi}}).terms.empty());
}

TEST_CASE("square of the chain differential vanishes on flat contexts") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 12; ++i) {
    int len = 1 + i % 3;
    int m = 1 + i % 2;
    TensorChain chain;
    for (int j = 0; j <= len; ++j)
      chain.systems.push_back(flat_system(50u * uint64_t(i) + uint64_t(j), m, true));
    for (int j = 0; j < len; ++j)
      chain.xis.push_back(rand_homform(rng, m, true, chain.systems[size_t(j)].space,
                                       chain.systems[size_t(j) + 1].space, int(rng() % 3), 1));
    CHECK(b_square_residual(chain).zero);
  }
  // a curved context leaves a nonzero residual (the curvature insertion)
  GradedSpace v = v01();
  HomForm curved(1, true, v, v);
  PolyMat blk(1, 1);
  blk(0, 0) = MultiPoly::variable(xvar(1));
  curved.add_term(FormMonomial{0, true}, 0, 0, blk);  // x1 dt, not closed
  Superconnection s{v, curved, std::nullopt};
  Superconnection trivial{v, HomForm(1, true, v, v), std::nullopt};
  HomForm xi = HomForm::identity(1, true, v);
  CHECK(!b_square_residual(TensorChain{{s, trivial}, {xi}}).zero);
}

TEST_CASE("block embed and extract round trip for forms") {
  std::mt19937_64 rng(17);
  GradedSpace a = v01(), b = pt();
  DirectSum ds = direct_sum({a, b});
  HomForm w = rand_homform(rng, 2, true, b, a, 1, 1);
  HomForm emb = homform_block_embed(w, ds, 0, 1, 2, true);
  CHECK(homform_block_extract(emb, ds, 0, 1) == w);
  CHECK(homform_block_extract(emb, ds, 1, 0).is_zero());
}

TEST_CASE("lambda on known chains") {
  GradedSpace v = pt();
  Superconnection trivial{v, HomForm(1, true, v, v), std::nullopt};
  // n = 1: xi = c x dt gives c x
  Rational c(3, 2);
  HomForm xi(1, true, v, v);
  PolyMat e(1, 1);
  e(0, 0) = MultiPoly(c) * MultiPoly::variable(xvar(1));
  xi.add_term(FormMonomial{0, true}, 0, 0, e);
  HomForm want(1, false, v, v);
  want.add_term(FormMonomial{}, 0, 0, e);
  CHECK(lambda_eval(TensorChain{{trivial, trivial}, {xi}}) == want);
  // n = 2: constants a dt, b dt give ab/2
  Rational a(2), b(5);
  HomForm xi0(1, true, v, v), xi1(1, true, v, v);
  PolyMat ea(1, 1), eb(1, 1), eab(1, 1);
  ea(0, 0) = MultiPoly(a);
  eb(0, 0) = MultiPoly(b);
  eab(0, 0) = MultiPoly(a * b / 2);
  xi0.add_term(FormMonomial{0, true}, 0, 0, ea);
  xi1.add_term(FormMonomial{0, true}, 0, 0, eb);
  HomForm want2(1, false, v, v);
  want2.add_term(FormMonomial{}, 0, 0, eab);
  CHECK(lambda_eval(TensorChain{{trivial, trivial, trivial}, {xi0, xi1}}) == want2);
}

TEST_CASE("lambda at length zero is the holonomy") {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    Superconnection s = flat_system(seed, 1 + int(seed % 2), true);
    CHECK(lambda_eval(TensorChain{{s}, {}}) == holonomy_iso(s).phi);
  }
}

TEST_CASE("lambda degree bookkeeping") {
  std::mt19937_64 rng(23);
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    int len = 1 + int(seed % 2);
    TensorChain chain;
    for (int j = 0; j <= len; ++j) chain.systems.push_back(flat_system(10 * seed + uint64_t(j), 1, true));
    for (int j = 0; j < len; ++j)
      chain.xis.push_back(rand_homform(rng, 1, true, chain.systems[size_t(j)].space,
                                       chain.systems[size_t(j) + 1].space, int(rng() % 3), 1));
    CHECK(lambda_degree_check(chain).zero);
  }
}

TEST_CASE("coherence identity for the endpoint restrictions") {
  std::mt19937_64 rng(29);
  // degenerate chain: everything zero
  GradedSpace v = pt();
  Superconnection trivial{v, HomForm(1, true, v, v), std::nullopt};
  CHECK(ainfty_relation_residual(TensorChain{{trivial, trivial}, {HomForm(1, true, v, v)}}).zero);
  // seeded chains over flat systems
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    int len = 1 + int(seed % 2);
    TensorChain chain;
    for (int j = 0; j <= len; ++j) chain.systems.push_back(flat_system(20 * seed + uint64_t(j), 1, true));
    for (int j = 0; j < len; ++j)
      chain.xis.push_back(rand_homform(rng, 1, true, chain.systems[size_t(j)].space,
                                       chain.systems[size_t(j) + 1].space, int(rng() % 3), 1));
    CHECK(ainfty_relation_residual(chain).zero);
  }
}

TEST_CASE("gauge covariance of lambda") {
  std::mt19937_64 rng(31);
  // trivial transition: both sides identical
  {
    TensorChain chain;
    chain.systems.push_back(flat_system(3, 1, true));
    chain.systems.push_back(flat_system(4, 1, true));
    chain.xis.push_back(rand_homform(rng, 1, true, chain.systems[0].space,
                                     chain.systems[1].space, 1, 1));
    std::vector<HomForm> gs{HomForm::identity(1, true, chain.systems[0].space),
                            HomForm::identity(1, true, chain.systems[1].space)};
    CHECK(lambda_gauge_covariance_residual(chain, chain, gs).zero);
  }
  // generated transitions against the constant trivialization
  GradedSpace v;
  v.dims[0] = 2;
  v.dims[1] = 1;
  Flag f;
  f.space = v;
  f.layers = {{0}, {2}, {1}};
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    int len = 1 + int(seed % 2);
    std::vector<FlatDraw> draws;
    for (int j = 0; j <= len; ++j) draws.push_back(generate_flat(30 * seed + uint64_t(j), v, f, 1, 1, true));
    TensorChain alpha, beta;
    std::vector<HomForm> gs;
    for (int j = 0; j <= len; ++j) {
      alpha.systems.push_back(draws[size_t(j)].s);
      beta.systems.push_back(
          Superconnection{v, HomForm::from_hom(draws[size_t(j)].alpha_c, 1, true), f});
      gs.push_back(draws[size_t(j)].g);
    }
    for (int j = 0; j < len; ++j) {
      HomForm xi = rand_homform(rng, 1, true, v, v, int(rng() % 2), 1);
      alpha.xis.push_back(xi);
      beta.xis.push_back(wedge(gs[size_t(j) + 1], wedge(xi, homform_inverse(gs[size_t(j)]))));
    }
    CHECK(lambda_gauge_covariance_residual(alpha, beta, gs).zero);
  }
  // violating the transition relation is an error
  {
    TensorChain chain{{flat_system(3, 1, true)}, {}};
    HomForm g = HomForm::identity(1, true, chain.systems[0].space);
    PolyMat n(2, 2);  // block (0, 0) of the generated space has dimension 2
    n(1, 0) = MultiPoly(Rational(1));
    g.add_term(FormMonomial{}, 0, 0, n);
    CHECK_THROWS(lambda_gauge_covariance_residual(chain, chain, {g}));
  }
}

TEST_CASE("transformations from homotopies and their composites") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 4; ++i) {
    int m = 1 + i % 2;
    int len = i % 3;
    TensorChain chain;
    for (int j = 0; j <= len; ++j) chain.systems.push_back(flat_system(40u * uint64_t(i) + uint64_t(j), m, false));
    for (int j = 0; j < len; ++j)
      chain.xis.push_back(rand_homform(rng, m, false, chain.systems[size_t(j)].space,
                                       chain.systems[size_t(j) + 1].space, int(rng() % 3), 1));
    std::vector<MultiPoly> ha, hb, hid;
    for (int k = 1; k <= m; ++k) {
      ha.push_back(MultiPoly::variable(kTimeVar) * MultiPoly::variable(xvar(k)));
      hb.push_back(MultiPoly::variable(xvar(k)) +
                   MultiPoly::variable(kTimeVar) * MultiPoly(Rational(1, 2)));
      hid.push_back(MultiPoly::variable(xvar(k)));
    }
    LambdaOracle a = hol_transformation(ha, m);
    LambdaOracle b = hol_transformation(hb, m);
    // each homotopy satisfies the coherence identity on its own
    CHECK(ainfty_relation_residual(chain, &a).zero);
    CHECK(ainfty_relation_residual(chain, &b).zero);
    // so does the vertical composite
    LambdaOracle ab = compose_oracles(b, a);
    CHECK(ainfty_relation_residual(chain, &ab).zero);
    // composing with the constant homotopy changes nothing
    LambdaOracle idb = hol_transformation(hid, m);
    CHECK(compose_transformations(idb, a, chain) == a.eval(chain));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chenholo/graded.hpp"

using namespace chenholo;

namespace {
GradedSpace v_small() {
  GradedSpace v;
  v.dims[-1] = 1;
  v.dims[0] = 2;
  v.dims[1] = 1;
  return v;
}
}  // namespace

TEST_CASE("global index round trip") {
  GradedSpace v = v_small();
  CHECK(v.total_dim() == 4);
  for (int g = 0; g < v.total_dim(); ++g) {
    auto [k, i] = v.degree_position(g);
    CHECK(v.global_index(k, i) == g);
  }
  CHECK(v.global_index(-1, 0) == 0);
  CHECK(v.global_index(0, 0) == 1);
  CHECK(v.global_index(1, 0) == 3);
}

TEST_CASE("graded hom composition adds degrees") {
  GradedSpace v = v_small();
  GradedHom f{v, v, 1, {}};
  RatMat b01(1, 2);
  b01(0, 0) = Rational(2);
  f.set_block(0, b01);
  GradedHom g{v, v, -1, {}};
  RatMat b10(2, 1);
  b10(0, 0) = Rational(3);
  g.set_block(1, b10);
  GradedHom fg = hom_compose(f, g);
  CHECK(fg.deg == 0);
  const RatMat* blk = fg.block(1);
  REQUIRE(blk != nullptr);
  CHECK((*blk)(0, 0) == Rational(6));
}

TEST_CASE("zero blocks are dropped") {
  GradedSpace v = v_small();
  GradedHom f{v, v, 0, {}};
  f.set_block(0, RatMat(2, 2));
  CHECK(f.is_zero());
  CHECK(f == GradedHom::zero(v, v, 0));
}

TEST_CASE("exact matrix inverse") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    // unit lower triangular times unit upper triangular: always invertible
    int n = 3;
    RatMat l = RatMat::identity(n), u = RatMat::identity(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        l(i, j) = Rational(coef(rng), 2);
        u(j, i) = Rational(coef(rng), 3);
      }
    RatMat m = l * u;
    RatMat inv = rat_mat_inverse(m);
    CHECK((m * inv == RatMat::identity(n)));
    CHECK((inv * m == RatMat::identity(n)));
  }
  RatMat sing(2, 2);
  sing(0, 0) = Rational(1);
  sing(1, 0) = Rational(2);
  CHECK_THROWS(rat_mat_inverse(sing));
}

TEST_CASE("flag layers and strict lowering") {
  GradedSpace v = v_small();
  Flag f;
  f.space = v;
  f.layers = {{0, 1}, {2, 3}};
  f.validate();
  CHECK(f.layer_of(1) == 1);
  CHECK(f.layer_of(3) == 2);

  // map basis 2 (degree 0, pos 1) -> basis 0 (degree -1): layer 2 -> layer 1
  GradedHom low{v, v, -1, {}};
  RatMat b(1, 2);
  b(0, 1) = Rational(1);
  low.set_block(0, b);
  CHECK(is_strictly_flag_lowering(low, f));

  // map within layer 1 is not strictly lowering
  GradedHom bad{v, v, 1, {}};
  RatMat c(2, 1);
  c(0, 0) = Rational(1);  // basis 0 (deg -1) -> basis 1 (deg 0): both layer 1
  bad.set_block(-1, c);
  CHECK(!is_strictly_flag_lowering(bad, f));

  Flag broken;
  broken.space = v;
  broken.layers = {{0, 1}, {1, 2, 3}};
  CHECK_THROWS(broken.validate());
}

TEST_CASE("direct sum block bookkeeping") {
  GradedSpace a, b;
  a.dims[0] = 1;
  a.dims[1] = 2;
  b.dims[0] = 2;
  DirectSum ds = direct_sum({a, b});
  CHECK(ds.total.dim(0) == 3);
  CHECK(ds.total.dim(1) == 2);
  CHECK(ds.offset_in_degree(0, 0) == 0);
  CHECK(ds.offset_in_degree(1, 0) == 1);

  GradedHom f{b, a, 1, {}};
  RatMat blk(2, 2);
  blk(0, 1) = Rational(7);
  f.set_block(0, blk);
  GradedHom emb = block_embed(f, ds, 0, 1);
  CHECK(emb.src == ds.total);
  GradedHom back = block_extract(emb, ds, 0, 1);
  CHECK(back == f);
  CHECK(block_extract(emb, ds, 1, 1).is_zero());
}

TEST_CASE("direct sum flag orders blocks then refines") {
  GradedSpace a, b;
  a.dims[0] = 2;
  b.dims[0] = 1;
  DirectSum ds = direct_sum({a, b});
  Flag fa;
  fa.space = a;
  fa.layers = {{1}, {0}};
  Flag f = direct_sum_flag(ds, {1, 0}, {&fa, nullptr});
  // block 1 (part b) first, then part a refined by fa
  REQUIRE(f.layers.size() == 3);
  CHECK(f.layer_of(ds.total.global_index(0, ds.offset_in_degree(1, 0))) == 1);
  // any map from part a into part b strictly lowers
  GradedHom xi{a, b, 0, {}};
  RatMat blk(1, 2);
  blk(0, 0) = Rational(1);
  blk(0, 1) = Rational(2);
  xi.set_block(0, blk);
  CHECK(is_strictly_flag_lowering(block_embed(xi, ds, 1, 0), f));
}

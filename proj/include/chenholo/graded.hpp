#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "chenholo/multipoly.hpp"
#include "chenholo/rational.hpp"

namespace chenholo {

// Dense matrix over an arbitrary ring element type (Rational, MultiPoly, double).
template <typename T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  T& operator()(int r, int c) { return a[size_t(r) * cols + c]; }
  const T& operator()(int r, int c) const { return a[size_t(r) * cols + c]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Mat operator+(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("Mat: shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] + o.a[i];
    return r;
  }
  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.a) x = -x;
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols != o.rows) throw std::invalid_argument("Mat: product shape mismatch");
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const T& x = (*this)(i, k);
        for (int j = 0; j < o.cols; ++j) r(i, j) = r(i, j) + x * o(k, j);
      }
    return r;
  }
  template <typename S>
  Mat scaled(const S& s) const {
    Mat r = *this;
    for (auto& x : r.a) x = x * s;
    return r;
  }
  static Mat identity(int n) {
    Mat r(n, n);
    for (int i = 0; i < n; ++i) r(i, i) = T(1);
    return r;
  }
  bool is_zero() const {
    for (const auto& x : a)
      if (!(x == T())) return false;
    return true;
  }
};

using RatMat = Mat<Rational>;
using PolyMat = Mat<MultiPoly>;

// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
// Throws if singular.
RatMat rat_mat_inverse(const RatMat& m);

// Finite-dimensional Z-graded vector space: degree -> dimension (>= 1).
// Basis convention: ascending degree, positions 0..dim-1 within a degree.
struct GradedSpace {
  std::map<int, int> dims;

  int dim(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  int total_dim() const;
  // Global index of basis vector (degree k, position i) in the ascending-degree order.
  int global_index(int k, int i) const;
  // Inverse of global_index.
  std::pair<int, int> degree_position(int g) const;
  bool operator==(const GradedSpace& o) const { return dims == o.dims; }
};

// Homogeneous linear map of internal degree deg between graded spaces,
// stored blockwise: block k maps source^k into target^{k+deg}. Blocks whose
// source or target component is absent are omitted (forced zero).
struct GradedHom {
  GradedSpace src, tgt;
  int deg = 0;
  std::map<int, RatMat> blocks;  // key: source degree

  static GradedHom zero(const GradedSpace& src, const GradedSpace& tgt, int deg) {
    return GradedHom{src, tgt, deg, {}};
  }
  static GradedHom identity(const GradedSpace& v);

  const RatMat* block(int k) const {
    auto it = blocks.find(k);
    return it == blocks.end() ? nullptr : &it->second;
  }
  // Sets a block; shape must match, zero blocks are dropped.
  void set_block(int k, RatMat m);

  bool is_zero() const;
  bool operator==(const GradedHom& o) const;
  GradedHom operator+(const GradedHom& o) const;
  GradedHom operator-() const;
  GradedHom scaled(const Rational& c) const;
};

// Blockwise composition f after g; internal degrees add.
GradedHom hom_compose(const GradedHom& f, const GradedHom& g);

// Filtration certificate: an ordered partition of the basis (global indices)
// into layers F_1 subset ... subset F_nu, F_k being the union of the first k.
struct Flag {
  GradedSpace space;
  std::vector<std::vector<int>> layers;

  // 1-based layer of a global basis index; throws if the flag does not cover it.
  int layer_of(int g) const;
  void validate() const;  // disjoint layers covering the full basis
};

// True iff f (an endomorphism-shaped hom on the flag's space) maps layer F_k
// into F_{k-1} for all k, where F_0 = 0.
bool is_strictly_flag_lowering(const GradedHom& f, const Flag& flag);

// Degreewise concatenation of graded spaces with block bookkeeping.
struct DirectSum {
  GradedSpace total;
  std::vector<GradedSpace> parts;
  // offset of block i inside total^k (in units of basis vectors of degree k)
  int offset_in_degree(int block, int k) const;
};

DirectSum direct_sum(const std::vector<GradedSpace>& spaces);

// Sub-blocks of f (defined on a direct sum) mapping the col-th part into the
// row-th part.
GradedHom block_extract(const GradedHom& f, const DirectSum& ds, int row, int col);

// Embeds a hom parts[col] -> parts[row] into an endomorphism-shaped hom of the
// total space (all other blocks zero).
GradedHom block_embed(const GradedHom& f, const DirectSum& ds, int row, int col);

// Flag on a direct sum listing the blocks in the given order, each refined by
// its own flag. Earlier blocks in `order` occupy lower layers.
Flag direct_sum_flag(const DirectSum& ds, const std::vector<int>& order,
                     const std::vector<const Flag*>& part_flags);

}  // namespace chenholo

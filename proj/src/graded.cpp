#include "chenholo/graded.hpp"

#include <algorithm>

namespace chenholo {

RatMat rat_mat_inverse(const RatMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("rat_mat_inverse: not square");
  int n = m.rows;
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::runtime_error("rat_mat_inverse: singular matrix");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    Rational p = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

int GradedSpace::total_dim() const {
  int t = 0;
  for (const auto& [k, d] : dims) t += d;
  return t;
}

int GradedSpace::global_index(int k, int i) const {
  int off = 0;
  for (const auto& [deg, d] : dims) {
    if (deg == k) {
      if (i >= d) throw std::out_of_range("global_index: position out of range");
      return off + i;
    }
    off += d;
  }
  throw std::out_of_range("global_index: degree absent");
}

std::pair<int, int> GradedSpace::degree_position(int g) const {
  int off = 0;
  for (const auto& [deg, d] : dims) {
    if (g < off + d) return {deg, g - off};
    off += d;
  }
  throw std::out_of_range("degree_position: index out of range");
}

GradedHom GradedHom::identity(const GradedSpace& v) {
  GradedHom h{v, v, 0, {}};
  for (const auto& [k, d] : v.dims) h.blocks[k] = RatMat::identity(d);
  return h;
}

void GradedHom::set_block(int k, RatMat m) {
  int sd = src.dim(k), td = tgt.dim(k + deg);
  if (sd == 0 || td == 0) {
    if (!m.is_zero()) throw std::invalid_argument("set_block: block forced zero by grading");
    return;
  }
  if (m.rows != td || m.cols != sd) throw std::invalid_argument("set_block: shape mismatch");
  if (m.is_zero())
    blocks.erase(k);
  else
    blocks[k] = std::move(m);
}

bool GradedHom::is_zero() const {
  for (const auto& [k, b] : blocks)
    if (!b.is_zero()) return false;
  return true;
}

bool GradedHom::operator==(const GradedHom& o) const {
  if (!(src == o.src) || !(tgt == o.tgt) || deg != o.deg) return false;
  auto nonzero = [](const std::map<int, RatMat>& bs) {
    std::map<int, RatMat> r;
    for (const auto& [k, b] : bs)
      if (!b.is_zero()) r[k] = b;
    return r;
  };
  return nonzero(blocks) == nonzero(o.blocks);
}

GradedHom GradedHom::operator+(const GradedHom& o) const {
  if (!(src == o.src) || !(tgt == o.tgt) || deg != o.deg)
    throw std::invalid_argument("GradedHom::+: incompatible");
  GradedHom r = *this;
  for (const auto& [k, b] : o.blocks) {
    auto it = r.blocks.find(k);
    if (it == r.blocks.end())
      r.blocks[k] = b;
    else {
      it->second = it->second + b;
      if (it->second.is_zero()) r.blocks.erase(it);
    }
  }
  return r;
}

GradedHom GradedHom::operator-() const {
  GradedHom r = *this;
  for (auto& [k, b] : r.blocks) b = -b;
  return r;
}

GradedHom GradedHom::scaled(const Rational& c) const {
  if (c == 0) return zero(src, tgt, deg);
  GradedHom r = *this;
  for (auto& [k, b] : r.blocks) b = b.scaled(c);
  return r;
}

GradedHom hom_compose(const GradedHom& f, const GradedHom& g) {
  if (!(g.tgt == f.src)) throw std::invalid_argument("hom_compose: shape mismatch");
  GradedHom r{g.src, f.tgt, f.deg + g.deg, {}};
  for (const auto& [k, gb] : g.blocks) {
    const RatMat* fb = f.block(k + g.deg);
    if (!fb) continue;
    RatMat prod = (*fb) * gb;
    if (prod.is_zero()) continue;
    auto it = r.blocks.find(k);
    if (it == r.blocks.end())
      r.blocks[k] = std::move(prod);
    else
      it->second = it->second + prod;
  }
  for (auto it = r.blocks.begin(); it != r.blocks.end();)
    it = it->second.is_zero() ? r.blocks.erase(it) : std::next(it);
  return r;
}

int Flag::layer_of(int g) const {
  for (size_t l = 0; l < layers.size(); ++l)
    if (std::find(layers[l].begin(), layers[l].end(), g) != layers[l].end()) return int(l) + 1;
  throw std::invalid_argument("Flag::layer_of: basis index not in flag");
}

void Flag::validate() const {
  std::vector<bool> seen(space.total_dim(), false);
  for (const auto& layer : layers)
    for (int g : layer) {
      if (g < 0 || g >= int(seen.size()) || seen[g])
        throw std::invalid_argument("Flag: layers not a partition of the basis");
      seen[g] = true;
    }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw std::invalid_argument("Flag: layers do not cover the basis");
}

bool is_strictly_flag_lowering(const GradedHom& f, const Flag& flag) {
  if (!(f.src == flag.space) || !(f.tgt == flag.space))
    throw std::invalid_argument("is_strictly_flag_lowering: flag/space mismatch");
  for (const auto& [k, b] : f.blocks) {
    for (int r = 0; r < b.rows; ++r)
      for (int c = 0; c < b.cols; ++c) {
        if (b(r, c) == 0) continue;
        int gs = flag.space.global_index(k, c);
        int gt = flag.space.global_index(k + f.deg, r);
        if (flag.layer_of(gt) >= flag.layer_of(gs)) return false;
      }
  }
  return true;
}

DirectSum direct_sum(const std::vector<GradedSpace>& spaces) {
  if (spaces.empty()) throw std::invalid_argument("direct_sum: empty list");
  DirectSum ds;
  ds.parts = spaces;
  for (const auto& s : spaces)
    for (const auto& [k, d] : s.dims) ds.total.dims[k] += d;
  return ds;
}

int DirectSum::offset_in_degree(int block, int k) const {
  if (block < 0 || block >= int(parts.size()))
    throw std::out_of_range("DirectSum: block index out of range");
  int off = 0;
  for (int i = 0; i < block; ++i) off += parts[i].dim(k);
  return off;
}

GradedHom block_extract(const GradedHom& f, const DirectSum& ds, int row, int col) {
  const GradedSpace& vs = ds.parts.at(col);
  const GradedSpace& vt = ds.parts.at(row);
  GradedHom r{vs, vt, f.deg, {}};
  for (const auto& [k, sd] : vs.dims) {
    int td = vt.dim(k + f.deg);
    if (td == 0) continue;
    const RatMat* b = f.block(k);
    if (!b) continue;
    int co = ds.offset_in_degree(col, k);
    int ro = ds.offset_in_degree(row, k + f.deg);
    RatMat sub(td, sd);
    for (int i = 0; i < td; ++i)
      for (int j = 0; j < sd; ++j) sub(i, j) = (*b)(ro + i, co + j);
    r.set_block(k, std::move(sub));
  }
  return r;
}

GradedHom block_embed(const GradedHom& f, const DirectSum& ds, int row, int col) {
  if (!(f.src == ds.parts.at(col)) || !(f.tgt == ds.parts.at(row)))
    throw std::invalid_argument("block_embed: part mismatch");
  GradedHom r{ds.total, ds.total, f.deg, {}};
  for (const auto& [k, b] : f.blocks) {
    int co = ds.offset_in_degree(col, k);
    int ro = ds.offset_in_degree(row, k + f.deg);
    RatMat big(ds.total.dim(k + f.deg), ds.total.dim(k));
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) big(ro + i, co + j) = b(i, j);
    r.set_block(k, std::move(big));
  }
  return r;
}

Flag direct_sum_flag(const DirectSum& ds, const std::vector<int>& order,
                     const std::vector<const Flag*>& part_flags) {
  Flag f;
  f.space = ds.total;
  for (int block : order) {
    const GradedSpace& part = ds.parts.at(block);
    const Flag* pf = part_flags.at(block);
    std::vector<std::vector<int>> part_layers;
    if (pf) {
      part_layers = pf->layers;
    } else {
      // no refinement: the whole part is one layer
      part_layers.emplace_back();
      for (int g = 0; g < part.total_dim(); ++g) part_layers.back().push_back(g);
    }
    for (const auto& layer : part_layers) {
      std::vector<int> global_layer;
      for (int g : layer) {
        auto [k, i] = part.degree_position(g);
        global_layer.push_back(ds.total.global_index(k, ds.offset_in_degree(block, k) + i));
      }
      f.layers.push_back(std::move(global_layer));
    }
  }
  f.validate();
  return f;
}

}  // namespace chenholo

// Bounded complexes of finitely generated free Z-modules, bigraded by a
// homological grade h (lowered by the differential) and an internal grade q
// (preserved by it). Plus the chain-level toolkit: maps, cones, tensor
// products, homology with torsion, and deciding equality up to sign and
// homotopy.
#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kht/matrix.hpp"

namespace kht {

struct Complex {
  int h_min = 0;
  std::vector<std::vector<int>> qs;  // qs[l][k]: q of generator k at level l
  std::vector<Mat> d;                // d[l]: level l -> level l-1; d[0] maps to nothing

  int levels() const { return (int)qs.size(); }
  int h_of(int level) const { return h_min + level; }
  int level_of(int h) const { return h - h_min; }
  int dim(int level) const {
    return level >= 0 && level < levels() ? (int)qs[level].size() : 0;
  }
  int total_dim() const {
    int t = 0;
    for (int l = 0; l < levels(); ++l) t += dim(l);
    return t;
  }

  // differential block out of `level`, a matrix even at the bottom
  Mat diff(int level) const {
    if (level <= 0 || level >= levels()) return Mat(dim(level - 1), dim(level));
    return d[level];
  }

  void init_levels(int hmin, int count) {
    h_min = hmin;
    qs.assign(count, {});
    d.assign(count, Mat());
  }

  void seal() {
    // fix up dimensions of unset differentials
    for (int l = 0; l < levels(); ++l) {
      if (d[l].rows == 0 && d[l].cols == 0) d[l] = Mat(dim(l - 1), dim(l));
      assert(d[l].rows == dim(l - 1) && d[l].cols == dim(l));
    }
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    for (int l = 0; l < levels(); ++l) {
      if (d[l].rows != dim(l - 1) || d[l].cols != dim(l)) {
        errs.push_back("differential dimensions off at level " + std::to_string(l));
        return errs;
      }
      for (int i = 0; i < d[l].rows; ++i)
        for (int j = 0; j < d[l].cols; ++j)
          if (d[l].at(i, j) != 0 && qs[l - 1][i] != qs[l][j])
            errs.push_back("differential does not preserve q at level " + std::to_string(l));
      if (l + 1 < levels()) {
        if (!(d[l] * d[l + 1]).is_zero())
          errs.push_back("d*d != 0 at level " + std::to_string(l + 1));
      }
    }
    return errs;
  }

  Complex shifted(int dh, int dq) const {
    Complex c = *this;
    c.h_min += dh;
    for (auto& level : c.qs)
      for (int& q : level) q += dq;
    return c;
  }
};

// isomorphism class of a finitely generated abelian group
struct Group {
  int free_rank = 0;
  std::vector<Z> torsion;
  bool operator==(const Group& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const {
    std::string s;
    auto app = [&](const std::string& p) {
      if (!s.empty()) s += " + ";
      s += p;
    };
    if (free_rank == 1) app("Z");
    else if (free_rank > 1) app("Z^" + std::to_string(free_rank));
    for (const Z& t : torsion) app("Z/" + t.str());
    if (s.empty()) s = "0";
    return s;
  }
};

using HomologyTable = std::map<std::pair<int, int>, Group>;  // (h, q) -> group

// generators at one level sharing a q, with their positions
struct Slice {
  int level = 0, q = 0;
  std::vector<int> idx;
};

inline Slice slice_of(const Complex& c, int level, int q) {
  Slice s{level, q, {}};
  if (level < 0 || level >= c.levels()) return s;
  for (int k = 0; k < c.dim(level); ++k)
    if (c.qs[level][k] == q) s.idx.push_back(k);
  return s;
}

// the block of a level-(l+1) -> level-l differential between two q-slices
inline Mat block_of(const Mat& m, const Slice& rows, const Slice& cols) {
  Mat b((int)rows.idx.size(), (int)cols.idx.size());
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) b.at(i, j) = m.at(rows.idx[i], cols.idx[j]);
  return b;
}

struct HomologySlice {
  Slice slice;
  HomologyAt data;
};

inline HomologySlice homology_slice(const Complex& c, int h, int q) {
  int l = c.level_of(h);
  Slice here = slice_of(c, l, q);
  Slice below = slice_of(c, l - 1, q);
  Slice above = slice_of(c, l + 1, q);
  Mat d_out = block_of(c.diff(l), below, here);
  Mat d_in = block_of(c.diff(l + 1), here, above);
  return {here, homology_at(d_out, d_in)};
}

inline HomologyTable homology(const Complex& c) {
  HomologyTable t;
  for (int l = 0; l < c.levels(); ++l) {
    std::map<int, char> qs_here;
    for (int q : c.qs[l]) qs_here[q] = 1;
    for (auto& [q, _] : qs_here) {
      auto hs = homology_slice(c, c.h_of(l), q);
      Group g{hs.data.free_rank, hs.data.torsion};
      if (!g.is_zero()) t[{c.h_of(l), q}] = g;
    }
  }
  return t;
}

// chain map of homological degree zero and internal degree dq, one matrix per
// source level
struct ChainMap {
  int dq = 0;
  int src_h_min = 0, dst_h_min = 0;
  std::vector<Mat> m;  // m[l]: src level l -> dst generators at the same h

  Mat at_h(int h) const {
    int l = h - src_h_min;
    if (l < 0 || l >= (int)m.size()) return Mat(0, 0);
    return m[l];
  }
};

inline ChainMap zero_map(const Complex& a, const Complex& b, int dq) {
  ChainMap f;
  f.dq = dq;
  f.src_h_min = a.h_min;
  f.dst_h_min = b.h_min;
  f.m.resize(a.levels());
  for (int l = 0; l < a.levels(); ++l) f.m[l] = Mat(b.dim(b.level_of(a.h_of(l))), a.dim(l));
  return f;
}

inline ChainMap identity_map(const Complex& a) {
  ChainMap f = zero_map(a, a, 0);
  for (int l = 0; l < a.levels(); ++l) f.m[l] = Mat::identity(a.dim(l));
  return f;
}

inline std::vector<std::string> validate_map(const ChainMap& f, const Complex& a,
                                             const Complex& b) {
  std::vector<std::string> errs;
  for (int l = 0; l < a.levels(); ++l) {
    int h = a.h_of(l);
    int bl = b.level_of(h);
    if (f.m[l].cols != a.dim(l) || f.m[l].rows != b.dim(bl)) {
      errs.push_back("map dimensions off at h = " + std::to_string(h));
      return errs;
    }
    for (int i = 0; i < f.m[l].rows; ++i)
      for (int j = 0; j < f.m[l].cols; ++j)
        if (f.m[l].at(i, j) != 0 && b.qs[bl][i] != a.qs[l][j] + f.dq)
          errs.push_back("map has wrong q degree at h = " + std::to_string(h));
    // d_b f = f d_a on level l (going down to h-1); diff() hands back empty
    // matrices of the right shape outside the supported range
    Mat fprev = f.at_h(h - 1);
    if (fprev.rows == 0 && fprev.cols == 0) fprev = Mat(b.dim(bl - 1), a.dim(l - 1));
    Mat lhs = b.diff(bl) * f.m[l];
    Mat rhs = fprev * a.diff(l);
    if (!(lhs == rhs)) errs.push_back("not a chain map at h = " + std::to_string(h));
  }
  return errs;
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  // g after f
  ChainMap r;
  r.dq = f.dq + g.dq;
  r.src_h_min = f.src_h_min;
  r.dst_h_min = g.dst_h_min;
  r.m.resize(f.m.size());
  for (size_t l = 0; l < f.m.size(); ++l) {
    int h = f.src_h_min + (int)l;
    Mat gm = g.at_h(h);
    if (gm.rows == 0 && gm.cols != f.m[l].rows) gm = Mat(0, f.m[l].rows);
    r.m[l] = gm * f.m[l];
  }
  return r;
}

inline ChainMap add_maps(const ChainMap& f, const ChainMap& g) {
  assert(f.dq == g.dq && f.src_h_min == g.src_h_min && f.dst_h_min == g.dst_h_min);
  ChainMap r = f;
  for (size_t l = 0; l < r.m.size(); ++l) r.m[l] = r.m[l] + g.m[l];
  return r;
}

inline ChainMap scale_map(const ChainMap& f, const Z& k) {
  ChainMap r = f;
  for (auto& mm : r.m)
    for (Z& x : mm.a) x *= k;
  return r;
}

// Cone of f: A -> B (degree (0,0)): level h holds B_h + A_{h-1}, with
// d(b, a) = (d b + f a, -d a).
inline Complex cone(const ChainMap& f, const Complex& a, const Complex& b) {
  assert(f.dq == 0);
  int hmin = std::min(b.h_min, a.h_min + 1);
  int hmax = std::max(b.h_min + b.levels() - 1, a.h_min + a.levels());
  Complex c;
  c.init_levels(hmin, hmax - hmin + 1);
  for (int l = 0; l < c.levels(); ++l) {
    int h = c.h_of(l);
    int bl = b.level_of(h), al = a.level_of(h - 1);
    for (int k = 0; k < b.dim(bl); ++k) c.qs[l].push_back(b.qs[bl][k]);
    for (int k = 0; k < a.dim(al); ++k) c.qs[l].push_back(a.qs[al][k]);
  }
  for (int l = 1; l < c.levels(); ++l) {
    int h = c.h_of(l);
    int bl = b.level_of(h), al = a.level_of(h - 1);
    int brows = b.dim(bl - 1), arows = a.dim(al - 1);
    Mat m(c.dim(l - 1), c.dim(l));
    Mat db = b.diff(bl);
    for (int i = 0; i < db.rows; ++i)
      for (int j = 0; j < db.cols; ++j) m.at(i, j) = db.at(i, j);
    Mat fm = f.at_h(h - 1);
    if (fm.rows || fm.cols)
      for (int i = 0; i < fm.rows; ++i)
        for (int j = 0; j < fm.cols; ++j) m.at(i, j + b.dim(bl)) = fm.at(i, j);
    Mat da = a.diff(al);
    for (int i = 0; i < da.rows; ++i)
      for (int j = 0; j < da.cols; ++j) m.at(i + brows, j + b.dim(bl)) = -da.at(i, j);
    (void)arows;
    c.d[l] = std::move(m);
  }
  c.seal();
  return c;
}

// tensor product over Z with the usual sign: d(x@y) = dx@y + (-1)^{h(x)} x@dy
inline Complex tensor(const Complex& a, const Complex& b) {
  Complex c;
  int hmin = a.h_min + b.h_min;
  int hmax = (a.h_min + a.levels() - 1) + (b.h_min + b.levels() - 1);
  if (a.total_dim() == 0 || b.total_dim() == 0) {
    c.init_levels(0, 0);
    return c;
  }
  c.init_levels(hmin, hmax - hmin + 1);
  // generator layout at level h: blocks (la, lb) with matching total grade,
  // la ascending
  auto offsets = [&](int h) {
    std::vector<std::pair<int, int>> blocks;
    for (int la = 0; la < a.levels(); ++la) {
      int hb = h - a.h_of(la);
      int lb = b.level_of(hb);
      if (lb >= 0 && lb < b.levels() && a.dim(la) && b.dim(lb)) blocks.push_back({la, lb});
    }
    return blocks;
  };
  for (int l = 0; l < c.levels(); ++l) {
    int h = c.h_of(l);
    for (auto [la, lb] : offsets(h))
      for (int i = 0; i < a.dim(la); ++i)
        for (int j = 0; j < b.dim(lb); ++j) c.qs[l].push_back(a.qs[la][i] + b.qs[lb][j]);
  }
  for (int l = 1; l < c.levels(); ++l) {
    int h = c.h_of(l);
    auto src_blocks = offsets(h);
    auto dst_blocks = offsets(h - 1);
    auto dst_offset = [&](int la, int lb) {
      int off = 0;
      for (auto [xa, xb] : dst_blocks) {
        if (xa == la && xb == lb) return off;
        off += a.dim(xa) * b.dim(xb);
      }
      return -1;
    };
    Mat m(c.dim(l - 1), c.dim(l));
    int src_off = 0;
    for (auto [la, lb] : src_blocks) {
      Mat da = a.diff(la);
      int off1 = la >= 1 ? dst_offset(la - 1, lb) : -1;
      if (off1 >= 0)
        for (int i = 0; i < a.dim(la); ++i)
          for (int j = 0; j < b.dim(lb); ++j)
            for (int i2 = 0; i2 < a.dim(la - 1); ++i2)
              if (da.at(i2, i) != 0)
                m.at(off1 + i2 * b.dim(lb) + j, src_off + i * b.dim(lb) + j) += da.at(i2, i);
      Mat db = b.diff(lb);
      int off2 = lb >= 1 ? dst_offset(la, lb - 1) : -1;
      if (off2 >= 0) {
        bool odd = a.h_of(la) % 2 != 0;
        for (int i = 0; i < a.dim(la); ++i)
          for (int j = 0; j < b.dim(lb); ++j)
            for (int j2 = 0; j2 < b.dim(lb - 1); ++j2)
              if (db.at(j2, j) != 0) {
                Z v = db.at(j2, j);
                m.at(off2 + i * b.dim(lb - 1) + j2, src_off + i * b.dim(lb) + j) +=
                    odd ? Z(-v) : v;
              }
      }
      src_off += a.dim(la) * b.dim(lb);
    }
    c.d[l] = std::move(m);
  }
  c.seal();
  return c;
}

// Does f = sign*g + dH + Hd for some degree (+1, same dq) map H? Works one q
// at a time; within a q the levels couple into one sparse linear system.
inline bool homotopic_with_sign(const ChainMap& f, const ChainMap& g, const Complex& a,
                                const Complex& b, int sign) {
  assert(f.dq == g.dq);
  // target data per (level, q): unknown H-blocks: src slice (l, q) ->
  // dst slice (l+1, q+dq)
  std::map<int, char> all_q;
  for (int l = 0; l < a.levels(); ++l)
    for (int q : a.qs[l]) all_q[q] = 1;
  for (auto& [q, _] : all_q) {
    // variables: entries of H at each level
    struct BlockInfo {
      Slice src, dst;
      int var_base = 0;
    };
    std::vector<BlockInfo> blocks(a.levels());
    int nvars = 0;
    for (int l = 0; l < a.levels(); ++l) {
      blocks[l].src = slice_of(a, l, q);
      blocks[l].dst = slice_of(b, b.level_of(a.h_of(l) + 1), q + f.dq);
      blocks[l].var_base = nvars;
      nvars += (int)blocks[l].src.idx.size() * (int)blocks[l].dst.idx.size();
    }
    auto var_of = [&](int l, int r, int cidx) {
      return blocks[l].var_base + r * (int)blocks[l].src.idx.size() + cidx;
    };
    kht::SparseSystem sys(nvars);
    for (int l = 0; l < a.levels(); ++l) {
      int h = a.h_of(l);
      int bl = b.level_of(h);
      Slice fsrc = blocks[l].src;
      Slice fdst = slice_of(b, bl, q + f.dq);
      // equation block: f - sign g = d_b H_l + H_{l-1} d_a restricted to slices
      Mat fg = f.m[l] - scale_map(g, sign).m[l];
      Mat dba = (bl + 1 >= 0 && bl + 1 < b.levels()) ? b.d[bl + 1] : Mat();
      Mat daa = a.diff(l);
      for (int i = 0; i < (int)fdst.idx.size(); ++i)
        for (int j = 0; j < (int)fsrc.idx.size(); ++j) {
          int eq = sys.add_equation();
          sys.add_rhs(eq, fg.at(fdst.idx[i], fsrc.idx[j]));
          // d_b H_l term: sum_k d_b[dst_i, up_k] H[up_k, src_j]
          if (dba.rows) {
            for (int k = 0; k < (int)blocks[l].dst.idx.size(); ++k) {
              const Z& coef = dba.at(fdst.idx[i], blocks[l].dst.idx[k]);
              if (coef != 0) sys.add_term(eq, var_of(l, k, j), coef);
            }
          }
          // H_{l-1} d_a term: sum_k H[dst_i', k] d_a[k, src_j] where H_{l-1}
          // lands exactly on the (bl, q+dq) slice
          if (l >= 1) {
            for (int k = 0; k < (int)blocks[l - 1].src.idx.size(); ++k) {
              const Z& coef = daa.at(blocks[l - 1].src.idx[k], fsrc.idx[j]);
              if (coef != 0) sys.add_term(eq, var_of(l - 1, i, k), coef);
            }
          }
        }
    }
    if (!sys.solve_system()) return false;
  }
  return true;
}

inline std::optional<int> equal_up_to_sign_and_homotopy(const ChainMap& f, const ChainMap& g,
                                                        const Complex& a, const Complex& b) {
  for (int sign : {1, -1})
    if (homotopic_with_sign(f, g, a, b, sign)) return sign;
  return std::nullopt;
}

// Quotient of a complex by the span of given columns (which must be closed
// under the differential and q-pure). The quotient must come out free; that
// is asserted, not assumed.
struct QuotientComplex {
  Complex quo;
  std::vector<Mat> proj;     // level -> quotient coordinates
  std::vector<Mat> section;  // right inverse of proj
};

inline QuotientComplex quotient_by(const Complex& c, const std::vector<Mat>& relations) {
  QuotientComplex out;
  out.quo.init_levels(c.h_min, c.levels());
  out.proj.resize(c.levels());
  out.section.resize(c.levels());
  for (int l = 0; l < c.levels(); ++l) {
    const Mat& r = relations[l];
    assert(r.rows == c.dim(l));
    // work one q at a time so the quotient basis stays q-homogeneous
    std::map<int, std::vector<int>> rows_by_q, cols_by_q;
    for (int i = 0; i < c.dim(l); ++i) rows_by_q[c.qs[l][i]].push_back(i);
    for (int j = 0; j < r.cols; ++j) {
      int q = 0;
      bool found = false;
      for (int i = 0; i < r.rows; ++i)
        if (r.at(i, j) != 0) {
          if (!found) {
            q = c.qs[l][i];
            found = true;
          } else {
            assert(c.qs[l][i] == q && "relation columns must be q-pure");
          }
        }
      if (found) cols_by_q[q].push_back(j);
    }
    // count quotient generators first
    struct BlockOut {
      std::vector<int> rows;
      Mat u_rows, uinv_cols;  // restricted to the free part
    };
    std::vector<BlockOut> blocks;
    std::vector<int> quo_q;
    for (auto& [q, rows] : rows_by_q) {
      Slice sl{l, q, rows};
      Mat blk((int)rows.size(), (int)cols_by_q[q].size());
      for (int i = 0; i < blk.rows; ++i)
        for (int j = 0; j < blk.cols; ++j) blk.at(i, j) = r.at(rows[i], cols_by_q[q][j]);
      SmithForm s = smith(blk);
      std::vector<int> free_rows;
      for (int i = 0; i < blk.rows; ++i) {
        if (i < (int)s.diag.size() && s.diag[i] != 0) {
          assert(s.diag[i] == 1 && "quotient has torsion; relations are not a summand");
        } else {
          free_rows.push_back(i);
        }
      }
      BlockOut b;
      b.rows = rows;
      b.u_rows = rows_of(s.u, free_rows);
      b.uinv_cols = cols_of(s.uinv, free_rows);
      for (size_t k = 0; k < free_rows.size(); ++k) quo_q.push_back(q);
      blocks.push_back(std::move(b));
      (void)sl;
    }
    int nq = (int)quo_q.size();
    out.quo.qs[l] = quo_q;
    out.proj[l] = Mat(nq, c.dim(l));
    out.section[l] = Mat(c.dim(l), nq);
    int at = 0;
    for (auto& b : blocks) {
      for (int k = 0; k < b.u_rows.rows; ++k)
        for (int i = 0; i < (int)b.rows.size(); ++i) {
          out.proj[l].at(at + k, b.rows[i]) = b.u_rows.at(k, i);
          out.section[l].at(b.rows[i], at + k) = b.uinv_cols.at(i, k);
        }
      at += b.u_rows.rows;
    }
  }
  for (int l = 1; l < c.levels(); ++l)
    out.quo.d[l] = out.proj[l - 1] * c.d[l] * out.section[l];
  out.quo.seal();
#ifdef KHT_PARANOID
  {
    auto errs = out.quo.validate();
    assert(errs.empty());
    // the projection must be a chain map: proj d = d_quo proj
    for (int l = 1; l < c.levels(); ++l)
      assert(out.proj[l - 1] * c.d[l] == out.quo.d[l] * out.proj[l]);
  }
#endif
  return out;
}

}  // namespace kht

// The chain complex of modules a diskular tangle carries: one complex per
// boundary cap, tied together by the cap algebra acting on the boundary.
// Generators are labelings of the circles each capped-off resolution draws;
// the differential is circle surgery with the usual alternating signs, and
// the action of the algebra never touches the circles in the interior.
#pragma once

#include <cassert>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "kht/arc_algebra.hpp"
#include "kht/complex.hpp"
#include "kht/tangle.hpp"

namespace kht {

inline int bits(unsigned m) {
  int c = 0;
  while (m) {
    c += m & 1;
    m >>= 1;
  }
  return c;
}

struct TangleModule {
  Tangle t;
  ArcAlgebra alg;
  std::vector<Resolution> res;  // per state

  // a column fixes the state and the interior labels; the cap part varies
  struct Column {
    unsigned v = 0;
    unsigned mu = 0;
    int match = 0;  // cap index of the induced boundary matching
    int level = 0;
  };
  std::vector<Column> columns;
  std::vector<std::vector<int>> cols_at_level;
  std::vector<int> col_base;  // state -> column id of (v, mu=0)

  std::vector<Complex> comp;              // one complex per cap
  std::vector<std::vector<int>> offsets;  // [cap][column] -> offset in its level

  int n() const { return t.boundary; }
  int n_caps() const { return alg.n_caps(); }
  int h_min() const { return -t.positive; }

  int interior_circles(int col) const {
    return (int)res[columns[col].v].circle_keys.size();
  }
  int cap_circles(int col, int b) const {
    return alg.hom_circles(columns[col].match, b).count;
  }
  int gen(int b, int col, unsigned w) const { return offsets[b][col] + (int)w; }
};

namespace module_detail {

// labels of one generator keyed by class representative, ready for transport
inline CircleSurgery::Labels encode_labels(const TangleModule& M, const ClosedState& st,
                                           int col, int b, unsigned w) {
  const auto& c = M.columns[col];
  CircleSurgery::Labels lab;
  const auto& keys = M.res[c.v].circle_keys;
  for (int k = 0; k < (int)keys.size(); ++k) lab[keys[k]] = c.mu >> k & 1;
  ArcAlgebra::Overlay cc = ArcAlgebra::overlay(M.res[c.v].boundary_matching, M.alg.caps[b]);
  for (int i = 0; i < cc.count; ++i) {
    int p = 0;
    while (cc.of_point[p] != i) ++p;
    lab[st.rep[M.t.boundary_edges[p]]] = w >> i & 1;
  }
  return lab;
}

inline std::pair<unsigned, unsigned> decode_labels(const TangleModule& M,
                                                   const ClosedState& st, unsigned v2,
                                                   int b,
                                                   const CircleSurgery::Labels& lab) {
  unsigned mu2 = 0, w2 = 0;
  const auto& keys = M.res[v2].circle_keys;
  for (int k = 0; k < (int)keys.size(); ++k)
    if (lab.at(keys[k])) mu2 |= 1u << k;
  ArcAlgebra::Overlay cc = ArcAlgebra::overlay(M.res[v2].boundary_matching, M.alg.caps[b]);
  for (int i = 0; i < cc.count; ++i) {
    int p = 0;
    while (cc.of_point[p] != i) ++p;
    if (lab.at(st.rep[M.t.boundary_edges[p]])) w2 |= 1u << i;
  }
  return {mu2, w2};
}

}  // namespace module_detail

inline TangleModule build_module(const Tangle& t) {
  const int N = t.n_crossings(), P = t.positive, n = t.boundary;
  TangleModule M{t, ArcAlgebra(n)};
  M.res.resize(1u << N);
  M.col_base.assign(1u << N, -1);
  for (unsigned v = 0; v < (1u << N); ++v) M.res[v] = resolve(t, v);

  M.cols_at_level.assign(N + 1, {});
  for (int l = 0; l <= N; ++l) {
    int weight = N - l;
    for (unsigned v = 0; v < (1u << N); ++v) {
      if (bits(v) != weight) continue;
      int k = (int)M.res[v].circle_keys.size();
      int match = M.alg.cap_index(M.res[v].boundary_matching);
      assert(match >= 0);
      M.col_base[v] = (int)M.columns.size();
      for (unsigned mu = 0; mu < (1u << k); ++mu) {
        M.cols_at_level[l].push_back((int)M.columns.size());
        M.columns.push_back({v, mu, match, l});
      }
    }
  }

  M.comp.resize(M.n_caps());
  M.offsets.assign(M.n_caps(), std::vector<int>((int)M.columns.size(), 0));
  for (int b = 0; b < M.n_caps(); ++b) {
    Complex& C = M.comp[b];
    C.init_levels(-P, N + 1);
    for (int l = 0; l <= N; ++l) {
      int off = 0;
      for (int col : M.cols_at_level[l]) {
        const auto& c = M.columns[col];
        int k = M.interior_circles(col);
        int cc = M.cap_circles(col, b);
        M.offsets[b][col] = off;
        for (unsigned w = 0; w < (1u << cc); ++w) {
          int q = (2 * bits(c.mu) - k) + (2 * (int)bits(w) - cc) + n / 2 -
                  (int)bits(c.v) + 2 * N - 3 * P;
          C.qs[l].push_back(q);
        }
        off += 1 << cc;
      }
    }
    // differential: surgery along each unset crossing
    std::vector<ClosedState> st(1u << N);
    std::vector<char> have(1u << N, 0);
    auto state = [&](unsigned v) -> const ClosedState& {
      if (!have[v]) {
        st[v] = closed_state(t, v, n > 0 ? &M.alg.caps[b] : nullptr);
        have[v] = 1;
      }
      return st[v];
    };
    for (int l = 1; l <= N; ++l) {
      Mat m(C.dim(l - 1), C.dim(l));
      for (int col : M.cols_at_level[l]) {
        const auto& c = M.columns[col];
        int cc = M.cap_circles(col, b);
        for (int j = 0; j < N; ++j) {
          if (c.v >> j & 1) continue;
          unsigned v2 = c.v | (1u << j);
          int lower = 0;
          for (int j2 = 0; j2 < j; ++j2) lower += c.v >> j2 & 1;
          Z sign = (lower % 2 == 0) ? 1 : -1;
          const ClosedState& s1 = state(c.v);
          const ClosedState& s2 = state(v2);
          for (unsigned w = 0; w < (1u << cc); ++w) {
            auto lab = module_detail::encode_labels(M, s1, col, b, w);
            auto terms = CircleSurgery::transport(s1.rep, s2.rep, {{lab, Z(1)}});
            for (auto& [lab2, coef] : terms) {
              auto [mu2, w2] = module_detail::decode_labels(M, s2, v2, b, lab2);
              int col2 = M.col_base[v2] + (int)mu2;
              m.at(M.gen(b, col2, w2), M.gen(b, col, w)) += sign * coef;
            }
          }
        }
      }
      C.d[l] = std::move(m);
    }
    C.seal();
#ifdef KHT_PARANOID
    {
      auto errs = C.validate();
      assert(errs.empty() && "module complex failed validation");
    }
#endif
  }
  return M;
}

// right action of the basis element x of hom(b, c), a chain map of q-degree
// deg x; it is diagonal in the columns
inline ChainMap module_action(const TangleModule& M, int b, int c, unsigned x) {
  ChainMap f = zero_map(M.comp[b], M.comp[c], M.alg.q_of(b, c, x));
  for (int l = 0; l < (int)M.cols_at_level.size(); ++l) {
    for (int col : M.cols_at_level[l]) {
      int mi = M.columns[col].match;
      int cc = M.cap_circles(col, b);
      for (unsigned w = 0; w < (1u << cc); ++w) {
        for (auto& [w2, coef] : M.alg.multiply(mi, b, c, w, x))
          f.m[l].at(M.gen(c, col, w2), M.gen(b, col, w)) += coef;
      }
    }
  }
  return f;
}

// ---- gluing: tensor over the cap algebra ------------------------------------

namespace module_detail {

// a basis labeling of hom(b, c) seen from the flipped-over side
inline unsigned reflect_mask(const ArcAlgebra& a1, int b, int c, const ArcAlgebra& a2,
                             int rb, int rc, unsigned x) {
  int n = a1.n;
  auto o = ArcAlgebra::overlay(a1.caps[b], a1.caps[c]);
  auto o2 = ArcAlgebra::overlay(a2.caps[rb], a2.caps[rc]);
  unsigned out = 0;
  for (int p = 0; p < n; ++p)
    if (x >> o.of_point[p] & 1) out |= 1u << o2.of_point[n - 1 - p];
  return out;
}

struct DirectSum {
  Complex total;
  std::vector<std::vector<int>> base;  // [part][level] -> offset
};

inline DirectSum direct_sum(const std::vector<Complex>& parts) {
  DirectSum out;
  assert(!parts.empty());
  for (auto& p : parts) assert(p.h_min == parts[0].h_min && p.levels() == parts[0].levels());
  out.total.init_levels(parts[0].h_min, parts[0].levels());
  out.base.assign(parts.size(), std::vector<int>(parts[0].levels(), 0));
  for (int l = 0; l < out.total.levels(); ++l) {
    int off = 0;
    for (int i = 0; i < (int)parts.size(); ++i) {
      out.base[i][l] = off;
      for (int q : parts[i].qs[l]) out.total.qs[l].push_back(q);
      off += parts[i].dim(l);
    }
    if (l > 0) {
      Mat m((int)out.total.qs[l - 1].size(), (int)out.total.qs[l].size());
      for (int i = 0; i < (int)parts.size(); ++i)
        for (int r = 0; r < parts[i].dim(l - 1); ++r)
          for (int ccol = 0; ccol < parts[i].dim(l); ++ccol)
            m.at(out.base[i][l - 1] + r, out.base[i][l] + ccol) = parts[i].d[l].at(r, ccol);
      out.total.d[l] = std::move(m);
    }
  }
  out.total.seal();
  return out;
}

// generator offset of the (la, lb) block inside tensor(a, b) at its level,
// mirroring the layout tensor() uses
inline int tensor_offset(const Complex& a, const Complex& b, int la, int lb) {
  int h = a.h_of(la) + b.h_of(lb);
  int off = 0;
  for (int la2 = 0; la2 < la; ++la2) {
    int lb2 = b.level_of(h - a.h_of(la2));
    if (lb2 >= 0 && lb2 < b.levels()) off += a.dim(la2) * b.dim(lb2);
  }
  return off;
}

}  // namespace module_detail

// M(t1) tensored over the cap algebra with M(t2), presented as a quotient of
// the direct sum of the capwise tensor products. The quotient data is kept
// around so maps out of the tensor product can be built on the free
// presentation and then descended.
struct TensorPresentation {
  std::vector<int> rho;         // cap index of the reflected cap on the m2 side
  std::vector<Complex> parts;   // tensor(m1.comp[b], m2.comp[rho[b]])
  module_detail::DirectSum sum;
  QuotientComplex quotient;
  Complex result;               // quotient.quo with the gluing q shift applied
};

inline TensorPresentation tensor_presentation(const TangleModule& m1,
                                              const TangleModule& m2) {
  using namespace module_detail;
  assert(m1.n() == m2.n());
  const int n = m1.n();
  const int C = m1.n_caps();

  std::vector<int> rho(C);
  for (int b = 0; b < C; ++b) {
    rho[b] = m2.alg.cap_index(m1.alg.caps[b].reflected());
    assert(rho[b] >= 0);
  }

  std::vector<Complex> parts(C);
  for (int b = 0; b < C; ++b) parts[b] = tensor(m1.comp[b], m2.comp[rho[b]]);
  DirectSum ds = direct_sum(parts);

  // slide relations: (m x) (x) n - m (x n), one column per algebra basis
  // element and generator pair
  std::vector<std::vector<std::map<int, Z>>> rel_cols(ds.total.levels());
  for (int b = 0; b < C; ++b) {
    for (int c = 0; c < C; ++c) {
      int r = m1.alg.hom_circles(b, c).count;
      for (unsigned x = 0; x < (1u << r); ++x) {
        if (b == c && x == m1.alg.unit_mask()) continue;
        ChainMap ax1 = module_action(m1, b, c, x);
        unsigned xr = reflect_mask(m1.alg, b, c, m2.alg, rho[b], rho[c], x);
        ChainMap ax2 = module_action(m2, rho[c], rho[b], xr);
        const Complex &A1 = m1.comp[b], &B2 = m2.comp[rho[c]];
        for (int l1 = 0; l1 < A1.levels(); ++l1) {
          for (int i1 = 0; i1 < A1.dim(l1); ++i1) {
            for (int l2 = 0; l2 < B2.levels(); ++l2) {
              for (int i2 = 0; i2 < B2.dim(l2); ++i2) {
                int l = l1 + l2;
                std::map<int, Z> colv;
                // (m x) tensored with n, inside part c
                const Complex& A1c = m1.comp[c];
                int offc = tensor_offset(A1c, B2, l1, l2);
                for (int r1 = 0; r1 < A1c.dim(l1); ++r1) {
                  const Z& coef = ax1.m[l1].at(r1, i1);
                  if (coef != 0)
                    colv[ds.base[c][l] + offc + r1 * B2.dim(l2) + i2] += coef;
                }
                // m tensored with (x n), inside part b
                const Complex& B2b = m2.comp[rho[b]];
                int offb = tensor_offset(A1, B2b, l1, l2);
                for (int r2 = 0; r2 < B2b.dim(l2); ++r2) {
                  const Z& coef = ax2.m[l2].at(r2, i2);
                  if (coef != 0)
                    colv[ds.base[b][l] + offb + i1 * B2b.dim(l2) + r2] -= coef;
                }
                bool nonzero = false;
                for (auto& [_, z] : colv)
                  if (z != 0) nonzero = true;
                if (nonzero) rel_cols[l].push_back(std::move(colv));
              }
            }
          }
        }
      }
    }
  }

  std::vector<Mat> rel(ds.total.levels());
  for (int l = 0; l < ds.total.levels(); ++l) {
    rel[l] = Mat(ds.total.dim(l), (int)rel_cols[l].size());
    for (int j = 0; j < (int)rel_cols[l].size(); ++j)
      for (auto& [row, z] : rel_cols[l][j]) rel[l].at(row, j) = z;
  }
  TensorPresentation out;
  out.rho = std::move(rho);
  out.parts = std::move(parts);
  out.quotient = quotient_by(ds.total, rel);
  out.sum = std::move(ds);
  out.result = out.quotient.quo.shifted(0, -n / 2);
  return out;
}

inline Complex tensor_over_algebra(const TangleModule& m1, const TangleModule& m2) {
  return tensor_presentation(m1, m2).result;
}

// ---- module level Gaussian elimination --------------------------------------

// maps to and from the module a reduction started from, per cap
struct Reduction {
  std::vector<char> alive;                // column id -> survives
  std::vector<Complex> comp;              // per cap
  std::vector<std::vector<int>> offsets;  // [cap][column] -> offset, -1 if dead
  std::vector<ChainMap> proj, incl;
};

// cancel column pairs whose connecting block is plus or minus the identity on
// every cap at once; `allow` filters which pairs may go
inline Reduction reduce_module(const TangleModule& M,
                               const std::function<bool(int, int)>& allow) {
  const int C = M.n_caps();
  Reduction R;
  R.alive.assign(M.columns.size(), 1);
  R.comp = M.comp;
  R.offsets.assign(C, {});
  for (int b = 0; b < C; ++b) R.offsets[b] = M.offsets[b];
  R.proj.resize(C);
  R.incl.resize(C);
  for (int b = 0; b < C; ++b) {
    R.proj[b] = identity_map(M.comp[b]);
    R.incl[b] = identity_map(M.comp[b]);
  }

  auto block_is_eps_identity = [&](int b, int colA, int colB, Z& eps) {
    int ccA = M.cap_circles(colA, b), ccB = M.cap_circles(colB, b);
    if (ccA != ccB) return false;
    int l = M.columns[colA].level;
    const Mat& d = R.comp[b].d[l];
    int ra = R.offsets[b][colA], rb = R.offsets[b][colB];
    Z e = d.at(rb, ra);
    if (eps == 0) eps = e;
    if (!(e == 1 || e == -1) || e != eps) return false;
    for (int i = 0; i < (1 << ccA); ++i)
      for (int j = 0; j < (1 << ccA); ++j)
        if (d.at(rb + i, ra + j) != (i == j ? e : Z(0))) return false;
    return true;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (int colA = 0; colA < (int)M.columns.size() && !progress; ++colA) {
      if (!R.alive[colA]) continue;
      int l = M.columns[colA].level;
      if (l == 0) continue;
      for (int colB : M.cols_at_level[l - 1]) {
        if (!R.alive[colB]) continue;
        if (M.columns[colA].match != M.columns[colB].match) continue;
        if (allow && !allow(colA, colB)) continue;
        Z eps = 0;
        bool ok = true;
        for (int b = 0; b < C && ok; ++b) ok = block_is_eps_identity(b, colA, colB, eps);
        if (!ok) continue;

        // eliminate the pair on every cap
        for (int b = 0; b < C; ++b) {
          Complex& K = R.comp[b];
          int sz = 1 << M.cap_circles(colA, b);
          int ra = R.offsets[b][colA], rb = R.offsets[b][colB];
          std::vector<int> keepA, keepB;  // surviving generator indices
          for (int i = 0; i < K.dim(l); ++i)
            if (i < ra || i >= ra + sz) keepA.push_back(i);
          for (int i = 0; i < K.dim(l - 1); ++i)
            if (i < rb || i >= rb + sz) keepB.push_back(i);

          Mat dl = K.d[l];
          // correction: new d = d_YX - d_YA eps d_BX
          Mat corrected((int)keepB.size(), (int)keepA.size());
          for (int yi = 0; yi < (int)keepB.size(); ++yi)
            for (int xi = 0; xi < (int)keepA.size(); ++xi) {
              Z v = dl.at(keepB[yi], keepA[xi]);
              for (int k = 0; k < sz; ++k)
                v -= dl.at(keepB[yi], ra + k) * eps * dl.at(rb + k, keepA[xi]);
              corrected.at(yi, xi) = v;
            }

          // projection current -> new: drop A, fold B through the zig-zag
          Mat PA((int)keepA.size(), K.dim(l));
          for (int i = 0; i < (int)keepA.size(); ++i) PA.at(i, keepA[i]) = 1;
          Mat PB((int)keepB.size(), K.dim(l - 1));
          for (int i = 0; i < (int)keepB.size(); ++i) PB.at(i, keepB[i]) = 1;
          for (int yi = 0; yi < (int)keepB.size(); ++yi)
            for (int k = 0; k < sz; ++k) PB.at(yi, rb + k) = -dl.at(keepB[yi], ra + k) * eps;

          // inclusion new -> current
          Mat IA(K.dim(l), (int)keepA.size());
          for (int i = 0; i < (int)keepA.size(); ++i) IA.at(keepA[i], i) = 1;
          for (int k = 0; k < sz; ++k)
            for (int xi = 0; xi < (int)keepA.size(); ++xi)
              IA.at(ra + k, xi) = -eps * dl.at(rb + k, keepA[xi]);
          Mat IB(K.dim(l - 1), (int)keepB.size());
          for (int i = 0; i < (int)keepB.size(); ++i) IB.at(keepB[i], i) = 1;

          // rebuild the complex around the two levels
          Complex K2;
          K2.init_levels(K.h_min, K.levels());
          for (int ll = 0; ll < K.levels(); ++ll) {
            if (ll == l) {
              for (int i : keepA) K2.qs[ll].push_back(K.qs[ll][i]);
            } else if (ll == l - 1) {
              for (int i : keepB) K2.qs[ll].push_back(K.qs[ll][i]);
            } else {
              K2.qs[ll] = K.qs[ll];
            }
          }
          for (int ll = 1; ll < K.levels(); ++ll) {
            if (ll == l) {
              K2.d[ll] = corrected;
            } else if (ll == l - 1) {
              // restriction to the surviving columns
              K2.d[ll] = Mat(K.dim(ll - 1), (int)keepB.size());
              for (int i = 0; i < K.dim(ll - 1); ++i)
                for (int j = 0; j < (int)keepB.size(); ++j)
                  K2.d[ll].at(i, j) = K.d[ll].at(i, keepB[j]);
            } else if (ll == l + 1) {
              K2.d[ll] = Mat((int)keepA.size(), K.dim(ll));
              for (int i = 0; i < (int)keepA.size(); ++i)
                for (int j = 0; j < K.dim(ll); ++j) K2.d[ll].at(i, j) = K.d[ll].at(keepA[i], j);
            } else {
              K2.d[ll] = K.d[ll];
            }
          }
          K2.seal();

          // fold the step into the accumulated maps; the step is the
          // identity away from the two touched levels
          R.proj[b].m[l] = PA * R.proj[b].m[l];
          R.proj[b].m[l - 1] = PB * R.proj[b].m[l - 1];
          R.incl[b].m[l] = R.incl[b].m[l] * IA;
          R.incl[b].m[l - 1] = R.incl[b].m[l - 1] * IB;
          R.comp[b] = std::move(K2);

          // shift offsets past the removed blocks
          for (int col : M.cols_at_level[l])
            if (R.alive[col] && col != colA && R.offsets[b][col] > ra)
              R.offsets[b][col] -= sz;
          for (int col : M.cols_at_level[l - 1])
            if (R.alive[col] && col != colB && R.offsets[b][col] > rb)
              R.offsets[b][col] -= sz;
          R.offsets[b][colA] = R.offsets[b][colB] = -1;
        }
        R.alive[colA] = R.alive[colB] = 0;
        progress = true;
        break;
      }
    }
  }
#ifdef KHT_PARANOID
  for (int b = 0; b < C; ++b) {
    assert(R.comp[b].validate().empty());
    assert(validate_map(R.proj[b], M.comp[b], R.comp[b]).empty());
    assert(validate_map(R.incl[b], R.comp[b], M.comp[b]).empty());
    ChainMap pi = compose(R.proj[b], R.incl[b]);
    for (size_t ll = 0; ll < pi.m.size(); ++ll)
      assert(pi.m[ll] == Mat::identity(pi.m[ll].rows));
  }
#endif
  return R;
}

}  // namespace kht

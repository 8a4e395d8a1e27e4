// Maps between two multi-modules form a complex of their own: a chain in
// degree (dh, dq) is a family of matrices, one per cap, shifting gradings by
// that amount and commuting strictly with every boundary action, and the
// differential is the graded commutator with the internal differentials.
// Pairing a tangle's module against the representable module of each cap and
// taking homology measures the derived maps into the algebra; the resulting
// table matches the module of the mirror diagram cap for cap, which is the
// duality this header mechanizes.
#pragma once

#include <cassert>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kht/cobordism.hpp"
#include "kht/multimodule.hpp"

namespace kht {

struct ModuleHomComplex {
  // one unknown per matrix entry of a block family f_b : M(b)_l -> R(b)
  struct Entry {
    int b = 0, l = 0, row = 0, col = 0;
    int dq = 0;
  };

  struct Level {
    std::vector<Entry> entries;
    std::vector<int> dqs;               // ascending, one per homogeneous block
    std::vector<int> base_of_dq;        // first basis column of each block
    std::vector<std::vector<int>> idx;  // per block: positions into entries
    std::vector<Mat> kernel;            // per block: restricted entries x basis
  };

  int dh_min = 0;
  Complex cx;
  std::vector<Level> lv;

  int level_of_dh(int dh) const { return dh - dh_min; }
};

namespace hom_detail {

// flatten the blocks of a shifted map family into one coordinate space
struct EntrySpace {
  std::vector<ModuleHomComplex::Entry> entries;
  std::vector<std::vector<int>> base;  // [b][l] -> first entry index, -1 absent
};

inline EntrySpace entry_space(const TangleModule& M, const TangleModule& R, int dh) {
  EntrySpace es;
  const int C = M.n_caps();
  es.base.assign(C, {});
  for (int b = 0; b < C; ++b) {
    es.base[b].assign(M.comp[b].levels(), -1);
    for (int l = 0; l < M.comp[b].levels(); ++l) {
      int lt = R.comp[b].level_of(M.comp[b].h_of(l) + dh);
      if (lt < 0 || lt >= R.comp[b].levels()) continue;
      if (R.comp[b].dim(lt) == 0 || M.comp[b].dim(l) == 0) continue;
      es.base[b][l] = (int)es.entries.size();
      for (int r = 0; r < R.comp[b].dim(lt); ++r)
        for (int c = 0; c < M.comp[b].dim(l); ++c)
          es.entries.push_back({b, l, r, c, R.comp[b].qs[lt][r] - M.comp[b].qs[l][c]});
    }
  }
  return es;
}

inline int entry_index(const EntrySpace& es, const TangleModule& M, int b, int l,
                       int row, int col) {
  if (l < 0 || l >= (int)es.base[b].size() || es.base[b][l] < 0) return -1;
  return es.base[b][l] + row * M.comp[b].dim(l) + col;
}

}  // namespace hom_detail

// The full complex of module maps M -> R. Levels run over the homological
// shift dh, each level split into q-homogeneous blocks whose basis spans the
// kernel of the strict action-commutation constraints.
inline ModuleHomComplex module_hom_complex(const TangleModule& M, const TangleModule& R) {
  using hom_detail::EntrySpace;
  assert(M.n() == R.n());
  const int C = M.n_caps();

  const int mh_min = M.comp[0].h_min, mh_max = mh_min + M.comp[0].levels() - 1;
  const int rh_min = R.comp[0].h_min, rh_max = rh_min + R.comp[0].levels() - 1;

  ModuleHomComplex H;
  H.dh_min = rh_min - mh_max;
  const int nlev = (rh_max - mh_min) - H.dh_min + 1;
  H.cx.init_levels(H.dh_min, nlev);
  H.lv.resize(nlev);

  std::vector<std::vector<std::vector<std::pair<ChainMap, ChainMap>>>> act(C);
  for (int b = 0; b < C; ++b) {
    act[b].resize(C);
    for (int c = 0; c < C; ++c) {
      int r = M.alg.hom_circles(b, c).count;
      for (unsigned x = 0; x < (1u << r); ++x) {
        if (b == c && x == M.alg.unit_mask()) continue;
        act[b][c].push_back({module_action(M, b, c, x), module_action(R, b, c, x)});
      }
    }
  }

  std::vector<EntrySpace> spaces(nlev);
  for (int lvh = 0; lvh < nlev; ++lvh) {
    const int dh = H.dh_min + lvh;
    EntrySpace es = hom_detail::entry_space(M, R, dh);

    // commutation constraints as sparse rows over the entry space
    std::vector<std::map<int, Z>> eqs;
    for (int b = 0; b < C; ++b) {
      for (int c = 0; c < C; ++c) {
        for (auto& [am, ar] : act[b][c]) {
          for (int l = 0; l < M.comp[b].levels(); ++l) {
            int h = M.comp[b].h_of(l);
            int ltb = R.comp[b].level_of(h + dh);
            int ltc = R.comp[c].level_of(h + dh);
            int lc = M.comp[c].level_of(h);
            int rows = (ltc < 0 || ltc >= R.comp[c].levels()) ? 0 : R.comp[c].dim(ltc);
            if (rows == 0) continue;
            const bool have_b = ltb >= 0 && ltb < R.comp[b].levels();
            const Mat empty;
            const Mat& armat = have_b ? ar.m[ltb] : empty;
            const Mat& ammat = am.m[l];
            const bool have_c = lc >= 0 && lc < M.comp[c].levels();
            for (int i = 0; i < rows; ++i) {
              for (int j = 0; j < M.comp[b].dim(l); ++j) {
                std::map<int, Z> eq;
                for (int k = 0; k < armat.cols; ++k) {
                  const Z& z = armat.at(i, k);
                  if (z == 0) continue;
                  int e = hom_detail::entry_index(es, M, b, l, k, j);
                  if (e >= 0) eq[e] += z;
                }
                if (have_c) {
                  for (int s = 0; s < ammat.rows; ++s) {
                    const Z& z = ammat.at(s, j);
                    if (z == 0) continue;
                    int e = hom_detail::entry_index(es, M, c, lc, i, s);
                    if (e >= 0) eq[e] -= z;
                  }
                }
                bool nz = false;
                for (auto& [_, z] : eq)
                  if (z != 0) nz = true;
                if (nz) eqs.push_back(std::move(eq));
              }
            }
          }
        }
      }
    }

    // actions are degree zero, so every equation is q-homogeneous; solve one
    // kernel per internal degree
    std::map<int, std::vector<int>> by_dq;
    for (int e = 0; e < (int)es.entries.size(); ++e)
      by_dq[es.entries[e].dq].push_back(e);
    std::map<int, std::vector<int>> eqs_of;
    for (int r = 0; r < (int)eqs.size(); ++r) {
      int dq = es.entries[eqs[r].begin()->first].dq;
      for (auto& [e, z] : eqs[r]) {
        (void)z;
        assert(es.entries[e].dq == dq);
      }
      eqs_of[dq].push_back(r);
    }

    ModuleHomComplex::Level& L = H.lv[lvh];
    L.entries = es.entries;
    for (auto& [dq, idx] : by_dq) {
      std::vector<int> pos(es.entries.size(), -1);
      for (int k = 0; k < (int)idx.size(); ++k) pos[idx[k]] = k;
      const auto it = eqs_of.find(dq);
      const int nr = it == eqs_of.end() ? 0 : (int)it->second.size();
      Mat con(nr, (int)idx.size());
      for (int r = 0; r < nr; ++r)
        for (auto& [e, z] : eqs[it->second[r]]) con.at(r, pos[e]) = z;
      Mat K = kernel_basis(con);
      if (K.cols == 0) continue;
      L.dqs.push_back(dq);
      L.base_of_dq.push_back((int)H.cx.qs[lvh].size());
      L.idx.push_back(idx);
      for (int k = 0; k < K.cols; ++k) H.cx.qs[lvh].push_back(dq);
      L.kernel.push_back(std::move(K));
    }
    spaces[lvh] = std::move(es);
  }

  // differential: D f = d_R f - (-1)^dh f d_M, expressed in kernel coordinates
  for (int lvh = 1; lvh < nlev; ++lvh) {
    const int dh = H.dh_min + lvh;
    const Z sgn = (dh & 1) ? Z(-1) : Z(1);
    const ModuleHomComplex::Level& S = H.lv[lvh];
    const ModuleHomComplex::Level& D = H.lv[lvh - 1];
    const EntrySpace& esd = spaces[lvh - 1];
    Mat d((int)H.cx.qs[lvh - 1].size(), (int)H.cx.qs[lvh].size());
    int colat = 0;
    for (int blk = 0; blk < (int)S.dqs.size(); ++blk) {
      const Mat& K = S.kernel[blk];
      for (int k = 0; k < K.cols; ++k, ++colat) {
        std::vector<Z> de(esd.entries.size(), Z(0));
        for (int t = 0; t < K.rows; ++t) {
          const Z& z = K.at(t, k);
          if (z == 0) continue;
          const auto& en = S.entries[S.idx[blk][t]];
          const int b = en.b, l = en.l;
          const int h = M.comp[b].h_of(l);
          const int ltb = R.comp[b].level_of(h + dh);
          // d_R f hits the same source level, one target level down
          if (ltb >= 0 && ltb < R.comp[b].levels()) {
            const Mat& dr = R.comp[b].diff(ltb);
            for (int i = 0; i < dr.rows; ++i) {
              const Z& w = dr.at(i, en.row);
              if (w == 0) continue;
              int e = hom_detail::entry_index(esd, M, b, l, i, en.col);
              if (e >= 0)
                de[e] += z * w;
              else
                assert(false && "differential escaped the entry space");
            }
          }
          // f d_M feeds sources one level up through this entry
          if (l + 1 < M.comp[b].levels()) {
            const Mat& dm = M.comp[b].diff(l + 1);
            for (int j = 0; j < dm.cols; ++j) {
              const Z& w = dm.at(en.col, j);
              if (w == 0) continue;
              int e = hom_detail::entry_index(esd, M, b, l + 1, en.row, j);
              if (e >= 0)
                de[e] -= sgn * z * w;
              else
                assert(false && "differential escaped the entry space");
            }
          }
        }
        // D preserves dq: only the matching destination block can be hit
        int dblk = -1;
        for (int m = 0; m < (int)D.dqs.size(); ++m)
          if (D.dqs[m] == S.dqs[blk]) dblk = m;
        if (dblk < 0) {
          for (const Z& z : de) assert(z == 0);
          continue;
        }
        Mat vec((int)D.idx[dblk].size(), 1);
        std::vector<char> seen(de.size(), 0);
        for (int r = 0; r < vec.rows; ++r) {
          vec.at(r, 0) = de[D.idx[dblk][r]];
          seen[D.idx[dblk][r]] = 1;
        }
        for (int e = 0; e < (int)de.size(); ++e) assert(seen[e] || de[e] == 0);
        auto coords = solve(D.kernel[dblk], vec);
        assert(coords && "commutator must stay action commuting");
        for (int r = 0; r < coords->rows; ++r)
          d.at(D.base_of_dq[dblk] + r, colat) = coords->at(r, 0);
      }
    }
    H.cx.d[lvh] = std::move(d);
  }

  H.cx.seal();
#ifdef KHT_PARANOID
  for (const auto& defect : H.cx.validate()) {
    (void)defect;
    assert(false && "hom complex failed validation");
  }
#endif
  return H;
}

// ---- classes of strict module maps -------------------------------------------

struct MapClass {
  Group group;
  HomologyAt::ClassCoords coords;
};

// where a strict module map of internal degree dq lands in the homology of
// the hom complex, at homological shift zero
inline MapClass module_map_class(const ModuleHomComplex& H, const TangleModule& M,
                                 const TangleModule& R, const ModuleMap& f) {
  const int lvh = H.level_of_dh(0);
  assert(lvh >= 0 && lvh < (int)H.lv.size());
  const ModuleHomComplex::Level& L = H.lv[lvh];

  int blk = -1;
  for (int m = 0; m < (int)L.dqs.size(); ++m)
    if (L.dqs[m] == f.dq) blk = m;

  HomologySlice hs = homology_slice(H.cx, 0, f.dq);
  MapClass out;
  out.group = Group{hs.data.free_rank, hs.data.torsion};
  if (blk < 0) {
    assert(out.group.is_zero());
    return out;
  }

  Mat vec((int)L.idx[blk].size(), 1);
  for (int r = 0; r < vec.rows; ++r) {
    const auto& en = L.entries[L.idx[blk][r]];
    vec.at(r, 0) = f.per_cap[en.b].m[en.l].at(en.row, en.col);
  }
  auto coords = solve(L.kernel[blk], vec);
  assert(coords && "map must commute with the boundary actions");

  // basis columns of this block sit contiguously inside the level, and the
  // q = dq slice of the level is exactly this block
  Mat cycle((int)hs.slice.idx.size(), 1);
  assert(cycle.rows == coords->rows);
  for (int r = 0; r < cycle.rows; ++r) {
    assert(hs.slice.idx[r] == L.base_of_dq[blk] + r);
    cycle.at(r, 0) = coords->at(r, 0);
  }
  out.coords = hs.data.class_of(cycle);
  return out;
}

// ---- duality against the mirror diagram --------------------------------------

// maps into the representable module of each cap, compared with the mirror
// diagram's module at that cap
inline bool duality_match(const Tangle& t, std::vector<std::string>* why = nullptr) {
  TangleModule M = build_module(t);
  TangleModule Mbar = build_module(t.mirrored());
  bool ok = true;
  for (int a = 0; a < M.n_caps(); ++a) {
    TangleModule Ra = build_module(cap_tangle(M.alg.caps[a]));
    ModuleHomComplex H = module_hom_complex(M, Ra);
    HomologyTable lhs = homology(H.cx);
    HomologyTable rhs = homology(Mbar.comp[a]);
    if (lhs != rhs) {
      ok = false;
      if (why) {
        std::string s = "cap " + std::to_string(a) + ": hom side";
        for (auto& [hq, g] : lhs)
          s += " (" + std::to_string(hq.first) + "," + std::to_string(hq.second) +
               ")=" + g.str();
        s += " vs mirror side";
        for (auto& [hq, g] : rhs)
          s += " (" + std::to_string(hq.first) + "," + std::to_string(hq.second) +
               ")=" + g.str();
        why->push_back(std::move(s));
      }
    }
  }
  return ok;
}

}  // namespace kht

// Movies of elementary cobordisms between tangle diagrams, and the maps of
// multi-modules they induce. Births, deaths, dots and saddles act through the
// Frobenius structure on circle labels. Reidemeister frames cancel the moved
// crossings on both sides and match the columns that survive, spreading signs
// along a spanning forest; anything that fails to match is reported loudly
// rather than patched over.
#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kht/multimodule.hpp"

namespace kht {

// one chain map per cap, all of the same q degree
struct ModuleMap {
  int dq = 0;
  std::vector<ChainMap> per_cap;
};

inline ModuleMap identity_module_map(const TangleModule& M) {
  ModuleMap f;
  for (int b = 0; b < M.n_caps(); ++b) f.per_cap.push_back(identity_map(M.comp[b]));
  return f;
}

inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  assert(f.per_cap.size() == g.per_cap.size());
  ModuleMap r;
  r.dq = f.dq + g.dq;
  for (size_t b = 0; b < f.per_cap.size(); ++b)
    r.per_cap.push_back(compose(g.per_cap[b], f.per_cap[b]));
  return r;
}

inline ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g) {
  assert(f.dq == g.dq && f.per_cap.size() == g.per_cap.size());
  ModuleMap r = f;
  for (size_t b = 0; b < r.per_cap.size(); ++b) r.per_cap[b] = add_maps(r.per_cap[b], g.per_cap[b]);
  return r;
}

inline ModuleMap scale_map(const ModuleMap& f, const Z& k) {
  ModuleMap r = f;
  for (auto& c : r.per_cap) c = scale_map(c, k);
  return r;
}

// chain map checks on every cap, optionally also strict compatibility with
// the whole algebra action
inline std::vector<std::string> module_map_defects(const ModuleMap& f, const TangleModule& A,
                                                   const TangleModule& B, bool check_actions) {
  std::vector<std::string> errs;
  if ((int)f.per_cap.size() != A.n_caps() || A.n_caps() != B.n_caps()) {
    errs.push_back("cap count mismatch");
    return errs;
  }
  for (int b = 0; b < A.n_caps(); ++b) {
    for (auto& e : validate_map(f.per_cap[b], A.comp[b], B.comp[b]))
      errs.push_back("cap " + std::to_string(b) + ": " + e);
    if (f.per_cap[b].dq != f.dq) errs.push_back("cap " + std::to_string(b) + ": stray q degree");
  }
  if (!errs.empty() || !check_actions) return errs;
  for (int b = 0; b < A.n_caps(); ++b)
    for (int c = 0; c < A.n_caps(); ++c) {
      int r = A.alg.hom_circles(b, c).count;
      for (unsigned x = 0; x < (1u << r); ++x) {
        ChainMap lhs = compose(f.per_cap[c], module_action(A, b, c, x));
        ChainMap rhs = compose(module_action(B, b, c, x), f.per_cap[b]);
        for (size_t l = 0; l < lhs.m.size(); ++l)
          if (!(lhs.m[l] == rhs.m[l])) {
            errs.push_back("does not commute with the action of hom(" + std::to_string(b) +
                           ", " + std::to_string(c) + ") element " + std::to_string(x));
            l = lhs.m.size();
          }
      }
    }
  return errs;
}

// homotopy class comparison with one global sign shared by every cap
inline std::optional<int> module_maps_equal_up_to_sign(const ModuleMap& f, const ModuleMap& g,
                                                       const TangleModule& A,
                                                       const TangleModule& B) {
  if (f.dq != g.dq || f.per_cap.size() != g.per_cap.size()) return std::nullopt;
  for (int sign : {1, -1}) {
    bool all = true;
    for (int b = 0; b < A.n_caps() && all; ++b)
      all = homotopic_with_sign(f.per_cap[b], g.per_cap[b], A.comp[b], B.comp[b], sign);
    if (all) return sign;
  }
  return std::nullopt;
}

// ---- elementary frames -------------------------------------------------------

namespace movie_detail {

inline void movie_check(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("movie: " + what);
}

struct EdgeSlot {
  int cr = -1, k = -1, bp = -1;  // crossing slot or boundary position
};

inline std::vector<EdgeSlot> edge_slots(const Tangle& t, int e) {
  std::vector<EdgeSlot> out;
  for (int j = 0; j < t.n_crossings(); ++j)
    for (int k = 0; k < 4; ++k)
      if (t.crossings[j][k] == e) out.push_back({j, k, -1});
  for (int p = 0; p < t.boundary; ++p)
    if (t.boundary_edges[p] == e) out.push_back({-1, -1, p});
  return out;
}

inline void write_slot(Tangle& t, const EdgeSlot& s, int e) {
  if (s.bp >= 0)
    t.boundary_edges[s.bp] = e;
  else
    t.crossings[s.cr][s.k] = e;
}

}  // namespace movie_detail

inline Tangle with_birth(const Tangle& t) {
  Tangle out = t;
  out.free_loops += 1;
  return out;
}

inline Tangle drop_loop(const Tangle& t, int i) {
  assert(i >= 0 && i < t.free_loops);
  Tangle out = t;
  out.free_loops -= 1;
  return out;
}

// reconnect two strands along a band; refs are edge ids, or n_edges() + i for
// free loop i; a repeated ref pinches that strand
inline Tangle saddle_result(const Tangle& t, int r1, int r2, bool swap = false) {
  using namespace movie_detail;
  const int E = t.n_edges();
  if (r1 > r2) std::swap(r1, r2);
  Tangle out = t;
  if (r2 < E && r1 == r2) {  // pinch a little circle off one edge
    out.free_loops += 1;
    return out;
  }
  if (r2 < E) {  // two distinct edges
    auto sa = edge_slots(t, r1), sb = edge_slots(t, r2);
    movie_check(sa.size() == 2 && sb.size() == 2, "saddle refs must be edges or loops");
    write_slot(out, swap ? sb[1] : sb[0], r1);
    write_slot(out, sa[1], r2);
    return out;
  }
  if (r1 >= E) {  // loops only
    out.free_loops += (r1 == r2) ? 1 : -1;
    return out;
  }
  movie_check(r2 - E < t.free_loops, "saddle loop ref out of range");
  out.free_loops -= 1;  // a loop melts into an edge
  return out;
}

// the two channels of one surgery written over a shared index space: entries
// are circle names of the before and after closed states
namespace movie_detail {

struct SurgeryChannels {
  std::vector<int> before, after;
};

// before nodes: E edges, L1 loops, A arcs; the after diagram differs by one
// loop at most, and `extra_host` names the before node whose circle hosts a
// freshly pinched loop
inline SurgeryChannels saddle_channels(const ClosedState& s1, const ClosedState& s2, int E,
                                       int L1, int A, int r1, int r2) {
  SurgeryChannels ch;
  const int n1 = E + L1 + A;
  if (r1 > r2) std::swap(r1, r2);
  if (r2 < E && r1 != r2) {  // same node universe on both sides
    ch.before = s1.rep;
    ch.after = s2.rep;
    return ch;
  }
  if (r1 == r2) {  // pinch: one more loop after, appended behind the old ones
    ch.before = s1.rep;
    ch.before.push_back(s1.rep[r1]);
    ch.after.resize(n1 + 1);
    for (int i = 0; i < E + L1; ++i) ch.after[i] = s2.rep[i];
    for (int a = 0; a < A; ++a) ch.after[E + L1 + a] = s2.rep[E + L1 + 1 + a];
    ch.after[n1] = s2.rep[E + L1];
    return ch;
  }
  // a loop dies, absorbed into the circle of the other ref
  int li = r2 - E;
  int other = r1;  // edge id or the surviving loop's node
  ch.before = s1.rep;
  ch.after.resize(n1);
  for (int i = 0; i < E; ++i) ch.after[i] = s2.rep[i];
  for (int j = 0; j < L1; ++j) {
    if (j < li)
      ch.after[E + j] = s2.rep[E + j];
    else if (j == li)
      ch.after[E + j] = s2.rep[other];
    else
      ch.after[E + j] = s2.rep[E + j - 1];
  }
  for (int a = 0; a < A; ++a) ch.after[E + L1 + a] = s2.rep[E + L1 - 1 + a];
  return ch;
}

}  // namespace movie_detail

// a circle is born, labeled by the unit; its node lands behind the old loops
inline ModuleMap birth_map(const TangleModule& M1, const TangleModule& M2) {
  assert(M2.t.free_loops == M1.t.free_loops + 1);
  ModuleMap f;
  f.dq = -1;
  for (int b = 0; b < M1.n_caps(); ++b) {
    ChainMap g = zero_map(M1.comp[b], M2.comp[b], -1);
    for (size_t col = 0; col < M1.columns.size(); ++col) {
      const auto& c = M1.columns[col];
      // the newcomer is the largest node, hence the last circle key
      int col2 = M2.col_base[c.v] + (int)c.mu;
      int cc = M1.cap_circles((int)col, b);
      for (unsigned w = 0; w < (1u << cc); ++w)
        g.m[c.level].at(M2.gen(b, col2, w), M1.gen(b, (int)col, w)) = 1;
    }
    f.per_cap.push_back(std::move(g));
  }
  return f;
}

// free loop i is capped off; only its dotted labelings survive
inline ModuleMap death_map(const TangleModule& M1, const TangleModule& M2, int i) {
  assert(M2.t.free_loops == M1.t.free_loops - 1);
  const int E = M1.t.n_edges();
  ModuleMap f;
  f.dq = -1;
  for (int b = 0; b < M1.n_caps(); ++b) {
    ChainMap g = zero_map(M1.comp[b], M2.comp[b], -1);
    for (size_t col = 0; col < M1.columns.size(); ++col) {
      const auto& c = M1.columns[col];
      const auto& keys = M1.res[c.v].circle_keys;
      int k = (int)(std::lower_bound(keys.begin(), keys.end(), E + i) - keys.begin());
      assert(k < (int)keys.size() && keys[k] == E + i);
      if (!(c.mu >> k & 1)) continue;
      unsigned mu2 = (c.mu & ((1u << k) - 1)) | ((c.mu >> (k + 1)) << k);
      int col2 = M2.col_base[c.v] + (int)mu2;
      int cc = M1.cap_circles((int)col, b);
      for (unsigned w = 0; w < (1u << cc); ++w)
        g.m[c.level].at(M2.gen(b, col2, w), M1.gen(b, (int)col, w)) = 1;
    }
    f.per_cap.push_back(std::move(g));
  }
  return f;
}

// multiply the circle through `ref` by the dotted generator
inline ModuleMap dot_map(const TangleModule& M, int ref) {
  ModuleMap f;
  f.dq = 2;
  for (int b = 0; b < M.n_caps(); ++b) {
    ChainMap g = zero_map(M.comp[b], M.comp[b], 2);
    std::vector<ClosedState> st(M.res.size());
    std::vector<char> have(M.res.size(), 0);
    for (size_t col = 0; col < M.columns.size(); ++col) {
      const auto& c = M.columns[col];
      if (!have[c.v]) {
        st[c.v] = closed_state(M.t, c.v, M.n() > 0 ? &M.alg.caps[b] : nullptr);
        have[c.v] = 1;
      }
      int name = st[c.v].rep[ref];
      const auto& keys = M.res[c.v].circle_keys;
      auto it = std::lower_bound(keys.begin(), keys.end(), name);
      int cc = M.cap_circles((int)col, b);
      if (it != keys.end() && *it == name) {  // interior circle
        int k = (int)(it - keys.begin());
        if (c.mu >> k & 1) continue;
        int col2 = M.col_base[c.v] + (int)(c.mu | (1u << k));
        for (unsigned w = 0; w < (1u << cc); ++w)
          g.m[c.level].at(M.gen(b, col2, w), M.gen(b, (int)col, w)) = 1;
      } else {  // cap circle, per-cap position
        ArcAlgebra::Overlay ov = M.alg.hom_circles(c.match, b);
        int pos = -1;
        for (int ci = 0; ci < ov.count && pos < 0; ++ci) {
          int p = 0;
          while (ov.of_point[p] != ci) ++p;
          if (st[c.v].rep[M.t.boundary_edges[p]] == name) pos = ci;
        }
        assert(pos >= 0);
        for (unsigned w = 0; w < (1u << cc); ++w) {
          if (w >> pos & 1) continue;
          g.m[c.level].at(M.gen(b, (int)col, w | (1u << pos)), M.gen(b, (int)col, w)) = 1;
        }
      }
    }
    f.per_cap.push_back(std::move(g));
  }
  return f;
}

inline ModuleMap saddle_map(const TangleModule& M1, const TangleModule& M2, int r1, int r2) {
  using namespace movie_detail;
  const int E = M1.t.n_edges(), L1 = M1.t.free_loops, A = M1.t.boundary / 2;
  ModuleMap f;
  f.dq = 1;
  for (int b = 0; b < M1.n_caps(); ++b) {
    ChainMap g = zero_map(M1.comp[b], M2.comp[b], 1);
    std::vector<char> have(M1.res.size(), 0);
    std::vector<SurgeryChannels> ch(M1.res.size());
    std::vector<ClosedState> st1(M1.res.size()), st2(M1.res.size());
    for (size_t col = 0; col < M1.columns.size(); ++col) {
      const auto& c = M1.columns[col];
      if (!have[c.v]) {
        const Matching* cap = M1.n() > 0 ? &M1.alg.caps[b] : nullptr;
        st1[c.v] = closed_state(M1.t, c.v, cap);
        st2[c.v] = closed_state(M2.t, c.v, cap);
        ch[c.v] = saddle_channels(st1[c.v], st2[c.v], E, L1, A, r1, r2);
        have[c.v] = 1;
      }
      int cc = M1.cap_circles((int)col, b);
      for (unsigned w = 0; w < (1u << cc); ++w) {
        auto lab = module_detail::encode_labels(M1, st1[c.v], (int)col, b, w);
        auto terms = CircleSurgery::transport(ch[c.v].before, ch[c.v].after, {{lab, Z(1)}});
        for (auto& [lab2, coef] : terms) {
          auto [mu2, w2] = module_detail::decode_labels(M2, st2[c.v], c.v, b, lab2);
          int col2 = M2.col_base[c.v] + (int)mu2;
          g.m[c.level].at(M2.gen(b, col2, w2), M1.gen(b, (int)col, w)) += coef;
        }
      }
    }
    f.per_cap.push_back(std::move(g));
  }
  return f;
}

// ---- Reidemeister frames -----------------------------------------------------

// both diagrams, the crossings the move touches, and how everything else
// lines up; node maps run over edges then free loops
struct ReidemeisterSpec {
  Tangle before, after;
  std::vector<int> j_from, j_to;
  std::vector<int> crossing_corr;  // before crossing -> after crossing, -1 local
  std::vector<int> node_corr;      // before node -> after node, -1 swallowed
};

namespace movie_detail {

// circles living entirely inside the move region carry no key data; their
// labels are pinned down by which columns survive the reduction
struct ColumnKey {
  int h = 0, q0 = 0, match = -1;
  unsigned outside_bits = 0;
  std::vector<std::pair<int, int>> labels;  // shared circle name -> label bit

  bool operator<(const ColumnKey& o) const {
    return std::tie(h, q0, match, outside_bits, labels) <
           std::tie(o.h, o.q0, o.match, o.outside_bits, o.labels);
  }
};

// labels of a column's circles that contain a named node, sorted by name
inline std::vector<std::pair<int, int>> named_labels(const TangleModule& M,
                                                     const std::vector<int>& node_name,
                                                     int col) {
  std::vector<std::pair<int, int>> out;
  const auto& c = M.columns[col];
  const auto& res = M.res[c.v];
  const auto& keys = res.circle_keys;
  for (int k = 0; k < (int)keys.size(); ++k) {
    int name = -1;
    for (int node = 0; node < (int)res.rep.size(); ++node)
      if (res.rep[node] == keys[k] && node_name[node] >= 0)
        name = name < 0 ? node_name[node] : std::min(name, node_name[node]);
    if (name >= 0) out.push_back({name, c.mu >> k & 1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// names carried by both columns must wear the same label; a circle that only
// exists on one side of the surgery is free to go
inline bool labels_compatible(const std::vector<std::pair<int, int>>& la,
                              const std::vector<std::pair<int, int>>& lb) {
  size_t i = 0, j = 0;
  while (i < la.size() && j < lb.size()) {
    if (la[i].first < lb[j].first)
      ++i;
    else if (lb[j].first < la[i].first)
      ++j;
    else {
      if (la[i].second != lb[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

// survivors of a reduced side, keyed by everything the move does not touch
inline std::map<ColumnKey, int> survivor_keys(const TangleModule& M, const Reduction& R,
                                              const std::vector<int>& node_name,
                                              const std::vector<int>& slot) {
  std::map<ColumnKey, int> out;
  for (int col = 0; col < (int)M.columns.size(); ++col) {
    if (!R.alive[col]) continue;
    const auto& c = M.columns[col];
    ColumnKey key;
    key.h = R.comp[0].h_of(c.level);
    key.q0 = R.comp[0].qs[c.level][R.offsets[0][col]];
    key.match = c.match;
    for (int j = 0; j < M.t.n_crossings(); ++j)
      if (slot[j] >= 0 && (c.v >> j & 1)) key.outside_bits |= 1u << slot[j];
    key.labels = named_labels(M, node_name, col);
    movie_check(!out.count(key), "ambiguous column identification");
    out.emplace(key, col);
  }
  return out;
}

inline Mat submat(const Mat& m, int r0, int nr, int c0, int nc) {
  Mat out(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

// Bt == r * Bf for a single r in {1, -1}; 0 means both blocks vanish
inline int block_ratio(const Mat& bf, const Mat& bt) {
  movie_check(bf.rows == bt.rows && bf.cols == bt.cols, "block shape mismatch");
  int r = 0;
  for (int i = 0; i < bf.rows; ++i)
    for (int j = 0; j < bf.cols; ++j) {
      const Z &a = bf.at(i, j), &b = bt.at(i, j);
      if (a == 0 && b == 0) continue;
      int rr;
      if (a == b)
        rr = 1;
      else if (a == -b)
        rr = -1;
      else
        rr = 2;
      movie_check(rr != 2 && (r == 0 || r == rr), "blocks differ beyond a sign");
      r = rr;
    }
  return r;
}

}  // namespace movie_detail

inline ModuleMap reidemeister_map(const TangleModule& Mf, const TangleModule& Mt,
                                  const ReidemeisterSpec& spec) {
  using namespace movie_detail;
  const int C = Mf.n_caps();
  movie_check(Mt.n_caps() == C, "boundary changed across a Reidemeister frame");

  unsigned local_f = 0, local_t = 0;
  for (int j : spec.j_from) local_f |= 1u << j;
  for (int j : spec.j_to) local_t |= 1u << j;
  std::vector<int> name_t(Mt.t.n_edges() + Mt.t.free_loops, -1);
  for (int m : spec.node_corr)
    if (m >= 0) {
      movie_check(m < (int)name_t.size(), "node correspondence out of range");
      name_t[m] = m;
    }
  // cancellation must stay local to the move: states may differ only on the
  // move's crossings, and labels must agree on circles visible on both sides
  // of the surgery (many eliminations are valid homotopy equivalences, but
  // only the one that pins the move's own circles keeps shared labels as free
  // coordinates, and survivor matching below relies on that)
  auto allow_f = [&](int a, int b) {
    return ((Mf.columns[a].v ^ Mf.columns[b].v) & ~local_f) == 0 &&
           labels_compatible(named_labels(Mf, spec.node_corr, a),
                             named_labels(Mf, spec.node_corr, b));
  };
  auto allow_t = [&](int a, int b) {
    return ((Mt.columns[a].v ^ Mt.columns[b].v) & ~local_t) == 0 &&
           labels_compatible(named_labels(Mt, name_t, a), named_labels(Mt, name_t, b));
  };
  Reduction Rf = reduce_module(Mf, allow_f);  // empty move set means nothing cancels
  Reduction Rt = reduce_module(Mt, allow_t);

  // shared names live in the after diagram's node space
  std::vector<int> rank_t(Mt.t.n_crossings(), -1);
  int slots = 0;
  for (int k = 0; k < Mt.t.n_crossings(); ++k)
    if (!(local_t >> k & 1)) rank_t[k] = slots++;
  std::vector<int> slot_f(Mf.t.n_crossings(), -1);
  for (int j = 0; j < Mf.t.n_crossings(); ++j)
    if (!(local_f >> j & 1)) {
      int k = spec.crossing_corr[j];
      movie_check(k >= 0 && rank_t[k] >= 0, "crossing correspondence is not onto");
      slot_f[j] = rank_t[k];
    }

  auto keys_f = survivor_keys(Mf, Rf, spec.node_corr, slot_f);
  auto keys_t = survivor_keys(Mt, Rt, name_t, rank_t);
  movie_check(keys_f.size() == keys_t.size(), "survivor counts differ");

  std::vector<int> partner(Mf.columns.size(), -1);
  std::vector<int> survivors;
  for (auto& [key, colF] : keys_f) {
    auto it = keys_t.find(key);
    movie_check(it != keys_t.end(), "survivor has no partner across the move");
    partner[colF] = it->second;
    survivors.push_back(colF);
  }

  // per-column signs from the reduced differentials, all caps at once
  std::map<int, std::vector<std::pair<int, int>>> edges;  // col -> (other col, ratio)
  std::vector<std::vector<int>> by_level(Mf.comp[0].levels());
  for (int colF : survivors) by_level[Mf.columns[colF].level].push_back(colF);
  for (int l = 1; l < (int)by_level.size(); ++l)
    for (int X : by_level[l])
      for (int Y : by_level[l - 1]) {
        int r = 0;
        for (int b = 0; b < C; ++b) {
          int szx = 1 << Mf.cap_circles(X, b), szy = 1 << Mf.cap_circles(Y, b);
          assert(szx == 1 << Mt.cap_circles(partner[X], b));
          assert(szy == 1 << Mt.cap_circles(partner[Y], b));
          Mat bf = submat(Rf.comp[b].d[l], Rf.offsets[b][Y], szy, Rf.offsets[b][X], szx);
          int lt = Mt.columns[partner[X]].level;
          Mat bt = submat(Rt.comp[b].d[lt], Rt.offsets[b][partner[Y]], szy,
                          Rt.offsets[b][partner[X]], szx);
          int rb = block_ratio(bf, bt);
          movie_check(r == 0 || rb == 0 || r == rb, "caps disagree about a sign");
          if (rb) r = rb;
        }
        if (r) {
          edges[X].push_back({Y, r});
          edges[Y].push_back({X, r});
        }
      }
  std::map<int, int> sign;
  for (int root : survivors) {
    if (sign.count(root)) continue;
    sign[root] = 1;
    std::vector<int> queue = {root};
    while (!queue.empty()) {
      int x = queue.back();
      queue.pop_back();
      for (auto [y, r] : edges[x]) {
        int want = r * sign[x];
        auto it = sign.find(y);
        if (it == sign.end()) {
          sign[y] = want;
          queue.push_back(y);
        } else {
          movie_check(it->second == want, "sign spreading is inconsistent");
        }
      }
    }
  }

  ModuleMap out;
  out.dq = 0;
  for (int b = 0; b < C; ++b) {
    ChainMap psi = zero_map(Rf.comp[b], Rt.comp[b], 0);
    for (int colF : survivors) {
      int l = Mf.columns[colF].level;
      int sz = 1 << Mf.cap_circles(colF, b);
      for (int w = 0; w < sz; ++w)
        psi.m[l].at(Rt.offsets[b][partner[colF]] + w, Rf.offsets[b][colF] + w) = sign[colF];
    }
#ifdef KHT_PARANOID
    assert(validate_map(psi, Rf.comp[b], Rt.comp[b]).empty());
#endif
    out.per_cap.push_back(compose(Rt.incl[b], compose(psi, Rf.proj[b])));
  }
  return out;
}

// ---- step catalogue and the movie runner -------------------------------------

struct MovieStep {
  enum class Kind { Birth, Death, Dot, Saddle, Reidemeister };
  Kind kind = Kind::Birth;
  int a = -1, b = -1;  // loop index or node refs
  bool swap = false;
  ReidemeisterSpec rm;
};

inline MovieStep birth_step() { return {}; }

inline MovieStep death_step(int loop) {
  MovieStep s;
  s.kind = MovieStep::Kind::Death;
  s.a = loop;
  return s;
}

inline MovieStep dot_step(int ref) {
  MovieStep s;
  s.kind = MovieStep::Kind::Dot;
  s.a = ref;
  return s;
}

inline MovieStep saddle_step(int r1, int r2, bool swap = false) {
  MovieStep s;
  s.kind = MovieStep::Kind::Saddle;
  s.a = r1;
  s.b = r2;
  s.swap = swap;
  return s;
}

// split edge e and hang a curl on it; the new edge and little loop take the
// next two ids
inline Tangle kink_edge(const Tangle& t, int e, bool positive) {
  using namespace movie_detail;
  Tangle out = t;
  auto sl = edge_slots(t, e);
  assert(sl.size() == 2);
  int e2 = t.n_edges(), lp = e2 + 1;
  write_slot(out, sl[1], e2);
  if (positive)
    out.crossings.push_back({e, e2, lp, lp});
  else
    out.crossings.push_back({e, lp, lp, e2});
  out.positive += positive ? 1 : 0;
  return out;
}

inline MovieStep r1_add_step(const Tangle& t, int e, bool positive) {
  MovieStep s;
  s.kind = MovieStep::Kind::Reidemeister;
  s.rm.before = t;
  s.rm.after = kink_edge(t, e, positive);
  s.rm.j_to = {t.n_crossings()};
  s.rm.crossing_corr.resize(t.n_crossings());
  for (int j = 0; j < t.n_crossings(); ++j) s.rm.crossing_corr[j] = j;
  const int E = t.n_edges();
  s.rm.node_corr.resize(E + t.free_loops);
  for (int n = 0; n < E; ++n) s.rm.node_corr[n] = n;
  for (int l = 0; l < t.free_loops; ++l) s.rm.node_corr[E + l] = E + 2 + l;
  return s;
}

namespace movie_detail {

// which smoothing pinches the curl's circle off a one-crossing twist
inline std::pair<int, int> curl_shape(const Tangle& t, int j) {
  const auto& x = t.crossings[j];
  int s1 = -1, s2 = -1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (x[a] == x[b]) {
        movie_check(s1 < 0, "crossing is a closed curl, not a kink");
        s1 = a;
        s2 = b;
      }
  movie_check(s1 >= 0, "crossing has no repeated edge");
  movie_check(s2 - s1 != 2, "repeated edge does not bound a curl");
  int bit = ((s1 == 0 && s2 == 1) || (s1 == 2 && s2 == 3)) ? 0 : 1;
  return {x[s1], bit};
}

}  // namespace movie_detail

inline MovieStep r1_drop_step(const Tangle& t, int j, bool counts_positive) {
  using namespace movie_detail;
  auto [loop_edge, bit] = curl_shape(t, j);
  DerivedTangle d = resolve_crossing(t, j, bit);
  const int ne = d.tangle.n_edges();
  int ln = d.node_map[loop_edge];
  movie_check(ln >= ne, "the curl's circle did not close");
  MovieStep s;
  s.kind = MovieStep::Kind::Reidemeister;
  s.rm.before = t;
  s.rm.after = drop_loop(d.tangle, ln - ne);
  s.rm.after.positive = t.positive - (counts_positive ? 1 : 0);
  s.rm.j_from = {j};
  s.rm.crossing_corr.resize(t.n_crossings());
  for (int k = 0; k < t.n_crossings(); ++k)
    s.rm.crossing_corr[k] = k == j ? -1 : (k < j ? k : k - 1);
  const int E = t.n_edges();
  s.rm.node_corr.resize(E + t.free_loops);
  for (int n = 0; n < E + t.free_loops; ++n) {
    int m = d.node_map[n];
    s.rm.node_corr[n] = m == ln ? -1 : (m > ln ? m - 1 : m);
  }
  return s;
}

// push edge ea across edge eb, creating an opposite pair of crossings; the
// cut ends to reuse are picked by swap_a and swap_b, and first_over says
// which strand runs over in the first new crossing
inline Tangle r2_tangle(const Tangle& t, int ea, int eb, bool swap_a, bool swap_b,
                        bool first_over) {
  using namespace movie_detail;
  Tangle out = t;
  auto sa = edge_slots(t, ea), sb = edge_slots(t, eb);
  assert(sa.size() == 2 && sb.size() == 2);
  int m1 = t.n_edges(), m2 = m1 + 1, n1 = m1 + 2, n2 = m1 + 3;
  write_slot(out, sa[swap_a ? 0 : 1], n1);
  write_slot(out, sb[swap_b ? 0 : 1], n2);
  if (first_over) {
    out.crossings.push_back({eb, m2, m1, ea});
    out.crossings.push_back({m1, m2, n2, n1});
  } else {
    out.crossings.push_back({ea, eb, m2, m1});
    out.crossings.push_back({m2, n2, n1, m1});
  }
  out.positive += 1;
  return out;
}

inline MovieStep r2_add_step(const Tangle& t, int ea, int eb, bool swap_a = false,
                             bool swap_b = false, bool first_over = true) {
  MovieStep s;
  s.kind = MovieStep::Kind::Reidemeister;
  s.rm.before = t;
  s.rm.after = r2_tangle(t, ea, eb, swap_a, swap_b, first_over);
  s.rm.j_to = {t.n_crossings(), t.n_crossings() + 1};
  s.rm.crossing_corr.resize(t.n_crossings());
  for (int j = 0; j < t.n_crossings(); ++j) s.rm.crossing_corr[j] = j;
  const int E = t.n_edges();
  s.rm.node_corr.resize(E + t.free_loops);
  for (int n = 0; n < E; ++n) s.rm.node_corr[n] = n;
  for (int l = 0; l < t.free_loops; ++l) s.rm.node_corr[E + l] = E + 4 + l;
  return s;
}

inline MovieStep r2_drop_step(const Tangle& t, int j1, int j2) {
  using namespace movie_detail;
  movie_check(j1 != j2, "need two distinct crossings");
  std::vector<int> shared;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (t.crossings[j1][a] == t.crossings[j2][b] &&
          std::find(shared.begin(), shared.end(), t.crossings[j1][a]) == shared.end())
        shared.push_back(t.crossings[j1][a]);
  movie_check(shared.size() == 2, "crossings do not share exactly two edges");

  // the parallel smoothing is the one that does not close the shared pair
  auto parallel_bit = [&](int j) {
    std::vector<int> at;
    for (int k = 0; k < 4; ++k)
      if (t.crossings[j][k] == shared[0] || t.crossings[j][k] == shared[1]) at.push_back(k);
    movie_check(at.size() == 2, "shared edges sit oddly in the crossing");
    int a = at[0], b = at[1];
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 1;
    if ((a == 1 && b == 2) || (a == 0 && b == 3)) return 0;
    movie_check(false, "crossings are not a cancelling pair");
    return -1;
  };
  int b1 = parallel_bit(j1), b2 = parallel_bit(j2);
  DerivedTangle d1 = resolve_crossing(t, j1, b1);
  int j2p = j2 > j1 ? j2 - 1 : j2;
  DerivedTangle d2 = resolve_crossing(d1.tangle, j2p, b2);

  MovieStep s;
  s.kind = MovieStep::Kind::Reidemeister;
  s.rm.before = t;
  s.rm.after = d2.tangle;
  s.rm.after.positive = t.positive - 1;
  s.rm.j_from = {j1, j2};
  s.rm.crossing_corr.resize(t.n_crossings());
  for (int k = 0; k < t.n_crossings(); ++k) {
    if (k == j1 || k == j2)
      s.rm.crossing_corr[k] = -1;
    else
      s.rm.crossing_corr[k] = k - (k > j1 ? 1 : 0) - (k > j2 ? 1 : 0);
  }
  const int E = t.n_edges();
  s.rm.node_corr.resize(E + t.free_loops);
  for (int n = 0; n < E + t.free_loops; ++n) s.rm.node_corr[n] = d2.node_map[d1.node_map[n]];
  return s;
}

// fully explicit frame for third Reidemeister moves and friends
inline MovieStep rmove_step(ReidemeisterSpec spec) {
  MovieStep s;
  s.kind = MovieStep::Kind::Reidemeister;
  s.rm = std::move(spec);
  return s;
}

struct MovieResult {
  std::vector<Tangle> frames;
  ModuleMap map;
  int births = 0, deaths = 0, saddles = 0, dots = 0;
};

inline Tangle step_target(const Tangle& cur, const MovieStep& s) {
  using K = MovieStep::Kind;
  switch (s.kind) {
    case K::Birth:
      return with_birth(cur);
    case K::Death:
      return drop_loop(cur, s.a);
    case K::Dot:
      return cur;
    case K::Saddle:
      return saddle_result(cur, s.a, s.b, s.swap);
    case K::Reidemeister:
      movie_detail::movie_check(cur == s.rm.before, "frame does not start where expected");
      return s.rm.after;
  }
  return cur;
}

inline MovieResult run_movie(const Tangle& start, const std::vector<MovieStep>& steps) {
  using K = MovieStep::Kind;
  MovieResult out;
  movie_detail::movie_check(start.validate().empty(), "starting diagram is invalid");
  out.frames.push_back(start);
  TangleModule M = build_module(start);
  out.map = identity_module_map(M);
  for (const auto& s : steps) {
    Tangle next = step_target(out.frames.back(), s);
    movie_detail::movie_check(next.validate().empty(), "frame produced an invalid diagram");
    TangleModule M2 = build_module(next);
    ModuleMap f;
    switch (s.kind) {
      case K::Birth:
        f = birth_map(M, M2);
        out.births += 1;
        break;
      case K::Death:
        f = death_map(M, M2, s.a);
        out.deaths += 1;
        break;
      case K::Dot:
        f = dot_map(M, s.a);
        out.dots += 1;
        break;
      case K::Saddle:
        f = saddle_map(M, M2, s.a, s.b);
        out.saddles += 1;
        break;
      case K::Reidemeister:
        f = reidemeister_map(M, M2, s.rm);
        break;
    }
#ifdef KHT_PARANOID
    {
      auto errs = module_map_defects(f, M, M2, false);
      assert(errs.empty() && "movie frame is not a chain map");
    }
#endif
    out.map = compose(f, out.map);
    out.frames.push_back(next);
    M = std::move(M2);
  }
  assert(out.map.dq == -(out.births + out.deaths - out.saddles) + 2 * out.dots);
  return out;
}

}  // namespace kht

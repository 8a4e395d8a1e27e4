// Diagram builders: braid closures, the handful of named links the tests
// lean on, kinked caps, and a seeded random tangle generator.
#pragma once

#include <cassert>
#include <cstdlib>
#include <random>
#include <vector>

#include "kht/matching.hpp"
#include "kht/tangle.hpp"

namespace kht {

namespace diagram_detail {

// provisional edge names unified as strands close up, then compacted
struct EdgeNamer {
  std::vector<int> parent;
  int fresh() {
    parent.push_back((int)parent.size());
    return (int)parent.size() - 1;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace diagram_detail

// closure of a braid word on `strands` strands; letter +g is the positive
// crossing of columns g, g+1 (1-based), -g the negative one
inline Tangle braid_closure(int strands, const std::vector<int>& word) {
  using diagram_detail::EdgeNamer;
  EdgeNamer names;
  std::vector<int> first(strands), cur(strands);
  for (int i = 0; i < strands; ++i) first[i] = cur[i] = names.fresh();

  struct Site {
    int bl, br, tl, tr;
    bool pos;
  };
  std::vector<Site> sites;
  for (int w : word) {
    assert(w != 0 && std::abs(w) < strands);
    int c = std::abs(w) - 1;
    Site s{cur[c], cur[c + 1], names.fresh(), names.fresh(), w > 0};
    cur[c] = s.tl;
    cur[c + 1] = s.tr;
    sites.push_back(s);
  }
  for (int i = 0; i < strands; ++i) names.unify(cur[i], first[i]);

  // compact: classes meeting a crossing become edges, the rest free loops
  std::vector<char> used(names.parent.size(), 0);
  for (auto& s : sites)
    for (int e : {s.bl, s.br, s.tl, s.tr}) used[names.find(e)] = 1;
  std::vector<int> id(names.parent.size(), -1);
  int n_edges = 0, loops = 0;
  for (int i = 0; i < (int)names.parent.size(); ++i)
    if (names.find(i) == i) {
      if (used[i]) id[i] = n_edges++;
      else ++loops;
    }
  auto e = [&](int prov) { return id[names.find(prov)]; };

  Tangle t;
  t.boundary = 0;
  t.free_loops = loops;
  for (auto& s : sites) {
    if (s.pos) {
      t.crossings.push_back({e(s.br), e(s.tr), e(s.tl), e(s.bl)});
      ++t.positive;
    } else {
      t.crossings.push_back({e(s.bl), e(s.br), e(s.tr), e(s.tl)});
    }
  }
  return t;
}

inline Tangle unknot_diagram() {
  Tangle t;
  t.free_loops = 1;
  return t;
}

inline Tangle unlink_diagram(int components) {
  Tangle t;
  t.free_loops = components;
  return t;
}

inline Tangle hopf_positive() { return braid_closure(2, {1, 1}); }
inline Tangle trefoil_right() { return braid_closure(2, {1, 1, 1}); }
inline Tangle trefoil_left() { return braid_closure(2, {-1, -1, -1}); }
inline Tangle cinquefoil() { return braid_closure(2, {1, 1, 1, 1, 1}); }

// the (3,4) torus knot as the 8 crossing negative 3-braid closure
inline Tangle torus_3_4() {
  return braid_closure(3, {-1, -2, -1, -2, -1, -2, -1, -2});
}

// the two smoothings of the last torus knot crossing, each oriented so that
// two of the surviving crossings are positive
inline Tangle five_two() {
  Tangle t = resolve_crossing(torus_3_4(), 7, 0).tangle;
  t.positive = 2;
  return t;
}

inline Tangle cinquefoil_with_meridian() {
  Tangle t = resolve_crossing(torus_3_4(), 7, 1).tangle;
  t.positive = 2;
  return t;
}

// components of the underlying curve: strands pass straight through crossings
inline int link_components(const Tangle& t) {
  int e = t.n_edges();
  tangle_detail::MiniDSU dsu(e > 0 ? e : 1);
  for (auto& x : t.crossings) {
    dsu.join(x[0], x[2]);
    dsu.join(x[1], x[3]);
  }
  int comps = t.free_loops;
  for (int i = 0; i < e; ++i)
    if (dsu.find(i) == i) ++comps;
  return comps;
}

// the sign of a crossing depends on how the two strands run through it, which
// local bookkeeping gets wrong once strands fold back; orient the underlying
// curves by tracing them and count the crossings where the under strand enters
// at slot 0 exactly when the over strand enters at slot 3
inline int oriented_positive_count(const Tangle& t) {
  struct End {
    int j, s;  // crossing slot, or j == -1 and s a boundary point
  };
  const int E = t.n_edges();
  std::vector<std::vector<End>> ends(E);
  for (int j = 0; j < t.n_crossings(); ++j)
    for (int s = 0; s < 4; ++s) ends[t.crossings[j][s]].push_back({j, s});
  for (int p = 0; p < t.boundary; ++p) ends[t.boundary_edges[p]].push_back({-1, p});

  // dir[j][s] is +1 where a strand enters the crossing and -1 where it leaves
  std::vector<std::array<int, 4>> dir(t.n_crossings(), {0, 0, 0, 0});
  // follow the strand leaving endpoint `a` along edge `e`; gives back the
  // boundary point it lands on, or -1 once it closes up
  auto walk = [&](int e, End a) {
    while (true) {
      auto& two = ends[e];
      End b = (two[0].j == a.j && two[0].s == a.s) ? two[1] : two[0];
      if (b.j < 0) return b.s;
      if (dir[b.j][b.s] != 0) return -1;
      dir[b.j][b.s] = 1;
      int out = (b.s + 2) % 4;
      dir[b.j][out] = -1;
      a = {b.j, out};
      e = t.crossings[b.j][out];
    }
  };

  std::vector<char> traced(std::max(t.boundary, 1), 0);
  for (int p = 0; p < t.boundary; ++p)
    if (!traced[p]) {
      traced[p] = 1;
      int q = walk(t.boundary_edges[p], {-1, p});
      assert(q >= 0);
      traced[q] = 1;
    }
  for (int j = 0; j < t.n_crossings(); ++j)
    for (int s = 0; s < 2; ++s)
      if (dir[j][s] == 0) {
        dir[j][s] = 1;
        dir[j][s + 2] = -1;
        walk(t.crossings[j][s + 2], {j, s + 2});
      }

  int pos = 0;
  for (int j = 0; j < t.n_crossings(); ++j)
    if (dir[j][0] != dir[j][1]) ++pos;
  return pos;
}

// single arc between two boundary points with a Reidemeister 1 kink on it;
// edges: 0 in, 1 the little loop, 2 out
inline Tangle kinked_arc(bool positive_kink) {
  Tangle t;
  t.boundary = 2;
  if (positive_kink) {
    t.crossings.push_back({0, 2, 1, 1});
    t.positive = 1;
  } else {
    t.crossings.push_back({0, 1, 1, 2});
  }
  t.boundary_edges = {0, 2};
  return t;
}

// cap diagram with a kink inserted on one arc
inline Tangle kinked_cap(const Matching& m, int arc, bool positive_kink) {
  Tangle t = cap_tangle(m);
  auto arcs = m.arcs();
  assert(arc >= 0 && arc < (int)arcs.size());
  // arc k is edge k; split it into edges (arc) and E, loop E+1
  int e2 = (int)arcs.size(), loop = e2 + 1;
  if (positive_kink) {
    t.crossings.push_back({arc, e2, loop, loop});
    t.positive = 1;
  } else {
    t.crossings.push_back({arc, loop, loop, e2});
  }
  t.boundary_edges[arcs[arc].second] = e2;
  return t;
}

// random diskular tangle: a braid with its top plat-closed, the bottom
// plat-closed except for the first `boundary` columns
inline Tangle random_tangle(std::mt19937& rng, int boundary, int max_crossings) {
  assert(boundary >= 0 && boundary % 2 == 0);
  int extra = (int)(rng() % 3);  // capped column pairs beyond the boundary
  if (boundary == 0 && extra == 0) extra = 1;
  int cols = boundary + 2 * extra;
  int letters = cols < 2 ? 0 : (int)(rng() % (max_crossings + 1));

  using diagram_detail::EdgeNamer;
  EdgeNamer names;
  std::vector<int> first(cols), cur(cols);
  for (int i = 0; i < cols; ++i) first[i] = cur[i] = names.fresh();

  struct Site {
    int bl, br, tl, tr;
    bool pos;
  };
  std::vector<Site> sites;
  for (int k = 0; k < letters; ++k) {
    int c = (int)(rng() % (cols - 1));
    Site s{cur[c], cur[c + 1], names.fresh(), names.fresh(), (rng() & 1) != 0};
    cur[c] = s.tl;
    cur[c + 1] = s.tr;
    sites.push_back(s);
  }
  for (int i = 0; i + 1 < cols; i += 2) names.unify(cur[i], cur[i + 1]);
  for (int i = boundary; i + 1 < cols; i += 2) names.unify(first[i], first[i + 1]);

  std::vector<char> used(names.parent.size(), 0);
  for (auto& s : sites)
    for (int e : {s.bl, s.br, s.tl, s.tr}) used[names.find(e)] = 1;
  for (int i = 0; i < boundary; ++i) used[names.find(first[i])] = 1;
  std::vector<int> id(names.parent.size(), -1);
  int n_edges = 0, loops = 0;
  for (int i = 0; i < (int)names.parent.size(); ++i)
    if (names.find(i) == i) {
      if (used[i]) id[i] = n_edges++;
      else ++loops;
    }
  auto e = [&](int prov) { return id[names.find(prov)]; };

  Tangle t;
  t.boundary = boundary;
  t.free_loops = loops;
  for (auto& s : sites) {
    if (s.pos)
      t.crossings.push_back({e(s.br), e(s.tr), e(s.tl), e(s.bl)});
    else
      t.crossings.push_back({e(s.bl), e(s.br), e(s.tr), e(s.tl)});
  }
  for (int i = 0; i < boundary; ++i) t.boundary_edges.push_back(e(first[i]));
  // the letters were signed for strands all running upward, but the plat
  // closures fold strands back; recount with a real orientation
  t.positive = oriented_positive_count(t);
  return t;
}

inline Tangle random_closed_diagram(std::mt19937& rng, int max_crossings) {
  return random_tangle(rng, 0, max_crossings);
}

}  // namespace kht

// Diskular tangle diagrams: crossings in a disk with marked boundary points,
// encoded combinatorially. A crossing is the counterclockwise 4-tuple of
// incident edge ids with the under-strand in slots 0 and 2. Smoothing 0
// reconnects (s0 s1)(s2 s3), smoothing 1 reconnects (s0 s3)(s1 s2).
#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kht/matching.hpp"

namespace kht {

struct Tangle {
  int boundary = 0;                            // number of boundary points, ccw
  std::vector<std::array<int, 4>> crossings;   // edge ids, ccw from an under slot
  std::vector<int> boundary_edges;             // edge id at each boundary point
  int free_loops = 0;                          // crossing-free circles
  int positive = 0;                            // crossings counted as positive

  int n_crossings() const { return (int)crossings.size(); }

  int n_edges() const {
    int m = -1;
    for (auto& x : crossings)
      for (int s : x) m = std::max(m, s);
    for (int e : boundary_edges) m = std::max(m, e);
    return m + 1;
  }

  // node ids for state bookkeeping: edges first, then free loops; cap arcs,
  // when a closure is involved, come after both
  int loop_node(int i) const { return n_edges() + i; }

  // rotating a crossing tuple by two keeps the under slots at 0 and 2 and pairs
  // the same edges in both smoothings, so it names the same picture
  static std::array<int, 4> crossing_rep(const std::array<int, 4>& x) {
    std::array<int, 4> r{x[2], x[3], x[0], x[1]};
    return x < r ? x : r;
  }

  bool operator==(const Tangle& o) const {
    if (boundary != o.boundary || boundary_edges != o.boundary_edges ||
        free_loops != o.free_loops || positive != o.positive ||
        crossings.size() != o.crossings.size())
      return false;
    for (size_t j = 0; j < crossings.size(); ++j)
      if (crossing_rep(crossings[j]) != crossing_rep(o.crossings[j])) return false;
    return true;
  }

  // over/under swap at every crossing; same underlying curves
  Tangle mirrored() const {
    Tangle t = *this;
    for (auto& x : t.crossings) x = {x[1], x[2], x[3], x[0]};
    t.positive = n_crossings() - positive;
    return t;
  }

  // the diagram seen after flipping the disk over: boundary order reverses,
  // rotations reverse, over/under stays put
  Tangle reflected() const {
    Tangle t = *this;
    for (auto& x : t.crossings) x = {x[2], x[1], x[0], x[3]};
    std::reverse(t.boundary_edges.begin(), t.boundary_edges.end());
    t.positive = n_crossings() - positive;
    return t;
  }

  std::vector<std::string> validate() const;
};

// ---- validation ------------------------------------------------------------

namespace tangle_detail {

struct MiniDSU {
  std::vector<int> p;
  explicit MiniDSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace tangle_detail

inline std::vector<std::string> Tangle::validate() const {
  std::vector<std::string> errs;
  if (boundary < 0 || boundary % 2) errs.push_back("boundary point count must be even");
  if ((int)boundary_edges.size() != boundary)
    errs.push_back("boundary_edges must list one edge per boundary point");
  if (free_loops < 0) errs.push_back("free_loops must be nonnegative");
  if (positive < 0 || positive > n_crossings())
    errs.push_back("positive crossing count out of range");
  if (!errs.empty()) return errs;

  const int E = n_edges();
  std::vector<int> ends(E, 0);
  for (auto& x : crossings)
    for (int s : x) {
      if (s < 0) {
        errs.push_back("negative edge id");
        return errs;
      }
      ++ends[s];
    }
  for (int e : boundary_edges) {
    if (e < 0) {
      errs.push_back("negative edge id");
      return errs;
    }
    ++ends[e];
  }
  for (int e = 0; e < E; ++e)
    if (ends[e] != 2) {
      errs.push_back("edge " + std::to_string(e) + " has " + std::to_string(ends[e]) +
                     " endpoints, want 2");
      return errs;
    }
  if (E == 0 && boundary == 0) return errs;  // loops only

  // Planarity through the rotation system: half-edges are crossing slots plus
  // one virtual boundary vertex whose rotation runs clockwise (the reversal
  // makes the combined system live on the sphere). Every connected component
  // must close up with Euler characteristic 2.
  const int nc = n_crossings();
  const bool has_bd = boundary > 0;
  const int nv = nc + (has_bd ? 1 : 0);
  // half-edge ids: 4*j+k for crossing slots, 4*nc+i for boundary positions
  const int nh = 4 * nc + boundary;
  std::vector<int> edge_of(nh), vertex_of(nh);
  std::vector<std::vector<int>> ends_of(E);
  for (int j = 0; j < nc; ++j)
    for (int k = 0; k < 4; ++k) {
      int h = 4 * j + k;
      edge_of[h] = crossings[j][k];
      vertex_of[h] = j;
      ends_of[crossings[j][k]].push_back(h);
    }
  for (int i = 0; i < boundary; ++i) {
    int h = 4 * nc + i;
    edge_of[h] = boundary_edges[i];
    vertex_of[h] = nc;
    ends_of[boundary_edges[i]].push_back(h);
  }
  auto alpha = [&](int h) {
    auto& two = ends_of[edge_of[h]];
    return two[0] == h ? two[1] : two[0];
  };
  auto sigma = [&](int h) {
    if (h < 4 * nc) return (h & ~3) | ((h + 1) & 3);
    int i = h - 4 * nc;
    return 4 * nc + (i - 1 + boundary) % boundary;
  };

  tangle_detail::MiniDSU comp(nv);
  for (int e = 0; e < E; ++e) comp.join(vertex_of[ends_of[e][0]], vertex_of[ends_of[e][1]]);

  std::vector<int> faces(nv, 0), vcount(nv, 0), ecount(nv, 0);
  std::vector<char> seen(nh, 0);
  for (int h0 = 0; h0 < nh; ++h0) {
    if (seen[h0]) continue;
    int h = h0;
    do {
      seen[h] = 1;
      h = sigma(alpha(h));
    } while (h != h0);
    ++faces[comp.find(vertex_of[h0])];
  }
  for (int v = 0; v < nv; ++v) ++vcount[comp.find(v)];
  for (int e = 0; e < E; ++e) ++ecount[comp.find(vertex_of[ends_of[e][0]])];
  for (int v = 0; v < nv; ++v) {
    if (comp.find(v) != v) continue;
    if (vcount[v] == 1 && ecount[v] == 0 && faces[v] == 0) continue;
    if (vcount[v] - ecount[v] + faces[v] != 2) {
      errs.push_back("diagram does not embed in the disk");
      return errs;
    }
  }
  return errs;
}

// ---- resolutions and closures ----------------------------------------------

// Connected classes of the diagram smoothed according to `mask`, optionally
// closed off by a cap. Node ids: edges, then free loops, then cap arcs, so
// the part below the cap arcs matches the numbering resolve() uses. Classes
// are named by their minimal node.
struct ClosedState {
  int n_nodes = 0;
  std::vector<int> rep;   // node -> minimal node of its class
  std::vector<int> keys;  // sorted distinct class names

  int index_of_key(int key) const {
    return (int)(std::lower_bound(keys.begin(), keys.end(), key) - keys.begin());
  }
  int circle_of(int node) const { return index_of_key(rep[node]); }
  int circles() const { return (int)keys.size(); }
};

inline ClosedState closed_state(const Tangle& t, unsigned mask, const Matching* cap) {
  const int E = t.n_edges();
  const int A = cap ? cap->n / 2 : 0;
  assert(!cap || cap->n == t.boundary);
  assert(cap || t.boundary == 0);
  ClosedState st;
  st.n_nodes = E + A + t.free_loops;
  tangle_detail::MiniDSU dsu(st.n_nodes);
  for (int j = 0; j < t.n_crossings(); ++j) {
    const auto& x = t.crossings[j];
    if (mask >> j & 1) {
      dsu.join(x[0], x[3]);
      dsu.join(x[1], x[2]);
    } else {
      dsu.join(x[0], x[1]);
      dsu.join(x[2], x[3]);
    }
  }
  if (cap) {
    auto arcs = cap->arcs();
    for (int a = 0; a < A; ++a) {
      int node = E + t.free_loops + a;
      dsu.join(node, t.boundary_edges[arcs[a].first]);
      dsu.join(node, t.boundary_edges[arcs[a].second]);
    }
  }
  st.rep.assign(st.n_nodes, -1);
  std::vector<int> mins(st.n_nodes, -1);
  for (int i = 0; i < st.n_nodes; ++i) {
    int r = dsu.find(i);
    if (mins[r] < 0) mins[r] = i;  // first visit is minimal, ids ascend
  }
  for (int i = 0; i < st.n_nodes; ++i) st.rep[i] = mins[dsu.find(i)];
  for (int i = 0; i < st.n_nodes; ++i)
    if (st.rep[i] == i) st.keys.push_back(i);
  return st;
}

// Resolution of a bare tangle: the induced boundary matching plus the circles
// that do not reach the boundary.
struct Resolution {
  Matching boundary_matching;
  std::vector<int> circle_keys;
  std::vector<int> rep;  // node -> class name, nodes are edges then loops
};

inline Resolution resolve(const Tangle& t, unsigned mask) {
  const int E = t.n_edges();
  Resolution r;
  tangle_detail::MiniDSU dsu(E + t.free_loops);
  for (int j = 0; j < t.n_crossings(); ++j) {
    const auto& x = t.crossings[j];
    if (mask >> j & 1) {
      dsu.join(x[0], x[3]);
      dsu.join(x[1], x[2]);
    } else {
      dsu.join(x[0], x[1]);
      dsu.join(x[2], x[3]);
    }
  }
  std::vector<int> mins(E + t.free_loops, -1);
  for (int i = 0; i < E + t.free_loops; ++i) {
    int root = dsu.find(i);
    if (mins[root] < 0) mins[root] = i;
  }
  r.rep.resize(E + t.free_loops);
  for (int i = 0; i < E + t.free_loops; ++i) r.rep[i] = mins[dsu.find(i)];

  r.boundary_matching.n = t.boundary;
  r.boundary_matching.partner.assign(t.boundary, -1);
  std::vector<char> touches_boundary(E + t.free_loops, 0);
  for (int i = 0; i < t.boundary; ++i) touches_boundary[r.rep[t.boundary_edges[i]]] = 1;
  for (int i = 0; i < t.boundary; ++i) {
    if (r.boundary_matching.partner[i] >= 0) continue;
    for (int j = i + 1; j < t.boundary; ++j)
      if (r.rep[t.boundary_edges[i]] == r.rep[t.boundary_edges[j]] &&
          r.boundary_matching.partner[j] < 0) {
        r.boundary_matching.partner[i] = j;
        r.boundary_matching.partner[j] = i;
        break;
      }
  }
  for (int i = 0; i < E + t.free_loops; ++i)
    if (r.rep[i] == i && !touches_boundary[i]) r.circle_keys.push_back(i);
  return r;
}

// ---- structural surgery on diagrams ----------------------------------------

// A tangle derived from another one, with the translation from old node ids
// (edges then free loops) to new ones. Nodes that became crossing-free
// circles map to loop nodes of the result.
struct DerivedTangle {
  Tangle tangle;
  std::vector<int> node_map;
};

namespace tangle_detail {

// rebuild a tangle after identifying edges via `dsu`, where `alive` marks the
// crossings to keep; `n_nodes` widens the edge universe when `t` does not
// reference every node the dsu was built over (edges can drop out of all
// crossing and boundary lists entirely when a gluing closes them up)
inline DerivedTangle rebuild(const Tangle& t, MiniDSU& dsu, const std::vector<char>& alive,
                             int extra_loops, int n_nodes = -1) {
  const int E = std::max(t.n_edges(), n_nodes);
  DerivedTangle out;
  std::vector<char> in_crossing(E, 0);
  for (int j = 0; j < t.n_crossings(); ++j)
    if (alive[j])
      for (int s : t.crossings[j]) in_crossing[dsu.find(s)] = 1;
  for (int i = 0; i < t.boundary; ++i) in_crossing[dsu.find(t.boundary_edges[i])] = 1;

  // classes that survive as edges get compact ids in order of their minimal
  // member; classes that close up become loops
  std::vector<int> new_id(E, -1);
  int ne = 0;
  for (int e = 0; e < E; ++e) {
    int root = dsu.find(e);
    if (new_id[root] >= 0) continue;
    if (in_crossing[root]) new_id[root] = ne++;
  }
  std::vector<int> closed;
  for (int e = 0; e < E; ++e) {
    int root = dsu.find(e);
    if (new_id[root] < 0 && std::find(closed.begin(), closed.end(), root) == closed.end())
      closed.push_back(root);
  }

  Tangle& g = out.tangle;
  g.boundary = t.boundary;
  g.free_loops = t.free_loops + extra_loops + (int)closed.size();
  g.positive = 0;  // caller decides
  for (int j = 0; j < t.n_crossings(); ++j) {
    if (!alive[j]) continue;
    std::array<int, 4> x;
    for (int k = 0; k < 4; ++k) x[k] = new_id[dsu.find(t.crossings[j][k])];
    g.crossings.push_back(x);
  }
  for (int i = 0; i < t.boundary; ++i)
    g.boundary_edges.push_back(new_id[dsu.find(t.boundary_edges[i])]);

  // old nodes -> new nodes: surviving edges by class, closed classes to fresh
  // loop slots after the inherited ones, old loops keep their order
  out.node_map.assign(E + t.free_loops, -1);
  for (int e = 0; e < E; ++e) {
    int root = dsu.find(e);
    if (new_id[root] >= 0) {
      out.node_map[e] = new_id[root];
    } else {
      int idx = (int)(std::find(closed.begin(), closed.end(), root) - closed.begin());
      out.node_map[e] = ne + t.free_loops + extra_loops + idx;
    }
  }
  for (int l = 0; l < t.free_loops; ++l) out.node_map[E + l] = ne + l;
  return out;
}

}  // namespace tangle_detail

// Replace crossing j by its s-smoothing. The result's positive count is left
// for the caller, since a count alone cannot say which crossings were the
// positive ones.
inline DerivedTangle resolve_crossing(const Tangle& t, int j, int s) {
  tangle_detail::MiniDSU dsu(t.n_edges());
  const auto& x = t.crossings[j];
  if (s) {
    dsu.join(x[0], x[3]);
    dsu.join(x[1], x[2]);
  } else {
    dsu.join(x[0], x[1]);
    dsu.join(x[2], x[3]);
  }
  std::vector<char> alive(t.n_crossings(), 1);
  alive[j] = 0;
  return tangle_detail::rebuild(t, dsu, alive, 0);
}

// Glue two disks along their whole boundary (point i of t1 onto point
// n-1-i+offset of t2, the orientation-reversing identification). Yields a
// closed diagram; node maps translate old nodes of each side.
struct GluedTangle {
  Tangle tangle;
  std::vector<int> map1, map2;
};

inline GluedTangle glue_along_boundary(const Tangle& t1, const Tangle& t2, int offset = 0) {
  assert(t1.boundary == t2.boundary);
  const int n = t1.boundary;
  const int E1 = t1.n_edges(), E2 = t2.n_edges();

  // combined tangle: t2's edges shifted, crossings concatenated
  Tangle comb;
  comb.boundary = 0;
  comb.free_loops = 0;
  comb.crossings = t1.crossings;
  for (auto x : t2.crossings) {
    for (int& s : x) s += E1;
    comb.crossings.push_back(x);
  }

  tangle_detail::MiniDSU dsu(E1 + E2);
  for (int i = 0; i < n; ++i) {
    int j = ((n - 1 - i + offset) % n + n) % n;
    dsu.join(t1.boundary_edges[i], E1 + t2.boundary_edges[j]);
  }
  std::vector<char> alive(comb.crossings.size(), 1);
  DerivedTangle d =
      tangle_detail::rebuild(comb, dsu, alive, t1.free_loops + t2.free_loops, E1 + E2);

  GluedTangle out;
  out.tangle = d.tangle;
  out.tangle.positive = t1.positive + t2.positive;
  const int NE = out.tangle.n_edges();
  // rebuild() saw no inherited loops on `comb`, so its fresh circles start at
  // NE + extra_loops; reserve the first slots for t1's loops then t2's
  out.map1.assign(E1 + t1.free_loops, -1);
  out.map2.assign(E2 + t2.free_loops, -1);
  for (int e = 0; e < E1; ++e) out.map1[e] = d.node_map[e];
  for (int e = 0; e < E2; ++e) out.map2[e] = d.node_map[E1 + e];
  for (int l = 0; l < t1.free_loops; ++l) out.map1[E1 + l] = NE + l;
  for (int l = 0; l < t2.free_loops; ++l) out.map2[E2 + l] = NE + t1.free_loops + l;
  return out;
}

// the crossingless tangle drawing a boundary matching inside the disk
inline Tangle cap_tangle(const Matching& m) {
  Tangle t;
  t.boundary = m.n;
  t.boundary_edges.assign(m.n, -1);
  auto arcs = m.arcs();
  for (int a = 0; a < (int)arcs.size(); ++a) {
    t.boundary_edges[arcs[a].first] = a;
    t.boundary_edges[arcs[a].second] = a;
  }
  return t;
}

}  // namespace kht

// The algebra of cap diagrams on n boundary points. A hom space between two
// caps is the free module on labelings of the circles their overlay draws;
// composition contracts the shared cap one arc at a time, each contraction a
// merge or a split of circles. The same contraction engine drives module
// actions and gluing elsewhere.
#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <vector>

#include "kht/intmath.hpp"
#include "kht/matching.hpp"

namespace kht {

// a circle diagram presented as nodes (abstract arcs) wired together at
// ports; circles are connected components, named by their minimal node
struct PortJoin {
  int u = 0, v = 0, port = 0;
};

struct CircleSurgery {
  int n_nodes = 0;
  std::vector<PortJoin> joins;
  std::vector<char> active;

  // label = circle rep (minimal active node) -> 0 for the unit, 1 for the
  // dotted generator
  using Labels = std::map<int, int>;
  using Term = std::pair<Labels, Z>;

  std::vector<int> reps() const {
    std::vector<int> rep(n_nodes, -1);
    for (int i = 0; i < n_nodes; ++i)
      if (active[i]) rep[i] = i;
    auto find = [&](int x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    for (const auto& j : joins)
      if (active[j.u] && active[j.v]) {
        int a = find(j.u), b = find(j.v);
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
    for (int i = 0; i < n_nodes; ++i)
      if (active[i]) rep[i] = find(i);
    return rep;
  }

  // remove nodes a and b, reconnecting their neighbours across matching ports
  void contract_pair(int a, int b) {
    assert(active[a] && active[b]);
    std::map<int, int> na, nb;  // port -> neighbour
    for (const auto& j : joins) {
      if (j.u == a || j.v == a) {
        int other = j.u == a ? j.v : j.u;
        assert(!na.count(j.port));
        na[j.port] = other;
      } else if (j.u == b || j.v == b) {
        int other = j.u == b ? j.v : j.u;
        assert(!nb.count(j.port));
        nb[j.port] = other;
      }
    }
    assert(na.size() == 2 && nb.size() == 2);
    std::vector<PortJoin> kept;
    for (const auto& j : joins)
      if (j.u != a && j.v != a && j.u != b && j.v != b) kept.push_back(j);
    for (auto& [port, u] : na) {
      assert(nb.count(port) && "contraction pair must span the same ports");
      assert(u != b && nb[port] != a && "contraction pair touches itself");
      kept.push_back({u, nb[port], port});
    }
    joins = std::move(kept);
    active[a] = active[b] = 0;
  }

  // push labeled terms through one contraction, splitting or merging circles
  static std::vector<Term> transport(const std::vector<int>& before,
                                     const std::vector<int>& after,
                                     const std::vector<Term>& terms) {
    // old rep -> new reps it meets, and vice versa, via surviving nodes
    std::map<int, std::vector<int>> fwd, bwd;
    auto note = [](std::map<int, std::vector<int>>& m, int k, int v) {
      auto& vec = m[k];
      if (std::find(vec.begin(), vec.end(), v) == vec.end()) vec.push_back(v);
    };
    for (int i = 0; i < (int)before.size(); ++i)
      if (before[i] >= 0 && after[i] >= 0) {
        note(fwd, before[i], after[i]);
        note(bwd, after[i], before[i]);
      }
    int merge_target = -1, split_source = -1;
    for (auto& [nr, olds] : bwd)
      if (olds.size() == 2) {
        assert(merge_target < 0);
        merge_target = nr;
      } else {
        assert(olds.size() == 1);
      }
    for (auto& [old, news] : fwd)
      if (news.size() == 2) {
        assert(split_source < 0);
        split_source = old;
      } else {
        assert(news.size() == 1);
      }
    assert(merge_target < 0 || split_source < 0);

    std::vector<Term> out;
    for (const auto& [labels, coef] : terms) {
      if (merge_target >= 0) {
        int o1 = bwd[merge_target][0], o2 = bwd[merge_target][1];
        int product = labels.at(o1) + labels.at(o2);
        if (product > 1) continue;  // X·X = 0
        Labels nl;
        for (auto& [old, news] : fwd)
          if (old != o1 && old != o2) nl[news[0]] = labels.at(old);
        nl[merge_target] = product;
        out.push_back({nl, coef});
      } else if (split_source >= 0) {
        int z = fwd[split_source][0], w = fwd[split_source][1];
        Labels base;
        for (auto& [old, news] : fwd)
          if (old != split_source) base[news[0]] = labels.at(old);
        if (labels.at(split_source) == 1) {
          Labels nl = base;
          nl[z] = 1;
          nl[w] = 1;
          out.push_back({nl, coef});
        } else {
          Labels n1 = base, n2 = base;
          n1[z] = 0;
          n1[w] = 1;
          n2[z] = 1;
          n2[w] = 0;
          out.push_back({n1, coef});
          out.push_back({n2, coef});
        }
      } else {
        Labels nl;
        for (auto& [old, news] : fwd) nl[news[0]] = labels.at(old);
        out.push_back({nl, coef});
      }
    }
    return out;
  }

  std::vector<Term> run(const std::vector<std::pair<int, int>>& pairs,
                        const std::vector<Term>& start) {
    std::vector<Term> terms = start;
    std::vector<int> before = reps();
    for (auto [a, b] : pairs) {
      contract_pair(a, b);
      std::vector<int> after = reps();
      terms = transport(before, after, terms);
      before = std::move(after);
      if (terms.empty()) break;
    }
    return terms;
  }
};

// ---- the cap algebra --------------------------------------------------------

struct ArcAlgebra {
  int n = 0;
  std::vector<Matching> caps;

  explicit ArcAlgebra(int points) : n(points), caps(Matching::all(points)) {}

  int n_caps() const { return (int)caps.size(); }

  int cap_index(const Matching& m) const {
    for (int i = 0; i < n_caps(); ++i)
      if (caps[i] == m) return i;
    return -1;
  }

  // circles drawn by two matchings of the same points, indexed by their
  // minimal point
  struct Overlay {
    int count = 0;
    std::vector<int> of_point;
  };

  static Overlay overlay(const Matching& b, const Matching& c) {
    int n = b.n;
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) rep[i] = i;
    auto find = [&](int x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    auto join = [&](int a, int bb) {
      a = find(a);
      bb = find(bb);
      if (a != bb) rep[std::max(a, bb)] = std::min(a, bb);
    };
    for (int p = 0; p < n; ++p) {
      join(p, b.partner[p]);
      join(p, c.partner[p]);
    }
    Overlay o;
    std::vector<int> name(n, -1);
    for (int p = 0; p < n; ++p) {
      int r = find(p);
      if (name[r] < 0) name[r] = o.count++;
    }
    o.of_point.resize(n);
    for (int p = 0; p < n; ++p) o.of_point[p] = name[find(p)];
    return o;
  }

  Overlay hom_circles(int b, int c) const { return overlay(caps[b], caps[c]); }

  int rank(int b, int c) const { return 1 << hom_circles(b, c).count; }

  // q of a basis labeling: every dotted circle adds one, every unit circle
  // subtracts one, and the global n/2 puts the idempotents in degree zero
  int q_of(int b, int c, unsigned mask) const {
    Overlay o = hom_circles(b, c);
    int x = 0;
    for (int i = 0; i < o.count; ++i) x += mask >> i & 1;
    return 2 * x - o.count + n / 2;
  }

  unsigned unit_mask() const { return 0; }

  // hom(a,b) x hom(b,c) -> hom(a,c); output is a sum of basis masks, all
  // coefficients +1
  std::vector<std::pair<unsigned, Z>> multiply(int a, int b, int c, unsigned m1,
                                               unsigned m2) const {
    const int A = n / 2;
    const Matching &ma = caps[a], &mb = caps[b], &mc = caps[c];
    auto arcs_a = ma.arcs(), arcs_b = mb.arcs(), arcs_c = mc.arcs();
    // node layout: a arcs, c arcs, then the two doomed copies of b
    auto arc_at = [&](const std::vector<std::pair<int, int>>& arcs, int p) {
      for (int k = 0; k < (int)arcs.size(); ++k)
        if (arcs[k].first == p || arcs[k].second == p) return k;
      assert(false);
      return -1;
    };
    CircleSurgery s;
    s.n_nodes = 4 * A;
    s.active.assign(4 * A, 1);
    for (int p = 0; p < n; ++p) {
      s.joins.push_back({arc_at(arcs_a, p), 2 * A + arc_at(arcs_b, p), p});
      s.joins.push_back({3 * A + arc_at(arcs_b, p), A + arc_at(arcs_c, p), p});
    }

    // initial labels: left factor on the (a,b) circles, right on (b,c)
    Overlay oab = overlay(ma, mb), obc = overlay(mb, mc);
    std::vector<int> rep = s.reps();
    CircleSurgery::Labels labels;
    for (int i = 0; i < oab.count; ++i) {
      int p = 0;
      while (oab.of_point[p] != i) ++p;
      labels[rep[arc_at(arcs_a, p)]] = m1 >> i & 1;
    }
    for (int i = 0; i < obc.count; ++i) {
      int p = 0;
      while (obc.of_point[p] != i) ++p;
      labels[rep[A + arc_at(arcs_c, p)]] = m2 >> i & 1;
    }

    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < A; ++k) pairs.push_back({2 * A + k, 3 * A + k});
    auto terms = s.run(pairs, {{labels, Z(1)}});
    if (terms.empty()) return {};  // run stops once everything cancels

    // read the answer in the (a,c) overlay basis: final reps ascend with the
    // minimal point of each circle
    Overlay oac = overlay(ma, mc);
    std::vector<int> frep = s.reps();
    std::vector<int> order;
    for (int i = 0; i < s.n_nodes; ++i)
      if (frep[i] == i) order.push_back(i);
    std::sort(order.begin(), order.end());
    assert((int)order.size() == oac.count);
    std::map<unsigned, Z> acc;
    for (auto& [lab, coef] : terms) {
      unsigned mask = 0;
      for (int i = 0; i < (int)order.size(); ++i)
        if (lab.at(order[i])) mask |= 1u << i;
      acc[mask] += coef;
    }
    std::vector<std::pair<unsigned, Z>> out;
    for (auto& [mask, coef] : acc)
      if (coef != 0) out.push_back({mask, coef});
    return out;
  }
};

}  // namespace kht

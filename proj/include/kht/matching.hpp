// Crossingless perfect matchings of boundary points on a disk. These index
// the closures a tangle can be capped off with, and the idempotents of the
// arc algebra.
#pragma once

#include <cassert>
#include <vector>

namespace kht {

struct Matching {
  int n = 0;                // number of boundary points, even
  std::vector<int> partner;  // involution without fixed points

  Matching() = default;
  explicit Matching(std::vector<int> p) : n((int)p.size()), partner(std::move(p)) {}

  bool operator==(const Matching& o) const { return partner == o.partner; }
  bool operator<(const Matching& o) const { return partner < o.partner; }

  bool valid() const {
    if (n % 2) return false;
    for (int i = 0; i < n; ++i) {
      int j = partner[i];
      if (j < 0 || j >= n || j == i || partner[j] != i) return false;
    }
    // planar: no two chords interleave
    for (int a = 0; a < n; ++a) {
      int b = partner[a];
      if (b < a) continue;
      for (int c = a + 1; c < b; ++c) {
        int d = partner[c];
        if (d < a || d > b) return false;
      }
    }
    return true;
  }

  // arcs as (low, high) pairs ordered by their low point
  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
      if (partner[i] > i) out.push_back({i, partner[i]});
    return out;
  }

  // the matching seen after flipping the disk over (point i -> n-1-i)
  Matching reflected() const {
    Matching m;
    m.n = n;
    m.partner.resize(n);
    for (int i = 0; i < n; ++i) m.partner[n - 1 - i] = n - 1 - partner[i];
    return m;
  }

  static void enumerate_into(std::vector<int>& partner, std::vector<Matching>& out) {
    int n = (int)partner.size();
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (partner[i] < 0) {
        first = i;
        break;
      }
    if (first < 0) {
      out.push_back(Matching(partner));
      return;
    }
    // pairing the first free point with j splits the rest into two
    // independent sides; only planar choices recurse
    for (int j = first + 1; j < n; ++j) {
      if (partner[j] >= 0) continue;
      bool ok = true;
      for (int k = first + 1; k < j && ok; ++k)
        if (partner[k] >= 0 && (partner[k] < first || partner[k] > j)) ok = false;
      if (!ok) continue;
      bool gap_even = (j - first - 1) % 2 == 0;
      if (!gap_even) continue;
      partner[first] = j;
      partner[j] = first;
      enumerate_into(partner, out);
      partner[first] = partner[j] = -1;
    }
  }

  // all planar matchings of n points, Catalan(n/2) of them, in a stable order
  static std::vector<Matching> all(int n) {
    assert(n >= 0 && n % 2 == 0);
    std::vector<Matching> out;
    if (n == 0) {
      out.push_back(Matching(std::vector<int>{}));
      return out;
    }
    std::vector<int> partner(n, -1);
    enumerate_into(partner, out);
    // drop any non-planar stragglers from the pruned search (there are none,
    // but the check is cheap and keeps enumerate_into honest)
    std::vector<Matching> planar;
    for (auto& m : out)
      if (m.valid()) planar.push_back(m);
    return planar;
  }
};

}  // namespace kht

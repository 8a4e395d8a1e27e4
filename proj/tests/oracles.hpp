// Independent reference implementations used to pin expected values in the
// test suite. Nothing in here includes library headers on purpose: these are
// recomputed from first principles so the two sides can actually disagree.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

// Laurent polynomials in q, exponent -> coefficient. 64-bit coefficients are
// plenty for every diagram the tests touch.
typedef std::map<int, long long> Laurent;

inline Laurent mono(int exp, long long c) {
  Laurent p;
  if (c != 0) p[exp] = c;
  return p;
}

inline void add_into(Laurent& a, const Laurent& b) {
  for (const auto& [e, c] : b) {
    a[e] += c;
    if (a[e] == 0) a.erase(e);
  }
}

inline Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      r[ea + eb] += ca * cb;
      if (r[ea + eb] == 0) r.erase(ea + eb);
    }
  return r;
}

inline std::string str(const Laurent& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    long long c = it->second;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    long long a = c < 0 ? -c : c;
    int e = it->first;
    if (a != 1 || e == 0) os << a;
    if (e != 0) {
      if (a != 1) os << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

// A crossing is the cyclic list of the four edge ids around the vertex,
// counterclockwise, with slots 0 and 2 carrying the strand that passes
// underneath. Smoothing 0 reconnects (s0 s1)(s2 s3), smoothing 1 reconnects
// (s0 s3)(s1 s2).
typedef std::array<int, 4> Crossing;

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
  int classes() const {
    int k = 0;
    for (int i = 0; i < (int)parent.size(); ++i)
      if (parent[i] == i) ++k;
    return k;
  }
};

// Circles left after smoothing every crossing according to the mask bits.
// Every edge has exactly two endpoints, so the smoothed diagram is 2-regular
// and components of the edge graph are exactly the circles.
inline int circle_count(const std::vector<Crossing>& cs, unsigned mask, int n_edges) {
  DSU dsu(n_edges);
  for (size_t i = 0; i < cs.size(); ++i) {
    const Crossing& x = cs[i];
    if (mask >> i & 1) {
      dsu.join(x[0], x[3]);
      dsu.join(x[1], x[2]);
    } else {
      dsu.join(x[0], x[1]);
      dsu.join(x[2], x[3]);
    }
  }
  // find() path-compresses, so flush before counting roots
  for (int e = 0; e < n_edges; ++e) dsu.find(e);
  return dsu.classes();
}

// Kauffman state sum, normalized so a crossing-free loop contributes q + 1/q
// and Reidemeister moves leave the value alone. `positives` is the number of
// positive crossings in the diagram.
inline Laurent jones(const std::vector<Crossing>& cs, int positives, int n_edges,
                     int free_loops = 0) {
  const int n = (int)cs.size();
  const Laurent delta = [] {
    Laurent d;
    d[1] = 1;
    d[-1] = 1;
    return d;
  }();
  Laurent total;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int ones = 0;
    for (int i = 0; i < n; ++i) ones += mask >> i & 1;
    int circles = circle_count(cs, mask, n_edges) + free_loops;
    Laurent term = mono(-ones, (ones & 1) ? -1 : 1);
    for (int i = 0; i < circles; ++i) term = mul(term, delta);
    add_into(total, term);
  }
  Laurent norm = mono(2 * n - 3 * positives, ((n - positives) & 1) ? -1 : 1);
  return mul(norm, total);
}

// ---- planar matchings ------------------------------------------------------

namespace detail {
inline bool chords_cross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

inline void all_matchings(std::vector<int>& partner, long long& count) {
  int first = -1;
  const int m = (int)partner.size();
  for (int i = 0; i < m; ++i)
    if (partner[i] < 0) {
      first = i;
      break;
    }
  if (first < 0) {
    // complete matching: reject if any two chords cross
    for (int a = 0; a < m; ++a)
      for (int c = a + 1; c < m; ++c) {
        if (partner[a] < a || partner[c] < c) continue;
        if (chords_cross(a, partner[a], c, partner[c])) return;
      }
    ++count;
    return;
  }
  for (int j = first + 1; j < m; ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = j;
    partner[j] = first;
    all_matchings(partner, count);
    partner[first] = partner[j] = -1;
  }
}
}  // namespace detail

// Number of crossingless perfect matchings of 2n points on a disk boundary,
// counted the dumb way: enumerate every perfect matching, drop the crossing
// ones.
inline long long noncrossing_count(int n) {
  std::vector<int> partner(2 * n, -1);
  long long count = 0;
  detail::all_matchings(partner, count);
  return count;
}

// ---- small braid-closure diagrams in the crossing encoding above ----------
// Two-strand closures: edges 0,1 run up the left column, 2,3 up the right,
// indices increasing with height and wrapping around.

inline std::vector<Crossing> closure_sigma1_cubed() {
  // positive trefoil, writhe +3
  return {{{5, 3, 0, 2}}, {{3, 4, 1, 0}}, {{4, 5, 2, 1}}};
}

inline std::vector<Crossing> closure_sigma1_inv_cubed() {
  // negative trefoil, writhe -3
  return {{{2, 5, 3, 0}}, {{0, 3, 4, 1}}, {{1, 4, 5, 2}}};
}

inline std::vector<Crossing> closure_sigma1_squared() {
  // positive Hopf link, writhe +2
  return {{{3, 2, 0, 1}}, {{2, 3, 1, 0}}};
}

inline std::vector<Crossing> closure_sigma1_sigma1_inv() {
  // Reidemeister 2 pair, closes to a two-component unlink
  return {{{3, 2, 0, 1}}, {{0, 2, 3, 1}}};
}

inline std::vector<Crossing> kink_positive() {
  // one-crossing unknot, writhe +1; edge 0 is the strand, edge 1 the loop
  return {{{0, 0, 1, 1}}};
}

inline std::vector<Crossing> kink_negative() {
  // one-crossing unknot, writhe -1
  return {{{0, 1, 1, 0}}};
}

}  // namespace oracle

// State-sum evaluation of the Jones polynomial for closed diagrams, in the
// same normalization the homology tables decategorify to.
#pragma once

#include <cassert>

#include "kht/complex.hpp"
#include "kht/intmath.hpp"
#include "kht/tangle.hpp"

namespace kht {

inline Laurent jones(const Tangle& t) {
  assert(t.boundary == 0);
  int n = t.n_crossings();
  int p = t.positive;
  Laurent total;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int w = 0;
    for (int j = 0; j < n; ++j) w += mask >> j & 1;
    ClosedState st = closed_state(t, mask, nullptr);
    Laurent term = delta_pow(st.circles());
    Z sign = (w % 2 == 0) ? 1 : -1;
    total += term * Laurent::mono(-w, sign);
  }
  Z front = ((n - p) % 2 == 0) ? 1 : -1;
  return total * Laurent::mono(2 * n - 3 * p, front);
}

// alternating sum of free ranks; torsion does not contribute
inline Laurent graded_euler(const HomologyTable& table) {
  Laurent e;
  for (const auto& [hq, g] : table) {
    if (g.free_rank == 0) continue;
    Z sign = (hq.first % 2 == 0) ? g.free_rank : -g.free_rank;
    e += Laurent::mono(hq.second, sign);
  }
  return e;
}

}  // namespace kht

#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "kht/arc_algebra.hpp"

using namespace kht;

namespace {

using Elem = std::map<unsigned, Z>;  // sparse element of one hom space

Elem mul(const ArcAlgebra& alg, int a, int b, int c, const Elem& x, const Elem& y) {
  Elem out;
  for (auto& [m1, c1] : x)
    for (auto& [m2, c2] : y)
      for (auto& [m, k] : alg.multiply(a, b, c, m1, m2)) {
        out[m] += c1 * c2 * k;
        if (out[m] == 0) out.erase(m);
      }
  return out;
}

}  // namespace

TEST_CASE("two point algebra is the dotted circle") {
  ArcAlgebra alg(2);
  REQUIRE(alg.n_caps() == 1);
  REQUIRE(alg.rank(0, 0) == 2);
  // q: unit at -1+1 = 0... the circle labeled 1 sits in degree 0 after the
  // global shift, the dotted one two higher
  CHECK(alg.q_of(0, 0, 0) == 0);
  CHECK(alg.q_of(0, 0, 1) == 2);

  auto e = alg.multiply(0, 0, 0, 0, 0);
  REQUIRE(e.size() == 1);
  CHECK(e[0].first == 0u);
  CHECK(e[0].second == 1);
  auto x = alg.multiply(0, 0, 0, 0, 1);
  REQUIRE(x.size() == 1);
  CHECK(x[0].first == 1u);
  auto xx = alg.multiply(0, 0, 0, 1, 1);
  CHECK(xx.empty());  // X^2 = 0
}

TEST_CASE("four point algebra has total rank 12") {
  ArcAlgebra alg(4);
  REQUIRE(alg.n_caps() == 2);
  int total = 0;
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) total += alg.rank(b, c);
  CHECK(total == 12);
  // diagonal homs see two circles, off-diagonal one
  for (int b = 0; b < 2; ++b)
    for (int c = 0; c < 2; ++c) CHECK(alg.hom_circles(b, c).count == (b == c ? 2 : 1));
}

TEST_CASE("units are idempotent, degree zero, and neutral") {
  for (int n : {2, 4, 6}) {
    ArcAlgebra alg(n);
    for (int b = 0; b < alg.n_caps(); ++b) {
      CHECK(alg.q_of(b, b, alg.unit_mask()) == 0);
      auto ee = alg.multiply(b, b, b, alg.unit_mask(), alg.unit_mask());
      REQUIRE(ee.size() == 1);
      CHECK(ee[0].first == alg.unit_mask());
      CHECK(ee[0].second == 1);
    }
    for (int b = 0; b < alg.n_caps(); ++b)
      for (int c = 0; c < alg.n_caps(); ++c) {
        int r = alg.hom_circles(b, c).count;
        for (unsigned m = 0; m < (1u << r); ++m) {
          auto left = alg.multiply(b, b, c, alg.unit_mask(), m);
          REQUIRE(left.size() == 1);
          CHECK(left[0].first == m);
          CHECK(left[0].second == 1);
          auto right = alg.multiply(b, c, c, m, alg.unit_mask());
          REQUIRE(right.size() == 1);
          CHECK(right[0].first == m);
          CHECK(right[0].second == 1);
        }
      }
  }
}

TEST_CASE("multiplication preserves q") {
  for (int n : {2, 4, 6}) {
    ArcAlgebra alg(n);
    for (int a = 0; a < alg.n_caps(); ++a)
      for (int b = 0; b < alg.n_caps(); ++b)
        for (int c = 0; c < alg.n_caps(); ++c) {
          int r1 = alg.hom_circles(a, b).count, r2 = alg.hom_circles(b, c).count;
          for (unsigned m1 = 0; m1 < (1u << r1); ++m1)
            for (unsigned m2 = 0; m2 < (1u << r2); ++m2) {
              int q = alg.q_of(a, b, m1) + alg.q_of(b, c, m2);
              for (auto& [m, k] : alg.multiply(a, b, c, m1, m2)) {
                CHECK(alg.q_of(a, c, m) == q);
                // never negative; a handle on the composite surface doubles a
                // term, and with three middle arcs at most one handle can form
                CHECK((k == 1 || k == 2));
              }
            }
        }
  }
}

TEST_CASE("associativity") {
  // exhaustive on four points
  {
    ArcAlgebra alg(4);
    int C = alg.n_caps();
    for (int a = 0; a < C; ++a)
      for (int b = 0; b < C; ++b)
        for (int c = 0; c < C; ++c)
          for (int d = 0; d < C; ++d) {
            int r1 = alg.hom_circles(a, b).count;
            int r2 = alg.hom_circles(b, c).count;
            int r3 = alg.hom_circles(c, d).count;
            for (unsigned m1 = 0; m1 < (1u << r1); ++m1)
              for (unsigned m2 = 0; m2 < (1u << r2); ++m2)
                for (unsigned m3 = 0; m3 < (1u << r3); ++m3) {
                  Elem x{{m1, Z(1)}}, y{{m2, Z(1)}}, z{{m3, Z(1)}};
                  Elem xy_z = mul(alg, a, c, d, mul(alg, a, b, c, x, y), z);
                  Elem x_yz = mul(alg, a, b, d, x, mul(alg, b, c, d, y, z));
                  CHECK(xy_z == x_yz);
                }
          }
  }
  // sampled on six points
  {
    ArcAlgebra alg(6);
    std::mt19937 rng(20240815);
    int C = alg.n_caps();
    for (int trial = 0; trial < 1500; ++trial) {
      int a = rng() % C, b = rng() % C, c = rng() % C, d = rng() % C;
      unsigned m1 = rng() % (1u << alg.hom_circles(a, b).count);
      unsigned m2 = rng() % (1u << alg.hom_circles(b, c).count);
      unsigned m3 = rng() % (1u << alg.hom_circles(c, d).count);
      Elem x{{m1, Z(1)}}, y{{m2, Z(1)}}, z{{m3, Z(1)}};
      Elem xy_z = mul(alg, a, c, d, mul(alg, a, b, c, x, y), z);
      Elem x_yz = mul(alg, a, b, d, x, mul(alg, b, c, d, y, z));
      CHECK(xy_z == x_yz);
    }
  }
}

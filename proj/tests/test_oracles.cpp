#include "doctest.h"
#include "oracles.hpp"

// These cases pin down the reference implementations themselves. The expected
// numbers were worked out by hand (circle counts, bracket expansions) before
// any library code existed; if one of them moves, the oracle broke, not the
// library.

using oracle::Laurent;

static Laurent poly(std::initializer_list<std::pair<int, long long>> terms) {
  Laurent p;
  for (auto& [e, c] : terms) p[e] = c;
  return p;
}

TEST_CASE("noncrossing matchings follow the Catalan numbers") {
  const long long expected[] = {1, 1, 2, 5, 14, 42};
  for (int n = 0; n <= 5; ++n) CHECK(oracle::noncrossing_count(n) == expected[n]);
}

TEST_CASE("circle counts across all smoothings of small closures") {
  auto rh = oracle::closure_sigma1_cubed();
  const int rh_expected[8] = {2, 1, 1, 2, 1, 2, 2, 3};
  for (unsigned m = 0; m < 8; ++m) CHECK(oracle::circle_count(rh, m, 6) == rh_expected[m]);

  auto lh = oracle::closure_sigma1_inv_cubed();
  const int lh_expected[8] = {3, 2, 2, 1, 2, 1, 1, 2};
  for (unsigned m = 0; m < 8; ++m) CHECK(oracle::circle_count(lh, m, 6) == lh_expected[m]);

  auto hopf = oracle::closure_sigma1_squared();
  const int hopf_expected[4] = {2, 1, 1, 2};
  for (unsigned m = 0; m < 4; ++m) CHECK(oracle::circle_count(hopf, m, 4) == hopf_expected[m]);
}

TEST_CASE("state sum on unknots and unlinks") {
  Laurent unknot = poly({{1, 1}, {-1, 1}});
  CHECK(oracle::jones({}, 0, 0, 1) == unknot);
  CHECK(oracle::jones({}, 0, 0, 2) == poly({{2, 1}, {0, 2}, {-2, 1}}));

  // Reidemeister 1: both kinks still evaluate to the unknot
  CHECK(oracle::jones(oracle::kink_positive(), 1, 2) == unknot);
  CHECK(oracle::jones(oracle::kink_negative(), 0, 2) == unknot);

  // Reidemeister 2: cancelling pair closes to the two-component unlink
  CHECK(oracle::jones(oracle::closure_sigma1_sigma1_inv(), 1, 4) ==
        poly({{2, 1}, {0, 2}, {-2, 1}}));
}

TEST_CASE("state sum on Hopf link and trefoils") {
  CHECK(oracle::jones(oracle::closure_sigma1_squared(), 2, 4) ==
        poly({{0, 1}, {-2, 1}, {-4, 1}, {-6, 1}}));
  CHECK(oracle::jones(oracle::closure_sigma1_cubed(), 3, 6) ==
        poly({{-1, 1}, {-3, 1}, {-5, 1}, {-9, -1}}));
  CHECK(oracle::jones(oracle::closure_sigma1_inv_cubed(), 0, 6) ==
        poly({{1, 1}, {3, 1}, {5, 1}, {9, -1}}));
}

TEST_CASE("state sum is invariant under a braid-level R3 slide") {
  // sigma1 sigma2 sigma1 and sigma2 sigma1 sigma2 close to the same link
  // (the positive Hopf link, after sliding one strand off). Three-strand
  // closures, edges numbered column by column from the bottom.
  std::vector<oracle::Crossing> a = {
      {{2, 3, 1, 0}},  // s1: edges 0,1 left column, 2,3,4 middle, 5 right
      {{5, 5, 4, 3}},  // s2: the right strand wraps straight back onto itself
      {{4, 2, 0, 1}},  // s1 again
  };
  std::vector<oracle::Crossing> b = {
      {{5, 4, 2, 1}},  // s2: edge 0 left column, 1,2,3 middle, 4,5 right
      {{2, 3, 0, 0}},  // s1: now the left strand is the self-wrapping one
      {{4, 5, 1, 3}},  // s2 again
  };
  Laurent hopf = poly({{0, 1}, {-2, 1}, {-4, 1}, {-6, 1}});
  CHECK(oracle::jones(a, 3, 6) == hopf);
  CHECK(oracle::jones(b, 3, 6) == hopf);
}

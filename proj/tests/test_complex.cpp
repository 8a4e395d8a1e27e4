#include <optional>
#include <set>

#include "doctest.h"
#include "kht/complex.hpp"

using namespace kht;

namespace {

// 0 -> Z --k--> Z -> 0 with the source at homological degree h1, all in
// grading q
Complex two_term(int h1, int q, const Z& k) {
  Complex c;
  c.init_levels(h1 - 1, 2);
  c.qs[0] = {q};
  c.qs[1] = {q};
  c.d[1] = Mat(1, 1);
  c.d[1].at(0, 0) = k;
  c.seal();
  return c;
}

Complex point(int h, int q) {
  Complex c;
  c.init_levels(h, 1);
  c.qs[0] = {q};
  c.seal();
  return c;
}

}  // namespace

TEST_CASE("homology of small complexes") {
  Complex c = two_term(1, 5, Z(2));
  CHECK(c.validate().empty());
  auto t = homology(c);
  REQUIRE(t.size() == 1);
  CHECK(t.at({0, 5}) == Group{0, {Z(2)}});

  Complex id = two_term(0, -3, Z(1));
  CHECK(homology(id).empty());

  Complex p = point(4, 7);
  auto tp = homology(p);
  REQUIRE(tp.size() == 1);
  CHECK(tp.at({4, 7}) == Group{1, {}});
}

TEST_CASE("shift moves the table") {
  Complex c = two_term(1, 5, Z(2)).shifted(3, -2);
  auto t = homology(c);
  REQUIRE(t.size() == 1);
  CHECK(t.at({3, 3}) == Group{0, {Z(2)}});
}

TEST_CASE("cones") {
  Complex a = point(0, 0), b = point(0, 0);

  ChainMap two = zero_map(a, b, 0);
  two.m[0].at(0, 0) = 2;
  CHECK(validate_map(two, a, b).empty());
  Complex cn = cone(two, a, b);
  CHECK(cn.validate().empty());
  auto t = homology(cn);
  REQUIRE(t.size() == 1);
  CHECK(t.at({0, 0}) == Group{0, {Z(2)}});

  ChainMap one = zero_map(a, b, 0);
  one.m[0].at(0, 0) = 1;
  CHECK(homology(cone(one, a, b)).empty());

  // cone of the zero map is the direct sum with the source pushed up one
  ChainMap z = zero_map(a, b, 0);
  auto tz = homology(cone(z, a, b));
  REQUIRE(tz.size() == 2);
  CHECK(tz.at({0, 0}) == Group{1, {}});
  CHECK(tz.at({1, 0}) == Group{1, {}});
}

TEST_CASE("tensor with Koszul signs squares to zero and satisfies Kunneth") {
  Complex a = two_term(1, 0, Z(2));
  Complex t = tensor(a, a);
  CHECK(t.validate().empty());  // d^2 = 0 forces the sign to be right
  auto h = homology(t);
  REQUIRE(h.size() == 2);
  CHECK(h.at({0, 0}) == Group{0, {Z(2)}});  // Z/2 tensor Z/2
  CHECK(h.at({1, 0}) == Group{0, {Z(2)}});  // Tor(Z/2, Z/2)

  // q gradings add
  Complex b = two_term(0, 3, Z(1)).shifted(0, 0);
  Complex tb = tensor(a.shifted(0, 2), b);
  CHECK(tb.validate().empty());
  for (int l = 0; l < tb.levels(); ++l)
    for (int q : tb.qs[l]) CHECK(q == 5);
}

TEST_CASE("homotopy detection") {
  // contractible complex: identity is null-homotopic
  Complex a = two_term(1, 0, Z(1));
  ChainMap f = identity_map(a);
  ChainMap g = zero_map(a, a, 0);
  CHECK(homotopic_with_sign(f, g, a, a, 1));
  CHECK(homotopic_with_sign(f, f, a, a, 1));

  // a stiff complex: identity is not null-homotopic, and not homotopic to
  // minus itself
  Complex p = point(0, 0);
  ChainMap ip = identity_map(p);
  ChainMap zp = zero_map(p, p, 0);
  CHECK(!homotopic_with_sign(ip, zp, p, p, 1));
  auto s = equal_up_to_sign_and_homotopy(ip, zp, p, p);
  CHECK(!s.has_value());
  auto s2 = equal_up_to_sign_and_homotopy(ip, ip, p, p);
  REQUIRE(s2.has_value());
  CHECK(*s2 == 1);

  // f = -g detected with the sign reported
  ChainMap mip = scale_map(ip, Z(-1));
  auto s3 = equal_up_to_sign_and_homotopy(ip, mip, p, p);
  REQUIRE(s3.has_value());
  CHECK(*s3 == -1);

  // multiplication by 2 on Z/2-ish cone is homotopic to zero only when it is
  Complex c2 = two_term(1, 0, Z(2));
  ChainMap dbl = scale_map(identity_map(c2), Z(2));
  // 2*id = dH + Hd with H the obvious degree-one map (2 = d(1), d is 2)
  CHECK(homotopic_with_sign(dbl, zero_map(c2, c2, 0), c2, c2, 1));
  CHECK(!homotopic_with_sign(identity_map(c2), zero_map(c2, c2, 0), c2, c2, 1));
}

TEST_CASE("quotient by a free subcomplex") {
  // Z^2 --id--> Z^2, kill the diagonal copy on both ends
  Complex c;
  c.init_levels(0, 2);
  c.qs[0] = {0, 0};
  c.qs[1] = {0, 0};
  c.d[1] = Mat::identity(2);
  c.seal();

  std::vector<Mat> rel(2);
  rel[0] = Mat(2, 1);
  rel[0].at(0, 0) = 1;
  rel[0].at(1, 0) = 1;
  rel[1] = rel[0];
  QuotientComplex qc = quotient_by(c, rel);
  CHECK(qc.quo.validate().empty());
  CHECK(qc.quo.total_dim() == 2);
  CHECK(homology(qc.quo).empty());
  // proj . section = identity on the quotient
  for (int l = 0; l < 2; ++l) {
    Mat ps = qc.proj[l] * qc.section[l];
    CHECK(ps == Mat::identity(qc.quo.dim(l)));
  }

  // mixed q: relations stay inside one grading each
  Complex m;
  m.init_levels(0, 1);
  m.qs[0] = {1, 3, 1};
  m.seal();
  std::vector<Mat> rel2(1);
  rel2[0] = Mat(3, 1);
  rel2[0].at(0, 0) = 1;
  rel2[0].at(2, 0) = -1;
  QuotientComplex q2 = quotient_by(m, rel2);
  CHECK(q2.quo.total_dim() == 2);
  std::multiset<int> got(q2.quo.qs[0].begin(), q2.quo.qs[0].end());
  CHECK(got == std::multiset<int>{1, 3});
}

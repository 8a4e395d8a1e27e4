#include <doctest.h>

#include "kht/diagrams.hpp"
#include "kht/duality.hpp"

using namespace kht;

TEST_CASE("endomorphisms of a cap module form the one circle algebra") {
  // maps from the arc to itself: a rank one piece in each of the two label
  // degrees, nothing anywhere else, and no differential to quotient by
  TangleModule M = build_module(cap_tangle(Matching({1, 0})));
  ModuleHomComplex H = module_hom_complex(M, M);
  HomologyTable h = homology(H.cx);
  HomologyTable want = {{{0, 0}, Group{1, {}}}, {{0, 2}, Group{1, {}}}};
  CHECK(h == want);
}

TEST_CASE("the identity is a generator of the degree zero endomorphisms") {
  for (const Tangle& t : {cap_tangle(Matching({1, 0})), kinked_arc(true),
                          cap_tangle(Matching({1, 0, 3, 2})), cap_tangle(Matching({3, 2, 1, 0}))}) {
    TangleModule M = build_module(t);
    ModuleHomComplex H = module_hom_complex(M, M);
    MapClass idc = module_map_class(H, M, M, identity_module_map(M));
    CHECK(idc.group == Group{1, std::vector<Z>{}});
    REQUIRE(idc.coords.free_part.size() == 1);
    CHECK((idc.coords.free_part[0] == 1 || idc.coords.free_part[0] == -1));
    CHECK(idc.coords.torsion_part.empty());
  }
}

TEST_CASE("hom complexes into the cap modules recover the mirror") {
  std::vector<std::string> why;
  CHECK(duality_match(cap_tangle(Matching({1, 0})), &why));
  CHECK(duality_match(kinked_arc(true), &why));
  CHECK(duality_match(kinked_arc(false), &why));
  CHECK(duality_match(cap_tangle(Matching({1, 0, 3, 2})), &why));
  CHECK(duality_match(kinked_cap(Matching({3, 2, 1, 0}), 0, true), &why));
  if (!why.empty()) {
    for (const auto& w : why) MESSAGE(w);
  }
  CHECK(why.empty());
}

TEST_CASE("a hom complex differential squares to zero on a kinked source") {
  TangleModule M = build_module(kinked_arc(true));
  TangleModule R = build_module(cap_tangle(Matching({1, 0})));
  ModuleHomComplex H = module_hom_complex(M, R);
  CHECK(H.cx.validate().empty());
  // the kink spreads the source over two h levels, so maps live in two
  // degrees before homology collapses them to the reduced answer
  CHECK(H.cx.levels() >= 2);
  HomologyTable h = homology(H.cx);
  HomologyTable want = {{{0, 0}, Group{1, {}}}, {{0, 2}, Group{1, {}}}};
  CHECK(h == want);
}

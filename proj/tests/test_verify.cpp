#include <doctest.h>

#include "kht/verify.hpp"

using namespace kht;

namespace {

void require_clean(const VerificationReport& rep) {
  for (const auto& c : rep.checks) {
    INFO(rep.suite, ": ", c.name, " -- ", c.detail);
    CHECK(c.pass);
  }
  CHECK(rep.all_passed());
}

}  // namespace

TEST_CASE("surface values") { require_clean(verify_surfaces()); }

TEST_CASE("movie move library, including the corrupted controls") {
  VerificationReport rep = verify_movie_moves();
  require_clean(rep);
  int controls = 0;
  for (const auto& c : rep.checks)
    if (c.name.rfind("control:", 0) == 0) ++controls;
  CHECK(controls == 2);
}

TEST_CASE("neck cutting") { require_clean(verify_neckcut()); }

TEST_CASE("ribbon retractions") { require_clean(verify_ribbon()); }

TEST_CASE("rigidity of bridge closures") { require_clean(verify_rigidity()); }

TEST_CASE("duality suite") { require_clean(verify_duality()); }

TEST_CASE("euler characteristics") { require_clean(verify_euler(7)); }

TEST_CASE("random gluings") { require_clean(verify_gluing(11)); }

TEST_CASE("unknown suite names fail gracefully") {
  VerificationReport rep = verify_suite("nonsense");
  CHECK(!rep.all_passed());
  CHECK(rep.checks.size() == 1);
}

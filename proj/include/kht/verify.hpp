// Structural checks that exercise the whole engine end to end: movie move
// invariance, closed surface values, neck cutting, ribbon retractions,
// rigidity of bridge closures, duality against the mirror, random gluings,
// and Euler characteristics against the skein oracle. Each suite returns a
// report of named pass/fail verdicts; deliberately corrupted inputs are
// expected to fail and are scored accordingly.
#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kht/cobordism.hpp"
#include "kht/diagrams.hpp"
#include "kht/duality.hpp"
#include "kht/gluing.hpp"
#include "kht/jones.hpp"

namespace kht {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failed_count() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
};

// ---- building movies frame by frame -------------------------------------------

struct MovieBuilder {
  Tangle cur;
  std::vector<MovieStep> steps;

  explicit MovieBuilder(Tangle start) : cur(std::move(start)) {}

  MovieBuilder& add(MovieStep s) {
    cur = step_target(cur, s);
    steps.push_back(std::move(s));
    return *this;
  }
  MovieBuilder& birth() { return add(birth_step()); }
  MovieBuilder& death(int loop) { return add(death_step(loop)); }
  MovieBuilder& dot(int ref) { return add(dot_step(ref)); }
  MovieBuilder& saddle(int r1, int r2, bool swap = false) {
    return add(saddle_step(r1, r2, swap));
  }
  MovieBuilder& r1_add(int e, bool positive) { return add(r1_add_step(cur, e, positive)); }
  MovieBuilder& r1_drop(int j, bool positive) { return add(r1_drop_step(cur, j, positive)); }
  MovieBuilder& r2_add(int ea, int eb, bool swap_a = false, bool swap_b = false,
                       bool first_over = true) {
    return add(r2_add_step(cur, ea, eb, swap_a, swap_b, first_over));
  }
  MovieBuilder& r2_drop(int j1, int j2) { return add(r2_drop_step(cur, j1, j2)); }
};

namespace verify_detail {

struct MoviePair {
  std::string name;
  Tangle start;
  std::vector<MovieStep> left, right;
  bool expect = true;  // corrupted controls flip this
};

inline std::string sign_word(int s) { return s > 0 ? "+1" : "-1"; }

// compare two movies out of the same diagram up to one global sign and chain
// homotopy across every cap
inline void movie_pair_check(VerificationReport& rep, const MoviePair& mp) {
  MovieResult L = run_movie(mp.start, mp.left);
  MovieResult R = run_movie(mp.start, mp.right);
  bool same = true;
  std::string detail;
  if (!(L.frames.back() == R.frames.back())) {
    same = false;
    detail = "movies end at different diagrams";
  } else if (L.map.dq != R.map.dq) {
    same = false;
    detail = "surface degrees differ";
  } else {
    TangleModule A = build_module(mp.start);
    TangleModule B = build_module(L.frames.back());
    auto sign = module_maps_equal_up_to_sign(L.map, R.map, A, B);
    if (sign) {
      detail = "homotopic, global sign " + sign_word(*sign);
    } else {
      same = false;
      detail = "no single sign homotopy";
    }
  }
  rep.add(mp.name, same == mp.expect, detail);
}

inline std::vector<MoviePair> movie_move_cases() {
  std::vector<MoviePair> cases;
  const Tangle curl{0, {{0, 1, 1, 0}}, {}, 0, 0};
  const Tangle arc{2, {}, {0, 0}, 0, 0};
  const Tangle two_strands{4, {}, {0, 1, 1, 0}, 0, 0};
  const Tangle loop1{0, {}, {}, 1, 0};
  const Tangle loops2{0, {}, {}, 2, 0};
  const Tangle loops3{0, {}, {}, 3, 0};

  for (bool pos : {true, false}) {
    MovieBuilder b(curl);
    b.r1_add(0, pos).r1_drop(1, pos);
    cases.push_back({std::string("closed strand: ") + (pos ? "positive" : "negative") +
                         " kink added and removed",
                     curl, b.steps, {}, true});
  }
  for (bool pos : {true, false}) {
    MovieBuilder b(arc);
    b.r1_add(0, pos).r1_drop(0, pos);
    cases.push_back({std::string("open arc: ") + (pos ? "positive" : "negative") +
                         " kink added and removed",
                     arc, b.steps, {}, true});
  }
  {
    MovieBuilder b(two_strands);
    b.r2_add(0, 1).r2_drop(0, 1);
    cases.push_back(
        {"two strands pushed across each other and back", two_strands, b.steps, {}, true});
  }
  {
    MovieBuilder b(loop1);
    b.saddle(0, 0).death(1);
    cases.push_back({"pinching off a circle and capping it", loop1, b.steps, {}, true});
  }
  {
    MovieBuilder l(loops3), r(loops3);
    l.saddle(0, 1).dot(1);
    r.dot(2).saddle(0, 1);
    cases.push_back({"merge and a distant dot commute", loops3, l.steps, r.steps, true});
  }
  {
    MovieBuilder l(loops2), r(loops2);
    l.birth().saddle(0, 1);
    r.saddle(0, 1).birth();
    cases.push_back({"birth and a distant merge commute", loops2, l.steps, r.steps, true});
  }
  {
    Tangle tre = trefoil_right();
    MovieBuilder l(tre), r(tre);
    l.dot(tre.crossings[0][0]);
    r.dot(tre.crossings[0][2]);
    cases.push_back({"a dot slides under a crossing", tre, l.steps, r.steps, true});
  }
  {
    MovieBuilder l(loop1);
    l.dot(0);
    cases.push_back({"control: an extra dot must not pass", loop1, l.steps, {}, false});
  }
  {
    MovieBuilder l(loops2), r(loops2);
    l.death(1);
    r.death(0);
    cases.push_back(
        {"control: capping different circles must not pass", loops2, l.steps, r.steps, false});
  }
  return cases;
}

}  // namespace verify_detail

inline VerificationReport verify_movie_moves() {
  VerificationReport rep;
  rep.suite = "movie-moves";
  for (const auto& mp : verify_detail::movie_move_cases())
    verify_detail::movie_pair_check(rep, mp);
  return rep;
}

// ---- closed surfaces ----------------------------------------------------------

inline VerificationReport verify_surfaces() {
  VerificationReport rep;
  rep.suite = "surfaces";
  const Tangle empty{0, {}, {}, 0, 0};

  {
    MovieBuilder b(empty);
    b.birth().saddle(0, 0).saddle(0, 1).death(0);
    MovieResult m = run_movie(empty, b.steps);
    Z v = m.map.per_cap[0].m[0].at(0, 0);
    std::ostringstream os;
    os << "value " << v.str();
    rep.add("a torus evaluates to plus or minus two", v == 2 || v == -2, os.str());
  }
  for (int k = 0; k <= 3; ++k) {
    MovieBuilder b(empty);
    b.birth();
    for (int i = 0; i < k; ++i) b.dot(0);
    b.death(0);
    MovieResult m = run_movie(empty, b.steps);
    Z v = m.map.per_cap[0].m[0].at(0, 0);
    bool ok = k == 1 ? (v == 1 || v == -1) : v == 0;
    std::ostringstream os;
    os << "value " << v.str();
    rep.add("a sphere with " + std::to_string(k) + (k == 1 ? " dot" : " dots"), ok, os.str());
  }
  return rep;
}

// ---- neck cutting -------------------------------------------------------------

inline VerificationReport verify_neckcut() {
  VerificationReport rep;
  rep.suite = "neckcut";

  struct Inst {
    std::string name;
    Tangle start;
  };
  Tangle beside_trefoil = trefoil_right();
  beside_trefoil.free_loops = 1;
  Tangle beside_caps = cap_tangle(Matching({1, 0, 3, 2}));
  beside_caps.free_loops = 1;
  std::vector<Inst> insts = {
      {"a bare circle", Tangle{0, {}, {}, 1, 0}},
      {"a circle beside a trefoil", beside_trefoil},
      {"a circle beside two open caps", beside_caps},
  };

  for (const auto& inst : insts) {
    const Tangle& t = inst.start;
    const int ref = t.n_edges();  // the single free loop sits after the edges
    MovieBuilder plus(t), minus(t);
    plus.dot(ref).death(0).birth();
    minus.death(0).birth().dot(ref);
    MovieResult id_movie = run_movie(t, {});
    MovieResult mp = run_movie(t, plus.steps);
    MovieResult mm = run_movie(t, minus.steps);
    TangleModule A = build_module(t);

    std::optional<std::pair<int, int>> found;
    for (int s1 : {1, -1}) {
      for (int s2 : {1, -1}) {
        ModuleMap cand = add_maps(scale_map(mp.map, Z(s1)), scale_map(mm.map, Z(s2)));
        auto g = module_maps_equal_up_to_sign(id_movie.map, cand, A, A);
        if (g) {
          found = {*g * s1, *g * s2};
          break;
        }
      }
      if (found) break;
    }
    std::string detail = found ? "identity is " + verify_detail::sign_word(found->first) +
                                     " dotted half " + verify_detail::sign_word(found->second) +
                                     " other half"
                               : "no sign combination works";
    rep.add("cutting the neck around " + inst.name, found.has_value(), detail);
  }
  return rep;
}

// ---- ribbon retractions -------------------------------------------------------

inline VerificationReport verify_ribbon() {
  VerificationReport rep;
  rep.suite = "ribbon";

  struct Inst {
    std::string name;
    Tangle start;
    std::vector<MovieStep> fwd, rev;
  };
  std::vector<Inst> insts;

  {
    Tangle t{0, {}, {}, 1, 0};
    MovieBuilder f(t);
    f.birth().saddle(0, 1);
    MovieBuilder r(f.cur);
    r.saddle(0, 0).death(1);
    insts.push_back({"fusing a split off circle back in", t, f.steps, r.steps});
  }
  {
    Tangle t{4, {}, {0, 1, 1, 0}, 0, 0};
    MovieBuilder f(t);
    f.birth().saddle(0, 2).r2_add(0, 1);
    MovieBuilder r(f.cur);
    r.r2_drop(0, 1).saddle(0, 0).death(0);
    insts.push_back({"a fusion followed by a strand slide", t, f.steps, r.steps});
  }
  {
    Tangle t{0, {}, {}, 2, 0};
    MovieBuilder f(t);
    f.birth().saddle(0, 2);
    MovieBuilder r(f.cur);
    r.saddle(0, 0).death(2);
    insts.push_back({"fusing into one component of an unlink", t, f.steps, r.steps});
  }

  for (const auto& inst : insts) {
    bool shape = true;
    for (const auto& s : inst.fwd)
      if (s.kind == MovieStep::Kind::Death || s.kind == MovieStep::Kind::Dot) shape = false;

    MovieResult fwd = run_movie(inst.start, inst.fwd);
    MovieResult rev = run_movie(fwd.frames.back(), inst.rev);
    bool closes = rev.frames.back() == inst.start;
    std::string detail;
    bool pass = false;
    if (!shape) {
      detail = "movie is not built from births, saddles and slides";
    } else if (!closes) {
      detail = "retraction does not return to the start";
    } else {
      TangleModule A = build_module(inst.start);
      ModuleMap round = compose(rev.map, fwd.map);
      auto sign = module_maps_equal_up_to_sign(round, identity_module_map(A), A, A);
      pass = sign.has_value();
      detail = pass ? "retracts to " + verify_detail::sign_word(*sign) + " identity"
                    : "round trip is not homotopic to the identity";
    }
    rep.add(inst.name, pass, detail);
  }
  return rep;
}

// ---- rigidity of bridge closures ----------------------------------------------

inline VerificationReport verify_rigidity() {
  VerificationReport rep;
  rep.suite = "rigidity";

  struct Inst {
    std::string name;
    Tangle t;
    bool endo_check;
  };
  std::vector<Inst> insts;
  insts.push_back({"bare arc", cap_tangle(Matching({1, 0})), true});
  insts.push_back({"arc with a positive kink", kinked_arc(true), true});
  insts.push_back({"arc with a negative kink", kinked_arc(false), true});
  insts.push_back(
      {"arc with two opposite kinks", kink_edge(kinked_arc(true), 2, false), false});
  {
    int i = 0;
    for (const Matching& m : Matching::all(4)) {
      insts.push_back({"four point cap " + std::to_string(i), cap_tangle(m), true});
      insts.push_back({"four point cap " + std::to_string(i) + " with a kink",
                       kinked_cap(m, i % 2, i % 2 == 0), false});
      ++i;
    }
  }
  {
    int i = 0;
    for (const Matching& m : Matching::all(6))
      insts.push_back({"six point cap " + std::to_string(i++), cap_tangle(m), false});
    insts.push_back(
        {"six point cap with a kink", kinked_cap(Matching::all(6)[0], 0, true), false});
  }

  const Group z1{1, {}};
  for (const auto& inst : insts) {
    const int n = inst.t.boundary;
    GluedTangle g = glue_along_boundary(inst.t.reflected(), inst.t);
    HomologyTable h = homology(build_module(g.tangle).comp[0]);
    auto it = h.find({0, -n / 2});
    bool pass = it != h.end() && it->second == z1;
    std::string detail =
        it == h.end() ? "no homology at the marked degree" : "found " + it->second.str();
    rep.add("closure of " + inst.name, pass, detail);

    if (inst.endo_check) {
      TangleModule M = build_module(inst.t);
      ModuleHomComplex H = module_hom_complex(M, M);
      HomologySlice hs = homology_slice(H.cx, 0, 0);
      Group got{hs.data.free_rank, hs.data.torsion};
      MapClass idc = module_map_class(H, M, M, identity_module_map(M));
      bool generates = idc.coords.free_part.size() == 1 &&
                       (idc.coords.free_part[0] == 1 || idc.coords.free_part[0] == -1) &&
                       idc.coords.torsion_part.empty();
      rep.add("degree zero endomorphisms of " + inst.name,
              got == z1 && generates,
              "group " + got.str() + (generates ? ", identity generates" : ""));
    }
  }
  return rep;
}

// ---- duality against the mirror -----------------------------------------------

inline VerificationReport verify_duality() {
  VerificationReport rep;
  rep.suite = "duality";

  struct Inst {
    std::string name;
    Tangle t;
  };
  std::vector<Inst> insts;
  insts.push_back({"bare arc", cap_tangle(Matching({1, 0}))});
  insts.push_back({"arc with a positive kink", kinked_arc(true)});
  insts.push_back({"arc with a negative kink", kinked_arc(false)});
  insts.push_back({"arc with two opposite kinks", kink_edge(kinked_arc(true), 2, false)});
  insts.push_back({"arc with two positive kinks", kink_edge(kinked_arc(true), 2, true)});
  {
    int i = 0;
    for (const Matching& m : Matching::all(4)) {
      insts.push_back({"four point cap " + std::to_string(i), cap_tangle(m)});
      insts.push_back({"four point cap " + std::to_string(i) + " with a positive kink",
                       kinked_cap(m, 0, true)});
      insts.push_back({"four point cap " + std::to_string(i) + " with a negative kink",
                       kinked_cap(m, 1, false)});
      ++i;
    }
  }
  {
    Tangle clasp = r2_tangle(cap_tangle(Matching({1, 0, 3, 2})), 0, 1, false, false, true);
    if (clasp.validate().empty()) insts.push_back({"clasped caps", clasp});
  }

  for (const auto& inst : insts) {
    std::vector<std::string> why;
    bool ok = duality_match(inst.t, &why);
    rep.add("maps into the algebra from " + inst.name, ok,
            ok ? "matches the mirror" : why.empty() ? "mismatch" : why.front());
  }
  return rep;
}

// ---- random gluings -----------------------------------------------------------

inline VerificationReport verify_gluing(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "gluing";
  std::mt19937 rng((unsigned)seed);

  for (int n : {2, 4}) {
    for (int i = 0; i < 10; ++i) {
      Tangle t1 = random_tangle(rng, n, 3);
      Tangle t2 = random_tangle(rng, n, 3);
      GluingCheck gc = check_gluing(build_module(t1), build_module(t2));
      std::ostringstream os;
      os << "boundary " << n << ", " << t1.n_crossings() << "+" << t2.n_crossings()
         << " crossings";
      if (!gc.factors) os << ", does not factor";
      if (!gc.chain) os << ", not a chain map";
      if (!gc.iso) os << ", not unimodular";
      rep.add("random gluing " + std::to_string(n) + "." + std::to_string(i), gc.ok(),
              os.str());
    }
  }
  return rep;
}

// ---- Euler characteristic against the skein oracle ----------------------------

inline VerificationReport verify_euler(uint64_t seed) {
  VerificationReport rep;
  rep.suite = "euler";

  struct Inst {
    std::string name;
    Tangle t;
  };
  std::vector<Inst> insts = {
      {"unknot", unknot_diagram()},
      {"two component unlink", unlink_diagram(2)},
      {"three component unlink", unlink_diagram(3)},
      {"positive Hopf link", hopf_positive()},
      {"right trefoil", trefoil_right()},
      {"left trefoil", trefoil_left()},
      {"five one torus knot", cinquefoil()},
      {"three four torus knot", torus_3_4()},
      {"five two knot", five_two()},
      {"torus knot with a meridian", cinquefoil_with_meridian()},
  };
  std::mt19937 rng((unsigned)seed);
  for (int i = 0; i < 6; ++i)
    insts.push_back({"random closed diagram " + std::to_string(i),
                     random_closed_diagram(rng, 4)});

  for (const auto& inst : insts) {
    Laurent lhs = graded_euler(homology(build_module(inst.t).comp[0]));
    Laurent rhs = jones(inst.t);
    bool ok = lhs == rhs;
    rep.add("euler characteristic of " + inst.name, ok,
            ok ? "matches the skein bracket" : "table disagrees with the bracket");
  }
  return rep;
}

// ---- dispatch -----------------------------------------------------------------

inline VerificationReport verify_suite(const std::string& suite, uint64_t seed = 0) {
  if (suite == "movie-moves") return verify_movie_moves();
  if (suite == "surfaces") return verify_surfaces();
  if (suite == "neckcut") return verify_neckcut();
  if (suite == "ribbon") return verify_ribbon();
  if (suite == "rigidity") return verify_rigidity();
  if (suite == "duality") return verify_duality();
  if (suite == "gluing") return verify_gluing(seed);
  if (suite == "euler") return verify_euler(seed);
  if (suite == "all") {
    VerificationReport all;
    all.suite = "all";
    for (const char* s : {"movie-moves", "surfaces", "neckcut", "ribbon", "rigidity",
                          "duality", "gluing", "euler"}) {
      VerificationReport r = verify_suite(s, seed);
      for (auto& c : r.checks)
        all.checks.push_back({r.suite + ": " + c.name, c.pass, std::move(c.detail)});
    }
    return all;
  }
  VerificationReport bad;
  bad.suite = suite;
  bad.add("unknown suite", false, "no suite named " + suite);
  return bad;
}

}  // namespace kht

// Acceptance gate: one line per criterion, exit code counts the failures.
// Expected homology tables are written out in full and were computed with an
// independent state sum before being frozen here; everything else is checked
// structurally (cones, gluings, duals, movies) with no reference values.
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kht/cobordism.hpp"
#include "kht/diagrams.hpp"
#include "kht/verify.hpp"

using namespace kht;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << idx << ": " << name << "\n";
  if (!pass) {
    if (!detail.empty()) std::cout << "      " << detail << "\n";
    ++failures;
  }
}

std::string diff_tables(const HomologyTable& got, const HomologyTable& want) {
  std::ostringstream os;
  for (const auto& [hq, g] : want)
    if (!got.count(hq) || !(got.at(hq) == g))
      os << " missing (" << hq.first << "," << hq.second << ") = " << g.str();
  for (const auto& [hq, g] : got)
    if (!want.count(hq))
      os << " extra (" << hq.first << "," << hq.second << ") = " << g.str();
  return os.str();
}

struct Row {
  int h, q, free;
  std::vector<int> torsion;
};

HomologyTable table_of(const std::vector<Row>& rows) {
  HomologyTable t;
  for (const auto& r : rows) {
    Group g;
    g.free_rank = r.free;
    for (int d : r.torsion) g.torsion.push_back(d);
    t[{r.h, r.q}] = g;
  }
  return t;
}

const HomologyTable golden_unknot = table_of({{0, -1, 1, {}}, {0, 1, 1, {}}});
const HomologyTable golden_unlink2 =
    table_of({{0, -2, 1, {}}, {0, 0, 2, {}}, {0, 2, 1, {}}});
const HomologyTable golden_hopf_positive =
    table_of({{0, 0, 1, {}}, {0, -2, 1, {}}, {-2, -4, 1, {}}, {-2, -6, 1, {}}});
const HomologyTable golden_trefoil_left = table_of(
    {{0, 1, 1, {}}, {0, 3, 1, {}}, {2, 5, 1, {}}, {2, 7, 0, {2}}, {3, 9, 1, {}}});
const HomologyTable golden_trefoil_right = table_of(
    {{0, -1, 1, {}}, {0, -3, 1, {}}, {-2, -5, 1, {}}, {-3, -7, 0, {2}}, {-3, -9, 1, {}}});
const HomologyTable golden_five_two =
    table_of({{0, 1, 1, {}},
              {0, 3, 1, {}},
              {1, 3, 1, {}},
              {1, 5, 0, {2}},
              {2, 5, 1, {}},
              {2, 7, 1, {2}},
              {3, 9, 1, {}},
              {4, 9, 1, {}},
              {4, 11, 0, {2}},
              {5, 13, 1, {}}});
const HomologyTable golden_meridian_link =
    table_of({{-2, -2, 1, {}},
              {-2, 0, 1, {}},
              {0, 2, 2, {}},
              {0, 4, 1, {2}},
              {1, 6, 1, {}},
              {2, 6, 2, {}},
              {2, 8, 0, {2, 2}},
              {3, 10, 2, {}},
              {4, 10, 1, {}},
              {4, 12, 0, {2}},
              {5, 14, 1, {}}});
const HomologyTable golden_torus_3_4 = table_of({{0, 5, 1, {}},
                                                 {0, 7, 1, {}},
                                                 {2, 9, 1, {}},
                                                 {2, 11, 0, {2}},
                                                 {3, 13, 1, {}},
                                                 {4, 11, 1, {}},
                                                 {4, 13, 1, {}},
                                                 {5, 15, 1, {}},
                                                 {5, 17, 1, {}}});

void criterion_golden_tables() {
  struct Inst {
    const char* name;
    Tangle t;
    const HomologyTable* want;
  };
  std::vector<Inst> insts = {
      {"unknot", unknot_diagram(), &golden_unknot},
      {"unlink2", unlink_diagram(2), &golden_unlink2},
      {"hopf+", hopf_positive(), &golden_hopf_positive},
      {"trefoil left", trefoil_left(), &golden_trefoil_left},
      {"trefoil right", trefoil_right(), &golden_trefoil_right},
      {"five_two", five_two(), &golden_five_two},
      {"cinquefoil with meridian", cinquefoil_with_meridian(), &golden_meridian_link},
      {"torus(3,4)", torus_3_4(), &golden_torus_3_4},
  };
  bool ok = true;
  std::string detail;
  for (const auto& inst : insts) {
    HomologyTable got = homology(build_module(inst.t).comp[0]);
    if (!(got == *inst.want)) {
      ok = false;
      detail += std::string(inst.name) + ":" + diff_tables(got, *inst.want) + "; ";
    }
  }
  report(1, "integer homology matches the frozen tables", ok, detail);
}

void criterion_resolving_cone() {
  Tangle t34 = torus_3_4();
  const auto x = t34.crossings.back();
  const int jlast = t34.n_crossings() - 1;

  DerivedTangle d0 = resolve_crossing(t34, jlast, 0);
  Tangle k0 = d0.tangle;
  k0.positive = 2;
  int ra = d0.node_map[x[0]], rb = d0.node_map[x[2]];

  // the band at the removed crossing can close up two ways; the right one
  // reproduces the other smoothing's circle counts in every state
  DerivedTangle d1 = resolve_crossing(t34, jlast, 1);
  Tangle k1ref = d1.tangle;
  k1ref.positive = 2;
  Tangle k1;
  bool found = false;
  for (bool sw : {false, true}) {
    Tangle cand = saddle_result(k0, ra, rb, sw);
    bool same = true;
    for (unsigned v = 0; v < (1u << k0.n_crossings()) && same; ++v)
      same = closed_state(cand, v, nullptr).circles() ==
             closed_state(k1ref, v, nullptr).circles();
    if (same && !found) {
      k1 = cand;
      found = true;
    }
  }
  if (!found) {
    report(2, "the two smoothings assemble to the full knot", false,
           "no band closure matches the other smoothing");
    return;
  }

  TangleModule M0 = build_module(k0), M1 = build_module(k1);
  if (!(homology(M1.comp[0]) == golden_meridian_link)) {
    report(2, "the two smoothings assemble to the full knot", false,
           "band closure has the wrong homology:" +
               diff_tables(homology(M1.comp[0]), golden_meridian_link));
    return;
  }

  // the surgery raises q by one; shifting the source makes it degree zero
  ChainMap f = saddle_map(M0, M1, ra, rb).per_cap[0];
  Complex src = M0.comp[0].shifted(0, 1);
  f.dq = 0;
  auto errs = validate_map(f, src, M1.comp[0]);
  if (!errs.empty()) {
    report(2, "the two smoothings assemble to the full knot", false, errs.front());
    return;
  }

  HomologyTable got = homology(cone(f, src, M1.comp[0]));
  HomologyTable want;
  for (const auto& [hq, g] : golden_torus_3_4) want[{hq.first - 2, hq.second - 7}] = g;
  report(2, "the two smoothings assemble to the full knot", got == want,
         diff_tables(got, want));
}

void criterion_from_suite(int idx, const std::string& name, const VerificationReport& rep,
                          int min_checks = 1) {
  std::string detail;
  for (const auto& c : rep.checks)
    if (!c.pass) detail += c.name + " (" + c.detail + "); ";
  bool enough = (int)rep.checks.size() >= min_checks;
  if (!enough) detail += "only " + std::to_string(rep.checks.size()) + " checks ran; ";
  report(idx, name, rep.all_passed() && enough, detail);
}

void criterion_properties() {
  std::mt19937 rng(402653189);
  std::string detail;
  bool ok = true;
  auto flag = [&](bool good, const std::string& what) {
    if (!good) {
      ok = false;
      detail += what + "; ";
    }
  };

  // arc algebra: units and associativity, exhaustive on four points
  for (int n : {2, 4}) {
    ArcAlgebra alg(n);
    int C = alg.n_caps();
    for (int a = 0; a < C; ++a)
      for (int b = 0; b < C; ++b) {
        int r = alg.hom_circles(a, b).count;
        for (unsigned m = 0; m < (1u << r); ++m) {
          auto le = alg.multiply(a, a, b, alg.unit_mask(), m);
          auto re = alg.multiply(a, b, b, m, alg.unit_mask());
          flag(le.size() == 1 && le[0].first == m && le[0].second == 1, "left unit");
          flag(re.size() == 1 && re[0].first == m && re[0].second == 1, "right unit");
        }
      }
  }
  {
    using Elem = std::vector<std::pair<unsigned, Z>>;
    for (int n : {4, 6}) {
      ArcAlgebra alg(n);
      int C = alg.n_caps();
      auto mul = [&](int a, int b, int c, const Elem& u, const Elem& v) {
        std::map<unsigned, Z> acc;
        for (auto& [x, kx] : u)
          for (auto& [y, ky] : v)
            for (auto& [zm, kz] : alg.multiply(a, b, c, x, y)) acc[zm] += kx * ky * kz;
        Elem out;
        for (auto& [m, k] : acc)
          if (k != 0) out.push_back({m, k});
        return out;
      };
      for (int trial = 0; trial < (n == 4 ? 200 : 60); ++trial) {
        int a = rng() % C, b = rng() % C, c = rng() % C, d = rng() % C;
        unsigned x = rng() % (1u << alg.hom_circles(a, b).count);
        unsigned y = rng() % (1u << alg.hom_circles(b, c).count);
        unsigned z = rng() % (1u << alg.hom_circles(c, d).count);
        Elem xy = alg.multiply(a, b, c, x, y), yz = alg.multiply(b, c, d, y, z);
        Elem lhs = mul(a, c, d, xy, {{z, Z(1)}});
        Elem rhs = mul(a, b, d, {{x, Z(1)}}, yz);
        flag(lhs == rhs, "associativity");
      }
    }
  }

  // complexes of a mixed pool: d^2 = 0 and q homogeneity via validate(),
  // plus every algebra action a chain map of its own q degree
  std::vector<Tangle> pool = {trefoil_right(), hopf_positive(), kinked_arc(true),
                              cap_tangle(Matching::all(4)[1])};
  for (int i = 0; i < 3; ++i) pool.push_back(random_tangle(rng, 4, 3));
  for (int i = 0; i < 2; ++i) pool.push_back(random_tangle(rng, 2, 3));
  for (int i = 0; i < 2; ++i) pool.push_back(random_closed_diagram(rng, 4));
  for (const auto& t : pool) {
    flag(t.validate().empty(), "diagram validity");
    TangleModule M = build_module(t);
    int C = M.n_caps();
    for (int b = 0; b < C; ++b) flag(M.comp[b].validate().empty(), "complex validity");
    for (int b = 0; b < C; ++b)
      for (int c = 0; c < C; ++c) {
        int r = M.alg.hom_circles(b, c).count;
        for (unsigned xm = 0; xm < (1u << r); ++xm) {
          ChainMap f = module_action(M, b, c, xm);
          flag(f.dq == M.alg.q_of(b, c, xm), "action degree");
          flag(validate_map(f, M.comp[b], M.comp[c]).empty(), "action chain map");
        }
      }
  }

  // homology does not change across single strand moves
  for (int trial = 0; trial < 4; ++trial) {
    Tangle t = random_tangle(rng, 4, 2);
    TangleModule M = build_module(t);
    MovieStep r1 = r1_add_step(t, (int)(rng() % t.n_edges()), trial % 2 == 0);
    TangleModule Mk = build_module(r1.rm.after);
    for (int b = 0; b < M.n_caps(); ++b)
      flag(homology(M.comp[b]) == homology(Mk.comp[b]), "move invariance (kink)");
  }
  {
    Tangle t{4, {}, {0, 1, 1, 0}, 0, 0};
    Tangle pushed = r2_tangle(t, 0, 1, false, false, true);
    flag(pushed.validate().empty(), "strand slide validity");
    TangleModule M = build_module(t), Mp = build_module(pushed);
    for (int b = 0; b < M.n_caps(); ++b)
      flag(homology(M.comp[b]) == homology(Mp.comp[b]), "move invariance (slide)");
  }

  report(10, "algebra laws, chain conditions and move invariance", ok, detail);
}

}  // namespace

int main() {
  criterion_golden_tables();
  criterion_resolving_cone();
  criterion_from_suite(3, "random gluings are unimodular chain isomorphisms",
                       verify_gluing(20250815), 20);
  criterion_from_suite(4, "boundary duals match the mirror image", verify_duality(), 10);
  criterion_from_suite(5, "bridge closures are rigid", verify_rigidity(), 10);
  {
    VerificationReport rep = verify_movie_moves();
    int controls = 0;
    for (const auto& c : rep.checks)
      if (c.name.rfind("control:", 0) == 0) ++controls;
    std::string detail;
    for (const auto& c : rep.checks)
      if (!c.pass) detail += c.name + " (" + c.detail + "); ";
    if (controls < 2) detail += "corrupted controls missing; ";
    report(6, "movie moves agree up to one global sign", rep.all_passed() && controls >= 2,
           detail);
  }
  criterion_from_suite(7, "closed surfaces take their classical values", verify_surfaces(),
                       5);
  criterion_from_suite(8, "cutting a neck splits into dotted halves", verify_neckcut(), 3);
  criterion_from_suite(9, "graded euler characteristic equals the state sum",
                       verify_euler(819), 10);
  criterion_properties();

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures;
}

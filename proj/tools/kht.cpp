// Command line front end: homology tables of diagrams, maps induced by
// movies, and the structural verification suites. Input and output are JSON;
// exit code 0 means success (and, for verify, a clean report), 1 means a
// failed verdict, 2 means the input could not be used.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kht/json_io.hpp"

namespace {

using namespace kht;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw JsonError(path + ": " + e.what());
  }
}

// "0-3,1-2" -> index of that matching among the caps of the algebra
int cap_index(const ArcAlgebra& alg, const std::string& spec) {
  std::vector<int> to(alg.n, -1);
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string pair = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    size_t dash = pair.find('-');
    if (dash == std::string::npos) throw JsonError("bad arc \"" + pair + "\" in --caps");
    int a, b;
    try {
      a = std::stoi(pair.substr(0, dash));
      b = std::stoi(pair.substr(dash + 1));
    } catch (const std::exception&) {
      throw JsonError("bad arc \"" + pair + "\" in --caps");
    }
    if (a < 0 || b < 0 || a >= alg.n || b >= alg.n || a == b || to[a] != -1 || to[b] != -1)
      throw JsonError("arc \"" + pair + "\" does not fit the boundary");
    to[a] = b;
    to[b] = a;
    pos = comma == std::string::npos ? spec.size() : comma + 1;
  }
  for (int x : to)
    if (x < 0) throw JsonError("--caps must pair up all boundary points");
  std::string want = matching_name(Matching(to));
  for (int i = 0; i < (int)alg.caps.size(); ++i)
    if (matching_name(alg.caps[i]) == want) return i;
  throw JsonError("\"" + spec + "\" is not a crossingless matching of the boundary");
}

std::vector<int> pick_caps(const TangleModule& M, const std::vector<std::string>& specs) {
  std::vector<int> picked;
  if (M.t.boundary == 0) {
    picked.push_back(0);
    return picked;
  }
  if (specs.empty())
    throw JsonError("open diagrams need --caps (a pair list like 0-3,1-2, or \"all\")");
  for (const auto& s : specs) {
    if (s == "all") {
      picked.clear();
      for (int i = 0; i < (int)M.alg.caps.size(); ++i) picked.push_back(i);
      return picked;
    }
    picked.push_back(cap_index(M.alg, s));
  }
  return picked;
}

int cmd_kh(const std::string& path, const std::vector<std::string>& caps) {
  Tangle t = tangle_from_json(load_json(path));
  TangleModule M = build_module(t);
  json out;
  out["diagram"] = tangle_to_json(t);
  out["tables"] = json::array();
  for (int b : pick_caps(M, caps)) {
    json e;
    e["cap"] = t.boundary == 0 ? "closed" : matching_name(M.alg.caps[b]);
    e["table"] = table_to_json(homology(M.comp[b]));
    out["tables"].push_back(std::move(e));
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_map(const std::string& path) {
  Tangle start;
  std::vector<MovieStep> steps = movie_from_json(load_json(path), start);
  MovieResult res = run_movie(start, steps);
  TangleModule M = build_module(start);
  json out;
  out["start"] = tangle_to_json(start);
  out["end"] = tangle_to_json(res.frames.back());
  out["dq"] = res.map.dq;
  out["per_cap"] = json::array();
  for (int b = 0; b < (int)res.map.per_cap.size(); ++b) {
    json e;
    e["cap"] = start.boundary == 0 ? "closed" : matching_name(M.alg.caps[b]);
    e["map"] = chain_map_to_json(res.map.per_cap[b]);
    out["per_cap"].push_back(std::move(e));
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed) {
  VerificationReport rep = verify_suite(suite, seed);
  std::cout << report_to_json(rep).dump() << "\n";
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Khovanov homology for links and diskular tangles"};
  app.require_subcommand(1);

  std::string kh_file;
  std::vector<std::string> kh_caps;
  CLI::App* kh = app.add_subcommand("kh", "homology table of a diagram");
  kh->add_option("file", kh_file, "diagram JSON")->required();
  kh->add_option("--caps", kh_caps, "boundary caps: arc lists like 0-3,1-2, or \"all\"");

  std::string map_file;
  CLI::App* mp = app.add_subcommand("map", "chain map induced by a movie");
  mp->add_option("file", map_file, "movie JSON")->required();

  std::string suite;
  uint64_t seed = 0;
  CLI::App* vf = app.add_subcommand("verify", "run a structural check suite");
  vf->add_option("suite", suite,
                 "movie-moves, surfaces, neckcut, ribbon, rigidity, duality, gluing, "
                 "euler, or all")
      ->required();
  vf->add_option("--seed", seed, "seed for the randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (kh->parsed()) return cmd_kh(kh_file, kh_caps);
    if (mp->parsed()) return cmd_map(map_file);
    return cmd_verify(suite, seed);
  } catch (const kht::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

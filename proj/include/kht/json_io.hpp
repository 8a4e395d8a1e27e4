// JSON input and output for the command line tool: diagrams, movies,
// homology tables, induced maps and verification reports. The diagram format
// mirrors the Tangle struct field by field; an optional "inner" list is
// reserved for diagrams with holes and must be empty when present.
#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "kht/cobordism.hpp"
#include "kht/multimodule.hpp"
#include "kht/verify.hpp"

namespace kht {

using nlohmann::json;

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json tangle_to_json(const Tangle& t) {
  json j;
  j["boundary"] = t.boundary;
  j["crossings"] = json::array();
  for (const auto& x : t.crossings) j["crossings"].push_back({x[0], x[1], x[2], x[3]});
  j["boundary_edges"] = t.boundary_edges;
  j["free_loops"] = t.free_loops;
  j["positive"] = t.positive;
  return j;
}

inline Tangle tangle_from_json(const json& j) {
  if (!j.is_object()) throw JsonError("diagram must be an object");
  if (j.contains("inner") && !(j["inner"].is_array() && j["inner"].empty()))
    throw JsonError("diagrams with holes are not supported; \"inner\" must be empty");
  Tangle t;
  try {
    t.boundary = j.value("boundary", 0);
    for (const auto& x : j.value("crossings", json::array())) {
      if (!x.is_array() || x.size() != 4) throw JsonError("each crossing needs 4 edge ids");
      t.crossings.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
    }
    t.boundary_edges = j.value("boundary_edges", std::vector<int>{});
    t.free_loops = j.value("free_loops", 0);
    t.positive = j.value("positive", 0);
  } catch (const json::exception& e) {
    throw JsonError(std::string("malformed diagram: ") + e.what());
  }
  auto errs = t.validate();
  if (!errs.empty()) throw JsonError("invalid diagram: " + errs.front());
  return t;
}

inline json group_to_json(const Group& g) {
  json j;
  j["free"] = g.free_rank;
  j["torsion"] = json::array();
  for (const Z& d : g.torsion) j["torsion"].push_back(d.str());
  return j;
}

inline json table_to_json(const HomologyTable& table) {
  json rows = json::array();
  for (const auto& [hq, g] : table) {
    json row = group_to_json(g);
    row["h"] = hq.first;
    row["q"] = hq.second;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string matching_name(const Matching& m) {
  std::string s;
  for (auto [a, b] : m.arcs()) {
    if (!s.empty()) s += ",";
    s += std::to_string(a) + "-" + std::to_string(b);
  }
  return s.empty() ? "closed" : s;
}

// movies: {"start": diagram, "steps": [...]}; refs follow the node order of
// the current frame (edges first, then free loops)
inline std::vector<MovieStep> movie_from_json(const json& j, Tangle& start) {
  if (!j.is_object() || !j.contains("start")) throw JsonError("movie needs a \"start\" diagram");
  start = tangle_from_json(j["start"]);
  Tangle cur = start;
  std::vector<MovieStep> steps;
  for (const auto& s : j.value("steps", json::array())) {
    std::string kind = s.value("kind", "");
    try {
      if (kind == "birth") {
        steps.push_back(birth_step());
      } else if (kind == "death") {
        steps.push_back(death_step(s.at("loop").get<int>()));
      } else if (kind == "dot") {
        steps.push_back(dot_step(s.at("ref").get<int>()));
      } else if (kind == "saddle") {
        steps.push_back(
            saddle_step(s.at("a").get<int>(), s.at("b").get<int>(), s.value("swap", false)));
      } else if (kind == "r1_add") {
        steps.push_back(r1_add_step(cur, s.at("edge").get<int>(), s.at("positive").get<bool>()));
      } else if (kind == "r1_drop") {
        steps.push_back(
            r1_drop_step(cur, s.at("crossing").get<int>(), s.at("positive").get<bool>()));
      } else if (kind == "r2_add") {
        steps.push_back(r2_add_step(cur, s.at("a").get<int>(), s.at("b").get<int>(),
                                    s.value("swap_a", false), s.value("swap_b", false),
                                    s.value("first_over", true)));
      } else if (kind == "r2_drop") {
        steps.push_back(r2_drop_step(cur, s.at("j1").get<int>(), s.at("j2").get<int>()));
      } else {
        throw JsonError("unknown step kind \"" + kind + "\"");
      }
    } catch (const json::exception& e) {
      throw JsonError("malformed step \"" + kind + "\": " + e.what());
    }
    cur = step_target(cur, steps.back());
  }
  return steps;
}

inline json chain_map_to_json(const ChainMap& f) {
  json j;
  j["dq"] = f.dq;
  j["levels"] = json::array();
  for (size_t l = 0; l < f.m.size(); ++l) {
    json lev;
    lev["h"] = f.src_h_min + (int)l;
    lev["matrix"] = json::array();
    for (int i = 0; i < f.m[l].rows; ++i) {
      json row = json::array();
      for (int k = 0; k < f.m[l].cols; ++k) row.push_back(f.m[l].at(i, k).str());
      lev["matrix"].push_back(std::move(row));
    }
    j["levels"].push_back(std::move(lev));
  }
  return j;
}

inline json report_to_json(const VerificationReport& rep) {
  json j;
  j["suite"] = rep.suite;
  j["passed"] = rep.all_passed();
  j["checks"] = json::array();
  for (const auto& c : rep.checks) {
    json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

}  // namespace kht

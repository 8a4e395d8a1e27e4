// Gluing two tangles along their shared boundary circle. The tensor product
// over the cap algebra maps to the complex of the glued diagram: on each
// capwise summand, contract the cap arcs of one side against the reflected
// arcs of the other, pushing labels through with the same circle surgery that
// drives the algebra itself. The map is built on the free presentation of the
// tensor product, checked to kill the slide relations, descended through the
// quotient, and certified unimodular level by level.
#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "kht/multimodule.hpp"

namespace kht {

struct GluingCheck {
  GluedTangle glued;
  TensorPresentation pres;
  Complex target;        // complex of the glued diagram
  ChainMap map;          // pres.result -> target
  bool factors = false;  // the free map kills the slide relations
  bool chain = false;    // the descended map is a chain map of degree (0, 0)
  bool iso = false;      // unimodular in every level

  bool ok() const { return factors && chain && iso; }
};

namespace gluing_detail {

inline int arc_at(const std::vector<std::pair<int, int>>& arcs, int point) {
  for (int k = 0; k < (int)arcs.size(); ++k)
    if (arcs[k].first == point || arcs[k].second == point) return k;
  assert(false && "point not covered by any arc");
  return -1;
}

// joins replicating one side's resolved connectivity inside the shared node
// space; these nodes are never contracted, so the port label is arbitrary
inline void add_side_joins(CircleSurgery& s, const Tangle& t, unsigned v, int shift) {
  for (int j = 0; j < t.n_crossings(); ++j) {
    const auto& x = t.crossings[j];
    if (v >> j & 1) {
      s.joins.push_back({shift + x[0], shift + x[3], -1});
      s.joins.push_back({shift + x[1], shift + x[2], -1});
    } else {
      s.joins.push_back({shift + x[0], shift + x[1], -1});
      s.joins.push_back({shift + x[2], shift + x[3], -1});
    }
  }
}

// generator index within its level -> (column, cap circle labels)
inline std::vector<std::vector<std::pair<int, unsigned>>> index_gens(const TangleModule& M,
                                                                     int b) {
  std::vector<std::vector<std::pair<int, unsigned>>> at(M.comp[b].levels());
  for (int l = 0; l < M.comp[b].levels(); ++l) at[l].assign(M.comp[b].dim(l), {-1, 0u});
  for (int col = 0; col < (int)M.columns.size(); ++col) {
    int l = M.columns[col].level;
    int cc = M.cap_circles(col, b);
    for (unsigned w = 0; w < (1u << cc); ++w) at[l][M.gen(b, col, w)] = {col, w};
  }
  return at;
}

}  // namespace gluing_detail

// Build the explicit gluing map and certify it is an isomorphism of
// complexes. The (l1, l2) block carries the sign that reconciles the tensor
// product's Koszul convention with the glued cube's crossing order.
inline GluingCheck check_gluing(const TangleModule& m1, const TangleModule& m2) {
  using namespace module_detail;
  assert(m1.n() == m2.n());
  const int n = m1.n(), A = n / 2;
  const int C = m1.n_caps();
  const int E1 = m1.t.n_edges(), L1 = m1.t.free_loops;
  const int E2 = m2.t.n_edges(), L2 = m2.t.free_loops;
  const int n1tot = E1 + L1 + A, n2tot = E2 + L2 + A;
  const int N1 = m1.t.n_crossings();
  const bool tw = ((N1 + m1.t.positive) & 1) != 0;

  GluingCheck out;
  out.pres = tensor_presentation(m1, m2);
  out.glued = glue_along_boundary(m1.t, m2.t);
  TangleModule mg = build_module(out.glued.tangle);
  out.target = mg.comp[0];

  const Complex& total = out.pres.sum.total;
  assert(total.levels() == out.target.levels() && total.h_min == out.target.h_min);

  std::vector<ClosedState> stg(mg.res.size());
  for (unsigned vg = 0; vg < mg.res.size(); ++vg)
    stg[vg] = closed_state(out.glued.tangle, vg, nullptr);

  std::vector<Mat> G(total.levels());
  for (int l = 0; l < total.levels(); ++l) G[l] = Mat(out.target.dim(l), total.dim(l));

  for (int b = 0; b < C; ++b) {
    const int rb = out.pres.rho[b];
    const Matching& cap1 = m1.alg.caps[b];
    const Matching& cap2 = m2.alg.caps[rb];
    auto arcs1 = cap1.arcs();
    auto arcs2 = cap2.arcs();
    auto gens1 = gluing_detail::index_gens(m1, b);
    auto gens2 = gluing_detail::index_gens(m2, rb);

    std::vector<ClosedState> st1(1u << m1.t.n_crossings());
    for (unsigned v = 0; v < st1.size(); ++v) st1[v] = closed_state(m1.t, v, &cap1);
    std::vector<ClosedState> st2(1u << m2.t.n_crossings());
    for (unsigned v = 0; v < st2.size(); ++v) st2[v] = closed_state(m2.t, v, &cap2);

    // arc k of the first cap is cancelled against the reflected arc opposite
    // it on the second side
    std::vector<std::pair<int, int>> pairs(A);
    for (int k = 0; k < A; ++k) {
      int partner = gluing_detail::arc_at(arcs2, n - 1 - arcs1[k].first);
      pairs[k] = {E1 + L1 + k, n1tot + E2 + L2 + partner};
    }

    const Complex& c1 = m1.comp[b];
    const Complex& c2 = m2.comp[rb];
    for (int l1 = 0; l1 < c1.levels(); ++l1) {
      for (int l2 = 0; l2 < c2.levels(); ++l2) {
        int l = l1 + l2;
        int off = out.pres.sum.base[b][l] + tensor_offset(c1, c2, l1, l2);
        Z sgn = (tw && (l2 & 1)) ? Z(-1) : Z(1);
        for (int i1 = 0; i1 < c1.dim(l1); ++i1) {
          for (int i2 = 0; i2 < c2.dim(l2); ++i2) {
            auto [col1, w1] = gens1[l1][i1];
            auto [col2, w2] = gens2[l2][i2];
            unsigned v1 = m1.columns[col1].v, v2 = m2.columns[col2].v;

            CircleSurgery s;
            s.n_nodes = n1tot + n2tot;
            s.active.assign(s.n_nodes, 1);
            gluing_detail::add_side_joins(s, m1.t, v1, 0);
            gluing_detail::add_side_joins(s, m2.t, v2, n1tot);
            for (int k = 0; k < A; ++k) {
              int p = arcs1[k].first, q = arcs1[k].second;
              s.joins.push_back({E1 + L1 + k, m1.t.boundary_edges[p], p});
              s.joins.push_back({E1 + L1 + k, m1.t.boundary_edges[q], q});
            }
            for (int j = 0; j < n; ++j) {
              int node = n1tot + E2 + L2 + gluing_detail::arc_at(arcs2, j);
              s.joins.push_back({node, n1tot + m2.t.boundary_edges[j], n - 1 - j});
            }

            CircleSurgery::Labels lab;
            for (auto& [key, x] : encode_labels(m1, st1[v1], col1, b, w1)) lab[key] = x;
            for (auto& [key, x] : encode_labels(m2, st2[v2], col2, rb, w2))
              lab[key + n1tot] = x;

            auto terms = s.run(pairs, {{lab, Z(1)}});
            if (terms.empty()) continue;

            // rename the surviving circles into the glued diagram's universe
            unsigned vg = v1 | (v2 << N1);
            std::vector<int> before = s.reps();
            std::vector<int> after(s.n_nodes, -1);
            for (int u = 0; u < E1 + L1; ++u) after[u] = stg[vg].rep[out.glued.map1[u]];
            for (int u = 0; u < E2 + L2; ++u)
              after[n1tot + u] = stg[vg].rep[out.glued.map2[u]];
            terms = CircleSurgery::transport(before, after, terms);

            int colidx = off + i1 * c2.dim(l2) + i2;
            for (auto& [labels, coef] : terms) {
              auto [mug, wg] = decode_labels(mg, stg[vg], vg, 0, labels);
              int colg = mg.col_base[vg] + (int)mug;
              G[l].at(mg.gen(0, colg, wg), colidx) += coef * sgn;
            }
          }
        }
      }
    }
  }

  const QuotientComplex& qc = out.pres.quotient;
  out.map = zero_map(out.pres.result, out.target, 0);
  out.factors = true;
  for (int l = 0; l < total.levels(); ++l) {
    out.map.m[l] = G[l] * qc.section[l];
    out.factors = out.factors && out.map.m[l] * qc.proj[l] == G[l];
  }
  out.chain = validate_map(out.map, out.pres.result, out.target).empty();

  out.iso = true;
  for (int l = 0; l < total.levels() && out.iso; ++l) {
    const Mat& m = out.map.m[l];
    if (m.rows != m.cols) {
      out.iso = false;
      break;
    }
    SmithForm sf = smith(m);
    out.iso = sf.rank == m.rows;
    for (int i = 0; i < sf.rank && out.iso; ++i)
      out.iso = sf.diag[i] == 1 || sf.diag[i] == -1;
  }
  return out;
}

}  // namespace kht

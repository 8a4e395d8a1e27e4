// Dense integer matrices, Smith normal form with tracked unimodular
// transforms, kernels, exact linear solving, homology of a two-step complex,
// and a sparse eliminator for large mostly-unit systems.
#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <vector>

#include "kht/intmath.hpp"

namespace kht {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Z> a;  // row major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

  Z& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Z& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool is_zero() const {
    for (const Z& x : a)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Mat operator*(const Mat& o) const {
    assert(cols == o.rows);
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Z& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j) {
          const Z& y = o.at(k, j);
          if (y != 0) r.at(i, j) += x * y;
        }
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    assert(rows == o.rows && cols == o.cols);
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    assert(rows == o.rows && cols == o.cols);
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
  }

  Mat operator-() const {
    Mat r = *this;
    for (Z& x : r.a) x = -x;
    return r;
  }

  Mat transposed() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Mat col(int j) const {
    Mat r(rows, 1);
    for (int i = 0; i < rows; ++i) r.at(i, 0) = at(i, j);
    return r;
  }
};

inline Mat cols_of(const Mat& m, const std::vector<int>& idx) {
  Mat r(m.rows, (int)idx.size());
  for (int j = 0; j < (int)idx.size(); ++j)
    for (int i = 0; i < m.rows; ++i) r.at(i, j) = m.at(i, idx[j]);
  return r;
}

inline Mat rows_of(const Mat& m, const std::vector<int>& idx) {
  Mat r((int)idx.size(), m.cols);
  for (int i = 0; i < (int)idx.size(); ++i)
    for (int j = 0; j < m.cols; ++j) r.at(i, j) = m.at(idx[i], j);
  return r;
}

// u * input * v == d, with u, v unimodular and uinv, vinv their inverses.
// diag holds min(rows, cols) nonnegative entries, each dividing the next,
// zeros trailing.
struct SmithForm {
  Mat d, u, uinv, v, vinv;
  std::vector<Z> diag;
  int rank = 0;
};

namespace snf_detail {

struct Work {
  Mat d, u, uinv, v, vinv;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (int r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    for (int c = 0; c < vinv.cols; ++c) std::swap(vinv.at(i, c), vinv.at(j, c));
  }
  void row_negate(int i) {
    for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
  }
  // row j += k * row i
  void row_add(int j, int i, const Z& k) {
    if (k == 0) return;
    for (int c = 0; c < d.cols; ++c) d.at(j, c) += k * d.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(j, c) += k * u.at(i, c);
    for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) -= k * uinv.at(r, j);
  }
  // col j += k * col i
  void col_add(int j, int i, const Z& k) {
    if (k == 0) return;
    for (int r = 0; r < d.rows; ++r) d.at(r, j) += k * d.at(r, i);
    for (int r = 0; r < v.rows; ++r) v.at(r, j) += k * v.at(r, i);
    for (int c = 0; c < vinv.cols; ++c) vinv.at(i, c) -= k * vinv.at(j, c);
  }
};

}  // namespace snf_detail

inline SmithForm smith(const Mat& input) {
  snf_detail::Work w;
  w.d = input;
  w.u = Mat::identity(input.rows);
  w.uinv = Mat::identity(input.rows);
  w.v = Mat::identity(input.cols);
  w.vinv = Mat::identity(input.cols);
  Mat& d = w.d;

  // quotient rounded to nearest, so remainders stay within half the pivot;
  // together with re-picking the pivot each round this keeps intermediate
  // entries (and the transform matrices) from exploding
  auto near_quot = [](const Z& a, const Z& p) {
    Z q = a / p;
    Z r = a - q * p;
    if (2 * r > p)
      ++q;
    else if (2 * r < -p)
      --q;
    return q;
  };

  const int n = std::min(input.rows, input.cols);
  int t = 0;
  bool more = true;
  while (t < n && more) {
    bool done = false;
    while (!done) {
      // smallest nonzero entry of the remaining block becomes the pivot,
      // re-chosen every round so freshly shrunk remainders take over fast
      int pi = -1, pj = -1;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j)
          if (d.at(i, j) != 0 &&
              (pi < 0 || zabs(d.at(i, j)) < zabs(d.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {  // the whole remaining block is zero
        more = false;
        break;
      }
      w.row_swap(t, pi);
      w.col_swap(t, pj);
      if (d.at(t, t) < 0) w.row_negate(t);

      bool dirty = false;
      for (int i = t + 1; i < d.rows; ++i)
        if (d.at(i, t) != 0) {
          w.row_add(i, t, -near_quot(d.at(i, t), d.at(t, t)));
          dirty |= d.at(i, t) != 0;
        }
      if (dirty) continue;  // a smaller remainder exists; pivot on it next
      for (int j = t + 1; j < d.cols; ++j)
        if (d.at(t, j) != 0) {
          w.col_add(j, t, -near_quot(d.at(t, j), d.at(t, t)));
          dirty |= d.at(t, j) != 0;
        }
      if (dirty) continue;

      done = true;
      // fold in any entry the pivot does not divide yet
      for (int i = t + 1; i < d.rows && done; ++i)
        for (int j = t + 1; j < d.cols && done; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            w.row_add(t, i, 1);
            done = false;
          }
    }
    if (done) ++t;
  }

  SmithForm s;
  s.d = std::move(w.d);
  s.u = std::move(w.u);
  s.uinv = std::move(w.uinv);
  s.v = std::move(w.v);
  s.vinv = std::move(w.vinv);
  s.rank = t;
  s.diag.resize(n);
  for (int i = 0; i < n; ++i) s.diag[i] = s.d.at(i, i);

#ifdef KHT_PARANOID
  assert(s.u * input * s.v == s.d);
  assert(s.u * s.uinv == Mat::identity(input.rows));
  assert(s.v * s.vinv == Mat::identity(input.cols));
  for (int i = 0; i + 1 < s.rank; ++i) assert(s.diag[i + 1] % s.diag[i] == 0);
#endif
  return s;
}

// columns span ker(m) over Z, and the span is a direct summand
inline Mat kernel_basis(const Mat& m) {
  SmithForm s = smith(m);
  std::vector<int> idx;
  for (int j = s.rank; j < m.cols; ++j) idx.push_back(j);
  return cols_of(s.v, idx);
}

// all integer solutions x of m x = b for each column of b, or nothing if some
// column has none
inline std::optional<Mat> solve(const Mat& m, const Mat& b) {
  assert(m.rows == b.rows);
  SmithForm s = smith(m);
  Mat c = s.u * b;
  Mat y(m.cols, b.cols);
  const int n = (int)s.diag.size();
  for (int j = 0; j < b.cols; ++j) {
    for (int i = 0; i < m.rows; ++i) {
      if (i < n && s.diag[i] != 0) {
        if (c.at(i, j) % s.diag[i] != 0) return std::nullopt;
        y.at(i, j) = c.at(i, j) / s.diag[i];
      } else if (c.at(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.v * y;
}

// Homology at a grade of ... -> C_in -> C -> C_out -> ...  given the two
// differentials d_out: C -> C_out and d_in: C_in -> C. Keeps enough of the
// change of basis around to express a cycle in canonical coordinates.
struct HomologyAt {
  int ambient = 0;
  int free_rank = 0;
  std::vector<Z> torsion;  // invariant factors > 1

  Mat kernel;      // ambient x k
  Mat img_u;       // Smith transform of the image written in kernel coords
  std::vector<Z> img_diag;
  int img_rank = 0;

  // canonical coordinates of a cycle's class: free coordinates exact,
  // torsion coordinates reduced to [0, d)
  struct ClassCoords {
    std::vector<Z> free_part;
    std::vector<Z> torsion_part;
    bool operator==(const ClassCoords& o) const {
      return free_part == o.free_part && torsion_part == o.torsion_part;
    }
    bool is_zero() const {
      for (const Z& x : free_part)
        if (x != 0) return false;
      for (const Z& x : torsion_part)
        if (x != 0) return false;
      return true;
    }
  };

  ClassCoords class_of(const Mat& cycle) const {
    assert(cycle.rows == ambient && cycle.cols == 1);
    auto y = solve(kernel, cycle);
    assert(y && "class_of requires an actual cycle");
    Mat wv = img_u * *y;
    ClassCoords out;
    const int k = kernel.cols;
    for (int i = 0; i < k; ++i) {
      if (i < img_rank) {
        const Z& d = img_diag[i];
        if (d == 1) continue;
        Z r = wv.at(i, 0) % d;
        if (r < 0) r += d;
        out.torsion_part.push_back(r);
      } else {
        out.free_part.push_back(wv.at(i, 0));
      }
    }
    return out;
  }
};

inline HomologyAt homology_at(const Mat& d_out, const Mat& d_in) {
  assert(d_out.cols == d_in.rows);
  HomologyAt h;
  h.ambient = d_out.cols;
  h.kernel = kernel_basis(d_out);
  auto y = solve(h.kernel, d_in);
  assert(y && "image must lie in the kernel (d^2 = 0)");
  SmithForm sy = smith(*y);
  h.img_u = std::move(sy.u);
  h.img_diag = std::move(sy.diag);
  h.img_rank = sy.rank;
  h.free_rank = h.kernel.cols - h.img_rank;
  for (int i = 0; i < h.img_rank; ++i)
    if (h.img_diag[i] > 1) h.torsion.push_back(h.img_diag[i]);
  return h;
}

// Sparse integer linear system Ax = b, solved by greedily eliminating on
// coefficient-one entries and handing whatever dense core remains to the
// Smith solver. Built for homotopy equations where almost every coefficient
// is a sign.
struct SparseSystem {
  int nvars = 0;
  std::vector<std::map<int, Z>> eqs;
  std::vector<Z> rhs;

  explicit SparseSystem(int n) : nvars(n) {}

  int add_equation() {
    eqs.emplace_back();
    rhs.emplace_back(0);
    return (int)eqs.size() - 1;
  }

  void add_term(int eq, int var, const Z& coef) {
    if (coef == 0) return;
    Z& t = eqs[eq][var];
    t += coef;
    if (t == 0) eqs[eq].erase(var);
  }

  void add_rhs(int eq, const Z& val) { rhs[eq] += val; }

  std::optional<std::vector<Z>> solve_system() const {
    std::vector<std::map<int, Z>> rows = eqs;
    std::vector<Z> b = rhs;
    std::vector<char> row_done(rows.size(), 0);
    std::vector<char> var_done(nvars, 0);
    // var -> rows currently touching it
    std::vector<std::vector<int>> touch(nvars);
    auto rebuild_touch = [&] {
      for (auto& t : touch) t.clear();
      for (int r = 0; r < (int)rows.size(); ++r) {
        if (row_done[r]) continue;
        for (auto& [v, c] : rows[r]) touch[v].push_back(r);
      }
    };
    rebuild_touch();

    struct Pivot {
      int var;
      std::map<int, Z> expr;  // var = (b - sum expr) / coef with coef = +-1
      Z coef, rhs;
    };
    std::vector<Pivot> pivots;

    bool progress = true;
    while (progress) {
      progress = false;
      int best_r = -1, best_v = -1;
      long long best_score = -1;
      for (int r = 0; r < (int)rows.size(); ++r) {
        if (row_done[r]) continue;
        if (rows[r].empty()) {
          if (b[r] != 0) return std::nullopt;
          row_done[r] = 1;
          continue;
        }
        for (auto& [v, c] : rows[r]) {
          if (c != 1 && c != -1) continue;
          long long occ = 0;
          for (int rr : touch[v])
            if (!row_done[rr] && rows[rr].count(v)) ++occ;
          long long score = (long long)(rows[r].size() - 1) * (occ - 1);
          if (best_r < 0 || score < best_score) {
            best_r = r;
            best_v = v;
            best_score = score;
            if (score == 0) break;
          }
        }
        if (best_score == 0) break;
      }
      if (best_r < 0) break;

      int r = best_r, v = best_v;
      Z coef = rows[r][v];
      Pivot p;
      p.var = v;
      p.coef = coef;
      p.rhs = b[r];
      p.expr = rows[r];
      p.expr.erase(v);
      pivots.push_back(p);
      row_done[r] = 1;
      var_done[v] = 1;

      // substitute into every other live row containing v
      std::vector<int> hit = touch[v];
      for (int rr : hit) {
        if (row_done[rr]) continue;
        auto it = rows[rr].find(v);
        if (it == rows[rr].end()) continue;
        Z k = it->second * coef;  // coef^2 = 1, so subtracting k*pivot_row kills v
        rows[rr].erase(it);
        for (auto& [pv, pc] : p.expr) {
          Z& t = rows[rr][pv];
          t -= k * pc;
          if (t == 0) rows[rr].erase(pv);
        }
        b[rr] -= k * p.rhs;
        for (auto& [pv, pc] : p.expr) touch[pv].push_back(rr);
      }
      progress = true;
    }

    // dense core: remaining live rows over remaining variables
    std::vector<int> live_rows, live_vars;
    for (int r = 0; r < (int)rows.size(); ++r)
      if (!row_done[r]) {
        if (rows[r].empty()) {
          if (b[r] != 0) return std::nullopt;
        } else {
          live_rows.push_back(r);
        }
      }
    std::vector<int> var_index(nvars, -1);
    for (int r : live_rows)
      for (auto& [v, c] : rows[r])
        if (var_index[v] < 0) {
          var_index[v] = (int)live_vars.size();
          live_vars.push_back(v);
        }

    std::vector<Z> x(nvars, 0);
    if (!live_rows.empty()) {
      Mat core((int)live_rows.size(), (int)live_vars.size());
      Mat brhs((int)live_rows.size(), 1);
      for (int i = 0; i < (int)live_rows.size(); ++i) {
        for (auto& [v, c] : rows[live_rows[i]]) core.at(i, var_index[v]) = c;
        brhs.at(i, 0) = b[live_rows[i]];
      }
      auto sol = solve(core, brhs);
      if (!sol) return std::nullopt;
      for (int j = 0; j < (int)live_vars.size(); ++j) x[live_vars[j]] = sol->at(j, 0);
    }

    // unwind unit pivots
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      Z acc = it->rhs;
      for (auto& [v, c] : it->expr) acc -= c * x[v];
      x[it->var] = acc * it->coef;  // dividing by +-1
    }

#ifdef KHT_PARANOID
    for (int r = 0; r < (int)eqs.size(); ++r) {
      Z acc = 0;
      for (auto& [v, c] : eqs[r]) acc += c * x[v];
      assert(acc == rhs[r]);
    }
#endif
    return x;
  }
};

}  // namespace kht

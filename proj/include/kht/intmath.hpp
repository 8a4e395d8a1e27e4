// Exact integer scalars and Laurent polynomials. Everything downstream runs
// over Z with no overflow budget, so coefficients are arbitrary precision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>
#include <string>

namespace kht {

using Z = boost::multiprecision::cpp_int;

inline Z zabs(const Z& x) { return x < 0 ? Z(-x) : x; }

// Laurent polynomial in one variable q, exponent -> coefficient.
// Zero coefficients are never stored.
struct Laurent {
  std::map<int, Z> c;

  static Laurent mono(int e, Z coef) {
    Laurent p;
    if (coef != 0) p.c[e] = std::move(coef);
    return p;
  }

  bool operator==(const Laurent& o) const { return c == o.c; }
  bool is_zero() const { return c.empty(); }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, v] : o.c) {
      Z& t = c[e];
      t += v;
      if (t == 0) c.erase(e);
    }
    return *this;
  }

  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, v] : o.c) {
      Z& t = c[e];
      t -= v;
      if (t == 0) c.erase(e);
    }
    return *this;
  }

  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
  }
  Laurent operator-(const Laurent& o) const {
    Laurent r = *this;
    r -= o;
    return r;
  }

  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [ea, va] : c)
      for (const auto& [eb, vb] : o.c) {
        Z& t = r.c[ea + eb];
        t += va * vb;
        if (t == 0) r.c.erase(ea + eb);
      }
    return r;
  }

  // human-readable, highest power first: "q^3 + 2 - q^-1"
  std::string str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      Z v = it->second;
      if (!first) os << (v < 0 ? " - " : " + ");
      else if (v < 0) os << "-";
      first = false;
      Z a = zabs(v);
      int e = it->first;
      if (a != 1 || e == 0) os << a;
      if (e != 0) {
        if (a != 1) os << "*";
        os << "q";
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }
};

inline Laurent delta_pow(int k) {
  // (q + 1/q)^k
  Laurent d = Laurent::mono(1, 1) + Laurent::mono(-1, 1);
  Laurent r = Laurent::mono(0, 1);
  for (int i = 0; i < k; ++i) r = r * d;
  return r;
}

}  // namespace kht

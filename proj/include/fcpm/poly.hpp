#pragma once

// Sparse multivariate polynomials keyed by exponent vectors, kept in graded
// lexicographic order (total degree ascending, x1 before x2 within a degree).

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "fcpm/scalar.hpp"

namespace fcpm {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = total_degree(a);
    int db = total_degree(b);
    if (da != db) return da < db;
    return b < a;
  }
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

template <class C>
class SparsePoly {
 public:
  using Terms = std::map<Exponent, C, GradedLex>;

  explicit SparsePoly(int nvars) : nvars_(nvars) {}

  static SparsePoly constant(int nvars, C c) {
    SparsePoly p(nvars);
    p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), std::move(c));
    return p;
  }

  static SparsePoly variable(int nvars, int i, C one) {
    SparsePoly p(nvars);
    Exponent e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(std::move(e), std::move(one));
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const C& c) {
    if (e.size() != static_cast<std::size_t>(nvars_)) throw std::invalid_argument("exponent has the wrong length");
    if (fcpm_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (fcpm_is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C{} : it->second;
  }

  /// -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : fcpm::total_degree(terms_.rbegin()->first); }

  bool is_homogeneous(int degree) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return fcpm::total_degree(t.first) == degree; });
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  SparsePoly& operator-=(const SparsePoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  SparsePoly& operator*=(const C& s) {
    if (fcpm_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const C& s) { return a *= s; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.check(b);
    SparsePoly out(a.nvars_);
    Exponent e(static_cast<std::size_t>(a.nvars_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  SparsePoly pow(unsigned n) const {
    SparsePoly result = constant(nvars_, C(1));
    SparsePoly base = *this;
    while (n) {
      if (n & 1U) result = result * base;
      n >>= 1U;
      if (n) base = base * base;
    }
    return result;
  }

  /// Value at x, with coefficients mapped into V by `convert`.
  template <class V, class Convert>
  V evaluate(std::span<const V> x, Convert&& convert) const {
    if (x.size() != static_cast<std::size_t>(nvars_)) throw std::invalid_argument("point has the wrong dimension");
    V acc = V(0);
    for (const auto& [e, c] : terms_) {
      V t = convert(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int r = 0; r < e[i]; ++r) t *= x[i];
      }
      acc += t;
    }
    return acc;
  }

  template <class V>
  V evaluate(std::span<const V> x) const {
    return evaluate<V>(x, [](const C& c) { return V(c); });
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  static bool fcpm_is_zero(const C& c) { return fcpm::is_zero(c); }

  void check(const SparsePoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different rings");
  }

  int nvars_;
  Terms terms_;
};

}  // namespace fcpm

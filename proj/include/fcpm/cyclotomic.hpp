#pragma once

// Exact arithmetic in Q(zeta_p), zeta_p = exp(2 pi i / p). Elements are
// polynomials in zeta of degree < phi(p), reduced modulo the p-th cyclotomic
// polynomial.

#include <iosfwd>
#include <string>
#include <vector>

#include "fcpm/scalar.hpp"

namespace fcpm {

int euler_phi(int n);

/// Coefficients of Phi_n(t), constant term first.
const std::vector<Rational>& cyclotomic_polynomial(int n);

class CycloScalar {
 public:
  /// Zero, compatible with every p.
  CycloScalar() = default;
  CycloScalar(int c) : CycloScalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  CycloScalar(Rational c);                          // NOLINT(google-explicit-constructor)
  CycloScalar(int p, Rational c);

  /// zeta_p^i for any integer i.
  static CycloScalar zeta_power(int p, int i);
  /// Reduces sum_i poly[i] zeta^i modulo Phi_p.
  static CycloScalar reduce(int p, std::vector<Rational> poly);

  /// 0 when the element is a bare rational not yet tied to a field.
  int p() const { return p_; }
  /// Coefficients in the basis 1, zeta, ..., zeta^{phi(p)-1}; trailing zeros trimmed.
  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }
  Complex to_complex() const;

  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  CycloScalar operator-() const;
  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  friend bool operator==(const CycloScalar& a, const CycloScalar& b);

 private:
  void adopt(int p);
  void trim();

  int p_ = 0;
  std::vector<Rational> c_;
};

inline bool is_zero(const CycloScalar& c) { return c.is_zero(); }

/// "3 + 2*z - z^2" style, z standing for zeta_p.
std::string to_string(const CycloScalar& c);
std::ostream& operator<<(std::ostream& os, const CycloScalar& c);

}  // namespace fcpm

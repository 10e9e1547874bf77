#pragma once

// Scalar types shared by every module.
//
// Two modes exist. Exact mode works over the Gaussian rationals Q(i) and is
// required whenever a decision hinges on an exact zero or integrality test.
// Float mode uses std::complex<double> and is what series evaluation runs on.

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

namespace fcpm {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class ScalarMode { exact, floating };

std::string to_string(ScalarMode mode);

/// Element of Q(i). Real rationals are the special case imag() == 0.
class GaussRational {
 public:
  GaussRational() = default;
  template <std::integral I>
  GaussRational(I v) : re_(static_cast<long>(v)) {}  // NOLINT: implicit by design of the scalar concept
  GaussRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_real() const { return sgn(im_) == 0; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  /// Real part in Z and imaginary part zero.
  bool is_integer() const;

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  /// Bit size of numerators and denominators; used as a pivot height.
  std::size_t height() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z);

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Parses "3", "-2/7", "0.25", "1/3+2/7i", "-i", "1.5e-2". Throws std::invalid_argument.
GaussRational parse_gauss_rational(std::string_view text);
Rational parse_rational(std::string_view text);
std::string to_string(const GaussRational& z);
std::string to_string(const Rational& q);

template <class S>
concept ExactScalar = std::same_as<S, GaussRational>;

template <class S>
concept FloatScalar = std::same_as<S, Complex>;

template <class S>
concept Scalar = ExactScalar<S> || FloatScalar<S>;

template <Scalar S>
constexpr ScalarMode mode_of() {
  return ExactScalar<S> ? ScalarMode::exact : ScalarMode::floating;
}

inline Complex to_complex(const GaussRational& z) { return {z.real().get_d(), z.imag().get_d()}; }
inline Complex to_complex(const Complex& z) { return z; }
inline double magnitude(const GaussRational& z) { return std::abs(to_complex(z)); }
inline double magnitude(const Complex& z) { return std::abs(z); }
inline bool is_zero(const GaussRational& z) { return z.is_zero(); }
inline bool is_zero(const Complex& z) { return z == Complex{}; }

/// Distance from z to the nearest element of Z (as a complex number).
double distance_to_integer(const Complex& z);

/// Exact: z in Z. Float: within `tol` of an integer.
inline bool is_integral(const GaussRational& z, double /*tol*/ = 0) { return z.is_integer(); }
inline bool is_integral(const Complex& z, double tol) { return distance_to_integer(z) <= tol; }

/// Exact: z in {0,-1,-2,...}. Float: within `tol` of such a value.
bool is_nonpositive_integer(const GaussRational& z, double tol = 0);
bool is_nonpositive_integer(const Complex& z, double tol);

/// Complex number carried as mantissa * 2^exponent so that long products
/// (Pochhammer symbols, factorial ratios) neither overflow nor underflow.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  explicit ScaledComplex(Complex v) : mantissa_(v) { normalize(); }
  ScaledComplex(Complex mantissa, std::int64_t exponent) : mantissa_(mantissa), exponent_(exponent) {
    normalize();
  }

  const Complex& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  /// Plain value; may overflow to inf or underflow to 0.
  Complex value() const;
  /// log|value|, finite even when value() is not representable.
  double log_abs() const;

  ScaledComplex& operator*=(const ScaledComplex& o);
  ScaledComplex& operator/=(const ScaledComplex& o);
  ScaledComplex& operator*=(const Complex& o) { return *this *= ScaledComplex(o); }
  ScaledComplex& operator/=(const Complex& o) { return *this /= ScaledComplex(o); }

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }

 private:
  void normalize();

  Complex mantissa_{1.0, 0.0};
  std::int64_t exponent_ = 0;
};

}  // namespace fcpm

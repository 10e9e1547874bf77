#include "fcpm/scalar.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace fcpm {

std::string to_string(ScalarMode mode) { return mode == ScalarMode::exact ? "exact" : "float"; }

bool GaussRational::is_integer() const { return is_real() && re_.get_den() == 1; }

std::size_t GaussRational::height() const {
  auto bits = [](const mpz_class& z) { return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); };
  return bits(re_.get_num()) + bits(re_.get_den()) + bits(im_.get_num()) + bits(im_.get_den());
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << to_string(z); }

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const GaussRational& z) {
  if (z.is_real()) return z.real().get_str();
  std::string im = z.imag().get_str() + "i";
  if (sgn(z.real()) == 0) return im;
  return z.real().get_str() + (sgn(z.imag()) > 0 ? "+" : "") + im;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Decimal literal with optional fraction and exponent, converted exactly.
Rational parse_decimal(std::string_view s) {
  std::string digits;
  long scale = 0;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  bool seen_digit = false;
  bool after_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (after_point) --scale;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    std::string exp_text(s.substr(i + 1));
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != exp_text.size()) {
      throw std::invalid_argument("bad exponent in '" + std::string(s) + "'");
    }
    scale += e;
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(num, pow10) : Rational(num * pow10);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  Rational num = parse_decimal(trim(s.substr(0, slash)));
  Rational den = parse_decimal(trim(s.substr(slash + 1)));
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  Rational q = num / den;
  q.canonicalize();
  return q;
}

GaussRational parse_gauss_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.back() != 'i') return GaussRational(parse_rational(s));
  std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string_view re_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? body : body.substr(split);
  im_text = trim(im_text);
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = parse_rational(im_text);
  }
  Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text);
  return {re, im};
}

double distance_to_integer(const Complex& z) {
  return std::abs(Complex(z.real() - std::round(z.real()), z.imag()));
}

bool is_nonpositive_integer(const GaussRational& z, double /*tol*/) {
  return z.is_integer() && sgn(z.real()) <= 0;
}

bool is_nonpositive_integer(const Complex& z, double tol) {
  return z.real() < 0.5 && distance_to_integer(z) <= tol;
}

Complex ScaledComplex::value() const {
  int e = static_cast<int>(std::max<std::int64_t>(std::min<std::int64_t>(exponent_, 1 << 20), -(1 << 20)));
  return {std::ldexp(mantissa_.real(), e), std::ldexp(mantissa_.imag(), e)};
}

double ScaledComplex::log_abs() const {
  return std::log(std::abs(mantissa_)) + static_cast<double>(exponent_) * std::log(2.0);
}

void ScaledComplex::normalize() {
  double big = std::max(std::abs(mantissa_.real()), std::abs(mantissa_.imag()));
  if (big == 0.0 || !std::isfinite(big)) {
    if (big == 0.0) exponent_ = 0;
    return;
  }
  int e = 0;
  std::frexp(big, &e);
  mantissa_ = {std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e)};
  exponent_ += e;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& o) {
  mantissa_ *= o.mantissa_;
  exponent_ += o.exponent_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& o) {
  mantissa_ /= o.mantissa_;
  exponent_ -= o.exponent_;
  normalize();
  return *this;
}

}  // namespace fcpm

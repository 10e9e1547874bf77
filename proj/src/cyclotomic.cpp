#include "fcpm/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace fcpm {

int euler_phi(int n) {
  if (n < 1) throw std::invalid_argument("euler_phi needs n >= 1");
  int result = n;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    result -= result / q;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of a by the monic polynomial b, both constant term first.
std::vector<Rational> divide_exact(std::vector<Rational> a, const std::vector<Rational>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Rational> q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    Rational c = a[i];
    q[i - db] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (sgn(a[i]) != 0) throw std::logic_error("cyclotomic division left a remainder");
  }
  return q;
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<Rational>> cache;
  if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<Rational> poly(static_cast<std::size_t>(n) + 1, Rational(0));
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  return cache.try_emplace(n, std::move(poly)).first->second;
}

CycloScalar::CycloScalar(Rational c) {
  if (sgn(c) != 0) c_.push_back(std::move(c));
}

CycloScalar::CycloScalar(int p, Rational c) : CycloScalar(std::move(c)) {
  if (p < 1) throw std::invalid_argument("cyclotomic order must be positive");
  p_ = p;
}

CycloScalar CycloScalar::zeta_power(int p, int i) {
  if (p < 1) throw std::invalid_argument("cyclotomic order must be positive");
  i %= p;
  if (i < 0) i += p;
  std::vector<Rational> poly(static_cast<std::size_t>(i) + 1, Rational(0));
  poly.back() = 1;
  return reduce(p, std::move(poly));
}

CycloScalar CycloScalar::reduce(int p, std::vector<Rational> poly) {
  const auto& phi = cyclotomic_polynomial(p);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    Rational c = poly[i];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  if (poly.size() > deg) poly.resize(deg);
  CycloScalar out;
  out.p_ = p;
  out.c_ = std::move(poly);
  out.trim();
  return out;
}

void CycloScalar::adopt(int p) {
  if (p == 0 || p_ == p) return;
  if (p_ != 0) throw std::invalid_argument("elements of different cyclotomic fields");
  p_ = p;
}

void CycloScalar::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Complex CycloScalar::to_complex() const {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(p_ ? p_ : 1);
    acc += c_[i].get_d() * std::polar(1.0, angle);
  }
  return acc;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  adopt(o.p_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) {
  adopt(o.p_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) { return *this = *this * o; }

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
  if (a.p_ && b.p_ && a.p_ != b.p_) throw std::invalid_argument("elements of different cyclotomic fields");
  const int p = a.p_ ? a.p_ : b.p_;
  if (a.is_zero() || b.is_zero()) {
    CycloScalar z;
    z.p_ = p;
    return z;
  }
  std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
  }
  if (p == 0) {
    CycloScalar out;
    out.c_ = std::move(prod);
    out.trim();
    return out;
  }
  return CycloScalar::reduce(p, std::move(prod));
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.c_.size() > 1 && b.c_.size() > 1 && a.p_ != b.p_) return false;
  return a.c_ == b.c_;
}

std::string to_string(const CycloScalar& c) {
  if (c.is_zero()) return "0";
  std::string out;
  const auto& k = c.coefficients();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (sgn(k[i]) == 0) continue;
    Rational mag = abs(k[i]);
    if (out.empty()) {
      if (sgn(k[i]) < 0) out += "-";
    } else {
      out += sgn(k[i]) < 0 ? " - " : " + ";
    }
    std::string var = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    if (var.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += var;
    } else {
      out += mag.get_str() + "*" + var;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const CycloScalar& c) { return os << to_string(c); }

}  // namespace fcpm

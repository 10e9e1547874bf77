#include "fcpm/singular.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

#include "fcpm/errors.hpp"

namespace fcpm {

CycloScalar cyclo_reduce(int p, std::vector<Rational> poly_in_zeta) {
  return CycloScalar::reduce(p, std::move(poly_in_zeta));
}

namespace {

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Product of the linear forms with odometer index in [first, last).
CycloPoly partial_product(int p, int m, std::int64_t first, std::int64_t last, const std::vector<CycloScalar>& zeta) {
  CycloPoly acc = CycloPoly::constant(m, CycloScalar(p, 1));
  for (std::int64_t t = first; t < last; ++t) {
    CycloPoly form = CycloPoly::constant(m, CycloScalar(p, 1));
    std::int64_t rest = t;
    for (int k = m - 1; k >= 0; --k) {
      int i = static_cast<int>(rest % p);
      rest /= p;
      Exponent e(static_cast<std::size_t>(m), 0);
      e[static_cast<std::size_t>(k)] = 1;
      form.add_term(e, -zeta[static_cast<std::size_t>(i)]);
    }
    acc = acc * form;
  }
  return acc;
}

}  // namespace

CycloPoly build_R_z(int p, int m, unsigned workers) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  std::vector<CycloScalar> zeta;
  for (int i = 0; i < p; ++i) zeta.push_back(CycloScalar::zeta_power(p, i));
  const std::int64_t count = ipow(p, m);
  if (workers == 0) workers = std::clamp(std::thread::hardware_concurrency(), 1U, 8U);
  const auto chunks = static_cast<std::int64_t>(std::min<std::int64_t>(workers, count));
  if (chunks <= 1) return partial_product(p, m, 0, count, zeta);
  std::vector<std::future<CycloPoly>> parts;
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::int64_t first = count * c / chunks;
    std::int64_t last = count * (c + 1) / chunks;
    parts.push_back(std::async(std::launch::async, partial_product, p, m, first, last, std::cref(zeta)));
  }
  CycloPoly acc = parts.front().get();
  for (std::size_t c = 1; c < parts.size(); ++c) acc = acc * parts[c].get();
  return acc;
}

void check_invariance(const CycloPoly& r, int p) {
  for (const auto& [e, c] : r.terms()) {
    if (!c.is_rational()) {
      throw InvarianceError("coefficient " + to_string(c) + " of R(z) is not rational");
    }
    if (c.rational_part().get_den() != 1) {
      throw InvarianceError("coefficient " + to_string(c) + " of R(z) is not an integer");
    }
    for (int v : e) {
      if (v % p != 0) throw InvarianceError("R(z) has an exponent not divisible by p");
    }
  }
}

RationalPoly build_R_x(int p, int m) {
  CycloPoly rz = build_R_z(p, m);
  check_invariance(rz, p);
  RationalPoly rx(m);
  for (const auto& [e, c] : rz.terms()) {
    Exponent ex = e;
    for (int& v : ex) v /= p;
    rx.add_term(ex, c.rational_part());
  }
  if (rx.total_degree() != ipow(p, m - 1)) {
    throw InvarianceError("R(x) has degree " + std::to_string(rx.total_degree()) + ", expected " +
                          std::to_string(ipow(p, m - 1)));
  }
  return rx;
}

const RationalPoly& singular_polynomial(int p, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, RationalPoly> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({p, m});
  if (it == cache.end()) it = cache.emplace(std::pair{p, m}, build_R_x(p, m)).first;
  return it->second;
}

GaussRational singular_value(const RationalPoly& r, std::span<const GaussRational> x) {
  GaussRational v = r.evaluate<GaussRational>(x);
  for (const auto& xk : x) v *= xk;
  return v;
}

bool on_singular_locus(std::span<const GaussRational> x, const RationalPoly& r) {
  return singular_value(r, x).is_zero();
}

bool on_singular_locus(std::span<const Complex> x, const RationalPoly& r, double rel_tol) {
  if (x.size() != static_cast<std::size_t>(r.nvars())) throw std::invalid_argument("point has the wrong dimension");
  Complex value(0.0, 0.0);
  double scale = 0.0;
  for (const auto& [e, c] : r.terms()) {
    Complex t(c.get_d(), 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    }
    value += t;
    scale += std::abs(t);
  }
  double coords = 1.0;
  for (const auto& xk : x) coords *= std::abs(xk);
  return coords == 0.0 || std::abs(value) <= rel_tol * scale;
}

bool on_singular_locus(std::span<const GaussRational> x, int p) {
  return on_singular_locus(x, singular_polynomial(p, static_cast<int>(x.size())));
}

bool on_singular_locus(std::span<const Complex> x, int p, double rel_tol) {
  return on_singular_locus(x, singular_polynomial(p, static_cast<int>(x.size())), rel_tol);
}

std::string format_poly(const RationalPoly& r, const std::string& var) {
  if (r.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : r.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace fcpm

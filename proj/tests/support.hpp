#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fcpm/integral.hpp"
#include "fcpm/params.hpp"
#include "fcpm/scalar.hpp"

namespace fcpm::test {

inline GaussRational q(const std::string& s) { return parse_gauss_rational(s); }

inline ParameterSet<GaussRational> exact_params(int p, int m, const std::vector<std::string>& a,
                                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<GaussRational> av;
  for (const auto& s : a) av.push_back(q(s));
  std::vector<std::vector<GaussRational>> bv;
  for (const auto& row : rows) {
    auto& out = bv.emplace_back();
    for (const auto& s : row) out.push_back(q(s));
  }
  return {p, m, std::move(av), std::move(bv)};
}

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// num/den with 2 <= den <= max_den, never an integer.
inline Rational random_fraction(std::mt19937_64& rng, int max_den = 13, int max_num = 25) {
  std::uniform_int_distribution<int> den(2, max_den);
  std::uniform_int_distribution<int> num(-max_num, max_num);
  while (true) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    if (r.get_den() != 1) return r;
  }
}

/// Rational parameters passing validate() and every non-integrality condition.
inline ParameterSet<GaussRational> random_generic(int p, int m, std::mt19937_64& rng) {
  while (true) {
    std::vector<GaussRational> a;
    for (int i = 0; i < p; ++i) a.emplace_back(random_fraction(rng));
    std::vector<std::vector<GaussRational>> rows;
    for (int j = 0; j + 1 < p; ++j) {
      auto& row = rows.emplace_back();
      for (int k = 0; k < m; ++k) row.emplace_back(random_fraction(rng));
    }
    ParameterSet<GaussRational> ps(p, m, std::move(a), std::move(rows));
    if (validate(ps).empty() && check_nonintegrality(ps).generic()) return ps;
  }
}

/// random_generic that also meets the integral-representation hypotheses.
inline ParameterSet<GaussRational> random_integral_admissible(int p, int m, std::mt19937_64& rng) {
  while (true) {
    auto ps = random_generic(p, m, rng);
    try {
      require_integral_hypotheses(ps);
      return ps;
    } catch (const std::exception&) {
    }
  }
}

/// Coefficients of t^0..t^dmax in (1 + t + ... + t^{p-1})^m.
inline std::vector<std::int64_t> expected_hilbert(int p, int m, int dmax) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(dmax) + 1, 0);
  c[0] = 1;
  for (int r = 0; r < m; ++r) {
    std::vector<std::int64_t> next(c.size(), 0);
    for (std::size_t d = 0; d < c.size(); ++d) {
      for (int i = 0; i < p && d + static_cast<std::size_t>(i) < c.size(); ++i) next[d + static_cast<std::size_t>(i)] += c[d];
    }
    c = next;
  }
  return c;
}

/// Coefficients of t^0..t^dmax in (1 - t^p)^k / (1 - t)^m.
inline std::vector<std::int64_t> expected_partial(int p, int m, int k, int dmax) {
  const std::size_t n = static_cast<std::size_t>(dmax) + 1;
  std::vector<std::int64_t> num(n, 0);
  num[0] = 1;
  for (int r = 0; r < k; ++r) {
    std::vector<std::int64_t> next = num;
    for (std::size_t d = static_cast<std::size_t>(p); d < n; ++d) next[d] -= num[d - static_cast<std::size_t>(p)];
    num = next;
  }
  for (int r = 0; r < m; ++r) {
    for (std::size_t d = 1; d < n; ++d) num[d] += num[d - 1];
  }
  return num;
}

}  // namespace fcpm::test

#include "fcpm/charvar.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "fcpm/errors.hpp"
#include "fcpm/linalg.hpp"
#include "fcpm/series.hpp"
#include "fcpm/singular.hpp"

namespace fcpm {

namespace {

using GR = GaussRational;

SymbolPoly var(int nvars, int i) { return SymbolPoly::variable(nvars, i, GR(1)); }

// sum_j z_j xi_j in the formal ring.
SymbolPoly euler_sum(int m) {
  SymbolPoly s(2 * m);
  for (int j = 0; j < m; ++j) s += var(2 * m, j) * var(2 * m, m + j);
  return s;
}

void check_axis(int m, int k) {
  if (k < 0 || k >= m) throw std::out_of_range("symbol index out of range");
}

GR power(GR base, int e) {
  GR r(1);
  while (e-- > 0) r *= base;
  return r;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<GR> random_point(int m, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound - 1);
  std::uniform_int_distribution<int> den(1, bound);
  std::vector<GR> z;
  for (int k = 0; k < m; ++k) {
    int n = num(rng);
    if (n >= 0) ++n;  // skip zero
    Rational q(n, den(rng));
    q.canonicalize();
    z.emplace_back(q);
  }
  return z;
}

}  // namespace

SymbolPoly symbol_L(int p, int m, int k) {
  check_axis(m, k);
  SymbolPoly zx = var(2 * m, k) * var(2 * m, m + k);
  return zx.pow(static_cast<unsigned>(p)) - var(2 * m, k).pow(static_cast<unsigned>(p)) * euler_sum(m).pow(static_cast<unsigned>(p));
}

SymbolPoly symbol_M(int p, int m, int k) {
  check_axis(m, k);
  const auto up = static_cast<unsigned>(p);
  SymbolPoly last = var(2 * m, 2 * m - 1).pow(up);
  if (k < m - 1) return var(2 * m, m + k).pow(up) - last;
  return last - euler_sum(m).pow(up);
}

SymbolPoly specialize(const SymbolPoly& formal, std::span<const GR> z) {
  const int m = static_cast<int>(z.size());
  if (formal.nvars() != 2 * m) throw std::invalid_argument("formal symbol and point have different dimensions");
  SymbolPoly out(m);
  for (const auto& [e, c] : formal.terms()) {
    GR v = c;
    for (int j = 0; j < m; ++j) v *= power(z[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(j)]);
    out.add_term(Exponent(e.begin() + m, e.end()), v);
  }
  return out;
}

SpecializedPoint make_point(int p, std::vector<GR> z) {
  SpecializedPoint pt;
  pt.on_coordinate_axes = std::any_of(z.begin(), z.end(), [](const GR& v) { return v.is_zero(); });
  std::vector<GR> x;
  for (const auto& v : z) x.push_back(power(v, p));
  const auto& r = singular_polynomial(p, static_cast<int>(z.size()));
  pt.on_R_zero = r.evaluate<GR>(x).is_zero();
  pt.z = std::move(z);
  return pt;
}

std::vector<SymbolPoly> symbols_L(int p, std::span<const GR> z) {
  const int m = static_cast<int>(z.size());
  std::vector<SymbolPoly> out;
  for (int k = 0; k < m; ++k) out.push_back(specialize(symbol_L(p, m, k), z));
  return out;
}

std::vector<SymbolPoly> symbols(int p, std::span<const GR> z) {
  const int m = static_cast<int>(z.size());
  std::vector<std::string> zeros;
  for (int k = 0; k < m; ++k) {
    if (z[static_cast<std::size_t>(k)].is_zero()) zeros.push_back("z_" + std::to_string(k + 1) + " = 0");
  }
  if (!zeros.empty()) throw ValidationError("the generators M_k need nonzero coordinates", std::move(zeros));
  std::vector<SymbolPoly> ms;
  for (int k = 0; k < m; ++k) ms.push_back(specialize(symbol_M(p, m, k), z));
  auto ls = symbols_L(p, z);
  for (int k = 0; k < m; ++k) {
    SymbolPoly combo = k < m - 1 ? ms[static_cast<std::size_t>(k)] + ms.back() : ms.back();
    combo *= power(z[static_cast<std::size_t>(k)], p);
    if (!(combo == ls[static_cast<std::size_t>(k)])) {
      throw InvarianceError("L~_" + std::to_string(k + 1) + " is not the expected combination of the M_k");
    }
  }
  return ms;
}

SymbolPoly principal_symbol(const EulerOperator<GR>& op) {
  const int m = op.m();
  const int order = op.order();
  SymbolPoly out(2 * m);
  for (const auto& t : op.terms()) {
    int nonconst = 0;
    for (const auto& f : t.factors) nonconst += f.is_constant() ? 0 : 1;
    if (nonconst != order) continue;
    Exponent mono(static_cast<std::size_t>(2 * m), 0);
    std::copy(t.monomial.begin(), t.monomial.end(), mono.begin());
    SymbolPoly term(2 * m);
    term.add_term(mono, t.coefficient);
    for (const auto& f : t.factors) {
      if (f.is_constant()) {
        term *= f.shift;
        continue;
      }
      SymbolPoly lin(2 * m);
      for (int j = 0; j < m; ++j) {
        Exponent e(static_cast<std::size_t>(2 * m), 0);
        e[static_cast<std::size_t>(j)] = 1;
        e[static_cast<std::size_t>(m + j)] = 1;
        lin.add_term(e, f.weights[static_cast<std::size_t>(j)]);
      }
      term = term * lin;
    }
    out += term;
  }
  return out;
}

EulerOperator<GR> pullback_operator(const ParameterSet<GR>& ps, int k) {
  return pullback(operator_l(ps, k), ps.p());
}

bool pullback_identity_holds(const ParameterSet<GR>& ps, int k, std::span<const int> alpha) {
  const int m = ps.m();
  const int p = ps.p();
  if (alpha.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("alpha has the wrong length");
  std::vector<GR> mu_x;
  std::vector<GR> mu_z;
  for (int a : alpha) {
    mu_x.emplace_back(a);
    mu_z.emplace_back(p * a);
  }
  TruncatedSeries<GR> fx(m, 0, mu_x);
  fx[MultiIndex::zero(m)] = GR(1);
  TruncatedSeries<GR> fz(m, 0, mu_z);
  fz[MultiIndex::zero(m)] = GR(1);
  auto lx = apply_polynomial(operator_l(ps, k), fx);
  auto lz = apply_polynomial(pullback_operator(ps, k), fz);
  bool ok = true;
  lz.for_each([&](const MultiIndex& n, const GR& c) {
    bool divisible = std::all_of(n.n.begin(), n.n.end(), [p](int v) { return v % p == 0; });
    if (!divisible) {
      ok = ok && c.is_zero();
      return;
    }
    std::vector<int> q = n.n;
    for (int& v : q) v /= p;
    MultiIndex nq(std::move(q));
    GR expected = lx.contains(nq) ? lx[nq] : GR(0);
    ok = ok && c == expected;
  });
  return ok;
}

std::vector<std::int64_t> quotient_dimensions(std::span<const SymbolPoly> generators, int m, int d_max,
                                              unsigned workers) {
  for (const auto& g : generators) {
    if (g.nvars() != m) throw std::invalid_argument("generator lives in the wrong ring");
    if (!g.is_zero() && !g.is_homogeneous(g.total_degree())) throw std::invalid_argument("generators must be homogeneous");
  }
  auto band = [&](int d) -> std::int64_t {
    const std::int64_t size = shell_size(m, d);
    ExactMatrix rows;
    for (const auto& g : generators) {
      if (g.is_zero() || g.total_degree() > d) continue;
      for (const auto& beta : shell(m, d - g.total_degree())) {
        std::vector<GR> row(static_cast<std::size_t>(size));
        std::vector<int> e(static_cast<std::size_t>(m));
        for (const auto& [ge, c] : g.terms()) {
          for (std::size_t i = 0; i < e.size(); ++i) e[i] = ge[i] + beta.n[i];
          row[static_cast<std::size_t>(shell_rank(e, d))] = c;
        }
        rows.push_back(std::move(row));
      }
    }
    return size - static_cast<std::int64_t>(exact_rank(std::move(rows)));
  };
  if (workers == 0) workers = std::clamp(std::thread::hardware_concurrency(), 1U, 8U);
  std::vector<std::int64_t> h(static_cast<std::size_t>(d_max) + 1);
  if (workers == 1) {
    for (int d = 0; d <= d_max; ++d) h[static_cast<std::size_t>(d)] = band(d);
    return h;
  }
  std::vector<std::future<std::int64_t>> jobs;
  for (int d = 0; d <= d_max; ++d) jobs.push_back(std::async(std::launch::async, band, d));
  for (int d = 0; d <= d_max; ++d) h[static_cast<std::size_t>(d)] = jobs[static_cast<std::size_t>(d)].get();
  return h;
}

std::vector<std::int64_t> hilbert_function(int p, std::span<const GR> z, int d_max) {
  auto gens = symbols(p, z);
  return quotient_dimensions(gens, static_cast<int>(z.size()), d_max);
}

std::vector<std::int64_t> partial_quotient_dimensions(int p, std::span<const GR> z, int k, int d_max) {
  auto gens = symbols(p, z);
  if (k < 0 || k > static_cast<int>(gens.size())) throw std::out_of_range("partial quotient index out of range");
  gens.erase(gens.begin() + k, gens.end());
  return quotient_dimensions(gens, static_cast<int>(z.size()), d_max);
}

RankResult rank_at(int p, std::span<const GR> z) {
  const int m = static_cast<int>(z.size());
  if (m < 1) throw std::invalid_argument("rank_at needs at least one coordinate");
  RankResult r;
  r.d_max = rank_degree_cap(p, m);
  auto gens = symbols_L(p, z);
  r.hilbert = quotient_dimensions(gens, m, r.d_max);
  if (r.hilbert.back() == 0) {
    std::int64_t total = 0;
    for (auto h : r.hilbert) total += h;
    r.rank = total;
  }
  r.drop = !r.rank || *r.rank != ipow(p, m);
  return r;
}

CycloScalar c_chi(int p, std::span<const Rational> z, std::span<const int> chat) {
  if (z.empty()) throw std::invalid_argument("c_chi needs at least one coordinate");
  if (chat.size() + 1 != z.size()) throw std::invalid_argument("chat must have m-1 entries");
  CycloScalar form(p, z.back());
  for (std::size_t k = 0; k < chat.size(); ++k) form += CycloScalar::zeta_power(p, chat[k]) * CycloScalar(p, z[k]);
  CycloScalar pw(p, 1);
  for (int i = 0; i < p; ++i) pw *= form;
  return CycloScalar(p, 1) - pw;
}

std::vector<GR> sample_generic_point(int p, int m, std::mt19937_64& rng, int bound) {
  while (true) {
    auto pt = make_point(p, random_point(m, rng, bound));
    if (pt.generic()) return pt.z;
  }
}

std::vector<GR> sample_singular_point(int p, int m, std::mt19937_64& rng, int bound) {
  std::vector<GR> units{GR(1)};
  if (p % 2 == 0) units.emplace_back(-1);
  if (p % 4 == 0) {
    units.emplace_back(0, 1);
    units.emplace_back(0, -1);
  }
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  while (true) {
    auto z = random_point(m, rng, bound);
    std::vector<GR> u;
    for (int k = 0; k < m; ++k) u.push_back(units[pick(rng)]);
    GR rest(1);
    for (int k = 0; k + 1 < m; ++k) rest -= u[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
    z.back() = rest / u.back();
    if (!z.back().is_zero()) return z;
  }
}

}  // namespace fcpm

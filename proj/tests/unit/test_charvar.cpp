#include <doctest.h>

#include <random>

#include "fcpm/charvar.hpp"
#include "fcpm/errors.hpp"
#include "fcpm/singular.hpp"
#include "support.hpp"

using namespace fcpm;
using fcpm::test::exact_params;
using fcpm::test::q;

namespace {

SymbolPoly zvar(int m, int k) { return SymbolPoly::variable(2 * m, k, GaussRational(1)); }

std::vector<std::int64_t> padded(std::vector<std::int64_t> v, std::size_t n) {
  v.resize(n, 0);
  return v;
}

std::vector<std::vector<int>> multi_indices(int m, int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  while (true) {
    int t = 0;
    for (int v : a) t += v;
    if (t <= max_total) out.push_back(a);
    int i = 0;
    while (i < m && ++a[static_cast<std::size_t>(i)] > max_total) a[static_cast<std::size_t>(i++)] = 0;
    if (i == m) break;
  }
  return out;
}

}  // namespace

TEST_CASE("formal symbols and their relations") {
  for (int p = 2; p <= 4; ++p) {
    for (int m = 1; m <= 3; ++m) {
      for (int k = 0; k < m; ++k) {
        auto zk = zvar(m, k).pow(static_cast<unsigned>(p));
        auto rhs = k < m - 1 ? zk * (symbol_M(p, m, k) + symbol_M(p, m, m - 1)) : zk * symbol_M(p, m, m - 1);
        CHECK(symbol_L(p, m, k) == rhs);
      }
    }
  }
  CHECK_THROWS(symbol_L(2, 2, 2));
  std::vector<GaussRational> z{q("1/3"), q("-2/7"), q("3/5")};
  for (const auto& g : symbols(3, z)) CHECK(g.is_homogeneous(3));
}

TEST_CASE("one variable: M = (1 - z^p) xi^p") {
  std::vector<GaussRational> z{q("1/3")};
  auto ms = symbols(3, z);
  REQUIRE(ms.size() == 1);
  SymbolPoly expect(1);
  expect.add_term({3}, GaussRational(1) - q("1/27"));
  CHECK(ms[0] == expect);
}

TEST_CASE("symbols need nonzero coordinates") {
  std::vector<GaussRational> z{q("0"), q("1/5")};
  CHECK_THROWS_AS(symbols(2, z), ValidationError);
  CHECK_NOTHROW(symbols_L(2, z));
}

TEST_CASE("the pulled-back annihilators have the expected principal symbols") {
  std::mt19937_64 rng(41);
  for (int p = 2; p <= 3; ++p) {
    for (int m = 1; m <= 3; ++m) {
      auto ps = test::random_generic(p, m, rng);
      GaussRational scale(1);
      for (int i = 0; i < p; ++i) scale *= GaussRational(p);
      for (int k = 0; k < m; ++k) CHECK(principal_symbol(pullback_operator(ps, k)) * scale == symbol_L(p, m, k));
    }
  }
}

TEST_CASE("pullback identity on monomials up to total degree 4") {
  std::mt19937_64 rng(42);
  for (auto [p, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    auto ps = test::random_generic(p, m, rng);
    for (const auto& alpha : multi_indices(m, 4)) {
      for (int k = 0; k < m; ++k) CHECK(pullback_identity_holds(ps, k, alpha));
    }
  }
}

TEST_CASE("Hilbert function at a fixed generic point") {
  std::vector<GaussRational> z{q("1/3"), q("1/5")};
  CHECK(hilbert_function(2, z, 4) == std::vector<std::int64_t>{1, 2, 1, 0, 0});
  auto r = rank_at(2, z);
  REQUIRE(r.rank);
  CHECK(*r.rank == 4);
  CHECK_FALSE(r.drop);
  CHECK(r.d_max == rank_degree_cap(2, 2));
}

TEST_CASE("rank p^m at random generic points") {
  std::mt19937_64 rng(43);
  for (auto [p, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 1}}) {
    const int dmax = rank_degree_cap(p, m);
    auto expect = test::expected_hilbert(p, m, dmax);
    for (int trial = 0; trial < 3; ++trial) {
      auto z = sample_generic_point(p, m, rng);
      CHECK(make_point(p, z).generic());
      CHECK(hilbert_function(p, z, dmax) == expect);
      auto r = rank_at(p, z);
      REQUIRE(r.rank);
      std::int64_t pm = 1;
      for (int k = 0; k < m; ++k) pm *= p;
      CHECK(*r.rank == pm);
      CHECK_FALSE(r.drop);
      for (int k = 1; k < m; ++k) CHECK(partial_quotient_dimensions(p, z, k, dmax) == test::expected_partial(p, m, k, dmax));
    }
  }
}

TEST_CASE("rank drops on the singular locus and on the axes") {
  std::mt19937_64 rng(44);
  for (auto [p, m] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 2}}) {
    for (int trial = 0; trial < 2; ++trial) {
      auto z = sample_singular_point(p, m, rng);
      auto pt = make_point(p, z);
      CHECK(pt.on_R_zero);
      CHECK_FALSE(pt.generic());
      CHECK(rank_at(p, z).drop);
    }
  }
  std::vector<GaussRational> half{q("1/2"), q("1/2")};
  CHECK(rank_at(2, half).drop);
  std::vector<GaussRational> one{q("1")};
  auto r1 = rank_at(2, one);
  CHECK(r1.drop);
  CHECK_FALSE(r1.rank);
  std::vector<GaussRational> axis{q("0"), q("1/5")};
  CHECK(rank_at(2, axis).drop);
}

TEST_CASE("quotient dimensions do not depend on the worker count") {
  std::vector<GaussRational> z{q("1/3"), q("-2/7"), q("3/5")};
  auto gens = symbols(2, z);
  CHECK(quotient_dimensions(gens, 3, 6, 1) == quotient_dimensions(gens, 3, 6, 3));
  CHECK(padded(quotient_dimensions(gens, 3, 6, 1), 7) == test::expected_hilbert(2, 3, 6));
}

TEST_CASE("c_chi") {
  std::vector<Rational> z{Rational(1, 3), Rational(1, 6)};
  std::vector<int> plus{0};
  std::vector<int> minus{1};
  CHECK(c_chi(2, z, plus) == CycloScalar(Rational(3, 4)));
  CHECK(c_chi(2, z, minus) == CycloScalar(Rational(35, 36)));
  std::vector<Rational> on{Rational(1, 2), Rational(1, 2)};
  CHECK(c_chi(2, on, plus).is_zero());
  std::vector<GaussRational> onq{q("1/4"), q("1/4")};
  CHECK(on_singular_locus(std::span<const GaussRational>(onq), 2));
}

TEST_CASE("vanishing c_chi puts z^p on the singular locus") {
  std::mt19937_64 rng(45);
  for (int p = 2; p <= 4; ++p) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> z{test::random_fraction(rng), Rational(0)};
      z[1] = 1 - z[0];
      std::vector<int> chat{0};
      REQUIRE(c_chi(p, z, chat).is_zero());
      std::vector<GaussRational> x;
      for (const auto& v : z) {
        Rational w = 1;
        for (int i = 0; i < p; ++i) w *= v;
        x.emplace_back(w);
      }
      CHECK(on_singular_locus(std::span<const GaussRational>(x), p));
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fcpm/errors.hpp"
#include "fcpm/series.hpp"
#include "support.hpp"

using namespace fcpm;
using fcpm::test::exact_params;
using fcpm::test::q;
using fcpm::test::rel;

namespace {

ParameterSet<GaussRational> f4() { return exact_params(2, 2, {"1/2", "1/3"}, {{"1/5", "1/7"}}); }
ParameterSet<GaussRational> p32() { return exact_params(3, 2, {"1/2", "1/3", "1/4"}, {{"1/5", "1/7"}, {"1/11", "1/13"}}); }

std::vector<MultiIndex> all_up_to(int m, int order) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= order; ++d) {
    for (auto& n : shell(m, d)) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("shell bookkeeping") {
  for (int m = 1; m <= 4; ++m) {
    std::int64_t offset = 0;
    for (int d = 0; d <= 7; ++d) {
      auto sh = shell(m, d);
      CHECK(static_cast<std::int64_t>(sh.size()) == shell_size(m, d));
      CHECK(shell_offset(m, d) == offset);
      offset += shell_size(m, d);
      for (std::size_t i = 0; i < sh.size(); ++i) {
        CHECK(sh[i].total == d);
        CHECK(shell_rank(sh[i].n, d) == static_cast<std::int64_t>(i));
      }
      if (m > 1 && d > 0) {
        CHECK(sh.front().n.back() == d);
        CHECK(sh.back().n.front() == d);
      }
    }
  }
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("pochhammer symbols") {
  CHECK(pochhammer(q("7/3"), 0) == GaussRational(1));
  CHECK(pochhammer(q("1"), 4) == GaussRational(24));
  CHECK(pochhammer(q("3"), 2) == GaussRational(12));
  CHECK(pochhammer(q("-2"), 3) == GaussRational(0));
  CHECK(pochhammer(q("i"), 2) == q("-1+i"));
  ScaledComplex big = pochhammer(Complex(0.5, 0.0), 400);
  CHECK(big.log_abs() == doctest::Approx(std::lgamma(400.5) - std::lgamma(0.5)).epsilon(1e-12));
}

TEST_CASE("known coefficients") {
  auto ps = exact_params(2, 2, {"1/2", "1/2"}, {{"1", "1"}});
  CHECK(coefficient(ps, MultiIndex({1, 1})) == q("9/16"));
  CHECK(coefficient(p32(), MultiIndex({2, 1})) == q("48173125/18432"));
  CHECK(coefficient(p32(), MultiIndex::zero(2)) == GaussRational(1));
  auto gauss = exact_params(2, 1, {"1/2", "1/3"}, {{"1/5"}});
  CHECK(coefficient(gauss, MultiIndex({1})) == q("1/2") * q("1/3") / q("1/5"));
  CHECK(coefficient_ratio(p32(), MultiIndex({2, 1}), 0) ==
        coefficient(p32(), MultiIndex({2, 1})) / coefficient(p32(), MultiIndex({1, 1})));
}

TEST_CASE("ratio recurrence agrees with the defining product") {
  std::mt19937_64 rng(11);
  for (auto [p, m] : {std::pair{2, 1}, std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 2}}) {
    auto ps = test::random_generic(p, m, rng);
    for (const auto& n : all_up_to(m, 8)) CHECK(coefficient(ps, n) == coefficient_direct(ps, n));
    auto ser = series_coefficients(ps, 8);
    ser.for_each([&](const MultiIndex& n, const GaussRational& c) { CHECK(c == coefficient_direct(ps, n)); });
  }
}

TEST_CASE("p = 2 reproduces the Lauricella F_C coefficients") {
  std::mt19937_64 rng(12);
  for (int m = 1; m <= 3; ++m) {
    auto ps = test::random_generic(2, m, rng);
    for (const auto& n : all_up_to(m, 6)) {
      GaussRational expect = pochhammer(ps.a(0), n.total) * pochhammer(ps.a(1), n.total);
      for (int k = 0; k < m; ++k) {
        GaussRational den = pochhammer(ps.b(0, k), n[k]);
        for (int i = 1; i <= n[k]; ++i) den *= GaussRational(i);
        expect /= den;
      }
      CHECK(coefficient(ps, n) == expect);
    }
  }
}

TEST_CASE("coefficients are symmetric under a simultaneous permutation of columns and indices") {
  std::mt19937_64 rng(13);
  auto ps = test::random_generic(3, 3, rng);
  std::vector<int> perm{2, 0, 1};
  std::vector<std::vector<GaussRational>> rows(2, std::vector<GaussRational>(3));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 3; ++k) rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = ps.b(j, perm[static_cast<std::size_t>(k)]);
  }
  ParameterSet<GaussRational> permuted(3, 3, ps.a(), rows);
  for (const auto& n : all_up_to(3, 6)) {
    MultiIndex pn({n[perm[0]], n[perm[1]], n[perm[2]]});
    CHECK(coefficient(permuted, pn) == coefficient(ps, n));
  }
}

TEST_CASE("restriction to one variable gives the single-variable series") {
  std::mt19937_64 rng(14);
  for (int p = 2; p <= 4; ++p) {
    auto ps = test::random_generic(p, 3, rng);
    for (int k = 0; k < 3; ++k) {
      std::vector<std::vector<GaussRational>> rows;
      for (int j = 0; j + 1 < p; ++j) rows.push_back({ps.b(j, k)});
      ParameterSet<GaussRational> one(p, 1, ps.a(), rows);
      for (int d = 0; d <= 10; ++d) {
        std::vector<int> n(3, 0);
        n[static_cast<std::size_t>(k)] = d;
        CHECK(coefficient(ps, MultiIndex(n)) == coefficient(one, MultiIndex({d})));
      }
    }
  }
}

TEST_CASE("float coefficients track exact ones") {
  std::mt19937_64 rng(15);
  auto ps = test::random_generic(3, 2, rng);
  auto exact = series_coefficients(ps, 30);
  auto fl = series_coefficients(ps.to_float(), 30);
  double worst = 0.0;
  exact.for_each([&](const MultiIndex& n, const GaussRational& c) {
    worst = std::max(worst, std::abs(fl[n] - to_complex(c)) / (1.0 + magnitude(c)));
  });
  CHECK(worst <= 1e-10);
}

TEST_CASE("convergence domain") {
  std::vector<Complex> in{0.04, 0.09};
  std::vector<Complex> edge{0.25, 0.25};
  CHECK(domain_radius(in, 2) == doctest::Approx(0.5));
  CHECK(in_domain(in, 2));
  CHECK_FALSE(in_domain(edge, 2));
  std::vector<Complex> c3{0.01, 0.02};
  CHECK(domain_radius(c3, 3) == doctest::Approx(std::cbrt(0.01) + std::cbrt(0.02)));
}

TEST_CASE("closed-form reductions") {
  auto log2 = exact_params(2, 1, {"1", "1"}, {{"2"}});
  std::vector<Complex> half{0.5};
  auto e = evaluate(log2, half, 1e-13);
  CHECK(e.converged);
  CHECK(std::abs(e.value - 2.0 * std::log(2.0)) <= 1e-9);
  CHECK(std::abs(evaluate(log2.to_float(), half, 1e-13).value - 2.0 * std::log(2.0)) <= 1e-9);

  std::vector<Complex> zero{0.0, 0.0};
  auto z = evaluate(f4(), zero, 1e-12);
  CHECK(z.value == Complex(1.0, 0.0));
}

TEST_CASE("frozen reference values") {
  std::vector<Complex> x{0.04, 0.09};
  CHECK(rel(evaluate(f4(), x, 1e-15).value, Complex(1.209264432007670633606651756087203496, 0.0)) <= 1e-12);
  CHECK(rel(evaluate(f4().to_float(), x, 1e-15).value, Complex(1.209264432007670633606651756087203496, 0.0)) <= 1e-12);
  std::vector<Complex> xc{{0.05, 0.02}, {0.03, -0.01}};
  CHECK(rel(evaluate(f4(), xc, 1e-15).value,
            Complex(1.1035251624370306466163341210604445, 0.0079274940172509935746631191500374798)) <= 1e-12);

  auto hyp32 = exact_params(3, 1, {"1/2", "1/3", "1/4"}, {{"1/5"}, {"1/7"}});
  std::vector<Complex> x3{0.3};
  CHECK(rel(evaluate(hyp32, x3, 1e-15).value, Complex(1.6036348862807601987229892735091501, 0.0)) <= 1e-11);

  std::vector<Complex> x32{0.01, 0.02};
  CHECK(rel(evaluate(p32(), x32, 1e-15).value, Complex(1.223921198779347066524565487517973680, 0.0)) <= 1e-12);
}

TEST_CASE("evaluate sums exactly the coefficients it reports") {
  std::vector<Complex> x{{0.05, 0.02}, {0.03, -0.01}};
  auto e = evaluate(f4(), x, 1e-10);
  auto ser = series_coefficients(f4(), e.n_used);
  Complex sum = 0.0;
  ser.for_each([&](const MultiIndex& n, const GaussRational& c) {
    Complex t = to_complex(c);
    for (int k = 0; k < 2; ++k) t *= std::pow(x[static_cast<std::size_t>(k)], n[k]);
    sum += t;
  });
  CHECK(rel(e.value, sum) <= 1e-14);
  CHECK(e.tail_bound <= 1e-10);
  auto tighter = evaluate(f4(), x, 1e-14);
  CHECK(tighter.n_used >= e.n_used);
}

TEST_CASE("restriction of the evaluated function") {
  std::mt19937_64 rng(16);
  auto ps = test::random_generic(3, 2, rng);
  std::vector<std::vector<GaussRational>> rows{{ps.b(0, 0)}, {ps.b(1, 0)}};
  ParameterSet<GaussRational> one(3, 1, ps.a(), rows);
  std::vector<Complex> x2{0.02, 0.0};
  std::vector<Complex> x1{0.02};
  CHECK(rel(evaluate(ps, x2, 1e-15).value, evaluate(one, x1, 1e-15).value) <= 1e-13);
}

TEST_CASE("evaluation outside the domain is refused") {
  std::vector<Complex> edge{0.25, 0.25};
  CHECK_THROWS_AS(evaluate(f4(), edge, 1e-12), DomainError);
  std::vector<Complex> far{1.2};
  CHECK_THROWS_AS(evaluate(exact_params(2, 1, {"1", "1"}, {{"2"}}), far, 1e-12), DomainError);
}

TEST_CASE("the shell cap reports non-convergence") {
  std::vector<Complex> x{0.2, 0.2};
  auto e = evaluate(f4(), x, 1e-14, 3);
  CHECK_FALSE(e.converged);
  CHECK(e.n_used <= 3);
}

TEST_CASE("fundamental solutions") {
  auto gauss = exact_params(2, 1, {"1/2", "1/3"}, {{"1/5"}});
  std::vector<Complex> x{0.3};
  auto phi1 = evaluate_phi(gauss, SolutionLabel(2, {1}), x, 1e-15);
  CHECK(rel(phi1.value, Complex(0.50933461357460744128851553280094599, 0.0)) <= 1e-12);
  auto id = evaluate_phi(gauss, SolutionLabel::identity(2, 1), x, 1e-15);
  CHECK(rel(id.value, evaluate(gauss, x, 1e-15).value) <= 1e-15);

  std::vector<Complex> neg{-0.1};
  CHECK_THROWS_AS(evaluate_phi(gauss, SolutionLabel(2, {1}), neg, 1e-12), BranchError);
  CHECK_NOTHROW(evaluate_phi(gauss, SolutionLabel(2, {2}), neg, 1e-12));

  auto ser = phi_series(gauss, SolutionLabel(2, {1}), 5);
  REQUIRE(ser.prefactor_exponents().size() == 1);
  CHECK(ser.prefactor_exponents()[0] == q("4/5"));
}

TEST_CASE("divergence probe") {
  auto ps = exact_params(2, 1, {"1", "1"}, {{"2"}});
  std::vector<Complex> out{1.2};
  std::vector<Complex> in{0.5};
  CHECK(divergence_probe(ps, out, 60).growing);
  CHECK_FALSE(divergence_probe(ps, in, 60).growing);
  std::vector<Complex> inside2{0.04, 0.04};
  std::vector<Complex> outside2{0.5, 0.5};
  CHECK_FALSE(divergence_probe(f4(), inside2, 60).growing);
  CHECK(divergence_probe(f4(), outside2, 60).growing);
}

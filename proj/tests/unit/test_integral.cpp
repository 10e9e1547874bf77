#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fcpm/errors.hpp"
#include "fcpm/integral.hpp"
#include "fcpm/series.hpp"
#include "support.hpp"

using namespace fcpm;
using fcpm::test::exact_params;
using fcpm::test::q;
using fcpm::test::rel;

TEST_CASE("gamma at reference points") {
  CHECK(rel(gamma(Complex(1.0, 0.0)).value, Complex(1.0, 0.0)) <= 1e-14);
  CHECK(rel(gamma(Complex(0.5, 0.0)).value, Complex(std::sqrt(std::numbers::pi), 0.0)) <= 1e-14);
  CHECK(rel(gamma(Complex(0.3, 0.2)).value,
            Complex(1.9803581728234425901478492924823208, -1.4145760083733032113458916201630109)) <= 1e-12);
  CHECK(rel(gamma(Complex(5.5, -2.0)).value,
            Complex(-35.176222170676882017828258312678319, 4.6380137263126156919470218698018054)) <= 1e-12);
  CHECK(rel(gamma(Complex(-2.5, 0.5)).value,
            Complex(-0.33387520352243233740327727033956559, -0.20645730796360841491828760756387299)) <= 1e-12);
  CHECK(gamma(Complex(0.3, 0.2)).rel_error < 1e-12);
}

TEST_CASE("gamma poles") {
  for (double z : {0.0, -1.0, -3.0, -20.0}) CHECK_THROWS_AS(gamma(Complex(z, 0.0)), PoleError);
  CHECK_NOTHROW(gamma(Complex(-3.0, 1e-6)));
}

TEST_CASE("gamma matches the C library on the positive axis") {
  for (double x = 0.1; x <= 50.0; x += 0.37) {
    const double expect = std::lgamma(x);
    CHECK(std::abs(log_gamma(Complex(x, 0.0)).real() - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    if (x < 40) CHECK(rel(gamma(Complex(x, 0.0)).value, Complex(std::tgamma(x), 0.0)) <= 1e-12);
  }
}

TEST_CASE("gamma recurrence on a grid") {
  int count = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      Complex z(-4.85 + 1.1 * i, -3.3 + 0.7 * j);
      Complex lhs = gamma(z + 1.0).value;
      Complex rhs = z * gamma(z).value;
      CHECK(rel(lhs, rhs) <= 1e-10);
      ++count;
    }
  }
  CHECK(count == 100);
}

TEST_CASE("reflection formula") {
  for (Complex z : {Complex(0.3, 0.2), Complex(-1.7, 0.4), Complex(0.5, -2.5)}) {
    Complex lhs = gamma(z).value * gamma(1.0 - z).value;
    Complex rhs = std::numbers::pi / std::sin(std::numbers::pi * z);
    CHECK(rel(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("reciprocal gamma by the limit formula") {
  for (Complex s : {Complex(0.3, 0.2), Complex(1.5, 0.0), Complex(2.2, -1.0), Complex(-0.7, 0.5)}) {
    Complex limit = reciprocal_gamma_limit(s, 100000);
    Complex direct = 1.0 / gamma(s).value;
    CHECK(std::abs(limit - direct) <= 1e-3 * std::max(1.0, std::abs(direct)));
  }
  CHECK(std::abs(reciprocal_gamma_limit(Complex(-2.0, 0.0), 1000)) < 1e-12);
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {8, 16, 64}) {
    const auto& rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; k += 3) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      CHECK(sum == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    for (double t : rule.nodes) CHECK((t > 0.0 && t < 1.0));
  }
}

TEST_CASE("Dirichlet integrals") {
  std::vector<Complex> one{1.0};
  auto d1 = dirichlet_integral(1.0, one);
  CHECK(rel(d1.quadrature, Complex(1.0, 0.0)) <= 1e-12);
  std::vector<Complex> ones{1.0, 1.0};
  CHECK(rel(dirichlet_integral(1.0, ones).quadrature, Complex(0.5, 0.0)) <= 1e-12);
  std::vector<Complex> two{2.0};
  auto beta = dirichlet_integral(3.0, two);
  CHECK(rel(beta.closed_form, Complex(1.0 / 12.0, 0.0)) <= 1e-14);
  CHECK(beta.converged);

  std::vector<Complex> s{{1.3, -0.4}, {0.4, 0.1}};
  auto d = dirichlet_integral(Complex(0.7, 0.3), s);
  CHECK(d.converged);
  CHECK(rel(d.closed_form, Complex(1.4027726280344108435803543815137780, -0.83164476916958754983869134625724084)) <= 1e-12);
  // tanh-sinh reference computed at 20 digits
  CHECK(rel(d.quadrature, Complex(1.4027726277922535422, -0.83164476925635328518)) <= 1e-6);
  CHECK(d.rel_diff() <= 1e-6);

  std::vector<Complex> bad{{-0.1, 0.0}};
  CHECK_THROWS_AS(dirichlet_integral(1.0, bad), ConvergenceError);
  CHECK_THROWS_AS(dirichlet_integral(Complex(0.0, 1.0), one), ConvergenceError);
}

TEST_CASE("random Dirichlet integrals agree with the closed form") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> re(0.2, 3.0);
  std::uniform_real_distribution<double> im(-1.0, 1.0);
  for (int draw = 0; draw < 30; ++draw) {
    const int m = 1 + draw % 3;
    std::vector<Complex> s;
    for (int k = 0; k < m; ++k) s.emplace_back(re(rng), im(rng));
    auto d = dirichlet_integral(Complex(re(rng), im(rng)), s);
    CHECK(d.rel_diff() <= 1e-6);
  }
}

TEST_CASE("reflection identity for the Pochhammer symbol") {
  for (int r = 2; r <= 13; ++r) {
    for (int num = -2 * r; num <= 2 * r; ++num) {
      Rational b(num, r);
      b.canonicalize();
      if (b.get_den() == 1) continue;
      for (int n = 0; n <= 10; ++n) {
        auto c = reflection_identity_check(GaussRational(b), n);
        CHECK(c.exact_ok);
        CHECK(c.numeric_ok);
      }
    }
  }
  CHECK(reflection_identity_check(q("1/3+1/2i"), 7).ok());
  CHECK_THROWS_AS(reflection_identity_check(q("2"), 3), HypothesisError);
}

TEST_CASE("coefficients from the integral representation") {
  std::mt19937_64 rng(52);
  for (auto [p, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    for (int trial = 0; trial < 2; ++trial) {
      auto ps = test::random_integral_admissible(p, m, rng);
      for (int d = 0; d <= 6; ++d) {
        for (const auto& n : shell(m, d)) {
          Complex series = to_complex(coefficient(ps, n));
          CHECK(rel(coefficient_via_integral(ps, n), series) <= 1e-9);
          CHECK(rel(coefficient_via_integral(ps.to_float(), n), series) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("integral hypotheses are enforced") {
  auto ps = exact_params(2, 1, {"1", "1/3"}, {{"1/5"}});
  CHECK_THROWS_AS(require_integral_hypotheses(ps), HypothesisError);
  CHECK_THROWS_AS(coefficient_via_integral(ps, MultiIndex({1})), HypothesisError);
  auto ok = exact_params(2, 1, {"1/2", "1/3"}, {{"1/5"}});
  CHECK_NOTHROW(require_integral_hypotheses(ok));
  CHECK(rel(coefficient_via_integral(ok, MultiIndex({0})), Complex(1.0, 0.0)) <= 1e-12);
}

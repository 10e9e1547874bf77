#include "fcpm/integral.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fcpm/errors.hpp"

namespace fcpm {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,  -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

Complex lanczos_log(Complex z) {
  Complex tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  Complex ser = 0.999999999999997092;
  Complex y = z;
  for (double c : kLanczos) ser += c / (y += 1.0);
  return tmp + std::log(2.5066282746310005 * ser / z);
}

void check_pole(Complex z) {
  if (std::abs(z.imag()) <= 1e-14 && z.real() < 0.5 && std::abs(z.real() - std::round(z.real())) <= 1e-14) {
    throw PoleError("Gamma has a pole at " + std::to_string(std::lround(z.real())));
  }
}

// Integral over [0,1] of u^{alpha-1} (1-u)^{beta-1} with n nodes per half.
// Each half of [0,1] is mapped through u = v^q / 2 so that the endpoint
// power becomes v^{q alpha - 1}, smooth enough for Gauss-Legendre.
Complex beta_quadrature(Complex alpha, Complex beta, int n) {
  const auto& rule = gauss_legendre(n);
  const double ln2 = std::log(2.0);
  auto half = [&](Complex near, Complex far) {
    const double q = std::ceil(6.0 / near.real());
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = rule.nodes[i];
      const double lv = std::log(v);
      const double w = std::pow(v, q) / 2.0;  // distance to the near endpoint
      Complex log_f = (near - 1.0) * (q * lv - ln2) + (far - 1.0) * std::log1p(-w);
      Complex jac = q * std::pow(v, q - 1.0) / 2.0;
      acc += rule.weights[i] * jac * std::exp(log_f);
    }
    return acc;
  };
  return half(alpha, beta) + half(beta, alpha);
}

}  // namespace

GammaValue gamma(Complex z) {
  check_pole(z);
  if (z.real() >= 0.5) {
    Complex lg = lanczos_log(z);
    return {std::exp(lg), 4e-15 * (1.0 + std::abs(lg))};
  }
  Complex lg = lanczos_log(1.0 - z);
  Complex s = std::sin(kPi * z);
  Complex v = kPi / (s * std::exp(lg));
  double near = std::abs(z.real() - std::round(z.real())) + std::abs(z.imag());
  return {v, 4e-15 * (1.0 + std::abs(lg) + kPi * std::abs(z)) + 1e-16 / std::max(near, 1e-300)};
}

Complex log_gamma(Complex z) {
  check_pole(z);
  if (z.real() >= 0.5) return lanczos_log(z);
  return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log(1.0 - z);
}

Complex reciprocal_gamma_limit(Complex s, long n) {
  Complex log_poch(0.0, 0.0);
  for (long i = 0; i < n; ++i) log_poch += std::log(s + static_cast<double>(i));
  return std::exp(log_poch - std::lgamma(static_cast<double>(n)) - s * std::log(static_cast<double>(n)));
}

const QuadratureRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("quadrature order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    auto lo = static_cast<std::size_t>(i);
    auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = (1.0 - x) / 2.0;
    rule.nodes[hi] = (1.0 + x) / 2.0;
    rule.weights[lo] = w / 2.0;
    rule.weights[hi] = w / 2.0;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double DirichletIntegral::rel_diff() const { return std::abs(quadrature - closed_form) / std::abs(closed_form); }

DirichletIntegral dirichlet_integral(Complex s0, std::span<const Complex> s) {
  if (s0.real() <= 0.0) throw ConvergenceError("the simplex integral needs Re s0 > 0");
  for (const auto& si : s) {
    if (si.real() <= 0.0) throw ConvergenceError("the simplex integral needs Re s_k > 0 for every k");
  }
  DirichletIntegral r;
  Complex total = s0;
  Complex log_closed = log_gamma(s0);
  for (const auto& si : s) {
    total += si;
    log_closed += log_gamma(si);
  }
  r.closed_form = std::exp(log_closed - log_gamma(total));

  // Stick-breaking map t_1 = u_1, t_k = u_k prod_{i<k} (1 - u_i) makes the
  // integrand a product over axes of u_i^{s_i - 1} (1 - u_i)^{sigma_i - 1},
  // sigma_i = s0 + s_{i+1} + ... + s_m; the tensor rule factorises accordingly.
  const std::size_t m = s.size();
  std::vector<Complex> sigma(m);
  Complex tail = s0;
  for (std::size_t i = m; i-- > 0;) {
    sigma[i] = tail;
    tail += s[i];
  }
  auto estimate = [&](int n) {
    Complex v(1.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) v *= beta_quadrature(s[i], sigma[i], n);
    return v;
  };
  Complex prev = estimate(8);
  for (int n = 16; n <= 512; n *= 2) {
    Complex cur = estimate(n);
    r.order = n;
    r.quadrature = cur;
    if (std::abs(cur - prev) <= 1e-8 * std::abs(cur)) {
      r.converged = true;
      break;
    }
    prev = cur;
  }
  if (m == 0) {
    r.quadrature = Complex(1.0, 0.0);
    r.converged = true;
  }
  return r;
}

ReflectionCheck reflection_identity_check(const GaussRational& b, int n) {
  if (b.is_integer()) throw HypothesisError("the reflection identity needs b outside the integers");
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  ReflectionCheck r;
  GaussRational lhs = pochhammer(GaussRational(1) - b - GaussRational(n), n);
  GaussRational rhs = pochhammer(b, n);
  if (n % 2) rhs = -rhs;
  r.exact_ok = lhs == rhs;
  const Complex bc = to_complex(b);
  Complex v = gamma(1.0 - bc - static_cast<double>(n)).value * to_complex(rhs);
  Complex expected = gamma(1.0 - bc).value;
  r.rel_diff = std::abs(v - expected) / std::abs(expected);
  r.numeric_ok = r.rel_diff <= 1e-9;
  return r;
}

template <Scalar S>
void require_integral_hypotheses(const ParameterSet<S>& ps) {
  std::vector<std::string> failed;
  for (int j = 0; j + 1 < ps.p(); ++j) {
    const std::string js = std::to_string(j + 1);
    if (is_integral(ps.a(j), kIntegralityTolerance)) failed.push_back("a_" + js + " ∈ ℤ");
    S sum(0);
    for (int k = 0; k < ps.m(); ++k) {
      if (is_integral(ps.b(j, k), kIntegralityTolerance)) {
        failed.push_back("b_{" + js + "," + std::to_string(k + 1) + "} ∈ ℤ");
      }
      sum += ps.b(j, k);
    }
    if (is_integral(ps.a(j) - sum, kIntegralityTolerance)) failed.push_back("a_" + js + " − Σ_k b_{" + js + ",k} ∈ ℤ");
  }
  if (!failed.empty()) {
    std::string what = "integral representation hypotheses fail:";
    for (const auto& f : failed) what += " " + f + ";";
    throw HypothesisError(what);
  }
}

template <Scalar S>
Complex coefficient_via_integral(const ParameterSet<S>& ps, const MultiIndex& n) {
  require_integral_hypotheses(ps);
  const int m = ps.m();
  if (n.size() != m) throw std::invalid_argument("multi-index has the wrong length");
  Complex log_total(0.0, 0.0);
  for (int j = 0; j + 1 < ps.p(); ++j) {
    const Complex aj = to_complex(ps.a(j));
    Complex bsum(0.0, 0.0);
    Complex log_c = log_gamma(1.0 - aj);
    Complex log_i(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
      const Complex bjk = to_complex(ps.b(j, k));
      bsum += bjk;
      log_c -= log_gamma(1.0 - bjk);
      log_i += log_gamma(1.0 - bjk - static_cast<double>(n[k]));
    }
    const Complex face = 1.0 + bsum - aj - static_cast<double>(m);
    log_c -= log_gamma(face);
    log_i += log_gamma(face) - log_gamma(1.0 - aj - static_cast<double>(n.total));
    log_total += log_c + log_i;
  }
  Complex last = to_complex(ps.a(ps.p() - 1));
  for (int i = 0; i < n.total; ++i) log_total += std::log(last + static_cast<double>(i));
  for (int k = 0; k < m; ++k) log_total -= std::lgamma(static_cast<double>(n[k]) + 1.0);
  return std::exp(log_total);
}

template void require_integral_hypotheses(const ParameterSet<GaussRational>&);
template void require_integral_hypotheses(const ParameterSet<Complex>&);
template Complex coefficient_via_integral(const ParameterSet<GaussRational>&, const MultiIndex&);
template Complex coefficient_via_integral(const ParameterSet<Complex>&, const MultiIndex&);

}  // namespace fcpm

#include "fcpm/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fcpm/errors.hpp"

namespace fcpm {

MultiIndex::MultiIndex(std::vector<int> entries) : n(std::move(entries)) {
  total = 0;
  for (int v : n) {
    if (v < 0) throw std::invalid_argument("multi-index entries must be natural numbers");
    total += v;
  }
}

MultiIndex MultiIndex::lowered(int k) const {
  MultiIndex r = *this;
  if (r.n[static_cast<std::size_t>(k)] == 0) throw std::invalid_argument("cannot lower a zero entry");
  --r.n[static_cast<std::size_t>(k)];
  --r.total;
  return r;
}

MultiIndex MultiIndex::raised(int k) const {
  MultiIndex r = *this;
  ++r.n[static_cast<std::size_t>(k)];
  ++r.total;
  return r;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t shell_size(int m, int d) { return d < 0 ? 0 : binomial(d + m - 1, m - 1); }

std::int64_t shell_offset(int m, int d) { return d <= 0 ? 0 : binomial(d - 1 + m, m); }

std::int64_t shell_rank(std::span<const int> n, int total) {
  const auto m = static_cast<std::int64_t>(n.size());
  std::int64_t rank = 0;
  std::int64_t rem = total;
  for (std::int64_t i = 0; i + 1 < m; ++i) {
    // Shells below position i with a smaller entry here: compositions of the
    // remainder into m-i-1 parts, summed with the hockey-stick identity.
    const std::int64_t kk = m - i - 2;
    const std::int64_t ni = n[static_cast<std::size_t>(i)];
    rank += binomial(rem + kk + 1, kk + 1) - binomial(rem - ni + kk + 1, kk + 1);
    rem -= ni;
  }
  return rank;
}

bool next_in_shell(std::vector<int>& n) {
  const auto m = static_cast<int>(n.size());
  if (m < 2) return false;
  int i = -1;
  if (n[static_cast<std::size_t>(m - 1)] > 0) {
    i = m - 2;
  } else {
    for (int l = m - 2; l >= 1; --l) {
      if (n[static_cast<std::size_t>(l)] > 0) {
        i = l - 1;
        break;
      }
    }
  }
  if (i < 0) return false;
  int tail = 0;
  for (int l = i + 1; l < m; ++l) tail += n[static_cast<std::size_t>(l)];
  ++n[static_cast<std::size_t>(i)];
  for (int l = i + 1; l < m; ++l) n[static_cast<std::size_t>(l)] = 0;
  n[static_cast<std::size_t>(m - 1)] = tail - 1;
  return true;
}

std::vector<MultiIndex> shell(int m, int d) {
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(shell_size(m, d)));
  std::vector<int> n(static_cast<std::size_t>(m), 0);
  n.back() = d;
  do {
    out.emplace_back(n);
  } while (next_in_shell(n));
  return out;
}

// ---------------------------------------------------------------------------
// TruncatedSeries

template <Scalar S>
TruncatedSeries<S>::TruncatedSeries(int m, int order, std::vector<S> mu)
    : m_(m), order_(order), mu_(std::move(mu)) {
  if (m < 1) throw std::invalid_argument("series needs m >= 1");
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  if (mu_.empty()) mu_.assign(static_cast<std::size_t>(m), S(0));
  if (mu_.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("prefactor needs m exponents");
  coeffs_.assign(static_cast<std::size_t>(shell_offset(m, order + 1)), S(0));
}

template <Scalar S>
std::size_t TruncatedSeries<S>::index(const MultiIndex& n) const {
  if (n.size() != m_) throw std::invalid_argument("multi-index has the wrong length");
  if (n.total > order_) throw std::out_of_range("multi-index beyond the truncation order");
  return static_cast<std::size_t>(shell_offset(m_, n.total) + shell_rank(n.n, n.total));
}

template <Scalar S>
TruncatedSeries<S> TruncatedSeries<S>::truncated(int order) const {
  if (order > order_) throw std::invalid_argument("cannot extend a truncated series");
  TruncatedSeries r(m_, order, mu_);
  std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
  return r;
}

template <Scalar S>
void TruncatedSeries<S>::check_compatible(const TruncatedSeries& o) const {
  if (m_ != o.m_ || order_ != o.order_) throw std::invalid_argument("series shapes differ");
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    if (!is_zero(mu_[k] - o.mu_[k])) throw std::invalid_argument("series prefactors differ");
  }
}

template <Scalar S>
TruncatedSeries<S>& TruncatedSeries<S>::operator+=(const TruncatedSeries& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

template <Scalar S>
TruncatedSeries<S>& TruncatedSeries<S>::operator-=(const TruncatedSeries& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

template <Scalar S>
TruncatedSeries<S>& TruncatedSeries<S>::operator*=(const S& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// Coefficients

GaussRational pochhammer(const GaussRational& s, int n) {
  if (n < 0) throw std::invalid_argument("Pochhammer length must be natural");
  GaussRational r(1);
  for (int i = 0; i < n; ++i) r *= s + GaussRational(i);
  return r;
}

ScaledComplex pochhammer(const Complex& s, int n) {
  if (n < 0) throw std::invalid_argument("Pochhammer length must be natural");
  ScaledComplex r;
  for (int i = 0; i < n; ++i) r *= s + static_cast<double>(i);
  return r;
}

template <Scalar S>
S coefficient_direct(const ParameterSet<S>& ps, const MultiIndex& n) {
  if (n.size() != ps.m()) throw std::invalid_argument("multi-index length differs from m");
  if constexpr (ExactScalar<S>) {
    GaussRational num(1);
    for (int i = 0; i < ps.p(); ++i) num *= pochhammer(ps.a(i), n.total);
    GaussRational den(1);
    for (int k = 0; k < ps.m(); ++k) {
      for (int j = 0; j + 1 < ps.p(); ++j) den *= pochhammer(ps.b(j, k), n[k]);
      den *= pochhammer(GaussRational(1), n[k]);
    }
    if (den.is_zero()) throw std::domain_error("A_n has a zero denominator: some b_{j,k} lies in -N");
    return num / den;
  } else {
    ScaledComplex num;
    for (int i = 0; i < ps.p(); ++i) num *= pochhammer(ps.a(i), n.total);
    ScaledComplex den;
    for (int k = 0; k < ps.m(); ++k) {
      for (int j = 0; j + 1 < ps.p(); ++j) den *= pochhammer(ps.b(j, k), n[k]);
      den *= pochhammer(Complex(1.0), n[k]);
    }
    return (num / den).value();
  }
}

template <Scalar S>
S coefficient_ratio(const ParameterSet<S>& ps, const MultiIndex& n, int k) {
  if (n[k] < 1) throw std::invalid_argument("ratio needs n_k >= 1");
  S num(1);
  for (int i = 0; i < ps.p(); ++i) num *= ps.a(i) + S(n.total - 1);
  S den(n[k]);
  for (int j = 0; j + 1 < ps.p(); ++j) den *= ps.b(j, k) + S(n[k] - 1);
  if (is_zero(den)) throw std::domain_error("A_n has a zero denominator: some b_{j,k} lies in -N");
  return num / den;
}

template <Scalar S>
S coefficient(const ParameterSet<S>& ps, const MultiIndex& n) {
  if (n.size() != ps.m()) throw std::invalid_argument("multi-index length differs from m");
  MultiIndex cur = MultiIndex::zero(ps.m());
  if constexpr (ExactScalar<S>) {
    GaussRational acc(1);
    for (int k = 0; k < ps.m(); ++k) {
      for (int step = 0; step < n[k]; ++step) {
        cur = cur.raised(k);
        acc *= coefficient_ratio(ps, cur, k);
      }
    }
    return acc;
  } else {
    ScaledComplex acc;
    for (int k = 0; k < ps.m(); ++k) {
      for (int step = 0; step < n[k]; ++step) {
        cur = cur.raised(k);
        acc *= coefficient_ratio(ps, cur, k);
      }
    }
    return acc.value();
  }
}

namespace {

int first_nonzero(const MultiIndex& n) {
  for (int k = 0; k < n.size(); ++k) {
    if (n[k] > 0) return k;
  }
  return -1;
}

}  // namespace

template <Scalar S>
TruncatedSeries<S> series_coefficients(const ParameterSet<S>& ps, int order, std::vector<S> mu) {
  require_valid(ps);
  TruncatedSeries<S> s(ps.m(), order, std::move(mu));
  s[MultiIndex::zero(ps.m())] = S(1);
  for (int d = 1; d <= order; ++d) {
    for (const auto& n : shell(ps.m(), d)) {
      int k = first_nonzero(n);
      s[n] = s[n.lowered(k)] * coefficient_ratio(ps, n, k);
    }
  }
  return s;
}

template <Scalar S>
TruncatedSeries<S> phi_series(const ParameterSet<S>& ps, const SolutionLabel& label, int order) {
  auto shifted = transformed_parameters(ps, label);
  return series_coefficients(shifted, order, solution_exponents(ps, label).mu);
}

// ---------------------------------------------------------------------------
// Evaluation

double domain_radius(std::span<const Complex> x, int p) {
  double r = 0.0;
  for (const auto& xk : x) r += std::pow(std::abs(xk), 1.0 / p);
  return r;
}

bool in_domain(std::span<const Complex> x, int p) { return domain_radius(x, p) < 1.0; }

namespace {

// Walks the shells of sum_n A_n x^n with the term recurrence, handing each
// shell's terms to `visit(d, terms)`; stops when visit returns false.
template <class Visit>
void walk_terms(const ParameterSet<Complex>& ps, std::span<const Complex> x, int max_shells, Visit&& visit) {
  const int m = ps.m();
  std::vector<Complex> prev{Complex(1.0)};
  if (!visit(0, prev)) return;
  for (int d = 1; d <= max_shells; ++d) {
    Complex a_factor(1.0);
    for (int i = 0; i < ps.p(); ++i) a_factor *= ps.a(i) + static_cast<double>(d - 1);
    std::vector<Complex> cur;
    cur.reserve(static_cast<std::size_t>(shell_size(m, d)));
    std::vector<int> n(static_cast<std::size_t>(m), 0);
    n.back() = d;
    do {
      int k = 0;
      while (n[static_cast<std::size_t>(k)] == 0) ++k;
      const int nk = n[static_cast<std::size_t>(k)];
      --n[static_cast<std::size_t>(k)];
      const Complex before = prev[static_cast<std::size_t>(shell_rank(n, d - 1))];
      ++n[static_cast<std::size_t>(k)];
      Complex den(static_cast<double>(nk));
      for (int j = 0; j + 1 < ps.p(); ++j) den *= ps.b(j, k) + static_cast<double>(nk - 1);
      cur.push_back(before * x[static_cast<std::size_t>(k)] * a_factor / den);
    } while (next_in_shell(n));
    if (!visit(d, cur)) return;
    prev = std::move(cur);
  }
}

}  // namespace

template <Scalar S>
Evaluation evaluate(const ParameterSet<S>& ps_in, std::span<const Complex> x, double tol, int max_shells) {
  require_valid(ps_in);
  if (x.size() != static_cast<std::size_t>(ps_in.m())) throw std::invalid_argument("x must have m coordinates");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const double r = domain_radius(x, ps_in.p());
  if (!(r < 1.0)) {
    throw DomainError("x lies outside the convergence domain (sum |x_k|^{1/p} = " + std::to_string(r) + " >= 1)");
  }
  const auto ps = ps_in.to_float();
  const double q = std::pow(r, ps.p());
  Evaluation out;
  out.converged = false;
  Complex sum(0.0);
  walk_terms(ps, x, max_shells, [&](int d, const std::vector<Complex>& terms) {
    double abs_sum = 0.0;
    for (const auto& t : terms) {
      sum += t;
      abs_sum += std::abs(t);
    }
    out.n_used = d;
    out.tail_bound = abs_sum * q / (1.0 - q);
    if (out.tail_bound < tol) {
      out.converged = true;
      return false;
    }
    return true;
  });
  out.value = sum;
  return out;
}

template <Scalar S>
Evaluation evaluate_phi(const ParameterSet<S>& ps, const SolutionLabel& label, std::span<const Complex> x, double tol,
                        int max_shells) {
  require_valid(ps);
  if (x.size() != static_cast<std::size_t>(ps.m())) throw std::invalid_argument("x must have m coordinates");
  if (!in_domain(x, ps.p())) {
    throw DomainError("x lies outside the convergence domain (sum |x_k|^{1/p} = " + std::to_string(domain_radius(x, ps.p())) + " >= 1)");
  }
  auto ex = solution_exponents(ps, label);
  Complex log_prefactor(0.0);
  for (int k = 0; k < ps.m(); ++k) {
    if (is_zero(ex.mu[static_cast<std::size_t>(k)])) continue;
    const Complex xk = x[static_cast<std::size_t>(k)];
    if (xk.imag() == 0.0 && xk.real() <= 0.0) {
      throw BranchError("x_" + std::to_string(k + 1) + " lies on the branch cut (-inf, 0] of x^mu");
    }
    log_prefactor += to_complex(ex.mu[static_cast<std::size_t>(k)]) * std::log(xk);
  }
  auto shifted = transformed_parameters(ps, label);
  Evaluation inner = evaluate(shifted, x, tol, max_shells);
  inner.value *= std::exp(log_prefactor);
  return inner;
}

template <Scalar S>
DivergenceProbe divergence_probe(const ParameterSet<S>& ps_in, std::span<const Complex> x, int shells) {
  require_valid(ps_in);
  if (x.size() != static_cast<std::size_t>(ps_in.m())) throw std::invalid_argument("x must have m coordinates");
  if (shells < 1) throw std::invalid_argument("divergence probe needs at least one shell");
  const auto ps = ps_in.to_float();
  const int m = ps.m();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  auto safe_log = [](double v) { return v == 0.0 ? kNegInf : std::log(v); };

  std::vector<double> log_x;
  for (const auto& xk : x) log_x.push_back(safe_log(std::abs(xk)));

  DivergenceProbe out;
  double log_max = 0.0;  // shell 0 holds the single term 1
  out.log_first_shell = 0.0;
  std::vector<double> prev{0.0};
  double last_shell_max = 0.0;
  for (int d = 1; d <= shells; ++d) {
    double log_a = 0.0;
    for (int i = 0; i < ps.p(); ++i) log_a += safe_log(std::abs(ps.a(i) + static_cast<double>(d - 1)));
    std::vector<double> cur;
    cur.reserve(static_cast<std::size_t>(shell_size(m, d)));
    std::vector<int> n(static_cast<std::size_t>(m), 0);
    n.back() = d;
    double shell_max = kNegInf;
    do {
      int k = 0;
      while (n[static_cast<std::size_t>(k)] == 0) ++k;
      const int nk = n[static_cast<std::size_t>(k)];
      --n[static_cast<std::size_t>(k)];
      const double before = prev[static_cast<std::size_t>(shell_rank(n, d - 1))];
      ++n[static_cast<std::size_t>(k)];
      double log_den = std::log(static_cast<double>(nk));
      for (int j = 0; j + 1 < ps.p(); ++j) log_den += std::log(std::abs(ps.b(j, k) + static_cast<double>(nk - 1)));
      double t = before + log_x[static_cast<std::size_t>(k)] + log_a - log_den;
      if (std::isnan(t)) t = kNegInf;
      cur.push_back(t);
      shell_max = std::max(shell_max, t);
    } while (next_in_shell(n));
    log_max = std::max(log_max, shell_max);
    last_shell_max = shell_max;
    prev = std::move(cur);
  }
  out.log_last_shell = last_shell_max;
  out.max_term = std::exp(log_max);
  out.growing = last_shell_max - out.log_first_shell >= std::log(10.0);
  return out;
}

#define FCPM_INSTANTIATE(S)                                                                               \
  template class TruncatedSeries<S>;                                                                      \
  template S coefficient_direct(const ParameterSet<S>&, const MultiIndex&);                               \
  template S coefficient(const ParameterSet<S>&, const MultiIndex&);                                      \
  template S coefficient_ratio(const ParameterSet<S>&, const MultiIndex&, int);                           \
  template TruncatedSeries<S> series_coefficients(const ParameterSet<S>&, int, std::vector<S>);           \
  template TruncatedSeries<S> phi_series(const ParameterSet<S>&, const SolutionLabel&, int);              \
  template Evaluation evaluate(const ParameterSet<S>&, std::span<const Complex>, double, int);            \
  template Evaluation evaluate_phi(const ParameterSet<S>&, const SolutionLabel&, std::span<const Complex>, \
                                   double, int);                                                          \
  template DivergenceProbe divergence_probe(const ParameterSet<S>&, std::span<const Complex>, int);

FCPM_INSTANTIATE(GaussRational)
FCPM_INSTANTIATE(Complex)

#undef FCPM_INSTANTIATE

}  // namespace fcpm

#pragma once

// Coefficients A_n of F_C^{p,m}(a,B;x), truncated series over total-degree
// shells, and evaluation inside the convergence domain
//   D = { x : |x_1|^{1/p} + ... + |x_m|^{1/p} < 1 }.

#include <cstdint>
#include <span>
#include <vector>

#include "fcpm/params.hpp"
#include "fcpm/scalar.hpp"

namespace fcpm {

/// Hard cap on the number of shells summed by evaluate().
inline constexpr int kMaxShells = 500;

struct MultiIndex {
  std::vector<int> n;
  int total = 0;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  static MultiIndex zero(int m) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(m), 0)); }

  int operator[](int k) const { return n[static_cast<std::size_t>(k)]; }
  int size() const { return static_cast<int>(n.size()); }
  /// n - e_k; requires n_k > 0.
  MultiIndex lowered(int k) const;
  MultiIndex raised(int k) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.n == b.n; }
};

std::int64_t binomial(std::int64_t n, std::int64_t k);
/// Number of multi-indices with |n| = d.
std::int64_t shell_size(int m, int d);
/// Number of multi-indices with |n| < d, i.e. the offset of shell d.
std::int64_t shell_offset(int m, int d);
/// Position of n inside its shell, shells being ordered lexicographically ascending.
std::int64_t shell_rank(std::span<const int> n, int total);
/// Advances n to the next element of its shell; false after the last one.
bool next_in_shell(std::vector<int>& n);
/// Shell d in summation order: (0,...,0,d) first, (d,0,...,0) last.
std::vector<MultiIndex> shell(int m, int d);

/// Coefficients for every |n| <= order, stored shell by shell. A non-empty
/// prefactor mu means the series stands for x^mu * sum_n c_n x^n.
template <Scalar S>
class TruncatedSeries {
 public:
  TruncatedSeries(int m, int order, std::vector<S> mu = {});

  int m() const { return m_; }
  int order() const { return order_; }
  const std::vector<S>& prefactor_exponents() const { return mu_; }
  std::size_t size() const { return coeffs_.size(); }

  const S& operator[](const MultiIndex& n) const { return coeffs_[index(n)]; }
  S& operator[](const MultiIndex& n) { return coeffs_[index(n)]; }
  const std::vector<S>& coefficients() const { return coeffs_; }

  bool contains(const MultiIndex& n) const { return n.total <= order_; }
  std::size_t index(const MultiIndex& n) const;

  /// Visits (n, c_n) in summation order.
  template <class F>
  void for_each(F&& f) const {
    std::size_t flat = 0;
    for (int d = 0; d <= order_; ++d) {
      for (const auto& n : shell(m_, d)) f(n, coeffs_[flat++]);
    }
  }

  TruncatedSeries truncated(int order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const S& s);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const S& s, TruncatedSeries a) { return a *= s; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.m_ == b.m_ && a.order_ == b.order_ && a.mu_ == b.mu_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const TruncatedSeries& o) const;

  int m_;
  int order_;
  std::vector<S> mu_;
  std::vector<S> coeffs_;
};

/// Rising factorial s(s+1)...(s+n-1).
GaussRational pochhammer(const GaussRational& s, int n);
/// Float rising factorial as a scaled mantissa; value() normalises on read.
ScaledComplex pochhammer(const Complex& s, int n);

/// A_n as the literal quotient of Pochhammer products.
template <Scalar S>
S coefficient_direct(const ParameterSet<S>& ps, const MultiIndex& n);

/// A_n accumulated through the one-step ratios A_n / A_{n-e_k}.
template <Scalar S>
S coefficient(const ParameterSet<S>& ps, const MultiIndex& n);

/// A_{n} / A_{n-e_k} = prod_i (a_i + |n| - 1) / (n_k prod_{j<p} (b_{j,k} + n_k - 1)).
template <Scalar S>
S coefficient_ratio(const ParameterSet<S>& ps, const MultiIndex& n, int k);

/// All A_n with |n| <= order via the ratio recurrence, carrying prefactor `mu`.
template <Scalar S>
TruncatedSeries<S> series_coefficients(const ParameterSet<S>& ps, int order, std::vector<S> mu = {});

/// Coefficients of the series factor of Phi_J, with mu_J as prefactor.
template <Scalar S>
TruncatedSeries<S> phi_series(const ParameterSet<S>& ps, const SolutionLabel& label, int order);

/// sum_k |x_k|^{1/p}.
double domain_radius(std::span<const Complex> x, int p);
bool in_domain(std::span<const Complex> x, int p);

struct Evaluation {
  Complex value;
  int n_used = 0;
  double tail_bound = 0.0;
  bool converged = true;  ///< false when the shell cap stopped the summation
};

/// Partial sums over shells |n| = 0, 1, ... until the geometric tail estimate
/// (absolute shell sum) * q / (1 - q), q = domain_radius^p, drops below tol.
template <Scalar S>
Evaluation evaluate(const ParameterSet<S>& ps, std::span<const Complex> x, double tol, int max_shells = kMaxShells);

/// Phi_J(a,B;x) with principal-branch powers x_k^{mu_{J,k}}.
template <Scalar S>
Evaluation evaluate_phi(const ParameterSet<S>& ps, const SolutionLabel& label, std::span<const Complex> x,
                        double tol, int max_shells = kMaxShells);

struct DivergenceProbe {
  double max_term = 0.0;       ///< largest |A_n x^n| seen over all shells
  double log_first_shell = 0;  ///< log of the largest term in shell 0
  double log_last_shell = 0;   ///< log of the largest term in the last shell
  bool growing = false;
};

/// Scans |A_n x^n| for |n| <= shells. growing iff the last shell's maximum
/// exceeds the first shell's by a factor of at least 10.
template <Scalar S>
DivergenceProbe divergence_probe(const ParameterSet<S>& ps, std::span<const Complex> x, int shells);

}  // namespace fcpm

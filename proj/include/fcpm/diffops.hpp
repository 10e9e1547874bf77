#pragma once

// Differential operators in Euler normal form and their action on truncated
// series. A term is  c * x^beta * F_1(theta) ... F_r(theta)  where every factor
// is an affine form sum_j w_j theta_j + s in the Euler operators
// theta_j = x_j d/dx_j. On x^{mu+n} a factor acts by the scalar
// sum_j w_j (n_j + mu_j) + s, so application is diagonal plus a shift.

#include <span>
#include <string>
#include <vector>

#include "fcpm/params.hpp"
#include "fcpm/scalar.hpp"
#include "fcpm/series.hpp"

namespace fcpm {

template <Scalar S>
struct ThetaFactor {
  std::vector<S> weights;
  S shift;

  /// Value on the monomial x^e.
  S eigenvalue(std::span<const S> exponents) const;
  bool is_constant() const;
};

template <Scalar S>
struct EulerTerm {
  S coefficient;
  std::vector<int> monomial;  ///< beta: x^beta multiplies after the factors act
  std::vector<ThetaFactor<S>> factors;
};

template <Scalar S>
class EulerOperator {
 public:
  explicit EulerOperator(int m) : m_(m) {}

  /// theta_k + shift.
  static EulerOperator theta(int m, int k, S shift = S(0));
  static EulerOperator constant(int m, S c);
  static EulerOperator monomial(int m, std::vector<int> beta, S c = S(1));

  int m() const { return m_; }
  const std::vector<EulerTerm<S>>& terms() const { return terms_; }
  void add_term(EulerTerm<S> term);

  /// Highest number of non-constant factors in a term.
  int order() const;
  int max_monomial_degree() const;
  bool has_monomials() const;

  /// Sorts each term's factors by axis, then by shift.
  void normalize();

  EulerOperator& operator+=(const EulerOperator& o);
  EulerOperator& operator-=(const EulerOperator& o);
  EulerOperator& operator*=(const S& c);
  friend EulerOperator operator+(EulerOperator a, const EulerOperator& b) { return a += b; }
  friend EulerOperator operator-(EulerOperator a, const EulerOperator& b) { return a -= b; }
  friend EulerOperator operator*(const S& c, EulerOperator a) { return a *= c; }

  std::string to_string() const;

 private:
  int m_;
  std::vector<EulerTerm<S>> terms_;
};

/// Composition a * b, rewritten into Euler normal form with
/// theta_j x^beta = x^beta (theta_j + beta_j).
template <Scalar S>
EulerOperator<S> compose(const EulerOperator<S>& a, const EulerOperator<S>& b);

/// Applies op to s. The result keeps s's prefactor and is truncated at
/// s.order() - op.max_monomial_degree(), the last order it knows exactly.
template <Scalar S>
TruncatedSeries<S> apply(const EulerOperator<S>& op, const TruncatedSeries<S>& s);

/// Applies op to s read as a polynomial (zero beyond its order); the result
/// runs to s.order() + op.max_monomial_degree().
template <Scalar S>
TruncatedSeries<S> apply_polynomial(const EulerOperator<S>& op, const TruncatedSeries<S>& s);

/// ell_k = prod_{i=1}^p (theta_k + b_{i,k} - 1) - x_k prod_{i=1}^p (theta_1 + ... + theta_m + a_i).
template <Scalar S>
EulerOperator<S> operator_l(const ParameterSet<S>& ps, int k);

/// Image under x_k = z_k^p: theta_k becomes theta~_k / p and x^beta becomes z^{p beta}.
template <Scalar S>
EulerOperator<S> pullback(const EulerOperator<S>& op, int p);

struct Residual {
  double max_abs = 0.0;  ///< largest |coefficient| of ell_k Phi_J over k and |n| <= N-1
  double scale = 0.0;    ///< largest sum of |contributions| entering one coefficient
  bool exact = false;
  bool vanishes = false;  ///< exact: identically zero; float: max_abs <= 1e-9 * scale
};

/// Applies every ell_k to the truncated Phi_J and measures what is left.
template <Scalar S>
Residual annihilation_residual(const ParameterSet<S>& ps, const SolutionLabel& label, int order);

/// For all k and n with n_k >= 1, |n| <= order:
///   n_k prod_{j<p} (b_{j,k} - 1 + n_k) A_n == prod_i (a_i + |n| - 1) A_{n-e_k},
/// with A_n taken from the direct Pochhammer product. Exact mode only.
bool coefficient_recurrence_check(const ParameterSet<GaussRational>& ps, int order);

}  // namespace fcpm

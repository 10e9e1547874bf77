#pragma once

// Complex gamma, simplex (Dirichlet) integrals by quadrature, and the
// gamma-ratio assembly of A_n from the Euler-type integral representation.

#include <span>
#include <vector>

#include "fcpm/params.hpp"
#include "fcpm/scalar.hpp"
#include "fcpm/series.hpp"

namespace fcpm {

struct GammaValue {
  Complex value;
  double rel_error = 0.0;  ///< heuristic bound on |computed - exact| / |exact|
};

/// Lanczos approximation (g = 607/128, 15 terms) with reflection for Re z < 1/2.
/// Throws PoleError at 0, -1, -2, ...
GammaValue gamma(Complex z);

/// A logarithm of Gamma(z): exp(log_gamma(z)) == Gamma(z), the imaginary part
/// is not normalised to a particular branch.
Complex log_gamma(Complex z);

/// (s, N) / ((N-1)! N^s), which tends to 1/Gamma(s).
Complex reciprocal_gamma_limit(Complex s, long n);

struct DirichletIntegral {
  Complex quadrature;
  Complex closed_form;
  int order = 0;  ///< Gauss-Legendre nodes per axis at the last refinement
  bool converged = false;
  double rel_diff() const;
};

/// int over the simplex t_k > 0, sum t_k < 1 of prod_k t_k^{s_k - 1} (1 - sum t_k)^{s0 - 1} dt.
/// Requires Re s0 > 0 and Re s_k > 0, otherwise throws ConvergenceError.
DirichletIntegral dirichlet_integral(Complex s0, std::span<const Complex> s);

/// Gauss-Legendre nodes and weights on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const QuadratureRule& gauss_legendre(int n);

struct ReflectionCheck {
  bool exact_ok = false;    ///< (1-b-n, n) == (-1)^n (b, n)
  bool numeric_ok = false;  ///< Gamma(1-b-n) (-1)^n (b, n) matches Gamma(1-b) to 1e-9
  double rel_diff = 0.0;
  bool ok() const { return exact_ok && numeric_ok; }
};

/// Throws HypothesisError when b is an integer.
ReflectionCheck reflection_identity_check(const GaussRational& b, int n);

/// Throws HypothesisError unless a_j, b_{j,k} and a_j - sum_k b_{j,k} are
/// non-integral for every j < p.
template <Scalar S>
void require_integral_hypotheses(const ParameterSet<S>& ps);

/// A_n rebuilt from the gamma factor c_Gamma, the per-row simplex integral
/// values and (a_p, |n|) / prod n_k!.
template <Scalar S>
Complex coefficient_via_integral(const ParameterSet<S>& ps, const MultiIndex& n);

}  // namespace fcpm

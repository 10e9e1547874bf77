#pragma once

// Parameters (a, B) of F_C^{p,m}, their admissibility conditions, the
// reflection maps eta_j acting on exponent columns and the labels J of the
// p^m fundamental solutions.

#include <cstdint>
#include <string>
#include <vector>

#include "fcpm/scalar.hpp"

namespace fcpm {

/// Float-mode tolerance for "is this an integer" style decisions.
inline constexpr double kIntegralityTolerance = 1e-12;

/// a (length p) and B (p x m, stored row-major by j). Row p-1 is expected to be
/// all ones; that and b_{j,k} not in -N are checked by validate(), not here,
/// so that rejected inputs can still be reported on.
template <Scalar S>
class ParameterSet {
 public:
  /// `rows` may hold p rows, or p-1 rows with the unit row implied.
  ParameterSet(int p, int m, std::vector<S> a, std::vector<std::vector<S>> rows);

  int p() const { return p_; }
  int m() const { return m_; }

  const std::vector<S>& a() const { return a_; }
  const S& a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  /// Zero-based: j in [0, p), k in [0, m).
  const S& b(int j, int k) const { return rows_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]; }
  const std::vector<std::vector<S>>& rows() const { return rows_; }
  std::vector<S> column(int k) const;

  ParameterSet<Complex> to_float() const;

 private:
  int p_;
  int m_;
  std::vector<S> a_;
  std::vector<std::vector<S>> rows_;
};

/// Violated admissibility conditions; empty when the set is usable.
template <Scalar S>
std::vector<std::string> validate(const ParameterSet<S>& ps);

/// Throws ValidationError listing every violation.
template <Scalar S>
void require_valid(const ParameterSet<S>& ps);

struct NonIntegrality {
  bool genericity_a = true;  ///< a_i - sum_k b_{j_k,k} not in Z for all i, J
  bool genericity_b = true;  ///< b_{j,k} - b_{j',k} not in Z for all j < j', k
  std::int64_t count_a = 0;  ///< p^{m+1}
  std::int64_t count_b = 0;  ///< m p (p-1) / 2
  bool heuristic = false;    ///< float mode: decided up to kIntegralityTolerance
  std::vector<std::string> failures;

  bool generic() const { return genericity_a && genericity_b; }
};

template <Scalar S>
NonIntegrality check_nonintegrality(const ParameterSet<S>& ps);

/// validate() plus the non-integrality conditions; throws ValidationError.
template <Scalar S>
void require_generic(const ParameterSet<S>& ps);

/// J in (Z_p)^m, entries stored as 1..p; p is printed as 0.
class SolutionLabel {
 public:
  SolutionLabel(int p, std::vector<int> entries);

  /// The label (p, ..., p), whose solution is F_C itself.
  static SolutionLabel identity(int p, int m) { return {p, std::vector<int>(static_cast<std::size_t>(m), p)}; }

  int p() const { return p_; }
  int m() const { return static_cast<int>(j_.size()); }
  int operator[](int k) const { return j_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& entries() const { return j_; }

  std::string to_string() const;

  friend bool operator==(const SolutionLabel&, const SolutionLabel&) = default;

 private:
  int p_;
  std::vector<int> j_;
};

/// All p^m labels; the first axis varies slowest.
std::vector<SolutionLabel> all_labels(int p, int m);

/// v_j = 1_p + e_j - e_p for j in 1..p.
std::vector<int> reflection_vector(int p, int j);
/// W = p * id_p - 1_p 1_p^t.
std::vector<std::vector<int>> reflection_gram(int p);

/// eta_j(b) = b + (1 - b_j)(1_p + e_j - e_p); identity for j = p.
/// Requires the last entry of `column` to be 1.
template <Scalar S>
std::vector<S> eta(const std::vector<S>& column, int j);

template <Scalar S>
struct SolutionExponents {
  std::vector<S> mu;  ///< mu_k = 1 - b_{j_k,k}
  S sigma;            ///< sum of mu
};

template <Scalar S>
SolutionExponents<S> solution_exponents(const ParameterSet<S>& ps, const SolutionLabel& label);

/// Parameters (a + Sigma_J 1_p, eta_{j_1}(b_1), ..., eta_{j_m}(b_m)) of the series inside Phi_J.
template <Scalar S>
ParameterSet<S> transformed_parameters(const ParameterSet<S>& ps, const SolutionLabel& label);

/// True when the p^m exponent vectors mu_J are pairwise distinct.
template <Scalar S>
bool exponents_distinct(const ParameterSet<S>& ps);

}  // namespace fcpm

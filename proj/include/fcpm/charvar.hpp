#pragma once

// Symbols of the pulled-back system and the rank computation. Formal symbols
// live in 2m variables ordered (z_1, ..., z_m, xi_1, ..., xi_m); specialising
// at a point z leaves forms in xi_1, ..., xi_m alone.
//
//   L~_k = (z_k xi_k)^p - z_k^p (sum_j z_j xi_j)^p
//   M_k  = xi_k^p - xi_m^p               (k < m)
//   M_m  = xi_m^p - (sum_j z_j xi_j)^p

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fcpm/cyclotomic.hpp"
#include "fcpm/diffops.hpp"
#include "fcpm/params.hpp"
#include "fcpm/poly.hpp"
#include "fcpm/scalar.hpp"

namespace fcpm {

using SymbolPoly = SparsePoly<GaussRational>;

SymbolPoly symbol_L(int p, int m, int k);
SymbolPoly symbol_M(int p, int m, int k);

/// Substitutes z into a formal symbol, returning a form in xi.
SymbolPoly specialize(const SymbolPoly& formal, std::span<const GaussRational> z);

struct SpecializedPoint {
  std::vector<GaussRational> z;
  bool on_coordinate_axes = false;  ///< some z_k = 0
  bool on_R_zero = false;           ///< R(z_1^p, ..., z_m^p) = 0
  bool generic() const { return !on_coordinate_axes && !on_R_zero; }
};

SpecializedPoint make_point(int p, std::vector<GaussRational> z);

/// M_1..M_m at z. Throws ValidationError if some z_k = 0, and
/// InvarianceError if the relations z_k^p (M_k + M_m) = L~_k (k < m),
/// z_m^p M_m = L~_m fail.
std::vector<SymbolPoly> symbols(int p, std::span<const GaussRational> z);
std::vector<SymbolPoly> symbols_L(int p, std::span<const GaussRational> z);

/// Principal symbol of an operator in the theta~ form, theta~_j -> z_j xi_j,
/// as a polynomial in (z, xi).
SymbolPoly principal_symbol(const EulerOperator<GaussRational>& op);

/// ell~_k for the parameter set.
EulerOperator<GaussRational> pullback_operator(const ParameterSet<GaussRational>& ps, int k);

/// ell~_k (x^alpha o phi) == (ell_k x^alpha) o phi, compared exactly.
bool pullback_identity_holds(const ParameterSet<GaussRational>& ps, int k, std::span<const int> alpha);

/// dim (forms of degree d) / (degree-d part of the ideal), d = 0..d_max.
std::vector<std::int64_t> quotient_dimensions(std::span<const SymbolPoly> generators, int m, int d_max,
                                              unsigned workers = 0);

/// Quotient by (M_1, ..., M_m) at z; needs every z_k != 0.
std::vector<std::int64_t> hilbert_function(int p, std::span<const GaussRational> z, int d_max);
/// Quotient by (M_1, ..., M_k) only.
std::vector<std::int64_t> partial_quotient_dimensions(int p, std::span<const GaussRational> z, int k, int d_max);

inline int rank_degree_cap(int p, int m) { return m * (p - 1) + p; }

struct RankResult {
  std::optional<std::int64_t> rank;  ///< empty when the quotient does not terminate by d_max
  bool drop = false;
  std::vector<std::int64_t> hilbert;
  int d_max = 0;
};

/// Hilbert function of (L~_1, ..., L~_m) at z up to m(p-1)+p.
RankResult rank_at(int p, std::span<const GaussRational> z);

/// C = 1 - (zeta^{e_1} z_1 + ... + zeta^{e_{m-1}} z_{m-1} + z_m)^p.
CycloScalar c_chi(int p, std::span<const Rational> z, std::span<const int> chat);

/// Small random rationals num/den with |num|, den <= bound, certified by
/// z_1 ... z_m R(z) != 0.
std::vector<GaussRational> sample_generic_point(int p, int m, std::mt19937_64& rng, int bound = 9);
/// A point with nonzero coordinates on 1 - u_1 z_1 - ... - u_m z_m = 0, the
/// u_k drawn from the p-th roots of unity that are Gaussian rationals.
std::vector<GaussRational> sample_singular_point(int p, int m, std::mt19937_64& rng, int bound = 9);

}  // namespace fcpm

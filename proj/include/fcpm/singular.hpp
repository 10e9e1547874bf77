#pragma once

// The singular locus S = { x : x_1 ... x_m R(x) = 0 }. R is built in the
// covering coordinates z (x_k = z_k^p) as the product of the p^m linear forms
//   1 - zeta^{i_1} z_1 - ... - zeta^{i_m} z_m,   (i_1, ..., i_m) in (Z_p)^m,
// and then rewritten in x.

#include <span>
#include <string>
#include <vector>

#include "fcpm/cyclotomic.hpp"
#include "fcpm/poly.hpp"
#include "fcpm/scalar.hpp"

namespace fcpm {

using RationalPoly = SparsePoly<Rational>;
using CycloPoly = SparsePoly<CycloScalar>;

/// Reduces sum_i poly[i] zeta_p^i modulo Phi_p.
CycloScalar cyclo_reduce(int p, std::vector<Rational> poly_in_zeta);

/// R(z). Partial products over chunks of the index tuples run on `workers`
/// threads (0 picks a default) and are multiplied together at the end.
CycloPoly build_R_z(int p, int m, unsigned workers = 0);

/// Throws InvarianceError unless every coefficient is a rational integer and
/// every exponent is divisible by p.
void check_invariance(const CycloPoly& r, int p);

/// R(x): R(z) with z_k^p replaced by x_k. Checks invariance and that the
/// degree is p^{m-1}.
RationalPoly build_R_x(int p, int m);

/// Cached build_R_x.
const RationalPoly& singular_polynomial(int p, int m);

/// x_1 ... x_m R(x), exactly.
GaussRational singular_value(const RationalPoly& r, std::span<const GaussRational> x);

bool on_singular_locus(std::span<const GaussRational> x, const RationalPoly& r);
/// |x_1 ... x_m R(x)| <= rel_tol * (sum of |terms|).
bool on_singular_locus(std::span<const Complex> x, const RationalPoly& r, double rel_tol = 1e-12);

bool on_singular_locus(std::span<const GaussRational> x, int p);
bool on_singular_locus(std::span<const Complex> x, int p, double rel_tol = 1e-12);

/// "1 - 2*x1 - 2*x2 + x1^2 - 2*x1*x2 + x2^2", terms in graded lex order.
std::string format_poly(const RationalPoly& r, const std::string& var = "x");

}  // namespace fcpm

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fcpm/scalar.hpp"

namespace fcpm {

using ExactMatrix = std::vector<std::vector<GaussRational>>;

/// Rank by fraction-exact Gaussian elimination. Among the candidate pivots of
/// a column the entry of smallest height is taken, which keeps intermediate
/// numbers short.
inline std::size_t exact_rank(ExactMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t best = rows.size();
    std::size_t best_height = 0;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      std::size_t h = rows[r][c].height();
      if (best == rows.size() || h < best_height) {
        best = r;
        best_height = h;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[rank], rows[best]);
    const GaussRational inv = GaussRational(1) / rows[rank][c];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const GaussRational f = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) {
        if (!rows[rank][k].is_zero()) rows[r][k] -= f * rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

/// Determinant of a square matrix, exactly.
inline GaussRational exact_determinant(ExactMatrix a) {
  const std::size_t n = a.size();
  GaussRational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return GaussRational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const GaussRational inv = GaussRational(1) / a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const GaussRational f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace fcpm

#ifndef HARMONICA_SNF_HPP
#define HARMONICA_SNF_HPP

#include <cstddef>
#include <vector>

#include "harmonica/dense.hpp"
#include "harmonica/field.hpp"

namespace harmonica {

/// S * A * T = D with S, T unimodular. The nonzero diagonal entries of D are
/// positive, come first, and each divides the next.
struct SnfResult {
  Matrix<BigInt> S;
  Matrix<BigInt> D;
  Matrix<BigInt> T;

  /// Nonzero diagonal entries a_1 | a_2 | ... of D.
  std::vector<BigInt> invariants() const;
};

SnfResult smith_normal_form(const Matrix<BigInt>& a);

/// Nonzero invariant factors only. Runs in checked 64-bit arithmetic and
/// restarts with GMP integers on overflow.
std::vector<BigInt> smith_invariants(const Matrix<BigInt>& a);

/// Product of the nonzero invariant factors (1 for the zero matrix). For a
/// matrix of full row rank this is |coker|.
BigInt invariant_product(const Matrix<BigInt>& a);

/// Rank over Q by fraction-free (Bareiss) elimination, 64-bit fast path.
std::size_t integer_rank(const Matrix<BigInt>& a);

/// Exact determinant of a square integer matrix.
BigInt integer_determinant(const Matrix<BigInt>& a);

}  // namespace harmonica

#endif  // HARMONICA_SNF_HPP

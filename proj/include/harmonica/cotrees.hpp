#ifndef HARMONICA_COTREES_HPP
#define HARMONICA_COTREES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "harmonica/complex.hpp"

namespace harmonica {

/// Enumeration budget used when the caller passes no cap: the value of
/// HARMONICA_CAP if set and valid, otherwise 10^6.
std::uint64_t default_cap();

/// A degree-k spanning cotree, given by its complement k-cells, which index a
/// row basis of d_{k+1}. The weight is |H_k(X, L)|.
struct Cotree {
  std::vector<std::size_t> rows;
  BigInt weight;
};

/// A spanning tree whose top cells index a column basis of d_j. The weight
/// is the order of the torsion of H_{j-1}(T).
struct SpanningTree {
  std::vector<std::size_t> columns;
  BigInt weight;
};

struct CotreeCensus {
  std::size_t degree = 0;
  std::vector<Cotree> cotrees;
  std::vector<SpanningTree> trees;  // column bases of d_{degree+1}
  BigInt upsilon;
  BigInt theta_x;
};

/// C(n, r).
BigInt binomial(std::size_t n, std::size_t r);

/// Row bases of d_{k+1} in lexicographic order. CapExceeded (detail
/// {"candidates": "...", "cap": ...}) when C(|X_k|, rank) exceeds cap.
std::vector<Cotree> enumerate_cotrees(const ChainComplex& x, std::size_t k, std::uint64_t cap);

/// Product of the invariant factors of d_{k+1} restricted to `rows`.
/// NotARowBasis when those rows are not a row basis.
BigInt cotree_weight(const ChainComplex& x, std::size_t k, const std::vector<std::size_t>& rows);

/// Column bases of d_j in lexicographic order, 1 <= j <= top + 1.
std::vector<SpanningTree> enumerate_trees(const ChainComplex& x, std::size_t j, std::uint64_t cap);

/// Product of the invariant factors of d_j restricted to `columns`.
/// NotAColumnBasis when those columns are not a column basis.
BigInt tree_weight(const ChainComplex& x, std::size_t j, const std::vector<std::size_t>& columns);

/// (sum of a_L^2) * (product of a_L).
BigInt upsilon_of(const std::vector<Cotree>& cotrees);
BigInt upsilon(const ChainComplex& x, std::size_t k, std::uint64_t cap);

/// Product of the nonzero invariant factors of d_{k+1}.
BigInt theta_x(const ChainComplex& x, std::size_t k);

CotreeCensus cotree_census(const ChainComplex& x, std::size_t k, std::uint64_t cap);

/// Determinant of L_k restricted to the boundary lattice B_k(X; Z), in a
/// lattice basis read off the Smith form of d_{k+1}. 1 when B_k = 0.
BigInt restricted_laplacian_det(const ChainComplex& x, std::size_t k);

/// Throws NotASurface unless top degree is 2, every edge lies on exactly two
/// face sides, X is connected and H_2 is Z.
void require_surface(const ChainComplex& x);
bool is_surface(const ChainComplex& x);

/// det L̂_1 / |X_2| for a closed orientable surface. NonIntegerDivision if
/// the quotient is not an integer.
BigInt surface_upsilon(const ChainComplex& x);

struct MatrixTreeCheck {
  BigInt lhs;       // det L̂_k
  Rational rhs;     // (sum a_L^2)(sum theta_T^2) / theta_X^2
  bool equal = false;
  BigInt cotree_square_sum;
  BigInt tree_square_sum;
  BigInt theta_x;
};

MatrixTreeCheck matrix_tree_check(const ChainComplex& x, std::size_t k, std::uint64_t cap);

/// pi^† pi over Q: the orthogonal projection of C_k onto Z^k.
ExactMatrix rational_projection(const ChainComplex& x, std::size_t k);

/// Entrywise reduction of pi^† pi into F_p. DenominatorDivisibleByP when p
/// divides a denominator; TorsionObstruction when H_k(X; Z) has p-torsion.
ExactMatrix reduced_projection(const ChainComplex& x, std::size_t k, std::uint64_t p);

enum class ExclusionReason { DividesUpsilon, Torsion };
std::string_view exclusion_name(ExclusionReason r);

struct HarmonicPrimes {
  std::vector<std::uint64_t> guaranteed;
  std::vector<std::pair<std::uint64_t, ExclusionReason>> excluded;
  BigInt upsilon;
  /// True when Upsilon came from the surface formula because enumeration
  /// exceeded the cap.
  bool surface_formula = false;
};

/// Primes p <= bound split into those with p ∤ Upsilon and no p-torsion in
/// H_k (harmonic over F_p) and the rest. Torsion is reported ahead of
/// divisibility when both apply.
HarmonicPrimes harmonic_primes(const ChainComplex& x, std::size_t k, std::uint64_t bound, std::uint64_t cap);

/// A rational cycle of degree k that is not a boundary, scaled to integer
/// coefficients, or nullopt when H_k(X; Q) = 0.
std::optional<std::vector<BigInt>> nontrivial_cycle(const ChainComplex& x, std::size_t k);

struct PrimeSearch {
  std::uint64_t prime = 0;
  Chain representative;
  std::vector<std::uint64_t> rejected;  // smaller primes that are not harmonic
};

/// Smallest prime p <= limit for which degree k is harmonic over F_p, with
/// the harmonic representative of the integer cycle reduced mod p. Primes
/// are tried in increasing order against the direct criterion. InvalidArgument
/// when no prime up to limit qualifies.
PrimeSearch smallest_harmonic_prime(const ChainComplex& x, std::size_t k, const std::vector<BigInt>& cycle,
                                    std::uint64_t limit);

}  // namespace harmonica

#endif  // HARMONICA_COTREES_HPP

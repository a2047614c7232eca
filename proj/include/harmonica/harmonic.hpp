#ifndef HARMONICA_HARMONIC_HPP
#define HARMONICA_HARMONIC_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "harmonica/complex.hpp"

namespace harmonica {

/// Subspace dimensions of C_k used by the diagnostics.
struct HarmonicDims {
  std::size_t chains = 0;        // C_k
  std::size_t cycles = 0;        // Z_k = ker d_k
  std::size_t boundaries = 0;    // B_k = im d_{k+1}
  std::size_t cocycles = 0;      // Z^k = ker d_{k+1}^T
  std::size_t coboundaries = 0;  // B^k = im d_k^T
  std::size_t homology = 0;      // H_k
  std::size_t harmonic = 0;      // Z_k ∩ Z^k
  std::size_t boundary_cocycles = 0;  // B_k ∩ Z^k
};

/// Outcome of the nine equivalent harmonicity statements in one degree over
/// one field. Each statement is evaluated by its own computation:
///  1 every class has exactly one harmonic representative
///  2 a class with a harmonic representative has only one
///  3 the only harmonic representative of [0] is 0
///  4 Z_k ∩ Z^k -> H_k is an isomorphism
///  5 B_k ∩ Z^k = 0
///  6 B_k + Z^k = C_k
///  7 ker(d_{k+1}^T d_{k+1}) = ker d_{k+1}
///  8 im(d_{k+1}^T d_{k+1}) = im d_{k+1}^T
///  9 the projection C_k -> C_k/B_k has a pseudoinverse
class HarmonicReport {
 public:
  /// Throws InternalEquivalenceViolation when the statements disagree.
  HarmonicReport(std::size_t degree, FieldSpec field, std::array<bool, 9> statements, bool lower_kernel_condition,
                 HarmonicDims dims, std::vector<Vector> witness);

  std::size_t degree() const { return degree_; }
  const FieldSpec& field() const { return field_; }
  const std::array<bool, 9>& statements() const { return statements_; }
  bool harmonic() const { return statements_[0]; }
  /// ker(d_k^T d_k) = ker d_k, the degree-k variant of statement 7. Reported
  /// for information; it is not one of the nine.
  bool lower_kernel_condition() const { return lower_kernel_condition_; }
  const HarmonicDims& dims() const { return dims_; }
  /// Basis of B_k ∩ Z^k (empty exactly when harmonic).
  const std::vector<Vector>& witness() const { return witness_; }

 private:
  std::size_t degree_;
  FieldSpec field_;
  std::array<bool, 9> statements_;
  bool lower_kernel_condition_;
  HarmonicDims dims_;
  std::vector<Vector> witness_;
};

/// d_{k+1} d_{k+1}^T + d_k^T d_k over the field.
ExactMatrix laplacian(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// Basis of Z_k ∩ Z^k.
std::vector<Vector> harmonic_space(const ChainComplex& x, const FieldSpec& field, std::size_t k);

HarmonicReport diagnose(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// Statement 7 alone: rank(d_{k+1}^T d_{k+1}) = rank d_{k+1}. Two
/// eliminations instead of the full report; used by prime searches.
bool is_homologically_harmonic(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// Harmonicity of the cochain complex in degree k: B^k ∩ Z_k = 0, evaluated by
/// diagnosing the dual complex.
bool is_cohomologically_harmonic(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// Matrix of C_k -> C_k/B_k. The quotient basis is the classes of the
/// standard cells that are not pivots of the column echelon form of d_{k+1}.
ExactMatrix quotient_projection(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// The unique harmonic chain homologous to z, computed as pi^† pi z.
/// NotACycle when d_k z != 0; NotHarmonicComplex (detail = report JSON) when
/// the degree is not harmonic.
Chain harmonic_representative(const ChainComplex& x, const FieldSpec& field, const Chain& z);

/// Harmonic representatives of [z]: representative + span(torsor_basis), or
/// none when the class has no harmonic representative.
struct HarSet {
  std::optional<Chain> representative;
  std::vector<Vector> torsor_basis;  // basis of B_k ∩ Z^k
};

HarSet har_set(const ChainComplex& x, const FieldSpec& field, const Chain& z);

/// Classes with at least one harmonic representative form a subspace of H_k
/// of dimension dim_qk and codimension codim.
struct RepresentableSubspace {
  std::size_t dim_qk = 0;
  std::size_t codim = 0;
};

RepresentableSubspace representable_subspace(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// C_k = (Z_k ∩ Z^k) ⊕ B_k ⊕ B^k, orthogonal under the standard form.
/// ker L_k always contains Z_k ∩ Z^k; in positive characteristic it can be
/// strictly larger (a filled triangle over F3 in degree 2 has L_2 = 0).
struct HodgeDecomposition {
  std::vector<Vector> harmonic_basis;
  std::vector<Vector> boundary_basis;
  std::vector<Vector> coboundary_basis;
  std::size_t laplacian_kernel_dim = 0;

  bool laplacian_kernel_is_harmonic() const { return laplacian_kernel_dim == harmonic_basis.size(); }
};

/// NoDecomposition with detail {"failed": "homological"|"cohomological"}
/// when either harmonicity condition fails.
HodgeDecomposition hodge_decomposition(const ChainComplex& x, const FieldSpec& field, std::size_t k);

/// Throws NotACycle unless d_k z = 0; also validates degree and length.
void require_cycle(const ChainComplex& x, const FieldSpec& field, const Chain& z);

}  // namespace harmonica

#endif  // HARMONICA_HARMONIC_HPP

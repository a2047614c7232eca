#ifndef HARMONICA_COMPLEX_HPP
#define HARMONICA_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "harmonica/matrix.hpp"

namespace harmonica {

/// A finite chain complex of free abelian groups. boundary(k) is the integer
/// matrix of d_k : C_k -> C_{k-1}, rows indexed by (k-1)-cells and columns by
/// k-cells. Degrees run 0..top_degree(); d_0 and d_{top+1} are empty.
class ChainComplex {
 public:
  ChainComplex() : ChainComplex(std::size_t{0}) {}
  /// A complex concentrated in degree 0.
  explicit ChainComplex(std::size_t vertices);
  /// boundaries[i] is d_{i+1}. Throws InvalidArgument on inconsistent shapes
  /// or when some d_k d_{k+1} is nonzero.
  explicit ChainComplex(std::vector<Matrix<BigInt>> boundaries);

  std::size_t top_degree() const { return cells_.size() - 1; }
  std::size_t cell_count(std::size_t k) const { return k < cells_.size() ? cells_[k] : 0; }
  /// d_k for 0 <= k <= top_degree() + 1.
  const Matrix<BigInt>& boundary(std::size_t k) const;
  ExactMatrix boundary_matrix(std::size_t k) const { return ExactMatrix(boundary(k)); }

  /// Optional human-readable names of k-cells ("a", "b", "E").
  const std::vector<std::string>& labels(std::size_t k) const;
  void set_labels(std::size_t k, std::vector<std::string> names);

  /// Cochain complex read as a chain complex: degree j holds the cells of
  /// degree top - j and d_j is the transpose of d_{top-j+1}.
  ChainComplex dual() const;

  /// Throws DegreeOutOfRange unless k <= top_degree().
  void require_degree(std::size_t k) const;

 private:
  std::vector<std::size_t> cells_;
  std::vector<Matrix<BigInt>> d_;  // d_[k] = d_k for k in [0, top + 1]
  std::vector<std::vector<std::string>> labels_;
};

/// Product of consecutive boundary maps, as a plain check.
bool boundary_squares_to_zero(const ChainComplex& x);

/// Boundary matrices of x mapped into a field.
struct FieldComplex {
  FieldSpec field;
  std::vector<ExactMatrix> boundaries;  // boundaries[k] = d_k over field, k in [0, top + 1]

  std::size_t top_degree() const { return boundaries.size() - 2; }
  std::size_t cell_count(std::size_t k) const { return boundaries.at(k).cols(); }
  const ExactMatrix& boundary(std::size_t k) const { return boundaries.at(k); }
};

FieldComplex instantiate(const ChainComplex& x, const FieldSpec& field);

/// A k-chain over a field, one coefficient per k-cell.
struct Chain {
  std::size_t degree = 0;
  Vector coefficients;

  static Chain zero(const FieldSpec& field, std::size_t degree, std::size_t cells);
  /// Integer coefficients mapped into the field.
  static Chain from_integers(const FieldSpec& field, std::size_t degree, const std::vector<long>& coeffs);
  FieldSpec field() const;
  bool is_zero() const;
  /// Indices of nonzero coefficients.
  std::vector<std::size_t> support() const;
  friend bool operator==(const Chain&, const Chain&) = default;
};

using Simplex = std::vector<std::size_t>;

/// Simplicial complex closed under faces. Simplices of each dimension are
/// sorted lexicographically and that order indexes the chain groups.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Downward closure of the facets. Vertices are sorted within each facet;
  /// MalformedFacet on empty facets, negative labels or repeated vertices.
  static SimplicialComplex from_facets(const std::vector<std::vector<long>>& facets);

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  const std::vector<Simplex>& simplices(std::size_t dim) const;
  std::size_t count(std::size_t dim) const { return dim < simplices_.size() ? simplices_[dim].size() : 0; }
  /// Vertex labels in increasing order (position = 0-cell index).
  std::vector<std::size_t> vertices() const;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  /// Maximal simplices, by dimension then lexicographic order.
  std::vector<Simplex> facets() const;
  bool is_closed_under_faces() const;

  /// Alternating-sum boundary maps: the face dropping the i-th vertex gets
  /// sign (-1)^i.
  ChainComplex chain_complex() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_;
  }

 private:
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;

  void rebuild_index();
};

/// Points in R^d. Coordinates are exact rationals so distance thresholds are
/// decided without rounding.
struct PointCloud {
  std::vector<std::vector<Rational>> points;

  std::size_t size() const { return points.size(); }
  /// Throws DimensionMismatch when points disagree on dimension.
  std::size_t dimension() const;
  std::vector<std::vector<double>> approximate() const;
};

/// Exact value of a decimal literal ("-0.45", "1e-3", "7").
Rational parse_decimal(std::string_view text);

/// One point per line, comma-separated decimals or fractions "p/q"; blank
/// lines and lines starting with '#' are skipped.
PointCloud parse_point_cloud_csv(std::string_view text);
/// Terminating decimals where possible, fractions otherwise, so that parsing
/// the output reproduces the cloud exactly.
std::string point_cloud_to_csv(const PointCloud& cloud);

/// Clique complex of the graph joining points at Euclidean distance
/// <= radius, truncated at max_dim. Requires max_dim >= 1.
SimplicialComplex vietoris_rips(const PointCloud& cloud, const Rational& radius, std::size_t max_dim);

// Integral homology queries.

/// dim ker d_k - rank d_{k+1} over Q.
std::size_t betti(const ChainComplex& x, std::size_t k);
/// Free rank of H_k(X; Z) read off Smith normal forms.
std::size_t integral_free_rank(const ChainComplex& x, std::size_t k);
/// Prime factors of the invariant factors of d_{k+1}, which are the torsion
/// primes of H_k(X; Z).
std::vector<BigInt> torsion_primes(const ChainComplex& x, std::size_t k);
bool has_p_torsion(const ChainComplex& x, std::size_t k, std::uint64_t p);

// Seeded point-cloud samplers; coordinates are rounded to six decimals so the
// CSV form reproduces the exact cloud.

/// Lemniscate of Bernoulli with half-width 1, Gaussian noise of deviation
/// `noise` on both coordinates.
PointCloud sample_lemniscate(std::size_t n, double noise, std::uint64_t seed);

/// Unit sphere centered at the origin with unit circles attached at the
/// antipodal points (+-1, 0, 0), lying in the xy-plane outside the sphere.
PointCloud sample_sphere_with_circles(std::size_t sphere_points, std::size_t circle_points, double noise,
                                      std::uint64_t seed);

}  // namespace harmonica

#endif  // HARMONICA_COMPLEX_HPP

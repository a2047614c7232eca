#ifndef HARMONICA_IO_HPP
#define HARMONICA_IO_HPP

// JSON and CSV forms of complexes, matrices, chains and reports. Objects are
// ordered_json so that serialized output is byte-stable.

#include <optional>
#include <string>

#include <json.hpp>

#include "harmonica/complex.hpp"
#include "harmonica/cotrees.hpp"
#include "harmonica/harmonic.hpp"

namespace harmonica {

using Json = nlohmann::ordered_json;

/// A complex read from JSON. Simplicial input keeps its simplex lists and
/// optional vertex coordinates (indexed by vertex label).
struct LoadedComplex {
  ChainComplex complex;
  std::optional<SimplicialComplex> simplicial;
  std::optional<PointCloud> coordinates;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Accepts "simplicial-v1" and "chain-complex-v1" documents. Parse on
/// malformed input, MalformedFacet on bad facets.
LoadedComplex complex_from_json(const Json& doc);
LoadedComplex load_complex(const std::string& path);

Json simplicial_to_json(const SimplicialComplex& s, const PointCloud* coordinates = nullptr);
Json chain_complex_to_json(const ChainComplex& x);

Json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const Json& doc);

/// {"degree": k, "field": ..., "coefficients": {"<index>": "<scalar>"}} with
/// zero coefficients omitted; "labels" lists the support by cell label when
/// the complex names its cells.
Json chain_to_json(const Chain& c, const ChainComplex* x = nullptr);
/// Keys are cell indices or cell labels; values are scalar strings or
/// integers. Missing cells are zero.
Chain chain_from_json(const Json& doc, const FieldSpec& field, const ChainComplex& x);

Json vector_to_json(const Vector& v);
Json vectors_to_json(const std::vector<Vector>& vs);

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
Json integer_to_json(const BigInt& n);

Json report_to_json(const HarmonicReport& r);
Json har_set_to_json(const HarSet& h, const ChainComplex* x = nullptr);
Json hodge_to_json(const HodgeDecomposition& h);
Json census_to_json(const CotreeCensus& c);
Json harmonic_primes_to_json(const HarmonicPrimes& h);
Json matrix_tree_to_json(const MatrixTreeCheck& m);

/// Error as {"error": name, "message": text, "detail": {...}}.
Json error_to_json(const Error& e);

}  // namespace harmonica

#endif  // HARMONICA_IO_HPP

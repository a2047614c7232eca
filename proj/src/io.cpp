#include "harmonica/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace harmonica {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::Parse, what); }

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::size_t as_count(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw parse_error(std::string(what) + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

BigInt as_integer(const Json& v) {
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    BigInt out;
    if (out.set_str(v.get<std::string>(), 10) != 0) throw parse_error("malformed integer '" + v.get<std::string>() + "'");
    return out;
  }
  throw parse_error("expected an integer entry");
}

Scalar as_scalar(const Json& v, const FieldSpec& field) {
  if (v.is_number_integer()) return Scalar(field, Rational(as_integer(v)));
  if (v.is_string()) {
    try {
      return Scalar::parse(field, v.get<std::string>());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DenominatorDivisibleByP) throw;
      throw parse_error("malformed scalar '" + v.get<std::string>() + "'");
    }
  }
  throw parse_error("expected a scalar string or integer");
}

Rational as_decimal(const Json& v) {
  if (v.is_string()) return parse_decimal(v.get<std::string>());
  if (v.is_number_integer()) return Rational(as_integer(v));
  if (v.is_number_float()) {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return parse_decimal(s.str());
  }
  throw parse_error("coordinates must be decimal strings or numbers");
}

std::string decimal_string(const Rational& q) {
  PointCloud single{{{q}}};
  std::string s = point_cloud_to_csv(single);
  s.pop_back();
  return s;
}

LoadedComplex simplicial_from_json(const Json& doc) {
  const Json& facets = require(doc, "facets");
  if (!facets.is_array()) throw parse_error("'facets' must be an array");
  std::vector<std::vector<long>> lists;
  for (const auto& f : facets) {
    if (!f.is_array()) throw parse_error("each facet must be an array of vertex labels");
    std::vector<long> verts;
    for (const auto& v : f) {
      if (!v.is_number_integer()) throw Error(ErrorCode::MalformedFacet, "vertex labels must be integers");
      verts.push_back(v.get<long>());
    }
    lists.push_back(std::move(verts));
  }
  LoadedComplex out;
  out.simplicial = SimplicialComplex::from_facets(lists);
  out.complex = out.simplicial->chain_complex();
  if (doc.contains("coordinates")) {
    PointCloud cloud;
    for (const auto& p : doc.at("coordinates")) {
      if (!p.is_array()) throw parse_error("each coordinate entry must be an array");
      std::vector<Rational> point;
      for (const auto& c : p) point.push_back(as_decimal(c));
      cloud.points.push_back(std::move(point));
    }
    cloud.dimension();
    auto verts = out.simplicial->vertices();
    if (!verts.empty() && verts.back() >= cloud.size()) {
      throw Error(ErrorCode::DimensionMismatch, "coordinates missing for vertex " + std::to_string(verts.back()));
    }
    out.coordinates = std::move(cloud);
  }
  return out;
}

LoadedComplex chain_complex_from_json(const Json& doc) {
  const Json& list = require(doc, "boundaries");
  if (!list.is_array()) throw parse_error("'boundaries' must be an array");
  std::map<std::size_t, Matrix<BigInt>> by_degree;
  for (const auto& b : list) {
    std::size_t degree = as_count(require(b, "degree"), "degree");
    if (degree == 0) throw parse_error("boundary degrees start at 1");
    std::size_t rows = as_count(require(b, "rows"), "rows");
    std::size_t cols = as_count(require(b, "cols"), "cols");
    Matrix<BigInt> m(rows, cols, BigInt(0));
    if (b.contains("entries")) {
      for (const auto& e : b.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw parse_error("entries are [row, col, value] triples");
        std::size_t i = as_count(e[0], "row index");
        std::size_t j = as_count(e[1], "column index");
        if (i >= rows || j >= cols) throw parse_error("entry index out of range in d_" + std::to_string(degree));
        m(i, j) = as_integer(e[2]);
      }
    }
    if (!by_degree.emplace(degree, std::move(m)).second) {
      throw parse_error("duplicate boundary of degree " + std::to_string(degree));
    }
  }
  std::vector<Matrix<BigInt>> maps;
  for (auto& [degree, m] : by_degree) {
    if (degree != maps.size() + 1) throw parse_error("boundary degrees must run 1..N without gaps");
    maps.push_back(std::move(m));
  }
  LoadedComplex out;
  if (maps.empty()) {
    out.complex = ChainComplex(doc.contains("vertices") ? as_count(doc.at("vertices"), "vertices") : 0);
  } else {
    // Shape and d∘d failures stay InvalidArgument: the document parsed but
    // does not describe a chain complex.
    out.complex = ChainComplex(std::move(maps));
  }
  if (doc.contains("labels")) {
    for (const auto& [key, names] : doc.at("labels").items()) {
      std::size_t degree = 0;
      try {
        degree = std::stoul(key);
      } catch (const std::exception&) {
        throw parse_error("label keys must be degrees");
      }
      out.complex.set_labels(degree, names.get<std::vector<std::string>>());
    }
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
}

LoadedComplex complex_from_json(const Json& doc) {
  try {
    const std::string format = require(doc, "format").get<std::string>();
    if (format == "simplicial-v1") return simplicial_from_json(doc);
    if (format == "chain-complex-v1") return chain_complex_from_json(doc);
    throw parse_error("unknown complex format '" + format + "'");
  } catch (const Json::exception& e) {
    throw parse_error(e.what());
  }
}

LoadedComplex load_complex(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return complex_from_json(doc);
}

Json simplicial_to_json(const SimplicialComplex& s, const PointCloud* coordinates) {
  Json doc;
  doc["format"] = "simplicial-v1";
  Json facets = Json::array();
  for (const auto& f : s.facets()) facets.push_back(f);
  doc["facets"] = std::move(facets);
  if (coordinates) {
    Json coords = Json::array();
    for (const auto& p : coordinates->points) {
      Json point = Json::array();
      for (const auto& c : p) point.push_back(decimal_string(c));
      coords.push_back(std::move(point));
    }
    doc["coordinates"] = std::move(coords);
  }
  return doc;
}

Json chain_complex_to_json(const ChainComplex& x) {
  Json doc;
  doc["format"] = "chain-complex-v1";
  if (x.top_degree() == 0) doc["vertices"] = x.cell_count(0);
  Json list = Json::array();
  for (std::size_t k = 1; k <= x.top_degree(); ++k) {
    const auto& d = x.boundary(k);
    Json entries = Json::array();
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (sgn(d(i, j)) != 0) entries.push_back(Json::array({i, j, d(i, j).get_si()}));
    list.push_back(Json{{"degree", k}, {"rows", d.rows()}, {"cols", d.cols()}, {"entries", std::move(entries)}});
  }
  doc["boundaries"] = std::move(list);
  Json labels = Json::object();
  for (std::size_t k = 0; k <= x.top_degree(); ++k)
    if (!x.labels(k).empty()) labels[std::to_string(k)] = x.labels(k);
  if (!labels.empty()) doc["labels"] = std::move(labels);
  return doc;
}

Json matrix_to_json(const ExactMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.is_integer()) {
        if (sgn(m.integer_at(i, j)) != 0) entries.push_back(Json::array({i, j, m.integer_at(i, j).get_str()}));
      } else {
        Scalar s = m.at(i, j);
        if (!s.is_zero()) entries.push_back(Json::array({i, j, s.to_string()}));
      }
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"field", m.domain_name()}, {"entries", std::move(entries)}};
}

ExactMatrix matrix_from_json(const Json& doc) {
  try {
    std::size_t rows = as_count(require(doc, "rows"), "rows");
    std::size_t cols = as_count(require(doc, "cols"), "cols");
    const std::string domain = require(doc, "field").get<std::string>();
    const Json empty = Json::array();
    const Json& entries = doc.contains("entries") ? doc.at("entries") : empty;
    auto index = [&](const Json& e) {
      if (!e.is_array() || e.size() != 3) throw parse_error("entries are [row, col, value] triples");
      std::size_t i = as_count(e[0], "row index");
      std::size_t j = as_count(e[1], "column index");
      if (i >= rows || j >= cols) throw parse_error("matrix entry index out of range");
      return std::pair{i, j};
    };
    if (domain == "Z") {
      auto m = ExactMatrix::integer_zeros(rows, cols);
      for (const auto& e : entries) {
        auto [i, j] = index(e);
        m.set_integer(i, j, as_integer(e[2]));
      }
      return m;
    }
    FieldSpec field = FieldSpec::parse(domain);
    auto m = ExactMatrix::zeros(field, rows, cols);
    for (const auto& e : entries) {
      auto [i, j] = index(e);
      m.set(i, j, as_scalar(e[2], field));
    }
    return m;
  } catch (const Json::exception& e) {
    throw parse_error(e.what());
  }
}

Json chain_to_json(const Chain& c, const ChainComplex* x) {
  Json doc;
  doc["degree"] = c.degree;
  if (!c.coefficients.empty()) doc["field"] = c.field().name();
  Json coeffs = Json::object();
  Json labels = Json::array();
  const std::vector<std::string>* names = (x && !x->labels(c.degree).empty()) ? &x->labels(c.degree) : nullptr;
  for (std::size_t i : c.support()) {
    coeffs[std::to_string(i)] = c.coefficients[i].to_string();
    if (names) labels.push_back((*names)[i]);
  }
  doc["coefficients"] = std::move(coeffs);
  if (names) doc["support_labels"] = std::move(labels);
  return doc;
}

Chain chain_from_json(const Json& doc, const FieldSpec& field, const ChainComplex& x) {
  try {
    std::size_t degree = as_count(require(doc, "degree"), "degree");
    x.require_degree(degree);
    Chain c = Chain::zero(field, degree, x.cell_count(degree));
    const auto& names = x.labels(degree);
    const Json& coeffs = require(doc, "coefficients");
    if (!coeffs.is_object()) throw parse_error("'coefficients' must be an object");
    for (const auto& [key, value] : coeffs.items()) {
      std::size_t idx = 0;
      auto named = std::find(names.begin(), names.end(), key);
      if (named != names.end()) {
        idx = static_cast<std::size_t>(named - names.begin());
      } else {
        std::size_t used = 0;
        try {
          idx = std::stoul(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != key.size()) throw parse_error("unknown cell '" + key + "'");
      }
      if (idx >= c.coefficients.size()) throw parse_error("cell index " + key + " out of range");
      c.coefficients[idx] = as_scalar(value, field);
    }
    return c;
  } catch (const Json::exception& e) {
    throw parse_error(e.what());
  }
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Json vectors_to_json(const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(vector_to_json(v));
  return out;
}

Json integer_to_json(const BigInt& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return Json(n.get_si());
  return Json(n.get_str());
}

Json report_to_json(const HarmonicReport& r) {
  Json doc;
  doc["degree"] = r.degree();
  doc["field"] = r.field().name();
  doc["harmonic"] = r.harmonic();
  Json statements;
  for (std::size_t i = 0; i < 9; ++i) statements["A" + std::to_string(i + 1)] = r.statements()[i];
  doc["statements"] = std::move(statements);
  doc["lower_kernel_condition"] = r.lower_kernel_condition();
  const auto& d = r.dims();
  doc["dims"] = Json{{"C_k", d.chains},     {"Z_k", d.cycles},     {"B_k", d.boundaries},
                     {"Z^k", d.cocycles},   {"B^k", d.coboundaries}, {"H_k", d.homology},
                     {"Z_k_cap_Z^k", d.harmonic}, {"B_k_cap_Z^k", d.boundary_cocycles}};
  doc["witness"] = vectors_to_json(r.witness());
  return doc;
}

Json har_set_to_json(const HarSet& h, const ChainComplex* x) {
  Json doc;
  doc["representative"] = h.representative ? chain_to_json(*h.representative, x) : Json(nullptr);
  doc["torsor_basis"] = vectors_to_json(h.torsor_basis);
  return doc;
}

Json hodge_to_json(const HodgeDecomposition& h) {
  return Json{{"harmonic_basis", vectors_to_json(h.harmonic_basis)},
              {"boundary_basis", vectors_to_json(h.boundary_basis)},
              {"coboundary_basis", vectors_to_json(h.coboundary_basis)},
              {"laplacian_kernel_dim", h.laplacian_kernel_dim},
              {"laplacian_kernel_is_harmonic", h.laplacian_kernel_is_harmonic()}};
}

Json census_to_json(const CotreeCensus& c) {
  Json cotrees = Json::array();
  for (const auto& l : c.cotrees) cotrees.push_back(Json{{"complement_rows", l.rows}, {"weight", integer_to_json(l.weight)}});
  Json trees = Json::array();
  for (const auto& t : c.trees) trees.push_back(Json{{"columns", t.columns}, {"weight", integer_to_json(t.weight)}});
  return Json{{"degree", c.degree},
              {"upsilon", integer_to_json(c.upsilon)},
              {"theta_x", integer_to_json(c.theta_x)},
              {"cotrees", std::move(cotrees)},
              {"trees", std::move(trees)}};
}

Json harmonic_primes_to_json(const HarmonicPrimes& h) {
  Json excluded = Json::array();
  for (const auto& [p, why] : h.excluded) excluded.push_back(Json{{"prime", p}, {"reason", exclusion_name(why)}});
  return Json{{"upsilon", integer_to_json(h.upsilon)},
              {"surface_formula", h.surface_formula},
              {"guaranteed", h.guaranteed},
              {"excluded", std::move(excluded)}};
}

Json matrix_tree_to_json(const MatrixTreeCheck& m) {
  return Json{{"lhs", integer_to_json(m.lhs)},
              {"rhs", m.rhs.get_str()},
              {"equal", m.equal},
              {"cotree_square_sum", integer_to_json(m.cotree_square_sum)},
              {"tree_square_sum", integer_to_json(m.tree_square_sum)},
              {"theta_x", integer_to_json(m.theta_x)}};
}

Json error_to_json(const Error& e) {
  Json doc;
  doc["error"] = error_name(e.code());
  doc["message"] = e.what();
  if (!e.detail().empty()) {
    try {
      doc["detail"] = Json::parse(e.detail());
    } catch (const Json::exception&) {
      doc["detail"] = e.detail();
    }
  }
  return doc;
}

}  // namespace harmonica

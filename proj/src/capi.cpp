#include "harmonica/harmonica.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "harmonica/io.hpp"
#include "harmonica/render.hpp"

using namespace harmonica;

struct hm_complex {
  LoadedComplex loaded;
};

namespace {

thread_local std::string last_error;

hm_status status_of(ErrorCode code) {
  return static_cast<hm_status>(static_cast<int>(code) + 1);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body`, translating exceptions into a status and a JSON description.
template <class F>
hm_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return HM_OK;
  } catch (const Error& e) {
    last_error = error_to_json(e).dump();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = Json{{"error", "InternalError"}, {"message", "out of memory"}}.dump();
    return HM_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = Json{{"error", "InternalError"}, {"message", e.what()}}.dump();
    return HM_INTERNAL_ERROR;
  }
}

template <class F>
hm_status emit(char** out, F&& produce) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::InvalidArgument, "null output pointer");
    *out = nullptr;
    *out = dup(produce());
  });
}

const hm_complex& need(const hm_complex* cx) {
  if (!cx) throw Error(ErrorCode::InvalidArgument, "null complex handle");
  return *cx;
}

const char* need(const char* s, const char* what) {
  if (!s) throw Error(ErrorCode::InvalidArgument, std::string("null ") + what);
  return s;
}

std::size_t degree_of(int degree) {
  if (degree < 0) throw Error(ErrorCode::DegreeOutOfRange, "negative degree " + std::to_string(degree));
  return static_cast<std::size_t>(degree);
}

std::uint64_t cap_of(std::uint64_t cap) { return cap == 0 ? default_cap() : cap; }

FieldSpec field_of(const char* field) { return FieldSpec::parse(need(field, "field")); }

Json parse_json(const char* text, const char* what) {
  try {
    return Json::parse(need(text, what));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

Chain chain_of(const hm_complex& cx, const FieldSpec& field, const char* text) {
  return chain_from_json(parse_json(text, "chain"), field, cx.loaded.complex);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<BigInt> integral_cycle(const hm_complex& cx, std::size_t k, const char* text) {
  const auto& x = cx.loaded.complex;
  if (!text) {
    auto cycle = nontrivial_cycle(x, k);
    if (!cycle) throw Error(ErrorCode::InvalidArgument, "H_" + std::to_string(k) + " is zero over Q");
    return *cycle;
  }
  Chain z = chain_of(cx, FieldSpec::rationals(), text);
  if (z.degree != k) throw Error(ErrorCode::InvalidArgument, "cycle degree does not match the requested degree");
  require_cycle(x, FieldSpec::rationals(), z);
  std::vector<BigInt> out;
  for (const auto& c : z.coefficients) {
    const Rational& q = c.rational();
    if (q.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "search cycles need integer coefficients");
    out.push_back(q.get_num());
  }
  return out;
}

}  // namespace

extern "C" {

const char* hm_version(void) { return "0.1.0"; }

const char* hm_status_name(hm_status status) {
  static const std::string names[] = {
      "Ok",
      std::string(error_name(ErrorCode::InvalidArgument)),
      std::string(error_name(ErrorCode::Parse)),
      std::string(error_name(ErrorCode::Io)),
      std::string(error_name(ErrorCode::DivisionByZero)),
      std::string(error_name(ErrorCode::DenominatorDivisibleByP)),
      std::string(error_name(ErrorCode::DomainMismatch)),
      std::string(error_name(ErrorCode::MalformedFacet)),
      std::string(error_name(ErrorCode::DimensionMismatch)),
      std::string(error_name(ErrorCode::DegreeOutOfRange)),
      std::string(error_name(ErrorCode::NotACycle)),
      std::string(error_name(ErrorCode::NotHarmonicComplex)),
      std::string(error_name(ErrorCode::NoDecomposition)),
      std::string(error_name(ErrorCode::CapExceeded)),
      std::string(error_name(ErrorCode::NotARowBasis)),
      std::string(error_name(ErrorCode::NotAColumnBasis)),
      std::string(error_name(ErrorCode::NotASurface)),
      std::string(error_name(ErrorCode::NonIntegerDivision)),
      std::string(error_name(ErrorCode::TorsionObstruction)),
      std::string(error_name(ErrorCode::InternalEquivalenceViolation)),
      "InternalError",
  };
  const int i = static_cast<int>(status);
  if (i < 0 || i > HM_INTERNAL_ERROR) return "Unknown";
  return names[i].c_str();
}

const char* hm_last_error(void) { return last_error.c_str(); }

void hm_string_free(char* s) { std::free(s); }

hm_status hm_field_check(const char* field) {
  return guarded([&] { field_of(field); });
}

hm_status hm_complex_from_json(const char* json, hm_complex** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::InvalidArgument, "null output pointer");
    *out = nullptr;
    *out = new hm_complex{complex_from_json(parse_json(json, "complex"))};
  });
}

hm_status hm_complex_load(const char* path, hm_complex** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::InvalidArgument, "null output pointer");
    *out = nullptr;
    *out = new hm_complex{load_complex(need(path, "path"))};
  });
}

void hm_complex_free(hm_complex* cx) { delete cx; }

hm_status hm_complex_to_json(const hm_complex* cx, char** out) {
  return emit(out, [&] {
    const auto& l = need(cx).loaded;
    if (l.simplicial) return dump(simplicial_to_json(*l.simplicial, l.coordinates ? &*l.coordinates : nullptr));
    return dump(chain_complex_to_json(l.complex));
  });
}

hm_status hm_complex_summary(const hm_complex* cx, char** out) {
  return emit(out, [&] {
    const auto& x = need(cx).loaded.complex;
    Json cells = Json::array(), betti_numbers = Json::array(), torsion = Json::array();
    for (std::size_t k = 0; k <= x.top_degree(); ++k) {
      cells.push_back(x.cell_count(k));
      betti_numbers.push_back(betti(x, k));
      Json primes = Json::array();
      for (const auto& p : torsion_primes(x, k)) primes.push_back(integer_to_json(p));
      torsion.push_back(std::move(primes));
    }
    return dump(Json{{"top_degree", x.top_degree()},
                     {"cells", std::move(cells)},
                     {"betti", std::move(betti_numbers)},
                     {"torsion_primes", std::move(torsion)}});
  });
}

hm_status hm_complex_validate(const hm_complex* cx, char** out) {
  return emit(out, [&] {
    const auto& l = need(cx).loaded;
    const bool squares = boundary_squares_to_zero(l.complex);
    Json doc{{"boundary_squares_to_zero", squares}};
    bool valid = squares;
    if (l.simplicial) {
      const bool closed = l.simplicial->is_closed_under_faces();
      doc["closed_under_faces"] = closed;
      valid = valid && closed;
    }
    doc["valid"] = valid;
    return dump(doc);
  });
}

hm_status hm_diagnose(const hm_complex* cx, const char* field, int degree, char** out) {
  return emit(out, [&] {
    const auto& x = need(cx).loaded.complex;
    const FieldSpec f = field_of(field);
    const std::size_t k = degree_of(degree);
    Json doc = report_to_json(diagnose(x, f, k));
    doc["cohomologically_harmonic"] = is_cohomologically_harmonic(x, f, k);
    return dump(doc);
  });
}

hm_status hm_harmonic_representative(const hm_complex* cx, const char* field, const char* cycle, char** out) {
  return emit(out, [&] {
    const auto& c = need(cx);
    const FieldSpec f = field_of(field);
    return dump(chain_to_json(harmonic_representative(c.loaded.complex, f, chain_of(c, f, cycle)), &c.loaded.complex));
  });
}

hm_status hm_har_set(const hm_complex* cx, const char* field, const char* cycle, char** out) {
  return emit(out, [&] {
    const auto& c = need(cx);
    const FieldSpec f = field_of(field);
    return dump(har_set_to_json(har_set(c.loaded.complex, f, chain_of(c, f, cycle)), &c.loaded.complex));
  });
}

hm_status hm_hodge_decomposition(const hm_complex* cx, const char* field, int degree, char** out) {
  return emit(out, [&] {
    return dump(hodge_to_json(hodge_decomposition(need(cx).loaded.complex, field_of(field), degree_of(degree))));
  });
}

hm_status hm_representable_subspace(const hm_complex* cx, const char* field, int degree, char** out) {
  return emit(out, [&] {
    auto r = representable_subspace(need(cx).loaded.complex, field_of(field), degree_of(degree));
    return dump(Json{{"dim_qk", r.dim_qk}, {"codim", r.codim}});
  });
}

hm_status hm_laplacian(const hm_complex* cx, const char* field, int degree, char** out) {
  return emit(out, [&] {
    return dump(matrix_to_json(laplacian(need(cx).loaded.complex, field_of(field), degree_of(degree))));
  });
}

hm_status hm_quotient_projection(const hm_complex* cx, const char* field, int degree, char** out) {
  return emit(out, [&] {
    return dump(matrix_to_json(quotient_projection(need(cx).loaded.complex, field_of(field), degree_of(degree))));
  });
}

hm_status hm_upsilon(const hm_complex* cx, int degree, uint64_t cap, char** out) {
  return emit(out, [&] {
    const auto& x = need(cx).loaded.complex;
    const std::size_t k = degree_of(degree);
    auto cotrees = enumerate_cotrees(x, k, cap_of(cap));
    return dump(Json{{"upsilon", integer_to_json(upsilon_of(cotrees))}, {"cotrees", cotrees.size()}});
  });
}

hm_status hm_cotree_census(const hm_complex* cx, int degree, uint64_t cap, char** out) {
  return emit(out, [&] { return dump(census_to_json(cotree_census(need(cx).loaded.complex, degree_of(degree), cap_of(cap)))); });
}

hm_status hm_surface_upsilon(const hm_complex* cx, char** out) {
  return emit(out, [&] {
    const auto& x = need(cx).loaded.complex;
    return dump(Json{{"upsilon", integer_to_json(surface_upsilon(x))},
                     {"restricted_laplacian_det", integer_to_json(restricted_laplacian_det(x, 1))},
                     {"faces", x.cell_count(2)}});
  });
}

hm_status hm_matrix_tree_check(const hm_complex* cx, int degree, uint64_t cap, char** out) {
  return emit(out, [&] { return dump(matrix_tree_to_json(matrix_tree_check(need(cx).loaded.complex, degree_of(degree), cap_of(cap)))); });
}

hm_status hm_rational_projection(const hm_complex* cx, int degree, char** out) {
  return emit(out, [&] { return dump(matrix_to_json(rational_projection(need(cx).loaded.complex, degree_of(degree)))); });
}

hm_status hm_reduced_projection(const hm_complex* cx, int degree, uint64_t p, char** out) {
  return emit(out, [&] { return dump(matrix_to_json(reduced_projection(need(cx).loaded.complex, degree_of(degree), p))); });
}

hm_status hm_harmonic_primes(const hm_complex* cx, int degree, uint64_t bound, uint64_t cap, char** out) {
  return emit(out, [&] {
    const std::size_t k = degree_of(degree);
    Json doc{{"degree", k}, {"bound", bound}};
    doc.update(harmonic_primes_to_json(harmonic_primes(need(cx).loaded.complex, k, bound, cap_of(cap))));
    return dump(doc);
  });
}

hm_status hm_prime_search(const hm_complex* cx, int degree, const char* cycle, uint64_t limit, uint64_t cap,
                          char** out) {
  return emit(out, [&] {
    const auto& c = need(cx);
    const auto& x = c.loaded.complex;
    const std::size_t k = degree_of(degree);
    const auto z = integral_cycle(c, k, cycle);
    const PrimeSearch found = smallest_harmonic_prime(x, k, z, limit);

    Json input = Json::object();
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] != 0) input[std::to_string(i)] = z[i].get_str();
    }
    Json doc{{"degree", k},
             {"limit", limit},
             {"prime", found.prime},
             {"rejected", found.rejected},
             {"cycle", Json{{"degree", k}, {"coefficients", std::move(input)}}},
             {"representative", chain_to_json(found.representative, &x)}};
    try {
      doc["guarantee"] = harmonic_primes_to_json(harmonic_primes(x, k, limit, cap_of(cap)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
      doc["guarantee"] = error_to_json(e);
    }
    return dump(doc);
  });
}

hm_status hm_vietoris_rips(const char* csv, const char* radius, int max_dim, char** out) {
  return emit(out, [&] {
    if (max_dim < 1) throw Error(ErrorCode::InvalidArgument, "max_dim must be at least 1");
    const PointCloud cloud = parse_point_cloud_csv(need(csv, "csv"));
    const Rational r = parse_decimal(need(radius, "radius"));
    const SimplicialComplex s = vietoris_rips(cloud, r, static_cast<std::size_t>(max_dim));
    return dump(simplicial_to_json(s, &cloud));
  });
}

hm_status hm_sample(const char* kind, uint64_t seed, char** out_csv) {
  return emit(out_csv, [&] {
    const std::string k = need(kind, "kind");
    if (k == "lemniscate") return point_cloud_to_csv(sample_lemniscate(50, 0.02, seed));
    if (k == "wedge") return point_cloud_to_csv(sample_sphere_with_circles(70, 30, 0.02, seed));
    throw Error(ErrorCode::InvalidArgument, "unknown sample kind '" + k + "' (expected lemniscate or wedge)");
  });
}

hm_status hm_render_svg(const hm_complex* cx, const char* field, const char* chain, const char* other, char** out) {
  return emit(out, [&] {
    const auto& c = need(cx);
    if (!c.loaded.simplicial || !c.loaded.coordinates) {
      throw Error(ErrorCode::InvalidArgument, "rendering needs a simplicial complex with coordinates");
    }
    const FieldSpec f = field_of(field);
    std::optional<Chain> second;
    if (other) second = chain_of(c, f, other);
    return render_svg(*c.loaded.simplicial, *c.loaded.coordinates, chain_of(c, f, chain), second);
  });
}

}  // extern "C"

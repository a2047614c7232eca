#include "harmonica/harmonic.hpp"

#include <algorithm>

#include "harmonica/io.hpp"

namespace harmonica {

namespace {

using dense::Mat;
using dense::Vec;

template <class Ops>
Mat<Ops> integer_map(const Matrix<BigInt>& m, const Ops& ops) {
  return m.map([&](const BigInt& v) { return ops.from_integer(v); });
}

template <class Ops>
Vector to_vector(const Vec<Ops>& v, const Ops& ops) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(ops.to_scalar(x));
  return out;
}

template <class Ops>
std::vector<Vector> to_vectors(const std::vector<Vec<Ops>>& vs, const Ops& ops) {
  std::vector<Vector> out;
  for (const auto& v : vs) out.push_back(to_vector(v, ops));
  return out;
}

template <class Ops>
Vec<Ops> from_vector(const Vector& v, const Ops& ops) {
  Vec<Ops> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(ops.from_scalar(s));
  return out;
}

// The two boundary maps meeting at C_k.
template <class Ops>
struct Degree {
  Mat<Ops> lower;  // d_k
  Mat<Ops> upper;  // d_{k+1}
  std::size_t n;
};

template <class Ops>
Degree<Ops> degree_maps(const ChainComplex& x, std::size_t k, const Ops& ops) {
  x.require_degree(k);
  return {integer_map(x.boundary(k), ops), integer_map(x.boundary(k + 1), ops), x.cell_count(k)};
}

// Basis of a span given by possibly dependent vectors.
template <class Ops>
std::vector<Vec<Ops>> span_basis(std::size_t n, const std::vector<Vec<Ops>>& vs, const Ops& ops) {
  if (vs.empty()) return {};
  return dense::image_basis(Mat<Ops>::from_columns(n, vs), ops);
}

// pi = (I - E R_P) restricted to the non-pivot rows, where the rows of E are
// the reduced row echelon form of d_{k+1}^T and P its pivots.
template <class Ops>
Mat<Ops> projection_matrix(const Degree<Ops>& d, const Ops& ops) {
  auto e = dense::rref(d.upper.transpose(), ops);
  std::vector<bool> is_pivot(d.n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> complement;
  for (std::size_t i = 0; i < d.n; ++i)
    if (!is_pivot[i]) complement.push_back(i);
  Mat<Ops> pi(complement.size(), d.n, ops.zero());
  for (std::size_t t = 0; t < complement.size(); ++t) {
    const std::size_t q = complement[t];
    pi(t, q) = ops.one();
    for (std::size_t j = 0; j < e.pivots.size(); ++j) pi(t, e.pivots[j]) = ops.neg(e.reduced(j, q));
  }
  return pi;
}

template <class Ops>
bool kernel_contained(const Mat<Ops>& big, const Mat<Ops>& small, const Ops& ops) {
  // ker(big) ⊆ ker(small), checked vector by vector.
  for (const auto& v : dense::kernel_basis(big, ops))
    if (!dense::is_zero_vector(dense::apply(small, v, ops), ops)) return false;
  return true;
}

template <class Ops>
HarmonicReport diagnose_with(const ChainComplex& x, std::size_t k, const Ops& ops) {
  const auto d = degree_maps(x, k, ops);
  const std::size_t n = d.n;
  const auto upper_t = d.upper.transpose();
  const auto lower_t = d.lower.transpose();

  const auto cycles = dense::kernel_basis(d.lower, ops);
  const auto cocycles = dense::kernel_basis(upper_t, ops);
  const auto boundaries = dense::image_basis(d.upper, ops);
  const auto harmonic = dense::intersection_basis(n, cycles, cocycles, ops);

  HarmonicDims dims;
  dims.chains = n;
  dims.cycles = cycles.size();
  dims.boundaries = boundaries.size();
  dims.cocycles = cocycles.size();
  dims.coboundaries = dense::rank(lower_t, ops);
  dims.homology = dims.cycles - dims.boundaries;
  dims.harmonic = harmonic.size();

  std::array<bool, 9> s{};

  // 1: existence (Z_k = harmonic + B_k, via the codimension of the
  // representable classes) together with uniqueness by dimension count.
  {
    std::size_t codim = dense::sum_dim(n, cocycles, cycles, ops) - dense::sum_dim(n, cocycles, boundaries, ops);
    s[0] = codim == 0 && dims.harmonic == dims.homology;
  }
  // 2: harmonic chains meet B_k trivially, by rank of the joint span.
  s[1] = dims.harmonic + dims.boundaries == dense::sum_dim(n, harmonic, boundaries, ops);
  // 3: explicit basis of harmonic chains that are boundaries.
  s[2] = dense::intersection_basis(n, boundaries, harmonic, ops).empty();
  // 4: the quotient map sends the harmonic basis to a basis of H_k.
  const auto pi = projection_matrix(d, ops);
  {
    std::vector<Vec<Ops>> images;
    for (const auto& h : harmonic) images.push_back(dense::apply(pi, h, ops));
    s[3] = dense::span_dim(pi.rows(), images, ops) == dims.harmonic && dims.harmonic == dims.homology;
  }
  // 5: explicit B_k ∩ Z^k.
  auto witness = dense::intersection_basis(n, boundaries, cocycles, ops);
  dims.boundary_cocycles = witness.size();
  s[4] = witness.empty();
  // 6: B_k and Z^k together span C_k.
  s[5] = dense::sum_dim(n, boundaries, cocycles, ops) == n;
  // 7: kernels of d^T d and d agree, with d = d_{k+1}.
  const auto gram = dense::multiply(upper_t, d.upper, ops);
  s[6] = kernel_contained(gram, d.upper, ops);
  // 8: im d^T ⊆ im d^T d.
  {
    auto gram_cols = gram.columns();
    std::size_t gram_rank = dense::span_dim(gram.rows(), gram_cols, ops);
    s[7] = dense::span_dim(gram.rows(), dense::concat<Ops>(gram_cols, upper_t.columns()), ops) == gram_rank;
  }
  // 9: Pearl rank condition for pi.
  s[8] = dense::pearl_condition(pi, ops);

  const bool lower_condition = kernel_contained(dense::multiply(lower_t, d.lower, ops), d.lower, ops);
  return HarmonicReport(k, ops.field(), s, lower_condition, dims, to_vectors(witness, ops));
}

template <class Ops>
Vec<Ops> chain_values(const ChainComplex& x, const Chain& z, const Ops& ops) {
  if (z.degree > x.top_degree()) throw Error(ErrorCode::DegreeOutOfRange, "chain degree exceeds top degree");
  if (z.coefficients.size() != x.cell_count(z.degree)) {
    throw Error(ErrorCode::DimensionMismatch, "chain has " + std::to_string(z.coefficients.size()) +
                                                  " coefficients, expected " + std::to_string(x.cell_count(z.degree)));
  }
  for (const auto& c : z.coefficients)
    if (!(c.field() == ops.field())) throw Error(ErrorCode::DomainMismatch, "chain coefficients lie in another field");
  return from_vector(z.coefficients, ops);
}

Chain make_chain(std::size_t degree, Vector v) { return Chain{degree, std::move(v)}; }

}  // namespace

HarmonicReport::HarmonicReport(std::size_t degree, FieldSpec field, std::array<bool, 9> statements,
                               bool lower_kernel_condition, HarmonicDims dims, std::vector<Vector> witness)
    : degree_(degree),
      field_(field),
      statements_(statements),
      lower_kernel_condition_(lower_kernel_condition),
      dims_(dims),
      witness_(std::move(witness)) {
  if (!std::all_of(statements_.begin(), statements_.end(), [&](bool b) { return b == statements_[0]; })) {
    throw Error(ErrorCode::InternalEquivalenceViolation, "harmonicity statements disagree",
                report_to_json(*this).dump());
  }
}

ExactMatrix laplacian(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  return with_ops(field, [&](const auto& ops) {
    const auto d = degree_maps(x, k, ops);
    auto up = dense::multiply(d.upper, d.upper.transpose(), ops);
    auto down = dense::multiply(d.lower.transpose(), d.lower, ops);
    return ExactMatrix::wrap(ops, dense::add(up, down, ops));
  });
}

std::vector<Vector> harmonic_space(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  return with_ops(field, [&](const auto& ops) {
    const auto d = degree_maps(x, k, ops);
    auto cycles = dense::kernel_basis(d.lower, ops);
    auto cocycles = dense::kernel_basis(d.upper.transpose(), ops);
    return to_vectors(dense::intersection_basis(d.n, cycles, cocycles, ops), ops);
  });
}

HarmonicReport diagnose(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  return with_ops(field, [&](const auto& ops) { return diagnose_with(x, k, ops); });
}

bool is_homologically_harmonic(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  return with_ops(field, [&](const auto& ops) {
    // B_k ∩ Z^k = 0 iff the Gram matrix M^T M of a basis M of B_k is
    // nonsingular; M^T M is rank(d) square rather than |X_{k+1}| square.
    const auto d = degree_maps(x, k, ops);
    const auto basis = dense::image_basis(d.upper, ops);
    if (basis.empty()) return true;
    const auto m = Mat<std::decay_t<decltype(ops)>>::from_columns(d.n, basis);
    return dense::rank(dense::multiply(m.transpose(), m, ops), ops) == basis.size();
  });
}

bool is_cohomologically_harmonic(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  x.require_degree(k);
  return diagnose(x.dual(), field, x.top_degree() - k).harmonic();
}

ExactMatrix quotient_projection(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  return with_ops(field, [&](const auto& ops) { return ExactMatrix::wrap(ops, projection_matrix(degree_maps(x, k, ops), ops)); });
}

void require_cycle(const ChainComplex& x, const FieldSpec& field, const Chain& z) {
  with_ops(field, [&](const auto& ops) {
    auto v = chain_values(x, z, ops);
    auto lower = integer_map(x.boundary(z.degree), ops);
    if (!dense::is_zero_vector(dense::apply(lower, v, ops), ops)) {
      throw Error(ErrorCode::NotACycle, "chain is not a cycle: its boundary is nonzero");
    }
  });
}

Chain harmonic_representative(const ChainComplex& x, const FieldSpec& field, const Chain& z) {
  require_cycle(x, field, z);
  // The single-statement test decides; the full report is built only to
  // accompany a refusal.
  if (!is_homologically_harmonic(x, field, z.degree)) {
    auto report = diagnose(x, field, z.degree);
    throw Error(ErrorCode::NotHarmonicComplex,
                "degree " + std::to_string(z.degree) + " is not homologically harmonic over " + field.name(),
                report_to_json(report).dump());
  }
  return with_ops(field, [&](const auto& ops) {
    using O = std::decay_t<decltype(ops)>;
    const auto d = degree_maps(x, z.degree, ops);
    const auto pi = projection_matrix(d, ops);
    const auto pi_t = pi.transpose();
    auto inv = dense::inverse(dense::multiply(pi, pi_t, ops), ops);
    if (!inv) throw Error(ErrorCode::InternalEquivalenceViolation, "pi pi^T singular in a harmonic degree");
    Vec<O> coords = dense::apply(pi, chain_values(x, z, ops), ops);
    Vec<O> h = dense::apply(pi_t, dense::apply(*inv, coords, ops), ops);
    return make_chain(z.degree, to_vector(h, ops));
  });
}

HarSet har_set(const ChainComplex& x, const FieldSpec& field, const Chain& z) {
  require_cycle(x, field, z);
  return with_ops(field, [&](const auto& ops) {
    const auto d = degree_maps(x, z.degree, ops);
    const auto upper_t = d.upper.transpose();
    const auto gram = dense::multiply(upper_t, d.upper, ops);
    const auto zv = chain_values(x, z, ops);
    HarSet out;
    // h = z + d y with d^T h = 0, i.e. d^T d y = -d^T z.
    auto rhs = dense::apply(upper_t, zv, ops);
    for (auto& r : rhs) r = ops.neg(r);
    if (auto y = dense::solve(gram, rhs, ops)) {
      auto h = zv;
      auto dy = dense::apply(d.upper, *y, ops);
      for (std::size_t i = 0; i < h.size(); ++i) h[i] = ops.add(h[i], dy[i]);
      out.representative = make_chain(z.degree, to_vector(h, ops));
    }
    std::decay_t<decltype(dense::kernel_basis(gram, ops))> images;
    for (const auto& v : dense::kernel_basis(gram, ops)) images.push_back(dense::apply(d.upper, v, ops));
    out.torsor_basis = to_vectors(span_basis(d.n, images, ops), ops);
    return out;
  });
}

RepresentableSubspace representable_subspace(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  return with_ops(field, [&](const auto& ops) {
    using O = std::decay_t<decltype(ops)>;
    const auto d = degree_maps(x, k, ops);
    const auto cycles = dense::kernel_basis(d.lower, ops);
    const auto cocycles = dense::kernel_basis(d.upper.transpose(), ops);
    const auto boundaries = dense::image_basis(d.upper, ops);
    const auto co_plus_b = span_basis(d.n, dense::concat<O>(cocycles, boundaries), ops);
    RepresentableSubspace out;
    out.dim_qk = dense::intersection_basis(d.n, cycles, co_plus_b, ops).size() - boundaries.size();
    out.codim = dense::sum_dim(d.n, cocycles, cycles, ops) - co_plus_b.size();
    return out;
  });
}

HodgeDecomposition hodge_decomposition(const ChainComplex& x, const FieldSpec& field, std::size_t k) {
  auto report = diagnose(x, field, k);
  if (!report.harmonic()) {
    throw Error(ErrorCode::NoDecomposition, "degree " + std::to_string(k) + " is not homologically harmonic",
                R"({"failed":"homological"})");
  }
  if (!is_cohomologically_harmonic(x, field, k)) {
    throw Error(ErrorCode::NoDecomposition, "degree " + std::to_string(k) + " is not cohomologically harmonic",
                R"({"failed":"cohomological"})");
  }
  return with_ops(field, [&](const auto& ops) {
    const auto d = degree_maps(x, k, ops);
    const std::size_t n = d.n;
    const auto cycles = dense::kernel_basis(d.lower, ops);
    const auto cocycles = dense::kernel_basis(d.upper.transpose(), ops);
    const auto harmonic = dense::intersection_basis(n, cycles, cocycles, ops);
    const auto boundaries = dense::image_basis(d.upper, ops);
    const auto coboundaries = dense::image_basis(d.lower.transpose(), ops);

    auto fail = [](const char* what) {
      return Error(ErrorCode::InternalEquivalenceViolation, std::string("Hodge decomposition check failed: ") + what);
    };
    auto lap = dense::add(dense::multiply(d.upper, d.upper.transpose(), ops),
                          dense::multiply(d.lower.transpose(), d.lower, ops), ops);
    auto lap_kernel = dense::kernel_basis(lap, ops);
    if (dense::sum_dim(n, lap_kernel, harmonic, ops) != lap_kernel.size()) {
      throw fail("kernel of the Laplacian misses a harmonic chain");
    }
    if (harmonic.size() + boundaries.size() + coboundaries.size() != n) throw fail("dimensions do not sum");
    auto orthogonal = [&](const auto& a, const auto& b) {
      for (const auto& u : a)
        for (const auto& v : b)
          if (!ops.is_zero(dense::dot(u, v, ops))) return false;
      return true;
    };
    if (!orthogonal(harmonic, boundaries) || !orthogonal(harmonic, coboundaries) ||
        !orthogonal(boundaries, coboundaries)) {
      throw fail("summands are not orthogonal");
    }
    return HodgeDecomposition{to_vectors(harmonic, ops), to_vectors(boundaries, ops), to_vectors(coboundaries, ops),
                              lap_kernel.size()};
  });
}

}  // namespace harmonica

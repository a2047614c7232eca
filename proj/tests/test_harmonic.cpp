#include <doctest.h>

#include "harmonica/harmonic.hpp"
#include "harmonica/io.hpp"
#include "oracle.hpp"

using namespace harmonica;

namespace {

const std::vector<std::string> kFixtures = {"pinched-cylinder.json",     "subdivided-cylinder.json", "torus7.json",
                                            "tetrahedron-boundary.json", "rp2-6vertex.json",         "circle3.json",
                                            "disk.json"};

std::vector<FieldSpec> test_fields() {
  return {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5), FieldSpec::prime(7)};
}

long char_of(const FieldSpec& f) { return f.is_rational() ? 0 : static_cast<long>(f.characteristic()); }

// Field elements as rationals: residues become their integer representatives,
// and equalities are then read modulo p.
mpq_class value(const Scalar& s) { return s.field().is_rational() ? s.rational() : mpq_class(s.residue()); }

bool vanishes(const mpq_class& x, long p) {
  if (p == 0) return x == 0;
  if (x.get_den() != 1) return false;
  return mpz_divisible_ui_p(x.get_num_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

// m * v (transpose = false) or m^T * v, evaluated exactly.
std::vector<mpq_class> product(const oracle::ZMat& m, std::size_t rows, std::size_t cols, const Vector& v, bool transpose) {
  std::vector<mpq_class> out(transpose ? cols : rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (transpose) out[j] += m[i][j] * value(v[i]);
      else out[i] += m[i][j] * value(v[j]);
    }
  return out;
}

bool is_cycle(const ChainComplex& x, std::size_t k, const Vector& v, long p) {
  const std::size_t rows = k == 0 ? 0 : x.cell_count(k - 1);
  for (const auto& e : product(oracle::boundary(x, k), rows, x.cell_count(k), v, false))
    if (!vanishes(e, p)) return false;
  return true;
}

bool is_cocycle(const ChainComplex& x, std::size_t k, const Vector& v, long p) {
  for (const auto& e : product(oracle::boundary(x, k + 1), x.cell_count(k), x.cell_count(k + 1), v, true))
    if (!vanishes(e, p)) return false;
  return true;
}

bool is_harmonic_chain(const ChainComplex& x, std::size_t k, const Vector& v, long p) {
  return is_cycle(x, k, v, p) && is_cocycle(x, k, v, p);
}

// Rank of a list of column vectors over Q (p = 0) or F_p.
std::size_t span_rank(std::size_t n, const std::vector<std::vector<mpq_class>>& vectors, long p) {
  auto m = oracle::column_matrix(n, vectors);
  if (p == 0) return oracle::rank(m);
  oracle::PMat pm;
  for (const auto& row : m) {
    std::vector<long> r;
    for (const auto& e : row) r.push_back(oracle::mod(mpz_class(e.get_num() % p).get_si(), p));
    pm.push_back(r);
  }
  return oracle::rank(pm, p);
}

std::vector<mpq_class> values(const Vector& v) {
  std::vector<mpq_class> out;
  for (const auto& s : v) out.push_back(value(s));
  return out;
}

std::vector<std::vector<mpq_class>> values(const std::vector<Vector>& vs) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& v : vs) out.push_back(values(v));
  return out;
}

// Columns of d_{k+1}, the generators of B_k.
std::vector<std::vector<mpq_class>> boundary_columns(const ChainComplex& x, std::size_t k) {
  const auto d = oracle::boundary(x, k + 1);
  std::vector<std::vector<mpq_class>> out;
  for (std::size_t j = 0; j < x.cell_count(k + 1); ++j) {
    std::vector<mpq_class> c;
    for (std::size_t i = 0; i < x.cell_count(k); ++i) c.push_back(d[i][j]);
    out.push_back(c);
  }
  return out;
}

bool in_span(std::size_t n, std::vector<std::vector<mpq_class>> basis, const std::vector<mpq_class>& v, long p) {
  const std::size_t r = span_rank(n, basis, p);
  basis.push_back(v);
  return span_rank(n, basis, p) == r;
}

std::size_t oracle_rank(const oracle::ZMat& m, long p) {
  return p == 0 ? oracle::rank(m) : oracle::rank(oracle::residues(m, p), p);
}

// dim(B^k ∩ Z_k) = rank d_k - rank(d_k d_k^T).
std::size_t cogram_defect(const ChainComplex& x, std::size_t k, long p) {
  if (k == 0 || x.cell_count(k) == 0 || x.cell_count(k - 1) == 0) return 0;
  const auto d = oracle::boundary(x, k);
  const std::size_t rows = x.cell_count(k - 1), n = x.cell_count(k);
  oracle::ZMat g(rows, std::vector<mpz_class>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t t = 0; t < n; ++t) g[i][j] += d[i][t] * d[j][t];
  return oracle_rank(d, p) - oracle_rank(g, p);
}

// Rank of L_k = d_{k+1} d_{k+1}^T + d_k^T d_k, computed over Z and reduced.
std::size_t laplacian_rank(const ChainComplex& x, std::size_t k, long p) {
  const std::size_t n = x.cell_count(k);
  oracle::ZMat l(n, std::vector<mpz_class>(n, 0));
  const auto up = oracle::boundary(x, k + 1), down = oracle::boundary(x, k);
  const std::size_t m = x.cell_count(k + 1), below = k == 0 ? 0 : x.cell_count(k - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < m; ++t) l[i][j] += up[i][t] * up[j][t];
      for (std::size_t t = 0; t < below; ++t) l[i][j] += down[t][i] * down[t][j];
    }
  return n == 0 ? 0 : oracle_rank(l, p);
}

// rank over F of d^T d, with d = d_{k+1}.
std::size_t gram_rank(const ChainComplex& x, std::size_t k, long p) {
  const auto d = oracle::boundary(x, k + 1);
  const std::size_t n = x.cell_count(k), m = x.cell_count(k + 1);
  if (m == 0 || n == 0) return 0;
  const auto g = oracle::multiply(oracle::transpose(oracle::rationals(d)), oracle::rationals(d), n, m);
  oracle::ZMat gz;
  for (const auto& row : g) {
    std::vector<mpz_class> r;
    for (const auto& e : row) r.push_back(e.get_num());
    gz.push_back(r);
  }
  return oracle_rank(gz, p);
}

Vector vec(const FieldSpec& f, const std::vector<long>& xs) {
  Vector v;
  for (long x : xs) v.emplace_back(f, x);
  return v;
}

Vector add(const Vector& a, const Vector& b) {
  Vector out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

Vector scale(const Scalar& s, const Vector& a) {
  Vector out;
  for (const auto& x : a) out.push_back(s * x);
  return out;
}

Vector sub(const Vector& a, const Vector& b) { return add(a, scale(-Scalar::one(a.empty() ? FieldSpec::rationals() : a[0].field()), b)); }

Chain chain(const FieldSpec& f, std::size_t k, const std::vector<long>& xs) { return Chain::from_integers(f, k, xs); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalEquivalenceViolation;
}

bool all_of(const std::array<bool, 9>& s, bool v) {
  for (bool b : s)
    if (b != v) return false;
  return true;
}

// Nine-way agreement plus independent checks of the report's dimensions.
void check_report(const ChainComplex& x, const FieldSpec& f, std::size_t k) {
  const long p = char_of(f);
  const HarmonicReport r = diagnose(x, f, k);  // throws on disagreement
  const auto& s = r.statements();
  REQUIRE((all_of(s, true) || all_of(s, false)));
  const std::size_t n = x.cell_count(k);
  const std::size_t rk = k == 0 ? 0 : oracle_rank(oracle::boundary(x, k), p);
  const std::size_t rk1 = oracle_rank(oracle::boundary(x, k + 1), p);
  const auto& d = r.dims();
  REQUIRE(d.chains == n);
  REQUIRE(d.cycles == n - rk);
  REQUIRE(d.boundaries == rk1);
  REQUIRE(d.cocycles == n - rk1);
  REQUIRE(d.coboundaries == rk);
  REQUIRE(d.homology == n - rk - rk1);
  // dim(B_k ∩ Z^k) = rank d - rank d^T d.
  const std::size_t bz = rk1 - gram_rank(x, k, p);
  REQUIRE(d.boundary_cocycles == bz);
  REQUIRE(r.harmonic() == (bz == 0));
  REQUIRE(r.witness().size() == bz);
  for (const auto& w : r.witness()) {
    REQUIRE(is_cocycle(x, k, w, p));
    REQUIRE(in_span(n, boundary_columns(x, k), values(w), p));
  }
  REQUIRE(is_homologically_harmonic(x, f, k) == r.harmonic());
  // Harmonic space checked directly.
  const auto h = harmonic_space(x, f, k);
  REQUIRE(h.size() == d.harmonic);
  for (const auto& v : h) REQUIRE(is_harmonic_chain(x, k, v, p));
  REQUIRE(span_rank(n, values(h), p) == h.size());
}

}  // namespace

TEST_SUITE("harmonic") {
  TEST_CASE("Laplacian examples") {
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    const auto f3 = FieldSpec::prime(3);
    CHECK(laplacian(pinched, f3, 1) == ExactMatrix::from_rows(f3, {{1, 1}, {1, 1}}));

    const auto sub = oracle::load("subdivided-cylinder.json").complex;
    const auto f2 = FieldSpec::prime(2);
    const auto l = laplacian(sub, f2, 1);
    const Vector e = vec(f2, {0, 0, 1, 0, 0});
    for (const auto& s : harmonica::apply(l, e)) CHECK(s.is_zero());
    CHECK_FALSE(is_cycle(sub, 1, e, 2));

    const ChainComplex no_edges(std::vector<Matrix<BigInt>>{Matrix<BigInt>(1, 0)});
    const auto empty = laplacian(no_edges, FieldSpec::rationals(), 1);
    CHECK(empty.rows() == 0);
    CHECK(empty.cols() == 0);
  }

  TEST_CASE("harmonic space examples") {
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    const auto f2 = FieldSpec::prime(2), f3 = FieldSpec::prime(3);
    const auto h2 = harmonic_space(pinched, f2, 1);
    REQUIRE(h2.size() == 1);
    CHECK(h2[0] == vec(f2, {1, 1}));
    const auto h3 = harmonic_space(pinched, f3, 1);
    REQUIRE(h3.size() == 1);
    CHECK(h3[0][0] + h3[0][1] == Scalar::zero(f3));
    CHECK_FALSE(h3[0][0].is_zero());
    CHECK(harmonic_space(oracle::load("disk.json").complex, FieldSpec::rationals(), 1).empty());
  }

  TEST_CASE("diagnose examples") {
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    CHECK(all_of(diagnose(pinched, FieldSpec::prime(2), 1).statements(), false));
    CHECK(all_of(diagnose(pinched, FieldSpec::prime(3), 1).statements(), true));
    const auto torus = oracle::load("torus7.json").complex;
    CHECK(all_of(diagnose(torus, FieldSpec::prime(2), 1).statements(), true));
    const auto witness = diagnose(pinched, FieldSpec::prime(2), 1).witness();
    REQUIRE(witness.size() == 1);
    CHECK(witness[0] == vec(FieldSpec::prime(2), {1, 1}));
  }

  TEST_CASE("cohomological harmonicity examples") {
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    CHECK(is_cohomologically_harmonic(pinched, FieldSpec::prime(3), 1));
    // d_1 = 0 on the pinched cylinder, so B^1 = 0 over every field.
    CHECK(is_cohomologically_harmonic(pinched, FieldSpec::prime(2), 1));
    for (const auto& name : kFixtures) {
      const auto x = oracle::load(name).complex;
      for (long p : {2L, 3L, 5L, 7L})
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          CAPTURE(name);
          CAPTURE(p);
          CAPTURE(k);
          CHECK(is_cohomologically_harmonic(x, FieldSpec::prime(static_cast<std::uint64_t>(p)), k) ==
                (cogram_defect(x, k, p) == 0));
        }
    }
    for (const auto& name : kFixtures) {
      const auto x = oracle::load(name).complex;
      for (std::size_t k = 0; k <= x.top_degree(); ++k) CHECK(is_cohomologically_harmonic(x, FieldSpec::rationals(), k));
    }
  }

  TEST_CASE("harmonic representative examples") {
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    const auto f3 = FieldSpec::prime(3), f2 = FieldSpec::prime(2), q = FieldSpec::rationals();
    CHECK(harmonic_representative(pinched, f3, chain(f3, 1, {1, 0})).coefficients == vec(f3, {2, 1}));
    const auto rq = harmonic_representative(pinched, q, chain(q, 1, {1, 0}));
    CHECK(rq.coefficients == Vector{Scalar(q, Rational(1, 2)), Scalar(q, Rational(-1, 2))});

    const auto circle = oracle::load("circle3.json").complex;
    const auto z = chain(f2, 1, {1, 1, 1});
    CHECK(harmonic_representative(circle, f2, z) == z);

    try {
      harmonic_representative(pinched, f2, chain(f2, 1, {1, 0}));
      FAIL("expected NotHarmonicComplex");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotHarmonicComplex);
      const auto detail = Json::parse(e.detail());
      CHECK(detail["statements"]["A1"] == false);
    }
  }

  TEST_CASE("representative input validation") {
    const auto disk = oracle::load("disk.json").complex;
    const auto q = FieldSpec::rationals();
    CHECK(code_of([&] { harmonic_representative(disk, q, chain(q, 1, {1, 0, 0})); }) == ErrorCode::NotACycle);
    CHECK(code_of([&] { harmonic_representative(disk, q, chain(q, 1, {1, 0})); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { harmonic_representative(disk, q, chain(q, 5, {})); }) == ErrorCode::DegreeOutOfRange);
    CHECK(code_of([&] { diagnose(disk, q, 3); }) == ErrorCode::DegreeOutOfRange);
    const auto f3 = FieldSpec::prime(3);
    CHECK(code_of([&] { harmonic_representative(disk, q, chain(f3, 1, {0, 0, 0})); }) == ErrorCode::DomainMismatch);
  }

  TEST_CASE("harmonic set examples") {
    const auto f2 = FieldSpec::prime(2);
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    const auto zero = har_set(pinched, f2, chain(f2, 1, {0, 0}));
    REQUIRE(zero.representative);
    CHECK(zero.representative->is_zero());
    REQUIRE(zero.torsor_basis.size() == 1);
    CHECK(zero.torsor_basis[0] == vec(f2, {1, 1}));
    CHECK_FALSE(har_set(pinched, f2, chain(f2, 1, {1, 0})).representative);

    // Edges of the subdivided cylinder are ordered a, b, e, a', b'.
    const auto sub = oracle::load("subdivided-cylinder.json").complex;
    const auto h = har_set(sub, f2, chain(f2, 1, {0, 1, 0, 0, 1}));
    REQUIRE(h.representative);
    REQUIRE(h.torsor_basis.size() == 1);
    std::set<std::vector<std::uint64_t>> members;
    for (const auto& v : {h.representative->coefficients, add(h.representative->coefficients, h.torsor_basis[0])}) {
      std::vector<std::uint64_t> r;
      for (const auto& s : v) r.push_back(s.residue());
      members.insert(r);
    }
    const std::set<std::vector<std::uint64_t>> expected = {{1, 0, 1, 0, 1}, {0, 1, 1, 1, 0}};
    CHECK(members == expected);
  }

  TEST_CASE("representable subspace examples") {
    const auto f2 = FieldSpec::prime(2);
    const auto pinched = representable_subspace(oracle::load("pinched-cylinder.json").complex, f2, 1);
    CHECK(pinched.dim_qk == 0);
    CHECK(pinched.codim == 1);
    const auto sub = representable_subspace(oracle::load("subdivided-cylinder.json").complex, f2, 1);
    CHECK(sub.codim == 0);
    CHECK(sub.dim_qk == 1);
    for (const auto& name : kFixtures) {
      const auto x = oracle::load(name).complex;
      for (std::size_t k = 0; k <= x.top_degree(); ++k) CHECK(representable_subspace(x, FieldSpec::rationals(), k).codim == 0);
    }
  }

  TEST_CASE("Hodge decomposition examples") {
    const auto pinched = oracle::load("pinched-cylinder.json").complex;
    const auto f3 = FieldSpec::prime(3), f2 = FieldSpec::prime(2);
    const auto h = hodge_decomposition(pinched, f3, 1);
    REQUIRE(h.harmonic_basis.size() == 1);
    REQUIRE(h.boundary_basis.size() == 1);
    CHECK(h.coboundary_basis.empty());
    CHECK(h.harmonic_basis[0][0] + h.harmonic_basis[0][1] == Scalar::zero(f3));
    CHECK(h.boundary_basis[0][0] == h.boundary_basis[0][1]);
    try {
      hodge_decomposition(pinched, f2, 1);
      FAIL("expected NoDecomposition");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoDecomposition);
      CHECK(Json::parse(e.detail())["failed"] == "homological");
    }
    const auto disk = hodge_decomposition(oracle::load("disk.json").complex, FieldSpec::rationals(), 1);
    CHECK(disk.harmonic_basis.empty());
    CHECK(disk.boundary_basis.size() + disk.coboundary_basis.size() == 3);
  }

  TEST_CASE("nine statements agree on fixtures") {
    for (const auto& name : kFixtures) {
      const auto x = oracle::load(name).complex;
      for (const auto& f : test_fields())
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          CAPTURE(name);
          CAPTURE(f.name());
          CAPTURE(k);
          check_report(x, f, k);
        }
    }
  }

  TEST_CASE("nine statements agree on random Vietoris-Rips complexes") {
    std::size_t nonharmonic = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto x = oracle::random_vr(seed).chain_complex();
      for (const auto& f : test_fields())
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          CAPTURE(seed);
          CAPTURE(f.name());
          CAPTURE(k);
          check_report(x, f, k);
          nonharmonic += !diagnose(x, f, k).harmonic();
        }
    }
    MESSAGE("non-harmonic (complex, field, degree) cases: " << nonharmonic);
  }

  TEST_CASE("every degree is harmonic over the rationals") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
      const auto x = oracle::random_vr(seed).chain_complex();
      for (std::size_t k = 0; k <= x.top_degree(); ++k) REQUIRE(all_of(diagnose(x, FieldSpec::rationals(), k).statements(), true));
    }
  }

  TEST_CASE("representatives are linear, idempotent and homologous") {
    oracle::Rng rng(41);
    std::size_t checked = 0;
    auto run = [&](const ChainComplex& x) {
      for (const auto& f : test_fields()) {
        const long p = char_of(f);
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          if (!diagnose(x, f, k).harmonic()) continue;
          const auto cycles = kernel_basis(instantiate(x, f).boundary(k));
          if (cycles.empty()) continue;
          auto random_cycle = [&] {
            Vector v(x.cell_count(k), Scalar::zero(f));
            for (const auto& c : cycles) v = add(v, scale(Scalar(f, rng.uniform(-3, 3)), c));
            return v;
          };
          for (int trial = 0; trial < 3; ++trial) {
            const Vector z1 = random_cycle(), z2 = random_cycle();
            const Scalar a(f, rng.uniform(-4, 4)), b(f, rng.uniform(-4, 4));
            const auto h1 = harmonic_representative(x, f, Chain{k, z1}).coefficients;
            const auto h2 = harmonic_representative(x, f, Chain{k, z2}).coefficients;
            const auto h12 = harmonic_representative(x, f, Chain{k, add(scale(a, z1), scale(b, z2))}).coefficients;
            REQUIRE(h12 == add(scale(a, h1), scale(b, h2)));
            REQUIRE(is_harmonic_chain(x, k, h1, p));
            REQUIRE(harmonic_representative(x, f, Chain{k, h1}).coefficients == h1);
            REQUIRE(in_span(x.cell_count(k), boundary_columns(x, k), values(sub(h1, z1)), p));
            ++checked;
          }
        }
      }
    };
    for (const auto& name : kFixtures) run(oracle::load(name).complex);
    for (std::uint64_t seed = 0; seed < 25; ++seed) run(oracle::random_vr(seed).chain_complex());
    CHECK(checked > 100);
  }

  TEST_CASE("harmonic representatives of a class form a torsor") {
    oracle::Rng rng(42);
    std::size_t checked = 0;
    auto run = [&](const ChainComplex& x) {
      for (const auto& f : test_fields()) {
        if (f.is_rational()) continue;
        const long p = char_of(f);
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          const auto fx = instantiate(x, f);
          const auto cycles = kernel_basis(fx.boundary(k));
          for (const auto& z : cycles) {
            const auto hs = har_set(x, f, Chain{k, z});
            const std::size_t n = x.cell_count(k);
            for (const auto& t : hs.torsor_basis) {
              REQUIRE(is_harmonic_chain(x, k, t, p));
              REQUIRE(in_span(n, boundary_columns(x, k), values(t), p));
            }
            if (!hs.representative) continue;
            const auto h = hs.representative->coefficients;
            REQUIRE(is_harmonic_chain(x, k, h, p));
            REQUIRE(in_span(n, boundary_columns(x, k), values(sub(h, z)), p));
            for (const auto& t : hs.torsor_basis) REQUIRE(is_harmonic_chain(x, k, add(h, t), p));
            // Move z within its class; the new representative differs by a torsor element.
            Vector shifted = z;
            if (x.cell_count(k + 1) > 0) {
              Vector c(x.cell_count(k + 1), Scalar::zero(f));
              for (auto& s : c) s = Scalar(f, rng.uniform(-2, 2));
              shifted = add(z, harmonica::apply(fx.boundary(k + 1), c));
            }
            const auto hs2 = har_set(x, f, Chain{k, shifted});
            REQUIRE(hs2.representative);
            const auto diff = sub(hs2.representative->coefficients, h);
            REQUIRE(in_span(n, values(hs.torsor_basis), values(diff), p));
            REQUIRE(hs2.torsor_basis.size() == hs.torsor_basis.size());
            ++checked;
          }
        }
      }
    };
    for (const auto& name : kFixtures) run(oracle::load(name).complex);
    for (std::uint64_t seed = 0; seed < 25; ++seed) run(oracle::random_vr(seed).chain_complex());
    CHECK(checked > 50);
  }

  TEST_CASE("representable classes and their codimension add up to homology") {
    auto run = [&](const ChainComplex& x) {
      for (const auto& f : test_fields())
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          const auto q = representable_subspace(x, f, k);
          const auto r = diagnose(x, f, k);
          REQUIRE(q.dim_qk + q.codim == r.dims().homology);
          if (r.harmonic()) REQUIRE(q.codim == 0);
        }
    };
    for (const auto& name : kFixtures) run(oracle::load(name).complex);
    for (std::uint64_t seed = 0; seed < 25; ++seed) run(oracle::random_vr(seed).chain_complex());
  }

  TEST_CASE("Hodge decomposition exists exactly when both harmonicity conditions hold") {
    std::size_t built = 0, refused = 0;
    auto run = [&](const ChainComplex& x) {
      for (const auto& f : test_fields()) {
        const long p = char_of(f);
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          const bool hom = diagnose(x, f, k).harmonic();
          const bool coh = is_cohomologically_harmonic(x, f, k);
          std::optional<HodgeDecomposition> h;
          try {
            h = hodge_decomposition(x, f, k);
          } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::NoDecomposition);
          }
          REQUIRE(h.has_value() == (hom && coh));
          if (!h) {
            ++refused;
            continue;
          }
          ++built;
          const std::size_t n = x.cell_count(k);
          const auto& parts = *h;
          REQUIRE(parts.harmonic_basis.size() + parts.boundary_basis.size() + parts.coboundary_basis.size() == n);
          std::vector<std::vector<mpq_class>> all = values(parts.harmonic_basis);
          for (const auto& v : values(parts.boundary_basis)) all.push_back(v);
          for (const auto& v : values(parts.coboundary_basis)) all.push_back(v);
          REQUIRE(span_rank(n, all, p) == n);
          auto orthogonal = [&](const std::vector<Vector>& a, const std::vector<Vector>& b) {
            for (const auto& u : a)
              for (const auto& v : b) {
                mpq_class s = 0;
                for (std::size_t i = 0; i < n; ++i) s += value(u[i]) * value(v[i]);
                if (!vanishes(s, p)) return false;
              }
            return true;
          };
          REQUIRE(orthogonal(parts.harmonic_basis, parts.boundary_basis));
          REQUIRE(orthogonal(parts.harmonic_basis, parts.coboundary_basis));
          REQUIRE(orthogonal(parts.boundary_basis, parts.coboundary_basis));
          // ker L_k contains Z_k ∩ Z^k; equality is forced once B^{k+1} ∩ Z_{k+1} = 0
          // and B_{k-1} ∩ Z^{k-1} = 0, and can fail otherwise.
          const auto lap = laplacian(x, f, k);
          const std::size_t kernel = n - laplacian_rank(x, k, p);
          REQUIRE(parts.laplacian_kernel_dim == kernel);
          REQUIRE(kernel >= parts.harmonic_basis.size());
          REQUIRE(harmonic_space(x, f, k).size() == parts.harmonic_basis.size());
          const bool upper_clean = k == x.top_degree() || cogram_defect(x, k + 1, p) == 0;
          const bool lower_clean = k == 0 || x.cell_count(k) == 0 || oracle_rank(oracle::boundary(x, k), p) == gram_rank(x, k - 1, p);
          if (upper_clean && lower_clean) REQUIRE(parts.laplacian_kernel_is_harmonic());
          for (const auto& v : parts.harmonic_basis) {
            REQUIRE(is_harmonic_chain(x, k, v, p));
            for (const auto& s : harmonica::apply(lap, v)) REQUIRE(s.is_zero());
          }
          for (const auto& v : parts.boundary_basis) REQUIRE(in_span(n, boundary_columns(x, k), values(v), p));
        }
      }
    };
    for (const auto& name : kFixtures) run(oracle::load(name).complex);
    for (std::uint64_t seed = 0; seed < 40; ++seed) run(oracle::random_vr(seed).chain_complex());
    CHECK(built > 0);
    CHECK(refused > 0);
  }

  TEST_CASE("the Laplacian kernel can exceed the harmonic space") {
    // Filled triangle over F3, degree 2: L_2 = d_2^T d_2 = [3] = 0, yet Z_2 = 0.
    const auto x = SimplicialComplex::from_facets({{0, 1, 2}}).chain_complex();
    const auto f3 = FieldSpec::prime(3);
    CHECK(diagnose(x, f3, 2).harmonic());
    CHECK(is_cohomologically_harmonic(x, f3, 2));
    const auto h = hodge_decomposition(x, f3, 2);
    CHECK(h.harmonic_basis.empty());
    CHECK(h.boundary_basis.empty());
    CHECK(h.coboundary_basis.size() == 1);
    CHECK(h.laplacian_kernel_dim == 1);
    CHECK_FALSE(h.laplacian_kernel_is_harmonic());
    CHECK(laplacian_rank(x, 2, 3) == 0);
    const auto q = hodge_decomposition(x, FieldSpec::rationals(), 2);
    CHECK(q.laplacian_kernel_is_harmonic());
  }

  TEST_CASE("the quotient projection is onto and kills boundaries") {
    for (const auto& name : kFixtures) {
      const auto x = oracle::load(name).complex;
      for (const auto& f : test_fields())
        for (std::size_t k = 0; k <= x.top_degree(); ++k) {
          const auto pi = quotient_projection(x, f, k);
          const auto d = instantiate(x, f).boundary(k + 1);
          REQUIRE(pi.cols() == x.cell_count(k));
          REQUIRE(pi.rows() == x.cell_count(k) - rank(d));
          REQUIRE(rank(pi) == pi.rows());
          if (d.cols() > 0 && pi.rows() > 0) {
            const auto zero = pi * d;
            for (std::size_t i = 0; i < zero.rows(); ++i)
              for (std::size_t j = 0; j < zero.cols(); ++j) REQUIRE(zero.at(i, j).is_zero());
          }
        }
    }
  }
}

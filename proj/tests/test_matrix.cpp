#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "harmonica/matrix.hpp"
#include "oracle.hpp"

using namespace harmonica;

namespace {

ExactMatrix over_fp(const oracle::PMat& m, std::size_t rows, std::size_t cols, long p) {
  Matrix<std::uint64_t> r(rows, cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r(i, j) = static_cast<std::uint64_t>(oracle::mod(m[i][j], p));
  return ExactMatrix(static_cast<std::uint64_t>(p), r);
}

Matrix<BigInt> to_matrix(const oracle::ZMat& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  Matrix<BigInt> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m[i][j];
  return out;
}

bool divides(const BigInt& a, const BigInt& b) { return b % a == 0; }

}  // namespace

TEST_SUITE("matrices") {
  TEST_CASE("rank, kernel and solve examples") {
    const auto f2 = FieldSpec::prime(2);
    CHECK(rank(identity(f2, 2)) == 2);

    const auto row = ExactMatrix::from_rows(f2, {{1, 1}});
    const auto ker = kernel_basis(row);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0].residue() == 1);
    CHECK(ker[0][1].residue() == 1);

    const auto q = FieldSpec::rationals();
    const auto a = ExactMatrix::from_rows(q, {{1, 1}});
    const auto x = solve(a, {Scalar(q, 1L)});
    REQUIRE(x);
    CHECK((*x)[0] + (*x)[1] == Scalar::one(q));

    const auto inconsistent = solve(ExactMatrix::from_rows(q, {{1, 1}, {2, 2}}), {Scalar(q, 1L), Scalar(q, 1L)});
    CHECK_FALSE(inconsistent);
    CHECK_THROWS_AS(solve(a, {Scalar(f2, 1L)}), Error);
  }

  TEST_CASE("kernel of [1 1] over F2 matches exhaustive enumeration") {
    const auto f2 = FieldSpec::prime(2);
    const auto row = ExactMatrix::from_rows(f2, {{1, 1}});
    std::vector<std::pair<long, long>> zeros;
    for (long u = 0; u < 2; ++u)
      for (long v = 0; v < 2; ++v)
        if ((u + v) % 2 == 0 && (u || v)) zeros.emplace_back(u, v);
    const auto ker = kernel_basis(row);
    REQUIRE(ker.size() == zeros.size());
    CHECK(static_cast<long>(ker[0][0].residue()) == zeros[0].first);
    CHECK(static_cast<long>(ker[0][1].residue()) == zeros[0].second);
  }

  TEST_CASE("zero-sized matrices are legal") {
    const auto q = FieldSpec::rationals();
    const auto empty = ExactMatrix::zeros(q, 3, 0);
    CHECK(rank(empty) == 0);
    CHECK(kernel_basis(empty).empty());
    CHECK(image_basis(empty).empty());
    CHECK(kernel_basis(ExactMatrix::zeros(q, 0, 2)).size() == 2);
    const auto pinv = pseudoinverse(empty);
    REQUIRE(pinv);
    CHECK(pinv->rows() == 0);
    CHECK(pinv->cols() == 3);
  }

  TEST_CASE("rank, kernel and image agree with the reference elimination") {
    oracle::Rng rng(21);
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t rows = rng.uniform(1, 6), cols = rng.uniform(1, 6);
      auto z = oracle::random_integer_matrix(rng, rows, cols, -3, 3);
      // Force some rank deficiency half the time.
      if (rows > 1 && rng.coin()) z[rows - 1] = z[0];
      const auto zm = ExactMatrix(to_matrix(z));
      for (long p : {0L, 2L, 3L, 5L}) {
        CAPTURE(p);
        const FieldSpec f = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
        const auto a = zm.over(f);
        const std::size_t expected = p == 0 ? oracle::rank(z) : oracle::rank(oracle::residues(z, p), p);
        REQUIRE(rank(a) == expected);
        const auto ker = kernel_basis(a);
        REQUIRE(ker.size() == cols - expected);
        for (const auto& v : ker) {
          const auto av = harmonica::apply(a, v);
          REQUIRE(std::all_of(av.begin(), av.end(), [](const Scalar& s) { return s.is_zero(); }));
        }
        const auto img = image_basis(a);
        REQUIRE(img.size() == expected);
        // Each image vector lies in the column space: appending it keeps the rank.
        for (const auto& v : img) {
          if (p == 0) {
            oracle::QMat aug = oracle::rational_entries(a);
            for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(v[i].rational());
            REQUIRE(oracle::rank(aug) == expected);
          } else {
            oracle::PMat aug = oracle::residue_entries(a);
            for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(static_cast<long>(v[i].residue()));
            REQUIRE(oracle::rank(aug, p) == expected);
          }
        }
        // solve on a consistent right-hand side.
        Vector x0;
        for (std::size_t j = 0; j < cols; ++j) x0.emplace_back(f, rng.uniform(-3, 3));
        const auto b = harmonica::apply(a, x0);
        const auto x = solve(a, b);
        REQUIRE(x);
        REQUIRE(harmonica::apply(a, *x) == b);
      }
    }
  }

  TEST_CASE("Smith normal form examples") {
    const auto id = smith_normal_form(ExactMatrix::integers({{1, 0}, {0, 1}}));
    CHECK(id.D == to_matrix({{1, 0}, {0, 1}}));
    const auto d23 = smith_normal_form(ExactMatrix::integers({{2, 0}, {0, 3}}));
    CHECK(d23.D == to_matrix({{1, 0}, {0, 6}}));
    const auto r1 = smith_normal_form(ExactMatrix::integers({{2, 4}, {4, 8}}));
    CHECK(r1.D == to_matrix({{2, 0}, {0, 0}}));
    CHECK(r1.invariants() == std::vector<BigInt>{2});
    CHECK_THROWS_AS(smith_normal_form(ExactMatrix::from_rows(FieldSpec::rationals(), {{1}})), Error);
  }

  TEST_CASE("Smith normal form properties on random integer matrices") {
    oracle::Rng rng(22);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t rows = rng.uniform(1, 4), cols = rng.uniform(1, 4);
      const auto z = oracle::random_integer_matrix(rng, rows, cols, -5, 5);
      const auto a = to_matrix(z);
      const auto snf = smith_normal_form(a);
      CAPTURE(trial);
      // S A T = D.
      const auto sat = oracle::multiply(oracle::multiply(oracle::rationals(oracle::integers(snf.S)), oracle::rationals(z), rows, cols),
                                        oracle::rationals(oracle::integers(snf.T)), cols, cols);
      REQUIRE(sat == oracle::rationals(oracle::integers(snf.D)));
      // Unimodular transforms.
      REQUIRE(abs(oracle::det_expansion(oracle::integers(snf.S))) == 1);
      REQUIRE(abs(oracle::det_expansion(oracle::integers(snf.T))) == 1);
      // Diagonal shape, nonnegative, nonzero first, divisibility chain.
      const auto inv = snf.invariants();
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (i != j) REQUIRE(snf.D(i, j) == 0);
      bool seen_zero = false;
      for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
        REQUIRE(snf.D(i, i) >= 0);
        if (snf.D(i, i) == 0) seen_zero = true;
        else REQUIRE_FALSE(seen_zero);
      }
      for (std::size_t i = 0; i + 1 < inv.size(); ++i) REQUIRE(divides(inv[i], inv[i + 1]));
      // Determinantal divisors give the same invariants.
      REQUIRE(inv == oracle::invariant_factors(z));
      REQUIRE(smith_invariants(a) == inv);
      // Row and column permutations leave the diagonal unchanged.
      std::vector<std::size_t> rp(rows), cp(cols);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng.engine);
      std::shuffle(cp.begin(), cp.end(), rng.engine);
      REQUIRE(smith_normal_form(a.select_rows(rp).select_cols(cp)).invariants() == inv);
      REQUIRE(integer_rank(a) == oracle::rank(z));
      if (rows == cols) REQUIRE(integer_determinant(a) == oracle::det_expansion(z));
    }
  }

  TEST_CASE("Smith invariants survive 64-bit overflow") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      auto z = oracle::random_integer_matrix(rng, 3, 3, -5, 5);
      for (auto& row : z)
        for (auto& v : row) v *= mpz_class("1000000000007");
      z[2][2] += 1;
      const auto a = to_matrix(z);
      REQUIRE(smith_invariants(a) == oracle::invariant_factors(z));
      REQUIRE(smith_normal_form(a).invariants() == oracle::invariant_factors(z));
      REQUIRE(integer_determinant(a) == oracle::det_expansion(z));
      REQUIRE(integer_rank(a) == oracle::rank(z));
    }
  }

  TEST_CASE("pseudoinverse examples") {
    const auto q = FieldSpec::rationals();
    const auto id = pseudoinverse(identity(q, 3));
    REQUIRE(id);
    CHECK(*id == identity(q, 3));

    const auto pq = pseudoinverse(ExactMatrix::from_rows(q, {{1, 1}}));
    REQUIRE(pq);
    CHECK(*pq == ExactMatrix::from_rows(q, {{Rational(1, 2)}, {Rational(1, 2)}}));

    CHECK_FALSE(pseudoinverse(ExactMatrix::from_rows(FieldSpec::prime(2), {{1, 1}})));
    CHECK_FALSE(pearl_condition(ExactMatrix::from_rows(FieldSpec::prime(2), {{1, 1}})));

    const auto f3 = FieldSpec::prime(3);
    const auto p3 = pseudoinverse(ExactMatrix::from_rows(f3, {{1, 1}}));
    REQUIRE(p3);
    CHECK(*p3 == ExactMatrix::from_rows(f3, {{2}, {2}}));
  }

  TEST_CASE("Penrose conditions hold on random matrices") {
    oracle::Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t rows = rng.uniform(1, 5), cols = rng.uniform(1, 5);
      const auto z = oracle::random_integer_matrix(rng, rows, cols, -2, 2);
      for (long p : {0L, 2L, 3L, 5L}) {
        const FieldSpec f = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
        const auto a = ExactMatrix(to_matrix(z)).over(f);
        const auto b = pseudoinverse(a);
        REQUIRE(b.has_value() == pearl_condition(a));
        if (p == 0) REQUIRE(b);  // always exists in characteristic 0
        if (!b) continue;
        REQUIRE(satisfies_penrose(a, *b));
        if (p == 0) {
          auto ab = oracle::multiply(oracle::rational_entries(a), oracle::rational_entries(*b), cols, rows);
          REQUIRE(oracle::multiply(ab, oracle::rational_entries(a), rows, cols) == oracle::rational_entries(a));
          REQUIRE(oracle::transpose(ab) == ab);
        } else {
          REQUIRE(oracle::penrose(oracle::residue_entries(a), oracle::residue_entries(*b), rows, cols, p));
        }
      }
    }
  }

  TEST_CASE("pseudoinverse is the unique Penrose solution up to 2x2 over F2 and F3") {
    for (long p : {2L, 3L}) {
      for (std::size_t rows = 1; rows <= 2; ++rows) {
        for (std::size_t cols = 1; cols <= 2; ++cols) {
          oracle::all_matrices(rows, cols, p, [&](const oracle::PMat& a) {
            std::vector<oracle::PMat> solutions;
            oracle::all_matrices(cols, rows, p, [&](const oracle::PMat& b) {
              if (oracle::penrose(a, b, rows, cols, p)) solutions.push_back(b);
            });
            REQUIRE(solutions.size() <= 1);
            const auto computed = pseudoinverse(over_fp(a, rows, cols, p));
            REQUIRE(computed.has_value() == (solutions.size() == 1));
            if (computed) REQUIRE(oracle::residue_entries(*computed) == solutions[0]);
          });
        }
      }
    }
  }

  TEST_CASE("Pearl condition holds exactly when a Penrose solution exists over F2") {
    const long p = 2;
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
      std::size_t existing = 0;
      oracle::all_matrices(rows, cols, p, [&](const oracle::PMat& a) {
        bool exists = false;
        oracle::all_matrices(cols, rows, p, [&](const oracle::PMat& b) {
          if (!exists && oracle::penrose(a, b, rows, cols, p)) exists = true;
        });
        // Pearl condition evaluated with the reference rank.
        const auto at = oracle::transpose(a);
        const std::size_t r = oracle::rank(a, p);
        const bool pearl = oracle::rank(oracle::multiply(a, at, cols, rows, p), p) == r &&
                           oracle::rank(oracle::multiply(at, a, rows, cols, p), p) == r;
        REQUIRE(pearl == exists);
        REQUIRE(pearl_condition(over_fp(a, rows, cols, p)) == exists);
        existing += exists;
      });
      CHECK(existing > 0);
    }
  }

  TEST_CASE("pseudoinverse of a surjection does not depend on the codomain basis") {
    oracle::Rng rng(25);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
      const std::size_t r = rng.uniform(1, 3), n = rng.uniform(r, 5);
      const auto pi_z = oracle::random_integer_matrix(rng, r, n, -3, 3);
      const auto c_z = oracle::random_integer_matrix(rng, r, r, -3, 3);
      for (long p : {0L, 3L, 5L, 7L}) {
        const FieldSpec f = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
        const auto pi = ExactMatrix(to_matrix(pi_z)).over(f);
        const auto c = ExactMatrix(to_matrix(c_z)).over(f);
        if (rank(pi) != r || rank(c) != r) continue;
        const auto a = pseudoinverse(pi);
        const auto b = pseudoinverse(c * pi);
        // Existence does not depend on the basis either.
        REQUIRE(a.has_value() == b.has_value());
        if (!a) continue;
        REQUIRE(*b * c == *a);
        ++checked;
      }
    }
    CHECK(checked >= 60);
  }
}

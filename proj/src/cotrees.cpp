#include "harmonica/cotrees.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "harmonica/harmonic.hpp"
#include "harmonica/io.hpp"

namespace harmonica {

namespace {

// Independent row subsets are found by depth-first search over rows in
// increasing order, keeping an echelon basis of the chosen rows mod a 32-bit
// prime. Independence mod q implies independence over Q; a row that looks
// dependent mod q is confirmed by exact integer elimination, and in the
// (unlikely) case it is independent after all, that branch is finished by
// exact rank tests alone.
constexpr std::uint64_t kScreenPrime = 4294967291ull;

class IndependentRows {
 public:
  IndependentRows(const Matrix<BigInt>& exact, std::size_t r) : exact_(exact), r_(r), ops_{kScreenPrime} {
    residues_ = exact.map([&](const BigInt& v) { return ops_.from_integer(v); });
  }

  template <class Visit>
  void run(Visit&& visit) {
    search(0, visit);
  }

 private:
  template <class Visit>
  void search(std::size_t start, Visit& visit) {
    if (chosen_.size() == r_) {
      visit(chosen_);
      return;
    }
    const std::size_t n = exact_.rows();
    for (std::size_t i = start; i + (r_ - chosen_.size()) <= n; ++i) {
      std::vector<std::uint64_t> v(residues_.row(i), residues_.row(i) + residues_.cols());
      for (std::size_t b = 0; b < basis_.size(); ++b) {
        const auto f = v[pivots_[b]];
        if (f == 0) continue;
        for (std::size_t j = pivots_[b]; j < v.size(); ++j) v[j] = ops_.sub(v[j], ops_.mul(f, basis_[b][j]));
      }
      std::size_t pivot = 0;
      while (pivot < v.size() && v[pivot] == 0) ++pivot;
      chosen_.push_back(i);
      if (pivot < v.size()) {
        const auto inv = ops_.inv(v[pivot]);
        for (std::size_t j = pivot; j < v.size(); ++j) v[j] = ops_.mul(v[j], inv);
        basis_.push_back(std::move(v));
        pivots_.push_back(pivot);
        search(i + 1, visit);
        basis_.pop_back();
        pivots_.pop_back();
      } else if (exactly_independent()) {
        exhaustive(i + 1, visit);
      }
      chosen_.pop_back();
    }
  }

  template <class Visit>
  void exhaustive(std::size_t start, Visit& visit) {
    if (!exactly_independent()) return;
    if (chosen_.size() == r_) {
      visit(chosen_);
      return;
    }
    for (std::size_t i = start; i + (r_ - chosen_.size()) <= exact_.rows(); ++i) {
      chosen_.push_back(i);
      exhaustive(i + 1, visit);
      chosen_.pop_back();
    }
  }

  bool exactly_independent() const { return integer_rank(exact_.select_rows(chosen_)) == chosen_.size(); }

  const Matrix<BigInt>& exact_;
  std::size_t r_;
  PrimeOps ops_;
  Matrix<std::uint64_t> residues_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> pivots_;
};

void check_cap(std::size_t n, std::size_t r, std::uint64_t cap) {
  BigInt candidates = binomial(n, r);
  if (candidates > BigInt(std::to_string(cap))) {
    throw Error(ErrorCode::CapExceeded,
                "enumeration needs " + candidates.get_str() + " candidate subsets, cap is " + std::to_string(cap),
                R"({"candidates":")" + candidates.get_str() + R"(","cap":)" + std::to_string(cap) + "}");
  }
}

BigInt product(const std::vector<BigInt>& xs) {
  BigInt p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

bool valid_subset(const std::vector<std::size_t>& idx, std::size_t bound) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= bound) return false;
    if (i > 0 && idx[i] <= idx[i - 1]) return false;
  }
  return true;
}

Matrix<Rational> to_rational(const Matrix<BigInt>& m) {
  return m.map([](const BigInt& v) { return Rational(v); });
}

Matrix<BigInt> to_integer(const Matrix<Rational>& m) {
  return m.map([](const Rational& v) {
    if (v.get_den() != 1) throw Error(ErrorCode::NonIntegerDivision, "expected an integer matrix entry");
    return BigInt(v.get_num());
  });
}

}  // namespace

std::uint64_t default_cap() {
  if (const char* env = std::getenv("HARMONICA_CAP")) {
    try {
      std::size_t used = 0;
      std::string s(env);
      unsigned long long v = std::stoull(s, &used);
      if (used == s.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1000000;
}

BigInt binomial(std::size_t n, std::size_t r) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

std::vector<Cotree> enumerate_cotrees(const ChainComplex& x, std::size_t k, std::uint64_t cap) {
  x.require_degree(k);
  const auto& d = x.boundary(k + 1);
  const std::size_t n = d.rows();
  const std::size_t r = integer_rank(d);
  check_cap(n, r, cap);
  std::vector<Cotree> out;
  IndependentRows(d, r).run([&](const std::vector<std::size_t>& rows) {
    out.push_back({rows, product(smith_invariants(d.select_rows(rows)))});
  });
  return out;
}

BigInt cotree_weight(const ChainComplex& x, std::size_t k, const std::vector<std::size_t>& rows) {
  x.require_degree(k);
  const auto& d = x.boundary(k + 1);
  if (!valid_subset(rows, d.rows()) || rows.size() != integer_rank(d) ||
      integer_rank(d.select_rows(rows)) != rows.size()) {
    throw Error(ErrorCode::NotARowBasis, "rows do not form a row basis of the boundary map");
  }
  return product(smith_invariants(d.select_rows(rows)));
}

std::vector<SpanningTree> enumerate_trees(const ChainComplex& x, std::size_t j, std::uint64_t cap) {
  if (j == 0 || j > x.top_degree() + 1) throw Error(ErrorCode::DegreeOutOfRange, "no boundary map d_" + std::to_string(j));
  const auto& d = x.boundary(j);
  const std::size_t n = d.cols();
  const std::size_t r = integer_rank(d);
  check_cap(n, r, cap);
  std::vector<SpanningTree> out;
  const auto dt = d.transpose();
  IndependentRows(dt, r).run([&](const std::vector<std::size_t>& cols) {
    out.push_back({cols, product(smith_invariants(dt.select_rows(cols)))});
  });
  return out;
}

BigInt tree_weight(const ChainComplex& x, std::size_t j, const std::vector<std::size_t>& columns) {
  if (j == 0 || j > x.top_degree() + 1) throw Error(ErrorCode::DegreeOutOfRange, "no boundary map d_" + std::to_string(j));
  const auto& d = x.boundary(j);
  if (!valid_subset(columns, d.cols()) || columns.size() != integer_rank(d) ||
      integer_rank(d.select_cols(columns)) != columns.size()) {
    throw Error(ErrorCode::NotAColumnBasis, "columns do not form a column basis of the boundary map");
  }
  return product(smith_invariants(d.select_cols(columns)));
}

BigInt upsilon_of(const std::vector<Cotree>& cotrees) {
  BigInt squares = 0;
  BigInt prod = 1;
  for (const auto& c : cotrees) {
    squares += c.weight * c.weight;
    prod *= c.weight;
  }
  return squares * prod;
}

BigInt upsilon(const ChainComplex& x, std::size_t k, std::uint64_t cap) {
  return upsilon_of(enumerate_cotrees(x, k, cap));
}

BigInt theta_x(const ChainComplex& x, std::size_t k) {
  x.require_degree(k);
  return invariant_product(x.boundary(k + 1));
}

CotreeCensus cotree_census(const ChainComplex& x, std::size_t k, std::uint64_t cap) {
  CotreeCensus c;
  c.degree = k;
  c.cotrees = enumerate_cotrees(x, k, cap);
  c.trees = enumerate_trees(x, k + 1, cap);
  c.upsilon = upsilon_of(c.cotrees);
  c.theta_x = theta_x(x, k);
  return c;
}

BigInt restricted_laplacian_det(const ChainComplex& x, std::size_t k) {
  x.require_degree(k);
  const auto& up = x.boundary(k + 1);
  const auto snf = smith_normal_form(up);
  const auto inv = snf.invariants();
  const std::size_t r = inv.size();
  if (r == 0) return 1;
  const std::size_t n = up.rows();

  // S up T = D, so im(up) = S^-1 D Z^c: the first r columns of S^-1 scaled by
  // the invariant factors form a lattice basis of B_k.
  RationalOps q;
  auto s_inv = dense::inverse(to_rational(snf.S), q);
  if (!s_inv) throw Error(ErrorCode::InternalEquivalenceViolation, "Smith transform is not invertible");
  Matrix<BigInt> basis(n, r);
  const auto s_inv_int = to_integer(*s_inv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) basis(i, j) = s_inv_int(i, j) * inv[j];

  auto mul = [](const Matrix<BigInt>& a, const Matrix<BigInt>& b) {
    Matrix<BigInt> c(a.rows(), b.cols(), BigInt(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t m = 0; m < a.cols(); ++m) {
        if (sgn(a(i, m)) == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, m) * b(m, j);
      }
    return c;
  };
  // L_k acts on B_k through its up part, since d_k vanishes on boundaries.
  const auto ut_b = mul(up.transpose(), basis);
  const auto bt = basis.transpose();
  const BigInt gram = integer_determinant(mul(bt, basis));
  const BigInt action = integer_determinant(mul(ut_b.transpose(), ut_b));
  if (!mpz_divisible_p(action.get_mpz_t(), gram.get_mpz_t())) {
    throw Error(ErrorCode::NonIntegerDivision, "restricted Laplacian determinant is not an integer");
  }
  return action / gram;
}

void require_surface(const ChainComplex& x) {
  auto fail = [](const std::string& why) {
    return Error(ErrorCode::NotASurface, "not a closed orientable surface: " + why,
                 R"({"condition":")" + why + R"("})");
  };
  if (x.top_degree() != 2) throw fail("top degree is not 2");
  const auto& d2 = x.boundary(2);
  for (std::size_t e = 0; e < d2.rows(); ++e) {
    BigInt sides = 0;
    for (std::size_t f = 0; f < d2.cols(); ++f) sides += abs(d2(e, f));
    if (sides != 2) throw fail("edge " + std::to_string(e) + " does not lie on exactly two face sides");
  }
  if (betti(x, 0) != 1) throw fail("not connected");
  if (betti(x, 2) != 1) throw fail("second homology is not Z");
}

bool is_surface(const ChainComplex& x) {
  try {
    require_surface(x);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotASurface) return false;
    throw;
  }
}

BigInt surface_upsilon(const ChainComplex& x) {
  require_surface(x);
  const BigInt det = restricted_laplacian_det(x, 1);
  const BigInt faces(std::to_string(x.cell_count(2)));
  if (!mpz_divisible_p(det.get_mpz_t(), faces.get_mpz_t())) {
    throw Error(ErrorCode::NonIntegerDivision,
                "det " + det.get_str() + " is not divisible by the face count " + faces.get_str());
  }
  return det / faces;
}

MatrixTreeCheck matrix_tree_check(const ChainComplex& x, std::size_t k, std::uint64_t cap) {
  MatrixTreeCheck out;
  out.cotree_square_sum = 0;
  out.tree_square_sum = 0;
  for (const auto& c : enumerate_cotrees(x, k, cap)) out.cotree_square_sum += c.weight * c.weight;
  for (const auto& t : enumerate_trees(x, k + 1, cap)) out.tree_square_sum += t.weight * t.weight;
  out.theta_x = theta_x(x, k);
  out.lhs = restricted_laplacian_det(x, k);
  out.rhs = Rational(out.cotree_square_sum * out.tree_square_sum, out.theta_x * out.theta_x);
  out.rhs.canonicalize();
  out.equal = Rational(out.lhs) == out.rhs;
  return out;
}

ExactMatrix rational_projection(const ChainComplex& x, std::size_t k) {
  RationalOps q;
  const auto pi = quotient_projection(x, FieldSpec::rationals(), k).rational_entries();
  const auto pi_t = pi.transpose();
  auto inv = dense::inverse(dense::multiply(pi, pi_t, q), q);
  if (!inv) throw Error(ErrorCode::InternalEquivalenceViolation, "pi pi^T is singular over Q");
  return ExactMatrix(dense::multiply(pi_t, dense::multiply(*inv, pi, q), q));
}

ExactMatrix reduced_projection(const ChainComplex& x, std::size_t k, std::uint64_t p) {
  const FieldSpec f = FieldSpec::prime(p);
  const auto proj = rational_projection(x, k);
  const auto& m = proj.rational_entries();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (mpz_divisible_ui_p(m(i, j).get_den().get_mpz_t(), p)) {
        throw Error(ErrorCode::DenominatorDivisibleByP,
                    "projection entry " + m(i, j).get_str() + " has denominator divisible by " + std::to_string(p),
                    R"({"p":)" + std::to_string(p) + "}");
      }
    }
  }
  if (has_p_torsion(x, k, p)) {
    throw Error(ErrorCode::TorsionObstruction, "H_" + std::to_string(k) + " has " + std::to_string(p) + "-torsion",
                R"({"p":)" + std::to_string(p) + "}");
  }
  return proj.over(f);
}

std::string_view exclusion_name(ExclusionReason r) {
  return r == ExclusionReason::Torsion ? "Torsion" : "DividesUpsilon";
}

HarmonicPrimes harmonic_primes(const ChainComplex& x, std::size_t k, std::uint64_t bound, std::uint64_t cap) {
  x.require_degree(k);
  HarmonicPrimes out;
  try {
    out.upsilon = upsilon(x, k, cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded || k != 1 || !is_surface(x)) throw;
    out.upsilon = surface_upsilon(x);
    out.surface_formula = true;
  }
  std::vector<BigInt> torsion = torsion_primes(x, k);
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (!is_prime(p)) continue;
    if (std::find(torsion.begin(), torsion.end(), BigInt(std::to_string(p))) != torsion.end()) {
      out.excluded.emplace_back(p, ExclusionReason::Torsion);
    } else if (mpz_divisible_ui_p(out.upsilon.get_mpz_t(), p)) {
      out.excluded.emplace_back(p, ExclusionReason::DividesUpsilon);
    } else {
      out.guaranteed.push_back(p);
    }
  }
  return out;
}

std::optional<std::vector<BigInt>> nontrivial_cycle(const ChainComplex& x, std::size_t k) {
  x.require_degree(k);
  RationalOps q;
  const auto lower = to_rational(x.boundary(k));
  const auto upper = to_rational(x.boundary(k + 1));
  const auto boundaries = dense::image_basis(upper, q);
  for (const auto& z : dense::kernel_basis(lower, q)) {
    if (dense::in_span(x.cell_count(k), boundaries, z, q)) continue;
    BigInt scale = 1;
    for (const auto& c : z) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<BigInt> out;
    for (const auto& c : z) out.push_back(BigInt(c * scale));
    return out;
  }
  return std::nullopt;
}

PrimeSearch smallest_harmonic_prime(const ChainComplex& x, std::size_t k, const std::vector<BigInt>& cycle,
                                    std::uint64_t limit) {
  x.require_degree(k);
  PrimeSearch out;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (!is_prime(p)) continue;
    const FieldSpec f = FieldSpec::prime(p);
    if (!is_homologically_harmonic(x, f, k)) {
      out.rejected.push_back(p);
      continue;
    }
    Chain z{k, {}};
    for (const auto& c : cycle) z.coefficients.emplace_back(f, Rational(c));
    out.prime = p;
    out.representative = harmonic_representative(x, f, z);
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "no harmonic prime up to " + std::to_string(limit));
}

}  // namespace harmonica

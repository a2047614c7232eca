#ifndef HARMONICA_MATRIX_HPP
#define HARMONICA_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "harmonica/dense.hpp"
#include "harmonica/field.hpp"
#include "harmonica/snf.hpp"

namespace harmonica {

/// Calls f(RationalOps{}) or f(PrimeOps{p}) according to the field.
template <class F>
decltype(auto) with_ops(const FieldSpec& field, F&& f) {
  if (field.is_rational()) return f(RationalOps{});
  return f(PrimeOps{field.characteristic()});
}

using Vector = std::vector<Scalar>;

/// Dense exact matrix over Z, Q or F_p.
class ExactMatrix {
 public:
  ExactMatrix() : ExactMatrix(Matrix<BigInt>()) {}
  explicit ExactMatrix(Matrix<BigInt> integers) : field_(std::nullopt), data_(std::move(integers)) {}
  explicit ExactMatrix(Matrix<Rational> rationals) : field_(FieldSpec::rationals()), data_(std::move(rationals)) {}
  ExactMatrix(std::uint64_t p, Matrix<std::uint64_t> residues)
      : field_(FieldSpec::prime(p)), data_(std::move(residues)) {}

  static ExactMatrix zeros(const FieldSpec& field, std::size_t rows, std::size_t cols);
  static ExactMatrix integer_zeros(std::size_t rows, std::size_t cols) {
    return ExactMatrix(Matrix<BigInt>(rows, cols, BigInt(0)));
  }
  /// Row-major integer literal, mainly for tests and fixtures.
  static ExactMatrix integers(const std::vector<std::vector<long>>& rows);
  /// Row-major rational literal mapped into `field`.
  static ExactMatrix from_rows(const FieldSpec& field, const std::vector<std::vector<Rational>>& rows);

  template <class Ops>
  static ExactMatrix wrap(const Ops& ops, dense::Mat<Ops> m) {
    if constexpr (std::is_same_v<Ops, RationalOps>) {
      return ExactMatrix(std::move(m));
    } else {
      return ExactMatrix(ops.p, std::move(m));
    }
  }

  bool is_integer() const { return !field_.has_value(); }
  /// DomainMismatch for integer matrices.
  const FieldSpec& field() const;
  /// "Z", "Q" or "Fp:<p>".
  std::string domain_name() const;

  std::size_t rows() const;
  std::size_t cols() const;

  /// Entry as a field element; integer matrices are read over Q.
  Scalar at(std::size_t i, std::size_t j) const;
  /// Integer matrices only.
  const BigInt& integer_at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  void set_integer(std::size_t i, std::size_t j, const BigInt& value);

  const Matrix<BigInt>& integer_entries() const;
  const Matrix<Rational>& rational_entries() const;
  const Matrix<std::uint64_t>& residue_entries() const;

  /// The dense entries in the representation the ops struct expects.
  template <class Ops>
  const dense::Mat<Ops>& entries(const Ops&) const {
    return std::get<dense::Mat<Ops>>(data_);
  }

  /// Integer or rational matrix with entries mapped into `field`.
  ExactMatrix over(const FieldSpec& field) const;
  ExactMatrix transpose() const;

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  std::optional<FieldSpec> field_;
  std::variant<Matrix<BigInt>, Matrix<Rational>, Matrix<std::uint64_t>> data_;
};

ExactMatrix identity(const FieldSpec& field, std::size_t n);

// Gaussian elimination over the matrix's field. Integer matrices are treated
// as rational for these four queries.
std::size_t rank(const ExactMatrix& a);
std::vector<Vector> kernel_basis(const ExactMatrix& a);
std::vector<Vector> image_basis(const ExactMatrix& a);
/// Some x with a x = b, or nullopt when inconsistent. DomainMismatch when b
/// lives in a different field.
std::optional<Vector> solve(const ExactMatrix& a, const Vector& b);

Vector apply(const ExactMatrix& a, const Vector& x);

/// rank(A A*) = rank(A) = rank(A* A), with A* the transpose.
bool pearl_condition(const ExactMatrix& a);

/// The four Penrose conditions A B A = A, B A B = B, (A B)* = A B,
/// (B A)* = B A.
bool satisfies_penrose(const ExactMatrix& a, const ExactMatrix& b);

/// Moore-Penrose pseudoinverse over the matrix's field, or nullopt when the
/// Pearl rank condition fails (then no pseudoinverse exists).
std::optional<ExactMatrix> pseudoinverse(const ExactMatrix& a);

/// Smith normal form of an integer matrix.
SnfResult smith_normal_form(const ExactMatrix& a);

namespace dense {

template <class Ops>
bool pearl_condition(const Mat<Ops>& a, const Ops& ops) {
  auto at = a.transpose();
  std::size_t r = rank(a, ops);
  return rank(multiply(a, at, ops), ops) == r && rank(multiply(at, a, ops), ops) == r;
}

/// Full-rank factorization A = F G (F = pivot columns of A, G = nonzero rows
/// of its RREF), then A† = G*(G G*)^-1 (F* F)^-1 F*.
template <class Ops>
std::optional<Mat<Ops>> pseudoinverse(const Mat<Ops>& a, const Ops& ops) {
  if (!pearl_condition(a, ops)) return std::nullopt;
  auto e = rref(a, ops);
  const std::size_t r = e.pivots.size();
  if (r == 0) return Mat<Ops>(a.cols(), a.rows(), ops.zero());
  Mat<Ops> g(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) g(i, j) = e.reduced(i, j);
  Mat<Ops> f = a.select_cols(e.pivots);
  auto gt = g.transpose();
  auto ft = f.transpose();
  auto ggt_inv = inverse(multiply(g, gt, ops), ops);
  auto ftf_inv = inverse(multiply(ft, f, ops), ops);
  if (!ggt_inv || !ftf_inv) {
    throw Error(ErrorCode::InternalEquivalenceViolation, "Pearl condition held but a Gram factor is singular");
  }
  return multiply(multiply(gt, *ggt_inv, ops), multiply(*ftf_inv, ft, ops), ops);
}

template <class Ops>
bool satisfies_penrose(const Mat<Ops>& a, const Mat<Ops>& b, const Ops& ops) {
  if (b.rows() != a.cols() || b.cols() != a.rows()) return false;
  auto ab = multiply(a, b, ops);
  auto ba = multiply(b, a, ops);
  return multiply(ab, a, ops) == a && multiply(ba, b, ops) == b && ab.transpose() == ab && ba.transpose() == ba;
}

}  // namespace dense

}  // namespace harmonica

#endif  // HARMONICA_MATRIX_HPP

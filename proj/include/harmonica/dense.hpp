#ifndef HARMONICA_DENSE_HPP
#define HARMONICA_DENSE_HPP

// Dense row-major matrices and the elimination kernels behind every rank,
// kernel, image and solve in the library. Kernels are templates over an
// element-ops struct (RationalOps, PrimeOps) so Q and F_p share one code path.

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "harmonica/error.hpp"

namespace harmonica {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T* row(std::size_t i) { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix out(idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < cols_; ++j) out(r, j) = (*this)(idx[r], j);
    return out;
  }
  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < idx.size(); ++c) out(i, c) = (*this)(i, idx[c]);
    return out;
  }

  /// Columns of the result are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    return m;
  }

  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class F>
  Matrix<std::invoke_result_t<F, const T&>> map(F&& f) const {
    Matrix<std::invoke_result_t<F, const T&>> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace dense {

template <class Ops>
using Mat = Matrix<typename Ops::value_type>;
template <class Ops>
using Vec = std::vector<typename Ops::value_type>;

template <class Ops>
Mat<Ops> identity(std::size_t n, const Ops& ops) {
  Mat<Ops> m(n, n, ops.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ops.one();
  return m;
}

template <class Ops>
Mat<Ops> multiply(const Mat<Ops>& a, const Mat<Ops>& b, const Ops& ops) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Mat<Ops> c(a.rows(), b.cols(), ops.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (ops.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = ops.add(c(i, j), ops.mul(aik, b(k, j)));
    }
  }
  return c;
}

template <class Ops>
Vec<Ops> apply(const Mat<Ops>& a, const Vec<Ops>& x, const Ops& ops) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vec<Ops> y(a.rows(), ops.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ops.is_zero(x[j])) y[i] = ops.add(y[i], ops.mul(a(i, j), x[j]));
  return y;
}

template <class Ops>
Mat<Ops> add(const Mat<Ops>& a, const Mat<Ops>& b, const Ops& ops) {
  Mat<Ops> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ops.add(a(i, j), b(i, j));
  return c;
}

template <class Ops>
Mat<Ops> subtract(const Mat<Ops>& a, const Mat<Ops>& b, const Ops& ops) {
  Mat<Ops> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ops.sub(a(i, j), b(i, j));
  return c;
}

template <class Ops>
bool is_zero(const Mat<Ops>& a, const Ops& ops) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ops.is_zero(a(i, j))) return false;
  return true;
}

template <class Ops>
bool is_zero_vector(const Vec<Ops>& v, const Ops& ops) {
  for (const auto& x : v)
    if (!ops.is_zero(x)) return false;
  return true;
}

// row_target -= factor * row_source, over columns [from, cols).
template <class Ops>
void axpy_row(Mat<Ops>& m, std::size_t target, std::size_t source, const typename Ops::value_type& factor,
              std::size_t from, const Ops& ops) {
  auto* t = m.row(target);
  const auto* s = m.row(source);
  for (std::size_t j = from; j < m.cols(); ++j) {
    if (!ops.is_zero(s[j])) t[j] = ops.sub(t[j], ops.mul(factor, s[j]));
  }
}

template <class T>
struct Echelon {
  Matrix<T> reduced;               // reduced row echelon form, pivots equal to one
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. The pivot of each column is the first nonzero
/// entry at or below the current row, so results depend only on the input.
template <class Ops>
Echelon<typename Ops::value_type> rref(Mat<Ops> a, const Ops& ops) {
  Echelon<typename Ops::value_type> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && ops.is_zero(a(pivot, c))) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(r, pivot);
    auto inv = ops.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = ops.mul(a(r, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || ops.is_zero(a(i, c))) continue;
      auto factor = a(i, c);
      axpy_row(a, i, r, factor, c, ops);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

/// Rank by forward elimination only.
template <class Ops>
std::size_t rank(Mat<Ops> a, const Ops& ops) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && ops.is_zero(a(pivot, c))) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(r, pivot);
    auto inv = ops.inv(a(r, c));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (ops.is_zero(a(i, c))) continue;
      auto factor = ops.mul(a(i, c), inv);
      axpy_row(a, i, r, factor, c, ops);
    }
    ++r;
  }
  return r;
}

/// Basis of the null space, one vector per free column of the RREF.
template <class Ops>
std::vector<Vec<Ops>> kernel_basis(const Mat<Ops>& a, const Ops& ops) {
  auto e = rref(a, ops);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec<Ops>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<Ops> v(a.cols(), ops.zero());
    v[f] = ops.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = ops.neg(e.reduced(i, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Column-space basis: the pivot columns of the input itself.
template <class Ops>
std::vector<Vec<Ops>> image_basis(const Mat<Ops>& a, const Ops& ops) {
  auto e = rref(a, ops);
  std::vector<Vec<Ops>> basis;
  for (auto c : e.pivots) basis.push_back(a.column(c));
  return basis;
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
template <class Ops>
std::optional<Vec<Ops>> solve(const Mat<Ops>& a, const Vec<Ops>& b, const Ops& ops) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length mismatch");
  Mat<Ops> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto e = rref(std::move(aug), ops);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec<Ops> x(a.cols(), ops.zero());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

template <class Ops>
std::optional<Mat<Ops>> inverse(const Mat<Ops>& a, const Ops& ops) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  std::size_t n = a.rows();
  Mat<Ops> aug(n, 2 * n, ops.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = ops.one();
  }
  auto e = rref(std::move(aug), ops);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Mat<Ops> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

template <class Ops>
typename Ops::value_type determinant(Mat<Ops> a, const Ops& ops) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  auto det = ops.one();
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::size_t pivot = c;
    while (pivot < a.rows() && ops.is_zero(a(pivot, c))) ++pivot;
    if (pivot == a.rows()) return ops.zero();
    if (pivot != c) {
      a.swap_rows(c, pivot);
      det = ops.neg(det);
    }
    det = ops.mul(det, a(c, c));
    auto inv = ops.inv(a(c, c));
    for (std::size_t i = c + 1; i < a.rows(); ++i) {
      if (ops.is_zero(a(i, c))) continue;
      axpy_row(a, i, c, ops.mul(a(i, c), inv), c, ops);
    }
  }
  return det;
}

// Subspaces are passed as lists of spanning vectors inside an ambient space
// of dimension `n`. All of these reduce to ranks of concatenated lists.

template <class Ops>
std::size_t span_dim(std::size_t n, const std::vector<Vec<Ops>>& vs, const Ops& ops) {
  if (vs.empty()) return 0;
  return rank(Mat<Ops>::from_columns(n, vs), ops);
}

template <class Ops>
std::vector<Vec<Ops>> concat(std::vector<Vec<Ops>> a, const std::vector<Vec<Ops>>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <class Ops>
std::size_t sum_dim(std::size_t n, const std::vector<Vec<Ops>>& a, const std::vector<Vec<Ops>>& b, const Ops& ops) {
  return span_dim(n, concat<Ops>(a, b), ops);
}

/// Basis of span(a) ∩ span(b). Both lists must be linearly independent.
template <class Ops>
std::vector<Vec<Ops>> intersection_basis(std::size_t n, const std::vector<Vec<Ops>>& a,
                                         const std::vector<Vec<Ops>>& b, const Ops& ops) {
  if (a.empty() || b.empty()) return {};
  Mat<Ops> joint(n, a.size() + b.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) joint(i, j) = a[j][i];
    for (std::size_t j = 0; j < b.size(); ++j) joint(i, a.size() + j) = ops.neg(b[j][i]);
  }
  std::vector<Vec<Ops>> out;
  for (const auto& coeffs : kernel_basis(joint, ops)) {
    Vec<Ops> v(n, ops.zero());
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (ops.is_zero(coeffs[j])) continue;
      for (std::size_t i = 0; i < n; ++i) v[i] = ops.add(v[i], ops.mul(coeffs[j], a[j][i]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <class Ops>
bool in_span(std::size_t n, const std::vector<Vec<Ops>>& basis, const Vec<Ops>& v, const Ops& ops) {
  if (is_zero_vector(v, ops)) return true;
  if (basis.empty()) return false;
  return solve(Mat<Ops>::from_columns(n, basis), v, ops).has_value();
}

template <class Ops>
typename Ops::value_type dot(const Vec<Ops>& a, const Vec<Ops>& b, const Ops& ops) {
  auto s = ops.zero();
  for (std::size_t i = 0; i < a.size(); ++i) s = ops.add(s, ops.mul(a[i], b[i]));
  return s;
}

}  // namespace dense
}  // namespace harmonica

#endif  // HARMONICA_DENSE_HPP

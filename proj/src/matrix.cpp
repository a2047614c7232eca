#include "harmonica/matrix.hpp"

namespace harmonica {

namespace {

// Rational view of any matrix, used when integer matrices meet field queries.
Matrix<Rational> as_rational(const ExactMatrix& a) {
  if (a.is_integer()) return a.integer_entries().map([](const BigInt& x) { return Rational(x); });
  return a.rational_entries();
}

FieldSpec working_field(const ExactMatrix& a) {
  return a.is_integer() ? FieldSpec::rationals() : a.field();
}

template <class F>
decltype(auto) visit_field(const ExactMatrix& a, F&& f) {
  if (a.is_integer()) {
    RationalOps ops;
    return f(ops, as_rational(a));
  }
  return with_ops(a.field(), [&](const auto& ops) { return f(ops, a.entries(ops)); });
}

template <class Ops>
std::vector<Vector> to_vectors(const std::vector<dense::Vec<Ops>>& vs, const Ops& ops) {
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    Vector w;
    w.reserve(v.size());
    for (const auto& x : v) w.push_back(ops.to_scalar(x));
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

ExactMatrix ExactMatrix::zeros(const FieldSpec& field, std::size_t rows, std::size_t cols) {
  return with_ops(field, [&](const auto& ops) { return wrap(ops, dense::Mat<std::decay_t<decltype(ops)>>(rows, cols, ops.zero())); });
}

ExactMatrix ExactMatrix::integers(const std::vector<std::vector<long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix<BigInt> m(rows.size(), cols, BigInt(0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged integer matrix literal");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return ExactMatrix(std::move(m));
}

ExactMatrix ExactMatrix::from_rows(const FieldSpec& field, const std::vector<std::vector<Rational>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix out = zeros(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, Scalar(field, rows[i][j]));
  }
  return out;
}

const FieldSpec& ExactMatrix::field() const {
  if (!field_) throw Error(ErrorCode::DomainMismatch, "integer matrix has no coefficient field");
  return *field_;
}

std::string ExactMatrix::domain_name() const { return field_ ? field_->name() : "Z"; }

std::size_t ExactMatrix::rows() const {
  return std::visit([](const auto& m) { return m.rows(); }, data_);
}

std::size_t ExactMatrix::cols() const {
  return std::visit([](const auto& m) { return m.cols(); }, data_);
}

Scalar ExactMatrix::at(std::size_t i, std::size_t j) const {
  if (is_integer()) return Scalar(FieldSpec::rationals(), Rational(integer_at(i, j)));
  if (field_->is_rational()) return Scalar(*field_, rational_entries()(i, j));
  return Scalar::from_residue(*field_, residue_entries()(i, j));
}

const BigInt& ExactMatrix::integer_at(std::size_t i, std::size_t j) const { return integer_entries()(i, j); }

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  if (is_integer()) {
    if (!value.field().is_rational() || value.rational().get_den() != 1) {
      throw Error(ErrorCode::DomainMismatch, "non-integer value stored into an integer matrix");
    }
    std::get<Matrix<BigInt>>(data_)(i, j) = value.rational().get_num();
    return;
  }
  if (!(value.field() == *field_)) {
    throw Error(ErrorCode::DomainMismatch, "scalar from " + value.field().name() + " stored into " + field_->name());
  }
  if (field_->is_rational()) {
    std::get<Matrix<Rational>>(data_)(i, j) = value.rational();
  } else {
    std::get<Matrix<std::uint64_t>>(data_)(i, j) = value.residue();
  }
}

void ExactMatrix::set_integer(std::size_t i, std::size_t j, const BigInt& value) {
  if (!is_integer()) {
    set(i, j, Scalar(*field_, Rational(value)));
    return;
  }
  std::get<Matrix<BigInt>>(data_)(i, j) = value;
}

const Matrix<BigInt>& ExactMatrix::integer_entries() const {
  if (!is_integer()) throw Error(ErrorCode::DomainMismatch, "matrix over " + field_->name() + " is not integral");
  return std::get<Matrix<BigInt>>(data_);
}

const Matrix<Rational>& ExactMatrix::rational_entries() const {
  if (is_integer() || !field_->is_rational()) throw Error(ErrorCode::DomainMismatch, "matrix is not over Q");
  return std::get<Matrix<Rational>>(data_);
}

const Matrix<std::uint64_t>& ExactMatrix::residue_entries() const {
  if (is_integer() || field_->is_rational()) throw Error(ErrorCode::DomainMismatch, "matrix is not over a prime field");
  return std::get<Matrix<std::uint64_t>>(data_);
}

ExactMatrix ExactMatrix::over(const FieldSpec& field) const {
  if (field_ && *field_ == field) return *this;
  if (field.is_rational()) {
    if (!is_integer()) throw Error(ErrorCode::DomainMismatch, "cannot lift " + field_->name() + " to Q");
    return ExactMatrix(as_rational(*this));
  }
  PrimeOps ops{field.characteristic()};
  if (is_integer()) {
    return ExactMatrix(ops.p, integer_entries().map([&](const BigInt& x) { return ops.from_integer(x); }));
  }
  if (field_->is_rational()) {
    return ExactMatrix(ops.p, rational_entries().map([&](const Rational& x) {
      return reduce_mod_p(x, ops.p).residue();
    }));
  }
  throw Error(ErrorCode::DomainMismatch, "cannot map " + field_->name() + " to " + field.name());
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out = *this;
  std::visit([](auto& m) { m = m.transpose(); }, out.data_);
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.field_ != b.field_) throw Error(ErrorCode::DomainMismatch, "product of " + a.domain_name() + " and " + b.domain_name());
  if (a.is_integer()) {
    const auto& x = a.integer_entries();
    const auto& y = b.integer_entries();
    if (x.cols() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix<BigInt> c(x.rows(), y.cols(), BigInt(0));
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t k = 0; k < x.cols(); ++k)
        if (sgn(x(i, k)) != 0)
          for (std::size_t j = 0; j < y.cols(); ++j) c(i, j) += x(i, k) * y(k, j);
    return ExactMatrix(std::move(c));
  }
  return with_ops(a.field(), [&](const auto& ops) {
    return ExactMatrix::wrap(ops, dense::multiply(a.entries(ops), b.entries(ops), ops));
  });
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.field_ != b.field_ || a.is_integer()) {
    if (a.is_integer() && b.is_integer()) {
      Matrix<BigInt> c = a.integer_entries();
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) += b.integer_at(i, j);
      return ExactMatrix(std::move(c));
    }
    throw Error(ErrorCode::DomainMismatch, "sum of " + a.domain_name() + " and " + b.domain_name());
  }
  return with_ops(a.field(), [&](const auto& ops) {
    return ExactMatrix::wrap(ops, dense::add(a.entries(ops), b.entries(ops), ops));
  });
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.is_integer() && b.is_integer()) {
    Matrix<BigInt> c = a.integer_entries();
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) -= b.integer_at(i, j);
    return ExactMatrix(std::move(c));
  }
  if (a.field_ != b.field_) throw Error(ErrorCode::DomainMismatch, "difference of " + a.domain_name() + " and " + b.domain_name());
  return with_ops(a.field(), [&](const auto& ops) {
    return ExactMatrix::wrap(ops, dense::subtract(a.entries(ops), b.entries(ops), ops));
  });
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.field_ == b.field_ && a.data_ == b.data_; }

ExactMatrix identity(const FieldSpec& field, std::size_t n) {
  return with_ops(field, [&](const auto& ops) { return ExactMatrix::wrap(ops, dense::identity(n, ops)); });
}

std::size_t rank(const ExactMatrix& a) {
  if (a.is_integer()) return integer_rank(a.integer_entries());
  return visit_field(a, [](const auto& ops, const auto& m) { return dense::rank(m, ops); });
}

std::vector<Vector> kernel_basis(const ExactMatrix& a) {
  return visit_field(a, [](const auto& ops, const auto& m) { return to_vectors(dense::kernel_basis(m, ops), ops); });
}

std::vector<Vector> image_basis(const ExactMatrix& a) {
  return visit_field(a, [](const auto& ops, const auto& m) { return to_vectors(dense::image_basis(m, ops), ops); });
}

std::optional<Vector> solve(const ExactMatrix& a, const Vector& b) {
  FieldSpec field = working_field(a);
  for (const auto& x : b) {
    if (!(x.field() == field)) {
      throw Error(ErrorCode::DomainMismatch, "right-hand side over " + x.field().name() + ", matrix over " + field.name());
    }
  }
  return visit_field(a, [&](const auto& ops, const auto& m) -> std::optional<Vector> {
    dense::Vec<std::decay_t<decltype(ops)>> rhs;
    for (const auto& x : b) rhs.push_back(ops.from_scalar(x));
    auto x = dense::solve(m, rhs, ops);
    if (!x) return std::nullopt;
    return to_vectors<std::decay_t<decltype(ops)>>({*x}, ops).front();
  });
}

Vector apply(const ExactMatrix& a, const Vector& x) {
  FieldSpec field = working_field(a);
  for (const auto& v : x) {
    if (!(v.field() == field)) throw Error(ErrorCode::DomainMismatch, "vector field differs from matrix field");
  }
  return visit_field(a, [&](const auto& ops, const auto& m) {
    dense::Vec<std::decay_t<decltype(ops)>> v;
    for (const auto& s : x) v.push_back(ops.from_scalar(s));
    return to_vectors<std::decay_t<decltype(ops)>>({dense::apply(m, v, ops)}, ops).front();
  });
}

bool pearl_condition(const ExactMatrix& a) {
  return visit_field(a, [](const auto& ops, const auto& m) { return dense::pearl_condition(m, ops); });
}

bool satisfies_penrose(const ExactMatrix& a, const ExactMatrix& b) {
  if (working_field(a) != working_field(b)) return false;
  ExactMatrix bq = b.is_integer() ? b.over(FieldSpec::rationals()) : b;
  return visit_field(a, [&](const auto& ops, const auto& m) { return dense::satisfies_penrose(m, bq.entries(ops), ops); });
}

std::optional<ExactMatrix> pseudoinverse(const ExactMatrix& a) {
  return visit_field(a, [](const auto& ops, const auto& m) -> std::optional<ExactMatrix> {
    auto inv = dense::pseudoinverse(m, ops);
    if (!inv) return std::nullopt;
    return ExactMatrix::wrap(ops, std::move(*inv));
  });
}

SnfResult smith_normal_form(const ExactMatrix& a) { return smith_normal_form(a.integer_entries()); }

}  // namespace harmonica

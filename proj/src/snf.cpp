#include "harmonica/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace harmonica {

namespace {

struct Overflow {};

// Integer arithmetic policies. The 64-bit policy throws Overflow instead of
// wrapping, and the caller reruns the computation with BigInt.
struct CheckedInt64 {
  using value_type = std::int64_t;
  static value_type from(const BigInt& n) {
    if (!n.fits_slong_p()) throw Overflow{};
    return n.get_si();
  }
  static BigInt to_big(value_type v) { return BigInt(static_cast<long>(v)); }
  static value_type add(value_type a, value_type b) {
    value_type r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static value_type sub(value_type a, value_type b) {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static value_type mul(value_type a, value_type b) {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static value_type neg(value_type a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  static value_type quot(value_type a, value_type b) {
    if (a == INT64_MIN && b == -1) throw Overflow{};
    return a / b;
  }
  static bool divides(value_type d, value_type a) { return a % d == 0; }
  static value_type abs(value_type a) { return a < 0 ? neg(a) : a; }
  static int sign(value_type a) { return (a > 0) - (a < 0); }
};

struct BigIntPolicy {
  using value_type = BigInt;
  static value_type from(const BigInt& n) { return n; }
  static BigInt to_big(const value_type& v) { return v; }
  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type neg(const value_type& a) { return -a; }
  static value_type quot(const value_type& a, const value_type& b) {
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool divides(const value_type& d, const value_type& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
  }
  static value_type abs(const value_type& a) { return ::abs(a); }
  static int sign(const value_type& a) { return sgn(a); }
};

template <class P>
Matrix<typename P::value_type> convert_in(const Matrix<BigInt>& a) {
  return a.map([](const BigInt& x) { return P::from(x); });
}

template <class P>
Matrix<BigInt> convert_out(const Matrix<typename P::value_type>& a) {
  return a.map([](const typename P::value_type& x) { return P::to_big(x); });
}

// Smith reduction in place. When `track` is set, the same row operations are
// applied to s and column operations to t.
template <class P>
void smith_reduce(Matrix<typename P::value_type>& a, Matrix<typename P::value_type>* s,
                  Matrix<typename P::value_type>* t) {
  using V = typename P::value_type;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  auto row_axpy = [&](std::size_t target, std::size_t source, const V& q) {
    // row_target -= q * row_source
    for (std::size_t j = 0; j < n; ++j)
      if (P::sign(a(source, j)) != 0) a(target, j) = P::sub(a(target, j), P::mul(q, a(source, j)));
    if (s)
      for (std::size_t j = 0; j < m; ++j)
        if (P::sign((*s)(source, j)) != 0) (*s)(target, j) = P::sub((*s)(target, j), P::mul(q, (*s)(source, j)));
  };
  auto col_axpy = [&](std::size_t target, std::size_t source, const V& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (P::sign(a(i, source)) != 0) a(i, target) = P::sub(a(i, target), P::mul(q, a(i, source)));
    if (t)
      for (std::size_t i = 0; i < n; ++i)
        if (P::sign((*t)(i, source)) != 0) (*t)(i, target) = P::sub((*t)(i, target), P::mul(q, (*t)(i, source)));
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (s) s->swap_rows(x, y);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (t) t->swap_cols(x, y);
  };

  for (std::size_t p = 0; p < std::min(m, n); ++p) {
    // Smallest nonzero |entry| of the trailing block goes to (p, p).
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = p; i < m; ++i)
      for (std::size_t j = p; j < n; ++j)
        if (P::sign(a(i, j)) != 0 && (!best || P::abs(a(i, j)) < P::abs(a(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    swap_rows(p, best->first);
    swap_cols(p, best->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = p + 1; i < m; ++i) {
        if (P::sign(a(i, p)) == 0) continue;
        row_axpy(i, p, P::quot(a(i, p), a(p, p)));
        if (P::sign(a(i, p)) != 0) clean = false;
      }
      for (std::size_t j = p + 1; j < n; ++j) {
        if (P::sign(a(p, j)) == 0) continue;
        col_axpy(j, p, P::quot(a(p, j), a(p, p)));
        if (P::sign(a(p, j)) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; make it the pivot.
        std::size_t bi = p, bj = p;
        for (std::size_t i = p + 1; i < m; ++i)
          if (P::sign(a(i, p)) != 0 && P::abs(a(i, p)) < P::abs(a(bi, bj))) bi = i, bj = p;
        for (std::size_t j = p + 1; j < n; ++j)
          if (P::sign(a(p, j)) != 0 && P::abs(a(p, j)) < P::abs(a(bi, bj))) bi = p, bj = j;
        swap_rows(p, bi);
        swap_cols(p, bj);
        continue;
      }
      // Divisibility chain: fold in a row whose entries the pivot misses.
      std::optional<std::size_t> offender;
      for (std::size_t i = p + 1; i < m && !offender; ++i)
        for (std::size_t j = p + 1; j < n; ++j)
          if (!P::divides(a(p, p), a(i, j))) {
            offender = i;
            break;
          }
      if (!offender) break;
      row_axpy(p, *offender, P::neg(V(1)));
    }
    if (P::sign(a(p, p)) < 0) {
      for (std::size_t j = 0; j < n; ++j) a(p, j) = P::neg(a(p, j));
      if (s)
        for (std::size_t j = 0; j < m; ++j) (*s)(p, j) = P::neg((*s)(p, j));
    }
  }
}

template <class P>
SnfResult snf_with(const Matrix<BigInt>& input) {
  using V = typename P::value_type;
  auto a = convert_in<P>(input);
  Matrix<V> s(input.rows(), input.rows(), V(0));
  Matrix<V> t(input.cols(), input.cols(), V(0));
  for (std::size_t i = 0; i < input.rows(); ++i) s(i, i) = V(1);
  for (std::size_t i = 0; i < input.cols(); ++i) t(i, i) = V(1);
  smith_reduce<P>(a, &s, &t);
  return {convert_out<P>(s), convert_out<P>(a), convert_out<P>(t)};
}

template <class P>
std::vector<BigInt> invariants_with(const Matrix<BigInt>& input) {
  auto a = convert_in<P>(input);
  smith_reduce<P>(a, nullptr, nullptr);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (P::sign(a(i, i)) == 0) break;
    out.push_back(P::to_big(a(i, i)));
  }
  return out;
}

// Fraction-free elimination; every intermediate entry is a minor of the input,
// so exact division by the previous pivot is valid.
template <class P>
std::size_t bareiss_rank(Matrix<typename P::value_type> a, typename P::value_type* det_out) {
  using V = typename P::value_type;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  V prev(1);
  std::size_t r = 0;
  int sign = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t pivot = r;
    while (pivot < m && P::sign(a(pivot, c)) == 0) ++pivot;
    if (pivot == m) continue;
    if (pivot != r) {
      a.swap_rows(r, pivot);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        V num = P::sub(P::mul(a(r, c), a(i, j)), P::mul(a(i, c), a(r, j)));
        a(i, j) = P::quot(num, prev);
      }
      a(i, c) = V(0);
    }
    prev = a(r, c);
    ++r;
  }
  if (det_out) *det_out = (r == m && m == n) ? (sign < 0 ? P::neg(prev) : prev) : V(0);
  return r;
}

}  // namespace

std::vector<BigInt> SnfResult::invariants() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
    if (sgn(D(i, i)) == 0) break;
    out.push_back(D(i, i));
  }
  return out;
}

SnfResult smith_normal_form(const Matrix<BigInt>& a) {
  try {
    return snf_with<CheckedInt64>(a);
  } catch (const Overflow&) {
    return snf_with<BigIntPolicy>(a);
  }
}

std::vector<BigInt> smith_invariants(const Matrix<BigInt>& a) {
  try {
    return invariants_with<CheckedInt64>(a);
  } catch (const Overflow&) {
    return invariants_with<BigIntPolicy>(a);
  }
}

BigInt invariant_product(const Matrix<BigInt>& a) {
  BigInt product = 1;
  for (const auto& d : smith_invariants(a)) product *= d;
  return product;
}

std::size_t integer_rank(const Matrix<BigInt>& a) {
  try {
    return bareiss_rank<CheckedInt64>(convert_in<CheckedInt64>(a), nullptr);
  } catch (const Overflow&) {
    return bareiss_rank<BigIntPolicy>(a, nullptr);
  }
}

BigInt integer_determinant(const Matrix<BigInt>& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  if (a.rows() == 0) return 1;
  try {
    std::int64_t det = 0;
    bareiss_rank<CheckedInt64>(convert_in<CheckedInt64>(a), &det);
    return BigInt(static_cast<long>(det));
  } catch (const Overflow&) {
    BigInt det;
    bareiss_rank<BigIntPolicy>(a, &det);
    return det;
  }
}

}  // namespace harmonica

#ifndef HARMONICA_FIELD_HPP
#define HARMONICA_FIELD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "harmonica/error.hpp"

namespace harmonica {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Prime factors of |n| in increasing order, without multiplicity. Trial
/// division; intended for SNF entries and denominators, which stay small.
std::vector<BigInt> prime_factors(BigInt n);

/// Coefficient field: the rationals or a prime field F_p.
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
  /// Throws InvalidArgument unless p is prime.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts the CLI spelling ("q", "f5") and the matrix-JSON spelling
  /// ("Q", "Fp:5").
  static FieldSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rationals; }
  std::uint64_t characteristic() const { return p_; }

  /// "Q" or "Fp:<p>".
  std::string name() const;
  /// "q" or "f<p>".
  std::string short_name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend struct PrimeOps;
  friend class Scalar;
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// An exact element of a FieldSpec. Rationals are kept canonical by GMP;
/// residues live in [0, p).
class Scalar {
 public:
  Scalar() : Scalar(FieldSpec::rationals(), Rational(0)) {}
  /// Maps x into the field. Over F_p this is reduce_mod_p and throws
  /// DenominatorDivisibleByP when p divides the denominator.
  Scalar(const FieldSpec& field, const Rational& x);
  Scalar(const FieldSpec& field, long x) : Scalar(field, Rational(x)) {}

  static Scalar zero(const FieldSpec& field) { return Scalar(field, 0L); }
  static Scalar one(const FieldSpec& field) { return Scalar(field, 1L); }
  static Scalar from_residue(const FieldSpec& field, std::uint64_t r);
  /// "a/b", "a", or a decimal residue; residues may be negative or >= p and
  /// are normalized.
  static Scalar parse(const FieldSpec& field, std::string_view text);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  /// Valid over Q only.
  const Rational& rational() const { return q_; }
  /// Valid over F_p only.
  std::uint64_t residue() const { return r_; }

  std::string to_string() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  FieldSpec field_;
  Rational q_;
  std::uint64_t r_ = 0;
};

/// Multiplicative inverse; DivisionByZero on zero.
Scalar invert(const Scalar& s);

/// r_p(a/b) = a * b^-1 mod p. DenominatorDivisibleByP when p | b.
Scalar reduce_mod_p(const Rational& x, std::uint64_t p);

/// An element of Z_(p): a rational whose reduced denominator is prime to p.
class LocalizedRational {
 public:
  LocalizedRational(const Rational& value, std::uint64_t p);

  const Rational& value() const { return value_; }
  std::uint64_t prime() const { return p_; }
  Scalar reduce() const { return reduce_mod_p(value_, p_); }

  friend LocalizedRational operator+(const LocalizedRational& a, const LocalizedRational& b);
  friend LocalizedRational operator*(const LocalizedRational& a, const LocalizedRational& b);

 private:
  Rational value_;
  std::uint64_t p_;
};

/// True when every prime factor of x's denominator divides n, i.e. x lies in
/// Z[1/n].
bool in_localization_away_from(const Rational& x, const BigInt& n);

// Element operations used by the dense kernels. Both structs share one
// interface so elimination code is written once.

struct RationalOps {
  using value_type = Rational;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const;
  value_type from_integer(const BigInt& n) const { return Rational(n); }
  Scalar to_scalar(const value_type& a) const { return Scalar(FieldSpec::rationals(), a); }
  value_type from_scalar(const Scalar& s) const { return s.rational(); }
  FieldSpec field() const { return FieldSpec::rationals(); }
};

struct PrimeOps {
  using value_type = std::uint64_t;
  std::uint64_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return (s >= p || s < a) ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p - b); }
  value_type mul(value_type a, value_type b) const {
    if (p <= 0xFFFFFFFFull) return (a * b) % p;
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const;
  value_type from_integer(const BigInt& n) const;
  Scalar to_scalar(value_type a) const { return Scalar::from_residue(field(), a); }
  value_type from_scalar(const Scalar& s) const { return s.residue(); }
  FieldSpec field() const { return FieldSpec(FieldSpec::Kind::PrimeField, p); }
};

}  // namespace harmonica

#endif  // HARMONICA_FIELD_HPP

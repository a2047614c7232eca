#include "harmonica/field.hpp"

#include <charconv>

namespace harmonica {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::MalformedFacet: return "MalformedFacet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotHarmonicComplex: return "NotHarmonicComplex";
    case ErrorCode::NoDecomposition: return "NoDecomposition";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotARowBasis: return "NotARowBasis";
    case ErrorCode::NotAColumnBasis: return "NotAColumnBasis";
    case ErrorCode::NotASurface: return "NotASurface";
    case ErrorCode::NonIntegerDivision: return "NonIntegerDivision";
    case ErrorCode::TorsionObstruction: return "TorsionObstruction";
    case ErrorCode::InternalEquivalenceViolation: return "InternalEquivalenceViolation";
  }
  return "Unknown";
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "GMP ui functions must take 64-bit moduli");

std::uint64_t residue_of(const BigInt& n, std::uint64_t p) {
  // Floor division leaves a remainder in [0, p).
  return mpz_fdiv_ui(n.get_mpz_t(), p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  n = abs(n);
  if (n < 2) return out;
  for (BigInt d = 2; d * d <= n; ++d) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      out.push_back(d);
      while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, "field characteristic " + std::to_string(p) + " is not prime");
  }
  return FieldSpec(Kind::PrimeField, p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  std::string_view digits;
  if (text.size() > 3 && text.substr(0, 3) == "Fp:") {
    digits = text.substr(3);
  } else if (text.size() > 1 && (text[0] == 'f' || text[0] == 'F')) {
    digits = text.substr(1);
  } else {
    throw Error(ErrorCode::Parse, "unrecognized field '" + std::string(text) + "' (expected q or f<p>)");
  }
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::Parse, "unrecognized field '" + std::string(text) + "'");
  }
  return prime(p);
}

std::string FieldSpec::name() const {
  return is_rational() ? "Q" : "Fp:" + std::to_string(p_);
}

std::string FieldSpec::short_name() const {
  return is_rational() ? "q" : "f" + std::to_string(p_);
}

namespace {

std::uint64_t residue_of_rational(const Rational& x, std::uint64_t p) {
  Rational q = x;
  q.canonicalize();
  PrimeOps ops{p};
  std::uint64_t den = ops.from_integer(q.get_den());
  if (den == 0) {
    throw Error(ErrorCode::DenominatorDivisibleByP,
                "denominator of " + q.get_str() + " is divisible by " + std::to_string(p));
  }
  return ops.mul(ops.from_integer(q.get_num()), ops.inv(den));
}

}  // namespace

Scalar::Scalar(const FieldSpec& field, const Rational& x) : field_(field) {
  if (field.is_rational()) {
    q_ = x;
    q_.canonicalize();
  } else {
    r_ = residue_of_rational(x, field.characteristic());
  }
}

Scalar Scalar::from_residue(const FieldSpec& field, std::uint64_t r) {
  if (field.is_rational()) return Scalar(field, Rational(std::to_string(r)));
  Scalar s;
  s.field_ = field;
  s.r_ = r % field.characteristic();
  return s;
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw Error(ErrorCode::Parse, "malformed scalar '" + std::string(text) + "'");
  }
  if (sgn(q.get_den()) == 0) throw Error(ErrorCode::DivisionByZero, "scalar with zero denominator");
  q.canonicalize();
  return Scalar(field, q);
}

bool Scalar::is_zero() const {
  return field_.is_rational() ? sgn(q_) == 0 : r_ == 0;
}

std::string Scalar::to_string() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

namespace {
void require_same_field(const Scalar& a, const Scalar& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::DomainMismatch, "scalars from " + a.field().name() + " and " + b.field().name());
  }
}
}  // namespace

Scalar Scalar::operator-() const {
  if (field_.is_rational()) return Scalar(field_, -q_);
  return from_residue(field_, r_ == 0 ? 0 : field_.characteristic() - r_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field_.is_rational()) return Scalar(a.field_, a.q_ + b.q_);
  return Scalar::from_residue(a.field_, PrimeOps{a.field_.characteristic()}.add(a.r_, b.r_));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field_.is_rational()) return Scalar(a.field_, a.q_ * b.q_);
  return Scalar::from_residue(a.field_, PrimeOps{a.field_.characteristic()}.mul(a.r_, b.r_));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * invert(b); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

Scalar invert(const Scalar& s) {
  if (s.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + s.field().name());
  if (s.field().is_rational()) return Scalar(s.field(), 1 / s.rational());
  return Scalar::from_residue(s.field(), PrimeOps{s.field().characteristic()}.inv(s.residue()));
}

Scalar reduce_mod_p(const Rational& x, std::uint64_t p) {
  FieldSpec field = FieldSpec::prime(p);
  return Scalar::from_residue(field, residue_of_rational(x, p));
}

LocalizedRational::LocalizedRational(const Rational& value, std::uint64_t p) : value_(value), p_(p) {
  value_.canonicalize();
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (PrimeOps{p}.from_integer(value_.get_den()) == 0) {
    throw Error(ErrorCode::DenominatorDivisibleByP,
                value_.get_str() + " is not in Z_(" + std::to_string(p) + ")");
  }
}

LocalizedRational operator+(const LocalizedRational& a, const LocalizedRational& b) {
  if (a.p_ != b.p_) throw Error(ErrorCode::DomainMismatch, "localizations at different primes");
  return LocalizedRational(a.value_ + b.value_, a.p_);
}

LocalizedRational operator*(const LocalizedRational& a, const LocalizedRational& b) {
  if (a.p_ != b.p_) throw Error(ErrorCode::DomainMismatch, "localizations at different primes");
  return LocalizedRational(a.value_ * b.value_, a.p_);
}

bool in_localization_away_from(const Rational& x, const BigInt& n) {
  Rational q = x;
  q.canonicalize();
  for (const BigInt& f : prime_factors(q.get_den())) {
    if (!mpz_divisible_p(n.get_mpz_t(), f.get_mpz_t())) return false;
  }
  return true;
}

RationalOps::value_type RationalOps::inv(const value_type& a) const {
  if (sgn(a) == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in Q");
  return 1 / a;
}

PrimeOps::value_type PrimeOps::inv(value_type a) const {
  if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in Fp:" + std::to_string(p));
  return powmod(a, p - 2, p);
}

PrimeOps::value_type PrimeOps::from_integer(const BigInt& n) const {
  if (n.fits_slong_p()) {
    long v = n.get_si();
    if (v >= 0) return static_cast<value_type>(v) % p;
    std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
    std::uint64_t r = mag % p;
    return r == 0 ? 0 : p - r;
  }
  return residue_of(n, p);
}

}  // namespace harmonica

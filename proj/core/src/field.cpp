#include "sseq/field.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "sseq/errors.hpp"

namespace sseq {

namespace {

bool is_prime_number(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_same(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field())
    throw FieldMismatch("scalars from " + a.field().name() + " and " + b.field().name());
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpq_class mpq_from_int64(std::int64_t n, std::int64_t d) {
  mpz_class num, den;
  mpz_set_si(num.get_mpz_t(), n);
  mpz_set_si(den.get_mpz_t(), d);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (!is_prime_number(p)) throw UnsupportedInput("F_p requires a prime p, got " + std::to_string(p));
  return Field(p);
}

Field Field::parse(std::string_view name) {
  if (name == "Q" || name == "q") return rationals();
  if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), p);
    if (ec == std::errc() && ptr == name.data() + name.size()) return prime(p);
  }
  throw UnsupportedInput("unknown field '" + std::string(name) + "' (expected F<p> or Q)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Scalar::Scalar(Field f, long long v) : field_(f) {
  if (f.is_prime()) {
    std::int64_t p = f.characteristic();
    num_ = ((v % p) + p) % p;
  } else {
    num_ = v;
  }
}

Scalar::Scalar(Field f, const mpq_class& q) : field_(f) {
  if (f.is_prime()) {
    mpz_class p = f.characteristic();
    mpz_class n = q.get_num() % p;
    mpz_class d = q.get_den() % p;
    if (d == 0) throw RangeError("denominator divisible by the characteristic");
    if (n < 0) n += p;
    Scalar sn(f, n.get_si());
    Scalar sd(f, d.get_si());
    *this = sn / sd;
  } else {
    *this = from_mpq(q);
  }
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed scalar '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return Scalar(f, q);
}

Scalar Scalar::from_mpq(const mpq_class& q) {
  Scalar s;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    s.num_ = q.get_num().get_si();
    s.den_ = q.get_den().get_si();
  } else {
    s.num_ = 1;  // placeholder so is_zero() stays false
    s.den_ = 1;
    s.big_ = std::make_shared<const mpq_class>(q);
  }
  return s;
}

Scalar Scalar::from_ratio(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 lo = std::numeric_limits<std::int64_t>::min() + 1;
  constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
  if (num >= lo && num <= hi && den <= hi) {
    Scalar s;
    s.num_ = static_cast<std::int64_t>(num);
    s.den_ = static_cast<std::int64_t>(den);
    return s;
  }
  auto to_mpz = [](__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi_part = static_cast<unsigned long>(u >> 64);
    mpz_class r = hi_part;
    r <<= 64;
    r += mpz_class(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    return neg ? mpz_class(-r) : r;
  };
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  return from_mpq(q);
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_from_int64(num_, den_);
}

Scalar Scalar::operator-() const {
  if (field_.is_prime()) return Scalar(field_, -num_);
  if (big_) {
    Scalar s = from_mpq(-*big_);
    return s;
  }
  Scalar s = from_ratio(-static_cast<__int128>(num_), den_);
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw RangeError("division by zero");
  if (field_.is_prime()) {
    std::int64_t p = field_.characteristic();
    Scalar s(field_, mod_pow(num_, p - 2, p));
    return s;
  }
  if (big_) return from_mpq(1 / *big_);
  return from_ratio(den_, num_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  Field f = a.field_;
  if (f.is_prime()) {
    std::int64_t p = f.characteristic();
    std::int64_t r = a.num_ + b.num_;
    if (r >= p) r -= p;
    Scalar s;
    s.field_ = f;
    s.num_ = r;
    return s;
  }
  Scalar s;
  if (a.big_ || b.big_)
    s = Scalar::from_mpq(a.to_mpq() + b.to_mpq());
  else if (a.den_ == 1 && b.den_ == 1)
    s = Scalar::from_ratio(static_cast<__int128>(a.num_) + b.num_, 1);
  else
    s = Scalar::from_ratio(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                           static_cast<__int128>(a.den_) * b.den_);
  s.field_ = f;
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  Field f = a.field_;
  if (f.is_prime()) {
    Scalar s;
    s.field_ = f;
    s.num_ = static_cast<std::int64_t>(static_cast<__int128>(a.num_) * b.num_ % f.characteristic());
    return s;
  }
  Scalar s;
  if (a.big_ || b.big_)
    s = Scalar::from_mpq(a.to_mpq() * b.to_mpq());
  else
    s = Scalar::from_ratio(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  s.field_ = f;
  return s;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;  // canonical form: small values are never stored big
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string Scalar::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar sign_scalar(Field f, long long k) { return Scalar(f, (k % 2 == 0) ? 1 : -1); }

}  // namespace sseq

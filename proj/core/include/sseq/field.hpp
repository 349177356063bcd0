#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sseq {

// Either F_p for a prime p or the rationals.
class Field {
 public:
  Field() = default;  // Q
  static Field prime(std::uint32_t p);
  static Field rationals() { return Field(); }
  // Accepts "F2", "F3", "F5", ..., "Q".
  static Field parse(std::string_view name);

  bool is_prime() const { return p_ != 0; }
  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
  friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

// Exact field element. Rationals live in int64 num/den while they fit and move
// to a shared GMP value otherwise, so the common small case never allocates.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field f, long long v);
  Scalar(Field f, const mpq_class& q);
  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  // "3", "-2", "3/4"; residues are reduced mod p.
  static Scalar parse(Field f, std::string_view text);

  Field field() const { return field_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  Scalar operator-() const;
  Scalar inverse() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  mpq_class to_mpq() const;
  std::string to_string() const;

 private:
  static Scalar from_mpq(const mpq_class& q);
  static Scalar from_ratio(__int128 num, __int128 den);

  Field field_;
  std::int64_t num_ = 0;  // residue in [0,p) for F_p; numerator for Q
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

// (-1)^k as a field element.
Scalar sign_scalar(Field f, long long k);

}  // namespace sseq

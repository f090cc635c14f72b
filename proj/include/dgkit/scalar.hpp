#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dgkit {

class Scalar;

/// The base field: the rationals (characteristic 0) or a prime field F_p.
class Field {
 public:
  Field() = default;
  explicit Field(std::uint32_t characteristic);

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long value) const;
  Scalar from_mpq(const mpq_class& value) const;
  /// Parses "a" or "a/b" with integer a, b.
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_ = 0;
};

/// Exact field element. Every scalar remembers its characteristic; mixing fields throws.
class Scalar {
 public:
  Scalar() = default;

  std::uint32_t characteristic() const { return p_; }
  Field field() const { return Field(p_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  /// Numerator/denominator for char 0; the canonical residue in [0, p) otherwise.
  const mpq_class& value() const { return value_; }
  std::string to_string() const;

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

 private:
  friend class Field;
  Scalar(mpq_class value, std::uint32_t p);
  void normalize();
  void check_same(const Scalar& other) const;

  mpq_class value_ = 0;
  std::uint32_t p_ = 0;
};

}  // namespace dgkit

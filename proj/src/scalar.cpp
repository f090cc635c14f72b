#include "dgkit/scalar.hpp"

#include "dgkit/error.hpp"

namespace dgkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DSquaredNonzero: return "DSquaredNonzero";
    case ErrorKind::UnknownArrow: return "UnknownArrow";
    case ErrorKind::NonzeroArrowDegree: return "NonzeroArrowDegree";
    case ErrorKind::InconsistentPresentation: return "InconsistentPresentation";
    case ErrorKind::UnsafeWindow: return "UnsafeWindow";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::NotConilpotent: return "NotConilpotent";
    case ErrorKind::MalformedRibbon: return "MalformedRibbon";
    case ErrorKind::NotFormal: return "NotFormal";
    case ErrorKind::NotGentle: return "NotGentle";
    case ErrorKind::NoMarkedInterval: return "NoMarkedInterval";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::TooFewKnownFlags: return "TooFewKnownFlags";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field::Field(std::uint32_t characteristic) : p_(characteristic) {
  if (p_ != 0 && !is_prime(p_))
    throw Error(ErrorKind::InvalidInput,
                "characteristic must be 0 or prime, got " + std::to_string(p_));
}

Scalar Field::zero() const { return Scalar(0, p_); }
Scalar Field::one() const { return Scalar(1, p_); }
Scalar Field::from_int(long value) const { return Scalar(mpq_class(value), p_); }
Scalar Field::from_mpq(const mpq_class& value) const { return Scalar(value, p_); }

Scalar Field::parse(std::string_view text) const {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw Error(ErrorKind::InvalidInput, "malformed scalar '" + s + "'");
  if (q.get_den() == 0)
    throw Error(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
  q.canonicalize();
  return Scalar(q, p_);
}

Scalar::Scalar(mpq_class value, std::uint32_t p) : value_(std::move(value)), p_(p) {
  normalize();
}

void Scalar::normalize() {
  if (p_ == 0) {
    value_.canonicalize();
    return;
  }
  mpz_class p(p_);
  mpz_class num = value_.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = value_.get_den() % p;
  if (den < 0) den += p;
  if (den == 0)
    throw Error(ErrorKind::InvalidInput,
                "denominator vanishes in characteristic " + std::to_string(p_));
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    num = (num * inv) % p;
  }
  value_ = mpq_class(num);
}

void Scalar::check_same(const Scalar& other) const {
  if (other.p_ != p_)
    throw Error(ErrorKind::InvalidInput, "scalars from different characteristics mixed");
}

std::string Scalar::to_string() const { return value_.get_str(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
  return Scalar(mpq_class(1) / value_, p_);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same(rhs);
  value_ += rhs.value_;
  if (p_ != 0) normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same(rhs);
  value_ -= rhs.value_;
  if (p_ != 0) normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same(rhs);
  value_ *= rhs.value_;
  if (p_ != 0) normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same(rhs);
  if (rhs.is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
  value_ /= rhs.value_;
  if (p_ != 0) normalize();
  return *this;
}

Scalar Scalar::operator-() const { return Scalar(-value_, p_); }

}  // namespace dgkit

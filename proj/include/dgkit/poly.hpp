#pragma once

#include <vector>

#include "dgkit/scalar.hpp"

namespace dgkit {

/// Univariate polynomial, coefficients low degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  Poly(Field field, std::vector<Scalar> coeffs);
  static Poly constant(const Field& field, const Scalar& c);
  static Poly x(const Field& field);

  const Field& field() const { return field_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i) const;
  Scalar leading() const { return c_.back(); }
  Poly monic() const;
  std::string to_string() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  Field field_;
  std::vector<Scalar> c_;
};

/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);
/// s, t with s a + t b = gcd(a, b) (monic).
std::pair<Poly, Poly> ext_gcd(const Poly& a, const Poly& b);
Poly derivative(const Poly& p);

/// Monic irreducible factors over Q of a squarefree polynomial with rational coefficients
/// (Kronecker's method on the primitive integer multiple). Throws Unsupported if the search
/// space is too large.
std::vector<Poly> factor_rational(const Poly& p);

}  // namespace dgkit

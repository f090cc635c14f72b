#include "dgkit/poly.hpp"

#include <algorithm>
#include <optional>

#include "dgkit/error.hpp"

namespace dgkit {

Poly::Poly(Field field, std::vector<Scalar> coeffs) : field_(field), c_(std::move(coeffs)) {
  trim();
}

Poly Poly::constant(const Field& field, const Scalar& c) { return Poly(field, {c}); }

Poly Poly::x(const Field& field) { return Poly(field, {field.zero(), field.one()}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return field_.zero();
  return c_[i];
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Scalar inv = c_.back().inverse();
  std::vector<Scalar> out;
  for (const auto& c : c_) out.push_back(c * inv);
  return Poly(field_, std::move(out));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || !c_[i].is_one()) out += c_[i].to_string();
    if (i > 0) out += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)));
  return Poly(a.field_, std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)));
  return Poly(a.field_, std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_, {});
  std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Poly(a.field_, std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
  const Field& k = a.field();
  std::vector<Scalar> q(std::max(0, a.degree() - b.degree() + 1), k.zero());
  Poly r = a;
  Scalar inv = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    Scalar f = r.leading() * inv;
    q[shift] = f;
    std::vector<Scalar> sub(shift + 1, k.zero());
    sub[shift] = f;
    r = r - Poly(k, sub) * b;
  }
  return {Poly(k, std::move(q)), r};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<Poly, Poly> ext_gcd(const Poly& a, const Poly& b) {
  const Field& k = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(k, k.one()), s1(k, {});
  Poly t0(k, {}), t1 = Poly::constant(k, k.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Scalar inv = r0.leading().inverse();
  return {s0 * Poly::constant(k, inv), t0 * Poly::constant(k, inv)};
}

Poly derivative(const Poly& p) {
  std::vector<Scalar> out;
  for (int i = 1; i <= p.degree(); ++i) out.push_back(p.coeffs()[i] * p.field().from_int(i));
  return Poly(p.field(), std::move(out));
}

namespace {

using ZPoly = std::vector<mpz_class>;  // low degree first

mpz_class eval(const ZPoly& f, const mpz_class& x) {
  mpz_class v = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Exact division over Z; nullopt when g does not divide f.
std::optional<ZPoly> divide(const ZPoly& f, const ZPoly& g) {
  std::vector<mpz_class> r = f;
  int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
  if (dg > df) return std::nullopt;
  ZPoly q(df - dg + 1);
  for (int i = df - dg; i >= 0; --i) {
    mpz_class c = r[i + dg];
    if (c % g.back() != 0) return std::nullopt;
    q[i] = c / g.back();
    for (int j = 0; j <= dg; ++j) r[i + j] -= q[i] * g[j];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return q;
}

void normalize_sign(ZPoly& f) {
  if (f.back() < 0)
    for (auto& c : f) c = -c;
}

std::vector<ZPoly> factor_integer(ZPoly f, long& budget) {
  normalize_sign(f);
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  // Integer roots first; Kronecker needs points where f does not vanish.
  std::vector<mpz_class> points;
  for (long k = 0; static_cast<int>(points.size()) <= n / 2; ++k) {
    for (long x : k == 0 ? std::vector<long>{0} : std::vector<long>{k, -k}) {
      mpz_class v = eval(f, x);
      if (v == 0) {
        ZPoly lin{mpz_class(-x), mpz_class(1)};
        auto rest = factor_integer(*divide(f, lin), budget);
        rest.push_back(lin);
        return rest;
      }
      if (static_cast<int>(points.size()) <= n / 2) points.push_back(x);
    }
  }
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<std::vector<mpz_class>> choices;
    for (int i = 0; i <= d; ++i) {
      auto divs = divisors(eval(f, points[i]));
      std::vector<mpz_class> signed_divs;
      for (const auto& v : divs) {
        signed_divs.push_back(v);
        if (i > 0) signed_divs.push_back(-v);
      }
      choices.push_back(std::move(signed_divs));
    }
    std::vector<std::size_t> idx(d + 1, 0);
    while (true) {
      if (--budget < 0)
        throw Error(ErrorKind::Unsupported, "polynomial factorization search too large");
      // Lagrange interpolation through (points[i], choices[i][idx[i]]).
      std::vector<mpq_class> g(d + 1, 0);
      for (int i = 0; i <= d; ++i) {
        std::vector<mpq_class> basis{1};
        mpq_class denom = 1;
        for (int j = 0; j <= d; ++j) {
          if (j == i) continue;
          std::vector<mpq_class> next(basis.size() + 1, 0);
          for (std::size_t k = 0; k < basis.size(); ++k) {
            next[k + 1] += basis[k];
            next[k] -= basis[k] * points[j];
          }
          basis = std::move(next);
          denom *= mpq_class(points[i] - points[j]);
        }
        mpq_class scale = mpq_class(choices[i][idx[i]]) / denom;
        for (int k = 0; k <= d; ++k) g[k] += basis[k] * scale;
      }
      bool integral = g[d] != 0;
      ZPoly gz;
      for (auto& c : g) {
        c.canonicalize();
        if (c.get_den() != 1) integral = false;
        gz.push_back(c.get_num());
      }
      if (integral) {
        normalize_sign(gz);
        if (auto q = divide(f, gz)) {
          auto left = factor_integer(gz, budget);
          auto right = factor_integer(*q, budget);
          left.insert(left.end(), right.begin(), right.end());
          return left;
        }
      }
      int pos = 0;
      while (pos <= d && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
      if (pos > d) break;
    }
  }
  return {f};
}

}  // namespace

std::vector<Poly> factor_rational(const Poly& p) {
  const Field& k = p.field();
  if (!k.is_rational()) throw Error(ErrorKind::InvalidInput, "factor_rational needs characteristic 0");
  if (p.degree() < 1) return {};
  mpz_class lcm_den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.value().get_den_mpz_t());
  ZPoly f;
  mpz_class content = 0;
  for (const auto& c : p.coeffs()) {
    mpz_class v = c.value().get_num() * (lcm_den / c.value().get_den());
    f.push_back(v);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  for (auto& c : f) c /= content;
  long budget = 5'000'000;
  std::vector<Poly> out;
  for (const auto& z : factor_integer(f, budget)) {
    std::vector<Scalar> cs;
    for (const auto& c : z) cs.push_back(k.from_mpq(mpq_class(c)));
    out.push_back(Poly(k, std::move(cs)).monic());
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_string() < b.to_string();
  });
  return out;
}

}  // namespace dgkit

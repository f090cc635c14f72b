#include "dgkit/fdalgebra.hpp"

#include <algorithm>
#include <random>

#include "dgkit/error.hpp"
#include "dgkit/poly.hpp"

namespace dgkit {

FiniteDimAlgebra::FiniteDimAlgebra(Field field, std::vector<std::string> labels,
                                   std::vector<std::vector<SparseVec>> table)
    : field_(field), labels_(std::move(labels)), table_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (table_.size() != n)
    throw Error(ErrorKind::InvalidInput, "structure table has wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorKind::InvalidInput, "structure table is not square");
    for (const auto& v : row)
      if (!v.empty() && v.entries().back().first >= static_cast<int>(n))
        throw Error(ErrorKind::InvalidInput, "structure constant out of range");
  }
}

void FiniteDimAlgebra::set_weights(std::vector<int> w) {
  if (!w.empty() && static_cast<int>(w.size()) != dim())
    throw Error(ErrorKind::InvalidInput, "weight list has wrong length");
  weights_ = std::move(w);
}

SparseVec FiniteDimAlgebra::mul(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out.axpy(a * b, table_[i][j]);
  return out;
}

SparseVec FiniteDimAlgebra::power(const SparseVec& x, long n) const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "power exponent must be positive");
  std::optional<SparseVec> result;
  SparseVec base = x;
  while (n > 0) {
    if (n & 1) result = result ? mul(*result, base) : base;
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return *result;
}

std::optional<SparseVec> solve_linear(const std::vector<SparseVec>& columns, const SparseVec& rhs,
                                      const Field& field) {
  Echelon e(field);
  for (std::size_t k = 0; k < columns.size(); ++k)
    e.insert(columns[k], SparseVec::unit(static_cast<int>(k), field));
  SparseVec v = rhs, tag;
  e.reduce(v, &tag);
  if (!v.empty()) return std::nullopt;
  tag.scale(-field.one());
  return tag;
}

std::optional<SparseVec> FiniteDimAlgebra::unit() const {
  const int n = dim();
  std::vector<SparseVec> columns(n);
  SparseVec rhs;
  for (int j = 0; j < n; ++j) {
    rhs.add(j * n + j, field_.one());
    rhs.add(n * n + j * n + j, field_.one());
  }
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      for (const auto& [r, c] : table_[k][j]) columns[k].add(j * n + r, c);
      for (const auto& [r, c] : table_[j][k]) columns[k].add(n * n + j * n + r, c);
    }
  return solve_linear(columns, rhs, field_);
}

bool FiniteDimAlgebra::is_associative() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        SparseVec left = mul(table_[i][j], SparseVec::unit(k, field_));
        SparseVec right = mul(SparseVec::unit(i, field_), table_[j][k]);
        if (!(left == right)) return false;
      }
  return true;
}

bool FiniteDimAlgebra::is_commutative() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (!(table_[i][j] == table_[j][i])) return false;
  return true;
}

SparseVec FiniteDimAlgebra::Quotient::project(SparseVec v) const {
  ideal.reduce_full(v);
  SparseVec out;
  for (const auto& [i, c] : v) {
    auto it = std::lower_bound(kept.begin(), kept.end(), i);
    out.add(static_cast<int>(it - kept.begin()), c);
  }
  return out;
}

FiniteDimAlgebra::Quotient FiniteDimAlgebra::quotient(const std::vector<SparseVec>& ideal) const {
  Quotient q{FiniteDimAlgebra(), {}, Echelon(field_)};
  for (const auto& v : ideal) q.ideal.insert(v);
  std::vector<std::string> labels;
  for (int i = 0; i < dim(); ++i)
    if (!q.ideal.has_pivot(i)) {
      q.kept.push_back(i);
      labels.push_back(labels_[i]);
    }
  std::vector<std::vector<SparseVec>> table(q.kept.size());
  for (std::size_t a = 0; a < q.kept.size(); ++a)
    for (std::size_t b = 0; b < q.kept.size(); ++b)
      table[a].push_back(q.project(table_[q.kept[a]][q.kept[b]]));
  q.algebra = FiniteDimAlgebra(field_, std::move(labels), std::move(table));
  if (!weights_.empty()) {
    std::vector<int> w;
    for (int i : q.kept) w.push_back(weights_[i]);
    q.algebra.set_weights(std::move(w));
  }
  return q;
}

bool FiniteDimAlgebra::is_two_sided_ideal(const std::vector<SparseVec>& span) const {
  Echelon e(field_);
  for (const auto& v : span) e.insert(v);
  for (const auto& v : span)
    for (int i = 0; i < dim(); ++i) {
      auto b = SparseVec::unit(i, field_);
      if (!e.contains(mul(b, v)) || !e.contains(mul(v, b))) return false;
    }
  return true;
}

std::optional<int> FiniteDimAlgebra::nilpotency_index(const std::vector<SparseVec>& span) const {
  std::vector<SparseVec> current;
  {
    Echelon e(field_);
    for (const auto& v : span)
      if (e.insert(v)) current.push_back(v);
  }
  for (int k = 1; k <= dim() + 1; ++k) {
    if (current.empty()) return k - 1;
    Echelon next_e(field_);
    std::vector<SparseVec> next;
    for (const auto& x : current)
      for (const auto& y : span) {
        SparseVec p = mul(x, y);
        if (next_e.insert(p)) next.push_back(std::move(p));
      }
    if (next.size() >= current.size() && !next.empty()) return std::nullopt;
    current = std::move(next);
  }
  return std::nullopt;
}

namespace {

std::vector<SparseVec> kernel_of_images(const std::vector<SparseVec>& images, int rows,
                                        const Field& k) {
  SparseMatrix m(rows, static_cast<int>(images.size()));
  for (std::size_t c = 0; c < images.size(); ++c) m.set_column(static_cast<int>(c), images[c]);
  return kernel_image(m, k).kernel_basis;
}

std::vector<SparseVec> frobenius_kernel(const FiniteDimAlgebra& a) {
  const Field& k = a.field();
  long p = k.characteristic();
  long q = p;
  while (q < a.dim() + 1) q *= p;
  std::vector<SparseVec> images;
  for (int i = 0; i < a.dim(); ++i) images.push_back(a.power(SparseVec::unit(i, k), q));
  return kernel_of_images(images, a.dim(), k);
}

}  // namespace

Radical radical(const FiniteDimAlgebra& a) {
  const Field& k = a.field();
  const int n = a.dim();
  if (k.is_rational()) {
    // tr(L_z) is linear in z; T(b_i, b_j) = tr(L_{b_i b_j}).
    std::vector<Scalar> trace(n, k.zero());
    for (int z = 0; z < n; ++z)
      for (int i = 0; i < n; ++i) trace[z] += a.mul(z, i).at(i, k);
    std::vector<SparseVec> columns(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar t = k.zero();
        for (const auto& [z, c] : a.mul(i, j)) t += c * trace[z];
        columns[i].add(j, t);
      }
    return {kernel_of_images(columns, n, k), "trace form"};
  }
  if (a.is_commutative()) return {frobenius_kernel(a), "Frobenius kernel"};
  if (a.weights().empty())
    throw Error(ErrorKind::Unsupported,
                "radical of a noncommutative algebra in positive characteristic needs a grading");
  std::vector<SparseVec> span;
  for (int i = 0; i < n; ++i)
    if (a.weights()[i] > 0) span.push_back(SparseVec::unit(i, k));
  if (!a.is_two_sided_ideal(span) || !a.nilpotency_index(span))
    throw Error(ErrorKind::Unsupported, "positive-weight span is not a nilpotent ideal");
  auto q = a.quotient(span);
  if (!q.algebra.is_commutative() || !frobenius_kernel(q.algebra).empty())
    throw Error(ErrorKind::Unsupported, "quotient by positive-weight span is not reduced commutative");
  return {span, "positive-weight ideal"};
}

namespace {

SparseVec eval_poly(const FiniteDimAlgebra& a, const Poly& f, const SparseVec& s,
                    const SparseVec& one) {
  SparseVec out;
  for (int i = f.degree(); i >= 0; --i) {
    out = a.mul(out, s);
    out.axpy(f.coeffs()[i], one);
  }
  return out;
}

// Minimal polynomial of s over k inside the unital algebra a.
Poly min_poly(const FiniteDimAlgebra& a, const SparseVec& s, const SparseVec& one) {
  const Field& k = a.field();
  Echelon e(k);
  SparseVec power = one;
  for (int m = 0; m <= a.dim(); ++m) {
    SparseVec v = power, tag = SparseVec::unit(m, k);
    e.reduce(v, &tag);
    if (v.empty()) {
      std::vector<Scalar> coeffs(m + 1, k.zero());
      for (const auto& [i, c] : tag) coeffs[i] = c;
      return Poly(k, std::move(coeffs)).monic();
    }
    e.insert(std::move(v), std::move(tag));
    power = a.mul(power, s);
  }
  throw Error(ErrorKind::InvalidInput, "minimal polynomial search did not terminate");
}

int rank_of_multiples(const FiniteDimAlgebra& a, const SparseVec& e) {
  Echelon ech(a.field());
  for (int i = 0; i < a.dim(); ++i) ech.insert(a.mul(e, SparseVec::unit(i, a.field())));
  return ech.rank();
}

std::vector<SparseVec> split_rational(const FiniteDimAlgebra& s, const SparseVec& one) {
  const Field& k = s.field();
  std::mt19937 rng(20240601);
  for (int attempt = 0; attempt < 64; ++attempt) {
    SparseVec x;
    for (int i = 0; i < s.dim(); ++i)
      x.add(i, k.from_int(attempt == 0 ? i + 1 : static_cast<long>(rng() % 19) - 9));
    Poly m = min_poly(s, x, one);
    if (m.degree() != s.dim()) continue;
    std::vector<SparseVec> out;
    for (const Poly& g : factor_rational(m)) {
      Poly rest = divmod(m, g).first;
      auto [u, v] = ext_gcd(rest, g);  // u rest + v g = 1
      out.push_back(eval_poly(s, divmod(u * rest, m).second, x, one));
    }
    return out;
  }
  throw Error(ErrorKind::Unsupported, "no primitive element found for semisimple splitting");
}

std::vector<SparseVec> split_modular(const FiniteDimAlgebra& s, const SparseVec& one) {
  const Field& k = s.field();
  const long p = k.characteristic();
  // Frobenius-fixed subalgebra: its dimension is the number of field factors.
  std::vector<SparseVec> images;
  for (int i = 0; i < s.dim(); ++i) {
    SparseVec v = s.power(SparseVec::unit(i, k), p);
    v.axpy(-k.one(), SparseVec::unit(i, k));
    images.push_back(std::move(v));
  }
  std::vector<SparseVec> fixed = kernel_of_images(images, s.dim(), k);
  std::vector<SparseVec> idem{one};
  for (const auto& f : fixed) {
    if (idem.size() == fixed.size()) break;
    std::vector<SparseVec> next;
    for (const auto& e : idem) {
      SparseVec g = s.mul(e, f);
      // Inside eS (unit e) g satisfies a split separable polynomial; find its roots.
      Poly m = min_poly(s, g, e);
      std::vector<Scalar> roots;
      for (long c = 0; c < p && static_cast<int>(roots.size()) < m.degree(); ++c) {
        Scalar sc = k.from_int(c);
        Scalar val = k.zero();
        for (int i = m.degree(); i >= 0; --i) val = val * sc + m.coeffs()[i];
        if (val.is_zero()) roots.push_back(sc);
      }
      for (std::size_t r = 0; r < roots.size(); ++r) {
        SparseVec h = e;
        for (std::size_t t = 0; t < roots.size(); ++t) {
          if (t == r) continue;
          SparseVec factor = g;
          factor.axpy(-roots[t], e);
          factor.scale((roots[r] - roots[t]).inverse());
          h = s.mul(h, factor);
        }
        next.push_back(std::move(h));
      }
    }
    idem = std::move(next);
  }
  return idem;
}

}  // namespace

SemisimpleSummary describe_semisimple(const FiniteDimAlgebra& s) {
  SemisimpleSummary out;
  out.dim = s.dim();
  out.commutative = s.is_commutative();
  if (s.dim() == 0) {
    out.description = "0";
    return out;
  }
  if (!out.commutative) {
    out.description = "noncommutative semisimple of dim " + std::to_string(s.dim());
    return out;
  }
  auto one = s.unit();
  if (!one) throw Error(ErrorKind::InvalidInput, "semisimple quotient has no unit");
  out.idempotents = s.field().is_rational() ? split_rational(s, *one) : split_modular(s, *one);
  std::string desc;
  for (const auto& e : out.idempotents) {
    int d = rank_of_multiples(s, e);
    out.residue_dims.push_back(d);
  }
  // Present factors in a canonical order: by residue degree.
  std::vector<std::size_t> order(out.idempotents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.residue_dims[a] < out.residue_dims[b];
  });
  std::vector<SparseVec> idem;
  std::vector<int> dims;
  for (auto i : order) {
    idem.push_back(out.idempotents[i]);
    dims.push_back(out.residue_dims[i]);
    if (!desc.empty()) desc += " x ";
    desc += out.residue_dims[i] == 1 ? "k" : "k(deg " + std::to_string(out.residue_dims[i]) + ")";
  }
  out.idempotents = std::move(idem);
  out.residue_dims = std::move(dims);
  out.description = desc;
  return out;
}

SparseVec lift_idempotent(const FiniteDimAlgebra& a, SparseVec e) {
  const Field& k = a.field();
  for (int iter = 0; iter < 64; ++iter) {
    SparseVec e2 = a.mul(e, e);
    if (e2 == e) return e;
    SparseVec next = e2;
    next.scale(k.from_int(3));
    next.axpy(k.from_int(-2), a.mul(e2, e));
    e = std::move(next);
  }
  throw Error(ErrorKind::InvalidInput, "idempotent lifting did not converge");
}

std::vector<LocalFactor> commutative_decompose(const FiniteDimAlgebra& a) {
  if (!a.is_commutative()) throw Error(ErrorKind::NotCommutative, "structure constants are not commutative");
  if (!a.unit()) throw Error(ErrorKind::InvalidInput, "algebra has no unit");
  Radical rad = radical(a);
  auto q = a.quotient(rad.basis);
  SemisimpleSummary s = describe_semisimple(q.algebra);
  std::vector<LocalFactor> out;
  for (std::size_t f = 0; f < s.idempotents.size(); ++f) {
    SparseVec pre;
    for (const auto& [i, c] : s.idempotents[f]) pre.add(q.kept[i], c);
    LocalFactor lf;
    lf.idempotent = lift_idempotent(a, pre);
    lf.dim = rank_of_multiples(a, lf.idempotent);
    lf.residue_dim = s.residue_dims[f];
    out.push_back(std::move(lf));
  }
  return out;
}

}  // namespace dgkit

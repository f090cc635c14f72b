#include "dgkit/linalg.hpp"

#include <algorithm>
#include <tuple>

#include "dgkit/error.hpp"

namespace dgkit {

SparseVec SparseVec::unit(int index, const Field& field) {
  SparseVec v;
  v.entries_.emplace_back(index, field.one());
  return v;
}

Scalar SparseVec::at(int index, const Field& field) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return field.zero();
}

void SparseVec::add(int index, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    it->second += coeff;
    if (it->second.is_zero()) entries_.erase(it);
  } else {
    entries_.insert(it, Entry(index, coeff));
  }
}

void SparseVec::axpy(const Scalar& factor, const SparseVec& other) {
  if (factor.is_zero() || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Scalar s = a->second + factor * b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVec::scale(const Scalar& factor) {
  if (factor.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= factor;
}

void SparseMatrix::add(int row, int col, const Scalar& value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
    throw Error(ErrorKind::InvalidInput, "matrix index out of range");
  columns_[col].add(row, value);
}

void SparseMatrix::set_column(int col, SparseVec column) {
  if (col < 0 || col >= cols_) throw Error(ErrorKind::InvalidInput, "column out of range");
  if (!column.empty() && column.entries().back().first >= rows_)
    throw Error(ErrorKind::InvalidInput, "row index out of range");
  columns_[col] = std::move(column);
}

std::vector<std::tuple<int, int, Scalar>> SparseMatrix::triples() const {
  std::vector<std::tuple<int, int, Scalar>> out;
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c]) out.emplace_back(r, c, v);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v, const Field&) const {
  SparseVec out;
  for (const auto& [c, coeff] : v) out.axpy(coeff, columns_.at(c));
  return out;
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& rhs, const Field& field) const {
  if (rhs.rows_ != cols_) throw Error(ErrorKind::InvalidInput, "dimension mismatch in compose");
  SparseMatrix out(rows_, rhs.cols_);
  for (int c = 0; c < rhs.cols_; ++c) out.columns_[c] = apply(rhs.columns_[c], field);
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseVec& c) { return c.empty(); });
}

void Echelon::reduce(SparseVec& v, SparseVec* tag) const {
  while (!v.empty()) {
    auto it = pivot_.find(v.leading_index());
    if (it == pivot_.end()) return;
    const Row& row = rows_[it->second];
    Scalar factor = -v.leading_coefficient();
    v.axpy(factor, row.vec);
    if (tag) tag->axpy(factor, row.tag);
  }
}

void Echelon::reduce_full(SparseVec& v, SparseVec* tag) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    const auto& [index, coeff] = v.entries()[pos];
    auto it = pivot_.find(index);
    if (it == pivot_.end()) {
      ++pos;
      continue;
    }
    const Row& row = rows_[it->second];
    Scalar factor = -coeff;
    v.axpy(factor, row.vec);
    if (tag) tag->axpy(factor, row.tag);
    // Entries before `pos` are untouched: every row starts at its pivot.
  }
}

bool Echelon::insert(SparseVec v, SparseVec tag) {
  reduce(v, &tag);
  if (v.empty()) return false;
  Scalar inv = v.leading_coefficient().inverse();
  v.scale(inv);
  tag.scale(inv);
  pivot_[v.leading_index()] = static_cast<int>(rows_.size());
  rows_.push_back(Row{std::move(v), std::move(tag)});
  return true;
}

bool Echelon::contains(SparseVec v) const {
  reduce(v);
  return v.empty();
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> out;
  for (const auto& [p, _] : pivot_) out.push_back(p);
  return out;
}

KernelImage kernel_image(const SparseMatrix& m, const Field& field) {
  KernelImage out;
  Echelon echelon(field);
  for (int c = 0; c < m.cols(); ++c) {
    SparseVec image = m.column(c);
    SparseVec tag = SparseVec::unit(c, field);
    echelon.reduce(image, &tag);
    if (image.empty()) {
      out.kernel_basis.push_back(std::move(tag));
    } else {
      echelon.insert(std::move(image), std::move(tag));
    }
  }
  out.rank = echelon.rank();
  return out;
}

void GradedVectorSpace::set_degree(int degree, std::vector<std::string> labels) {
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::InvalidInput,
                "duplicate basis label in degree " + std::to_string(degree));
  if (labels.empty()) {
    pieces_.erase(degree);
  } else {
    pieces_[degree] = std::move(labels);
  }
}

int GradedVectorSpace::dim(int degree) const {
  auto it = pieces_.find(degree);
  return it == pieces_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<std::string>& GradedVectorSpace::labels(int degree) const {
  static const std::vector<std::string> empty;
  auto it = pieces_.find(degree);
  return it == pieces_.end() ? empty : it->second;
}

std::map<int, int> GradedVectorSpace::dims() const {
  std::map<int, int> out;
  for (const auto& [d, l] : pieces_) out[d] = static_cast<int>(l.size());
  return out;
}

int GradedVectorSpace::total_dim() const {
  int n = 0;
  for (const auto& [d, l] : pieces_) n += static_cast<int>(l.size());
  return n;
}

Cohomology cohomology_of_complex(const ChainComplex& complex, int lo, int hi,
                                 const Field& field) {
  auto differential = [&](int i) -> const SparseMatrix* {
    auto it = complex.differentials.find(i);
    return it == complex.differentials.end() ? nullptr : &it->second;
  };
  for (const auto& [i, d] : complex.differentials) {
    if (d.cols() != complex.spaces.dim(i) || d.rows() != complex.spaces.dim(i + 1))
      throw Error(ErrorKind::InvalidInput,
                  "differential in degree " + std::to_string(i) + " has wrong shape");
  }
  for (int i = lo; i <= hi + 1; ++i) {
    const SparseMatrix* in = differential(i - 1);
    const SparseMatrix* out = differential(i);
    if (in && out && !out->compose(*in, field).is_zero())
      throw Error(ErrorKind::DSquaredNonzero, "d^2 != 0 entering degree " + std::to_string(i + 1));
  }

  Cohomology result;
  for (int i = lo; i <= hi; ++i) {
    int n = complex.spaces.dim(i);
    std::vector<SparseVec> kernel;
    if (const SparseMatrix* out = differential(i)) {
      kernel = kernel_image(*out, field).kernel_basis;
    } else {
      for (int c = 0; c < n; ++c) kernel.push_back(SparseVec::unit(c, field));
    }
    Echelon boundaries(field);
    if (const SparseMatrix* in = differential(i - 1))
      for (int c = 0; c < in->cols(); ++c) boundaries.insert(in->column(c));

    std::vector<SparseVec> reps;
    std::vector<std::string> labels;
    const auto& chain_labels = complex.spaces.labels(i);
    for (auto& z : kernel) {
      if (boundaries.insert(z)) {
        labels.push_back("[" + chain_labels.at(z.leading_index()) + "]");
        reps.push_back(z);
      }
    }
    // Labels come from leading chain terms and may collide; disambiguate.
    std::map<std::string, int> seen;
    for (auto& l : labels) {
      int k = seen[l]++;
      if (k > 0) l += "#" + std::to_string(k);
    }
    result.classes.set_degree(i, std::move(labels));
    if (!reps.empty()) result.representatives[i] = std::move(reps);
  }
  return result;
}

}  // namespace dgkit

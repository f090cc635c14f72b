#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgkit/scalar.hpp"

namespace dgkit {

/// Sparse vector: entries sorted by index, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<int, Scalar>;

  SparseVec() = default;
  static SparseVec unit(int index, const Field& field);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Coefficient at `index` (zero of `field` if absent).
  Scalar at(int index, const Field& field) const;
  int leading_index() const { return entries_.front().first; }
  const Scalar& leading_coefficient() const { return entries_.front().second; }

  /// Adds `coeff` at `index` (entries may arrive in any order).
  void add(int index, const Scalar& coeff);
  /// this += factor * other.
  void axpy(const Scalar& factor, const SparseVec& other);
  void scale(const Scalar& factor);

  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::vector<Entry> entries_;
};

/// rows x cols matrix given by (row, col, value) triples; columns are the domain.
class SparseMatrix {
 public:
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void add(int row, int col, const Scalar& value);
  void set_column(int col, SparseVec column);
  const SparseVec& column(int col) const { return columns_.at(col); }
  std::vector<std::tuple<int, int, Scalar>> triples() const;

  /// Image of a domain vector.
  SparseVec apply(const SparseVec& v, const Field& field) const;
  /// this * rhs.
  SparseMatrix compose(const SparseMatrix& rhs, const Field& field) const;
  bool is_zero() const;

 private:
  int rows_;
  int cols_;
  std::vector<SparseVec> columns_;
};

/// Incremental row echelon form with optional tracking of how each row was combined.
/// Pivot is always the earliest nonzero index.
class Echelon {
 public:
  explicit Echelon(Field field) : field_(field) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  bool has_pivot(int index) const { return pivot_.count(index) != 0; }

  /// Reduces v (and its tag combination) until its leading index is not a pivot.
  void reduce(SparseVec& v, SparseVec* tag = nullptr) const;
  /// Clears every pivot index from v.
  void reduce_full(SparseVec& v, SparseVec* tag = nullptr) const;
  /// Inserts v; returns true if the rank grew. The stored row is normalized.
  bool insert(SparseVec v, SparseVec tag = {});
  bool contains(SparseVec v) const;

  std::vector<int> pivots() const;

 private:
  struct Row {
    SparseVec vec;
    SparseVec tag;
  };
  Field field_;
  std::vector<Row> rows_;
  std::map<int, int> pivot_;
};

struct KernelImage {
  std::vector<SparseVec> kernel_basis;
  int rank = 0;
};

KernelImage kernel_image(const SparseMatrix& m, const Field& field);

/// Degree-indexed finite-dimensional space with named bases.
class GradedVectorSpace {
 public:
  void set_degree(int degree, std::vector<std::string> labels);
  int dim(int degree) const;
  const std::vector<std::string>& labels(int degree) const;
  const std::map<int, std::vector<std::string>>& pieces() const { return pieces_; }
  std::map<int, int> dims() const;
  int total_dim() const;

 private:
  std::map<int, std::vector<std::string>> pieces_;
};

struct ChainComplex {
  GradedVectorSpace spaces;
  /// d_i : C^i -> C^{i+1}, with rows = dim C^{i+1}, cols = dim C^i.
  std::map<int, SparseMatrix> differentials;
};

struct Cohomology {
  GradedVectorSpace classes;
  /// Cocycle representatives per degree, in coordinates of the chain space.
  std::map<int, std::vector<SparseVec>> representatives;
};

/// H^i for lo <= i <= hi. Spaces must be known on [lo-1, hi+1]; absent differentials are zero.
Cohomology cohomology_of_complex(const ChainComplex& complex, int lo, int hi, const Field& field);

}  // namespace dgkit

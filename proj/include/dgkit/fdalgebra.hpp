#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgkit/linalg.hpp"
#include "dgkit/scalar.hpp"

namespace dgkit {

/// Ungraded finite-dimensional algebra given by structure constants on a labelled basis.
class FiniteDimAlgebra {
 public:
  FiniteDimAlgebra() = default;
  /// table[i][j] = b_i b_j in basis coordinates.
  FiniteDimAlgebra(Field field, std::vector<std::string> labels,
                   std::vector<std::vector<SparseVec>> table);

  const Field& field() const { return field_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVec& mul(int i, int j) const { return table_.at(i).at(j); }
  SparseVec mul(const SparseVec& x, const SparseVec& y) const;
  SparseVec power(const SparseVec& x, long n) const;

  /// Optional non-negative grading hint (e.g. path weight); empty when unknown.
  const std::vector<int>& weights() const { return weights_; }
  void set_weights(std::vector<int> w);

  /// Two-sided unit, if one exists.
  std::optional<SparseVec> unit() const;
  bool is_associative() const;
  bool is_commutative() const;

  /// Quotient by the two-sided ideal spanned by `ideal`. Basis of the quotient is the set of
  /// standard basis vectors that are not pivots of the ideal; `lift` maps back.
  struct Quotient;
  Quotient quotient(const std::vector<SparseVec>& ideal) const;

  /// Smallest n with (span)^n = 0 for a subspace closed under multiplication, or nullopt.
  std::optional<int> nilpotency_index(const std::vector<SparseVec>& span) const;
  bool is_two_sided_ideal(const std::vector<SparseVec>& span) const;

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVec>> table_;
  std::vector<int> weights_;
};

struct FiniteDimAlgebra::Quotient {
  FiniteDimAlgebra algebra;
  std::vector<int> kept;  // quotient basis index -> original basis index
  Echelon ideal;
  SparseVec project(SparseVec v) const;
};

struct Radical {
  std::vector<SparseVec> basis;
  std::string method;
};

/// Jacobson radical. Characteristic 0: kernel of the trace form. Characteristic p: kernel of a
/// Frobenius power when commutative; otherwise the positive-weight span, accepted only after
/// checking it is a nilpotent ideal with reduced commutative quotient (Unsupported if not).
Radical radical(const FiniteDimAlgebra& a);

struct SemisimpleSummary {
  int dim = 0;
  bool commutative = false;
  /// Degrees over k of the field factors (commutative case only).
  std::vector<int> residue_dims;
  /// Primitive idempotents of the quotient, in its coordinates (commutative case only).
  std::vector<SparseVec> idempotents;
  std::string description;
};

/// Structure of a semisimple algebra; splits into field factors when commutative.
SemisimpleSummary describe_semisimple(const FiniteDimAlgebra& s);

struct LocalFactor {
  SparseVec idempotent;
  int dim = 0;
  int residue_dim = 0;
};

/// Decomposition of a commutative algebra into local factors via lifted idempotents.
std::vector<LocalFactor> commutative_decompose(const FiniteDimAlgebra& a);

/// Lifts an idempotent modulo a nilpotent ideal: e <- 3e^2 - 2e^3 until stable.
SparseVec lift_idempotent(const FiniteDimAlgebra& a, SparseVec e);

/// x with sum_k x_k columns[k] = rhs, if solvable.
std::optional<SparseVec> solve_linear(const std::vector<SparseVec>& columns, const SparseVec& rhs,
                                      const Field& field);

}  // namespace dgkit

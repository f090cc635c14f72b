#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgkit/fdalgebra.hpp"
#include "dgkit/linalg.hpp"
#include "dgkit/quiver.hpp"

namespace dgkit {

/// Inclusive degree range. `all()` means every degree that occurs.
struct Window {
  int lo = 0;
  int hi = -1;
  bool unbounded = false;

  static Window all() { return Window{0, -1, true}; }
  bool empty() const { return !unbounded && lo > hi; }
  bool contains(int d) const { return unbounded || (lo <= d && d <= hi); }
  std::string to_string() const;
};

/// Generators over the semisimple base kQ_0 with a differential defined on generators.
/// Generators are stored as the arrows of `quiver()`; words in them are Paths.
class DgPresentation {
 public:
  DgPresentation() = default;
  DgPresentation(Field field, std::vector<std::string> vertices);

  int add_generator(const std::string& label, int source, int target, int degree,
                    std::optional<int> weight = std::nullopt);
  int add_generator(const std::string& label, const std::string& source,
                    const std::string& target, int degree,
                    std::optional<int> weight = std::nullopt);
  void set_differential(int generator, PathAlgebraElement value);
  void add_relation(PathAlgebraElement relation);

  /// coeff * g1 g2 ... for generator labels; an empty list needs `vertex`.
  PathAlgebraElement word(const std::vector<std::string>& labels, const Scalar& coeff,
                          std::optional<int> vertex = std::nullopt) const;

  const Field& field() const { return field_; }
  const Quiver& quiver() const { return quiver_; }
  int generator_count() const { return quiver_.arrow_count(); }
  const PathAlgebraElement& differential(int generator) const;
  const std::vector<PathAlgebraElement>& relations() const { return relations_; }

  /// Checks degrees and endpoints and fixes generator weights. Auto weights: a closed
  /// generator weighs 1; otherwise the least weight among the terms of its differential.
  /// Throws if a differential lowers weight. Idempotent.
  void validate();
  bool validated() const { return validated_; }

  /// No trivial paths in relations or differentials: killing generators is an augmentation.
  bool has_augmentation() const;
  int max_generator_weight() const;

  std::string name;
  std::vector<std::string> warnings;

 private:
  Field field_;
  Quiver quiver_;
  std::vector<std::optional<int>> user_weight_;
  std::map<int, PathAlgebraElement> differential_;
  std::vector<PathAlgebraElement> relations_;
  bool validated_ = false;
};

enum class OverflowKind { Differential, Window, Product };
const char* to_string(OverflowKind kind);

/// Where truncation bites: terms dropped by the weight bound, or basis words outside the
/// realized degrees.
struct OverflowEntry {
  OverflowKind kind;
  int degree = 0;
  int count = 0;
};

struct BasisElement {
  std::string label;
  int degree = 0;
  int weight = 0;
  int source = 0;
  int target = 0;
  bool idempotent = false;
};

/// Finite model of a dg algebra: a basis in finitely many degrees, a differential, and a
/// product that may leave the realized degrees (nullopt) or vanish by truncation.
class TruncatedDgAlgebra {
 public:
  using ProductFn = std::function<std::optional<SparseVec>(int, int)>;
  using OverflowLedger = std::map<std::pair<OverflowKind, int>, int>;

  TruncatedDgAlgebra() = default;
  TruncatedDgAlgebra(Field field, std::vector<std::string> vertices,
                     std::vector<BasisElement> basis, std::vector<std::optional<SparseVec>> d,
                     ProductFn product, Window window, int bound,
                     std::shared_ptr<OverflowLedger> ledger = nullptr);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(int i) const { return basis_.at(i); }
  int size() const { return static_cast<int>(basis_.size()); }
  Window window() const { return window_; }
  int bound() const { return bound_; }

  /// Degrees that carry basis elements (the window plus one degree of halo on each side).
  const std::map<int, std::vector<int>>& by_degree() const { return by_degree_; }
  bool realized(int degree) const;
  int local_index(int global) const { return local_.at(global); }
  const std::vector<int>& degree_basis(int degree) const;
  /// Basis restricted to the window (no halo).
  GradedVectorSpace spaces() const;

  /// d(b_i) in global coordinates; nullopt if it leaves the realized degrees.
  const std::optional<SparseVec>& d(int i) const { return d_.at(i); }
  std::optional<SparseVec> d(const SparseVec& v) const;
  /// d: degree i -> degree i+1 in local coordinates; requires both realized.
  SparseMatrix differential_matrix(int degree) const;

  std::optional<SparseVec> multiply(int i, int j) const;
  std::optional<SparseVec> multiply(const SparseVec& x, const SparseVec& y) const;

  /// Sum of idempotent basis elements.
  SparseVec unit() const;
  SparseVec to_global(int degree, const SparseVec& local) const;
  SparseVec to_local(const SparseVec& global) const;

  std::vector<OverflowEntry> overflow() const;
  void add_overflow(OverflowKind kind, int degree, int count);
  /// Terms dropped from differentials landing in or leaving this degree range.
  bool differential_clean(int lo, int hi) const;

  /// Associativity on every realized triple whose products stay realized.
  std::vector<std::string> associativity_failures(int limit = 20) const;

  std::optional<DgPresentation> presentation;
  /// True when the truncation is the whole algebra (no word beyond the bound survives).
  std::optional<bool> exact;
  std::string name;

 private:
  Field field_;
  std::vector<std::string> vertices_;
  std::vector<BasisElement> basis_;
  std::vector<std::optional<SparseVec>> d_;
  ProductFn product_;
  Window window_;
  int bound_ = 0;
  std::map<int, std::vector<int>> by_degree_;
  std::vector<int> local_;
  std::shared_ptr<OverflowLedger> overflow_;
  std::shared_ptr<std::map<std::pair<int, int>, std::optional<SparseVec>>> cache_;
};

/// Basis of the presented algebra modulo relations and words of weight > L, in degrees
/// window +- 1. Throws InconsistentPresentation if d(relation) leaves the relation ideal.
TruncatedDgAlgebra realize(DgPresentation p, Window window, int length_bound);

/// Whether every word of weight in (L, L + max generator weight] lies in the relation ideal,
/// so that the weight-L truncation is the whole algebra.
bool truncation_is_exact(const DgPresentation& p, int length_bound);

struct VerifyReport {
  int d_squared_checked = 0;
  int leibniz_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// d^2 = 0 on every basis element whose image stays realized; Leibniz on every realized pair.
VerifyReport verify_differential(const TruncatedDgAlgebra& t, int max_failures = 20);

/// Cohomology on a safe window with products of representatives.
class DgCohomology {
 public:
  DgCohomology(const TruncatedDgAlgebra& t, Window safe);

  const Cohomology& table() const { return h_; }
  const GradedVectorSpace& classes() const { return h_.classes; }
  Window window() const { return window_; }
  int dim(int degree) const { return h_.classes.dim(degree); }
  std::map<int, int> dims() const { return h_.classes.dims(); }
  /// Representative cocycle of class `index` in degree `degree`, global coordinates.
  SparseVec representative(int degree, int index) const;
  /// Class coordinates of a cocycle in degree `degree` (global coordinates).
  SparseVec classify_cocycle(int degree, const SparseVec& cocycle) const;
  /// Product of two classes, or nullopt if it leaves the window or realized degrees.
  std::optional<SparseVec> product(int i, int a, int j, int b) const;

 private:
  const Echelon& reducer(int degree) const;

  TruncatedDgAlgebra t_;
  Window window_;
  Cohomology h_;
  mutable std::map<int, Echelon> reducers_;
};

/// Throws UnsafeWindow when the window (plus halo) is not realized or the differential
/// overflow ledger touches it.
DgCohomology cohomology(const TruncatedDgAlgebra& t, Window safe);

struct Classification {
  Window window;
  bool connective = false;
  bool strictly_coconnective = false;
  bool locally_proper_within_window = false;
  bool a1_zero = false;
  std::string a0_description;
  /// Every flag above is only established on the window and weight bound.
  bool window_limited = true;
  std::map<int, int> cohomology_dims;
};

Classification classify(const TruncatedDgAlgebra& t);

struct H0Algebra {
  FiniteDimAlgebra algebra;
  Radical radical;
  FiniteDimAlgebra semisimple_quotient;
  SemisimpleSummary summary;
  int stabilized_at = 0;
  bool local() const { return summary.commutative && summary.residue_dims.size() == 1; }
  bool quotient_is_base_field() const { return summary.dim == 1; }
};

/// H^0 with its radical and semisimple quotient. Requires dims to agree at L and L+1
/// (NotStabilized otherwise).
H0Algebra h0_algebra(const TruncatedDgAlgebra& t);
H0Algebra h0_algebra(const DgPresentation& p, int length_bound);

/// Finite algebra from a truncation that has a realized degree 0 only (d = 0 there).
FiniteDimAlgebra degree_zero_algebra(const TruncatedDgAlgebra& t);

/// Graded algebra with zero differential from structure constants on labelled basis elements.
TruncatedDgAlgebra graded_algebra(Field field, std::vector<std::string> vertices,
                                  std::vector<BasisElement> basis,
                                  std::vector<std::vector<SparseVec>> table);

}  // namespace dgkit

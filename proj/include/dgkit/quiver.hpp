#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/linalg.hpp"
#include "dgkit/scalar.hpp"

namespace dgkit {

struct Arrow {
  std::string label;
  int source = 0;
  int target = 0;
  int degree = 0;
  /// Contribution to word length; positive. Word-length truncation uses these weights.
  int weight = 1;
};

/// Finite graded quiver. Paths compose left to right: `ab` follows a, then b.
class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(std::vector<std::string> vertices);

  int add_vertex(const std::string& label);
  int add_arrow(const std::string& label, int source, int target, int degree = 0, int weight = 1);
  int add_arrow(const std::string& label, const std::string& source, const std::string& target,
                int degree = 0, int weight = 1);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int index) const { return arrows_.at(index); }
  Arrow& arrow_mut(int index) { return arrows_.at(index); }

  std::optional<int> find_vertex(const std::string& label) const;
  std::optional<int> find_arrow(const std::string& label) const;
  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& label) const;

  /// Arrows leaving each vertex, in declaration order.
  const std::vector<int>& out_arrows(int vertex) const { return out_.at(vertex); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, int> vertex_lookup_;
  std::map<std::string, int> arrow_lookup_;
  std::vector<std::vector<int>> out_;
};

/// A path: either the trivial path at `vertex`, or a composable arrow sequence starting there.
struct Path {
  int vertex = 0;
  std::vector<int> arrows;

  static Path trivial(int vertex) { return Path{vertex, {}}; }
  static Path of(const Quiver& q, std::vector<int> arrows);

  int length() const { return static_cast<int>(arrows.size()); }
  int source() const { return vertex; }
  int target(const Quiver& q) const;
  int degree(const Quiver& q) const;
  int weight(const Quiver& q) const;
  std::string label(const Quiver& q) const;

  /// Deg-lex: shorter first, then arrow sequence, then vertex.
  friend bool operator<(const Path& a, const Path& b);
  friend bool operator==(const Path& a, const Path& b) = default;
};

/// Finite linear combination of paths.
class PathAlgebraElement {
 public:
  PathAlgebraElement() = default;
  explicit PathAlgebraElement(Field field) : field_(field) {}
  static PathAlgebraElement of(const Field& field, const Path& p, const Scalar& coeff);

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Path, Scalar>& terms() const { return terms_; }

  void add(const Path& p, const Scalar& coeff);
  void add(const PathAlgebraElement& other, const Scalar& factor);
  PathAlgebraElement scaled(const Scalar& factor) const;

  /// Source/target shared by every term, if any.
  std::optional<std::pair<int, int>> endpoints(const Quiver& q) const;
  std::optional<int> homogeneous_degree(const Quiver& q) const;
  int max_length() const;
  int min_weight(const Quiver& q) const;
  int max_weight(const Quiver& q) const;
  std::string to_string(const Quiver& q) const;

  friend bool operator==(const PathAlgebraElement& a, const PathAlgebraElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Field field_;
  std::map<Path, Scalar> terms_;
};

/// Concatenation of paths, or nullopt when target(p) != source(q).
std::optional<Path> concatenate(const Quiver& q, const Path& a, const Path& b);

PathAlgebraElement path_mul(const Quiver& q, const PathAlgebraElement& a,
                            const PathAlgebraElement& b);

/// Finite sum of cycles in degree-0 arrows, each stored as its least rotation.
class Superpotential {
 public:
  Superpotential() = default;
  explicit Superpotential(Field field) : field_(field) {}

  /// Adds coeff times the cycle; the cycle is canonicalized first.
  void add_cycle(const Quiver& q, const std::vector<int>& cycle, const Scalar& coeff);

  const Field& field() const { return field_; }
  const std::map<std::vector<int>, Scalar>& cycles() const { return cycles_; }
  bool is_zero() const { return cycles_.empty(); }
  int min_cycle_length() const;
  bool is_homogeneous() const;

  static std::vector<int> canonical_rotation(const std::vector<int>& cycle);

 private:
  Field field_;
  std::map<std::vector<int>, Scalar> cycles_;
};

/// Sum over decompositions W = u a v of v u.
PathAlgebraElement cyclic_derivative(const Quiver& q, const Superpotential& w, int arrow);

/// All paths of length <= max_length (trivial paths included), in deg-lex order.
std::vector<Path> enumerate_paths(const Quiver& q, int max_length);

struct QuotientBasis {
  std::vector<Path> basis;
  int total_paths = 0;
  int count() const { return static_cast<int>(basis.size()); }
};

/// Monomial basis of kQ/(relations) among paths of length <= max_length, by elimination on
/// every product u r v whose terms all have length <= max_length.
QuotientBasis reduce_modulo_relations(const Quiver& q,
                                      const std::vector<PathAlgebraElement>& relations,
                                      int max_length, const Field& field);

}  // namespace dgkit

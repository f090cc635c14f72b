#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgkit/dg.hpp"
#include "dgkit/verdict.hpp"

namespace dgkit {

/// A marked interval (with its arc-endpoint slots in orientation order) or a boundary segment.
struct BoundaryItem {
  bool segment = false;
  std::vector<std::string> slots;

  static BoundaryItem interval(std::vector<std::string> slots) { return {false, std::move(slots)}; }
  static BoundaryItem boundary_segment() { return {true, {}}; }
};

struct BoundaryComponent {
  std::string name;
  bool fully_marked = false;
  int winding = 0;                     // fully marked only
  std::vector<std::string> slots;      // fully marked: cyclic order along the orientation
  std::vector<BoundaryItem> sequence;  // otherwise: cyclic, intervals and segments alternating
  /// Components without arc endpoints name the corner slot of the face they bound.
  std::optional<std::string> attach;

  static BoundaryComponent marked(std::string name, std::vector<BoundaryItem> sequence);
  static BoundaryComponent fully(std::string name, int winding, std::vector<std::string> slots);
};

struct ArcSpec {
  std::string name;
  std::string from;
  std::string to;
};

/// Ribbon datum of a graded marked surface with an arc system. Flow degrees are keyed by
/// the slot where the irreducible flow starts; missing entries default to 0 except where
/// the winding numbers determine them.
struct MarkedSurfaceArcSystem {
  std::vector<BoundaryComponent> boundary;
  std::vector<ArcSpec> arcs;
  std::map<std::string, int> flow_degrees;

  /// Throws MalformedRibbon naming the offending slot or component.
  void validate() const;
  bool has_marked_interval() const;
};

enum class FaceKind { Disk, HalfOpenCylinder, Other };
const char* to_string(FaceKind k);

struct Face {
  FaceKind kind = FaceKind::Disk;
  std::vector<std::string> corners;  // slots p whose boundary piece p -> next(p) bounds the face
  int segments = 0;
  std::vector<std::string> attached;  // boundary components without endpoints inside the face
};

/// Faces of the complement of the arcs, from the corner permutation p -> other(next(p)).
std::vector<Face> trace_faces(const MarkedSurfaceArcSystem& s);

struct ArcClassification {
  bool full = false;
  bool finitely_full = false;
  bool formal = false;
  std::vector<std::string> reasons;  // why a flag is false
};

ArcClassification classify_arc_system(const MarkedSurfaceArcSystem& s);

struct Flow {
  std::string label;
  std::string start_slot;
  std::string end_slot;
  int source = 0;  // arc index
  int target = 0;
  int degree = 0;
};

/// Consecutive slots along marked intervals and cyclically along fully marked components.
std::vector<Flow> irreducible_flows(const MarkedSurfaceArcSystem& s);

struct GentleArrow {
  std::string label;
  int source = 0;
  int target = 0;
  int degree = 0;
  friend bool operator==(const GentleArrow&, const GentleArrow&) = default;
};

/// Graded quiver with quadratic monomial relations. A relation (f, g) kills the path
/// "f then g".
struct GentlePresentation {
  std::vector<std::string> vertices;
  std::vector<GentleArrow> arrows;
  std::set<std::pair<int, int>> relations;
  bool proper = false;
  bool smooth = false;

  int vertex_index(const std::string& label) const;
  bool composable(int f, int g) const { return arrows.at(f).target == arrows.at(g).source; }
  std::vector<std::string> gentle_violations() const;
  /// No cycle of composable arrows avoiding the relations.
  bool finite_dimensional() const;
  /// No cycle of arrows in which every consecutive pair is a relation.
  bool finite_global_dimension() const;
  /// Nonzero paths of length <= max_length, as arrow index sequences (trivial paths omitted).
  std::vector<std::vector<int>> nonzero_paths(int max_length) const;

  Quiver quiver() const;
  DgPresentation presentation(const Field& k) const;

  friend bool operator==(const GentlePresentation&, const GentlePresentation&) = default;
};

/// Throws NotFormal unless the system is full or finitely-full and formal.
GentlePresentation gentle_presentation(const MarkedSurfaceArcSystem& s);

/// f^! reversed with degree 1 - |f|; the relations among composable pairs are complemented.
/// Labels gain or lose a trailing '!', so applying it twice gives back the input.
GentlePresentation quadratic_dual(const GentlePresentation& g);

struct SodFactor {
  bool dual_numbers = false;  // k[x]/x^2 on a single peeled vertex
  int loop_degree = 0;
  GentlePresentation algebra;
  std::vector<std::string> vertices;
};

struct SemiorthogonalDecomposition {
  std::vector<SodFactor> factors;  // no arrows from a later factor into an earlier one
  std::vector<std::string> back_arrows;
  std::string to_string() const;
};

/// Peels vertices carrying one square-zero loop and no arrows to other vertices.
/// Requires the proper flag (InvalidInput otherwise).
SemiorthogonalDecomposition extract_sod(const GentlePresentation& g);

/// Reflexivity of the Fukaya category of the surface from the winding numbers of its fully
/// marked components. Throws NoMarkedInterval.
ReflexivityVerdict fukaya_verdict(const MarkedSurfaceArcSystem& s);

}  // namespace dgkit

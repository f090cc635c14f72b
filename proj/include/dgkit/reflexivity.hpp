#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dgkit/dg.hpp"
#include "dgkit/fdalgebra.hpp"
#include "dgkit/gentle.hpp"
#include "dgkit/quiver.hpp"
#include "dgkit/verdict.hpp"

namespace dgkit {

/// Infinite-dimensional one-variable families given by name only.
struct SymbolicFamily {
  enum class Kind { Polynomial, Laurent, PowerSeries };
  Kind kind = Kind::Polynomial;
  int degree = 0;  // degree of the variable
  std::string to_string() const;
};

/// A presentation together with the window and weight bound to realize it on.
struct DgInput {
  DgPresentation presentation;
  Window window;
  int bound = 0;
};

/// R_n and the completed CY completion of Q.
struct CyInput {
  Quiver quiver;
  int n = 2;
};

struct GinzburgInput {
  Quiver quiver;
  Superpotential superpotential;
};

using CheckInput = std::variant<SymbolicFamily, DgInput, TruncatedDgAlgebra, CyInput, GinzburgInput,
                                GentlePresentation, MarkedSurfaceArcSystem, FiniteDimAlgebra>;

/// A checked property of the input, named by the hypothesis id that cites it.
struct Fact {
  bool holds = false;
  HypothesisTag tag = HypothesisTag::VerifiedExactly;
  std::string statement;
  std::string evidence;
};
using Facts = std::map<std::string, Fact>;

/// Every property the criteria for this kind of input may cite. `field` is used by inputs
/// that do not carry their own.
Facts compute_facts(const CheckInput& input, const Field& field = Field(0));

/// First matching criterion wins; Unknown lists the unmet hypotheses of each criterion.
ReflexivityVerdict check(const CheckInput& input, const Field& field = Field(0));

/// Re-derives every non-assumed hypothesis of the certificate and re-runs the dispatcher.
/// Returns the failures (empty when the certificate replays green).
std::vector<std::string> replay(const CheckInput& input, const ReflexivityVerdict& verdict,
                                const Field& field = Field(0));

enum class TriState { True, False, Unknown };
const char* to_string(TriState t);

struct TriFlag {
  TriState value = TriState::Unknown;
  std::string provenance;
};

/// Reflexive; the module is a D_fd-generator for the Koszul dual; derived complete at it.
struct CompletenessTriple {
  TriFlag reflexive;
  TriFlag generator;
  TriFlag complete;
};

/// Fills in the unknown flag when the other two are true. A false known flag licenses nothing,
/// so the third stays Unknown with an explanation. Throws TooFewKnownFlags.
CompletenessTriple two_out_of_three(CompletenessTriple t);

/// Generator and completeness flags for a graded algebra at its augmentation, from the dual
/// bar at bounds lambda and lambda + 1 and the completeness report on the window.
CompletenessTriple completeness_triple(const TruncatedDgAlgebra& a, int lambda, Window window);

}  // namespace dgkit

#pragma once

#include <string>
#include <vector>

namespace dgkit {

enum class Verdict { Reflexive, NotReflexive, Unknown };
const char* to_string(Verdict v);

enum class HypothesisTag { VerifiedExactly, VerifiedWithinWindow, AssumedByUser };
const char* to_string(HypothesisTag t);

/// One hypothesis of a criterion. `id` names the check that replays it.
struct Hypothesis {
  std::string id;
  std::string statement;
  HypothesisTag tag = HypothesisTag::VerifiedExactly;
  std::string evidence;
};

struct Certificate {
  std::string criterion;  // stable identifier, e.g. "connective-local"
  std::string statement;  // the criterion in words
  std::vector<Hypothesis> hypotheses;
  std::string witness;    // for negative verdicts
};

struct ReflexivityVerdict {
  Verdict verdict = Verdict::Unknown;
  Certificate certificate;
  int characteristic = 0;
  /// Nearest misses when no criterion applies; informational notes otherwise.
  std::vector<std::string> diagnostics;

  /// Reflexive, but some hypothesis was only checked inside a degree window.
  bool window_conditional() const;
  /// "Reflexive", "Reflexive (window-conditional)", "NotReflexive" or "Unknown".
  std::string summary() const;
};

}  // namespace dgkit

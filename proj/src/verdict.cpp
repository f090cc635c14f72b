#include "dgkit/verdict.hpp"

namespace dgkit {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Reflexive: return "Reflexive";
    case Verdict::NotReflexive: return "NotReflexive";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(HypothesisTag t) {
  switch (t) {
    case HypothesisTag::VerifiedExactly: return "verified-exactly";
    case HypothesisTag::VerifiedWithinWindow: return "verified-within-window";
    case HypothesisTag::AssumedByUser: return "assumed-by-user";
  }
  return "?";
}

bool ReflexivityVerdict::window_conditional() const {
  if (verdict != Verdict::Reflexive) return false;
  for (const auto& h : certificate.hypotheses)
    if (h.tag == HypothesisTag::VerifiedWithinWindow) return true;
  return false;
}

std::string ReflexivityVerdict::summary() const {
  std::string s = to_string(verdict);
  if (window_conditional()) s += " (window-conditional)";
  return s;
}

}  // namespace dgkit

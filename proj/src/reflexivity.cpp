#include "dgkit/reflexivity.hpp"

#include "dgkit/cy.hpp"
#include "dgkit/error.hpp"
#include "dgkit/koszul.hpp"

namespace dgkit {

namespace {

struct Criterion {
  const char* id;
  Verdict verdict;
  const char* statement;
  std::vector<const char*> needs;
};

const Criterion kCommutativeLocal{
    "commutative-complete-local", Verdict::Reflexive,
    "a commutative noetherian algebra is reflexive if and only if it is a finite product of "
    "complete local algebras with residue fields finite over k",
    {"commutative-noetherian", "product-of-complete-local"}};
const Criterion kCommutativeNotComplete{
    "commutative-not-complete", Verdict::NotReflexive,
    "a commutative noetherian algebra is reflexive if and only if it is a finite product of "
    "complete local algebras with residue fields finite over k",
    {"commutative-noetherian", "not-product-of-complete-local"}};
const Criterion kNoFiniteModules{
    "no-finite-dimensional-modules", Verdict::NotReflexive,
    "an algebra without nonzero finite-dimensional modules, such as a graded Laurent polynomial "
    "algebra, is not reflexive",
    {"graded-laurent"}};
const Criterion kConnectiveLocal{
    "connective-local", Verdict::Reflexive,
    "a connective locally proper dg algebra with H^0/rad H^0 = k is reflexive",
    {"connective", "locally-proper", "h0-mod-rad-is-k"}};
const Criterion kConnectiveSplit{
    "connective-split", Verdict::Reflexive,
    "a connective locally proper dg algebra whose semisimple quotient R = H^0/rad H^0 is "
    "commutative and for which A -> R splits is reflexive",
    {"connective", "locally-proper", "h0-quotient-commutative", "splitting"}};
const Criterion kCoconnectiveA1{
    "coconnective-a1-zero", Verdict::Reflexive,
    "a strictly coconnective locally proper dg algebra with A^1 = 0 and H^0 = A^0 commutative "
    "semisimple is reflexive",
    {"strictly-coconnective", "locally-proper", "a1-zero", "h0-commutative-semisimple"}};
const Criterion kProperCoconnective{
    "proper-coconnective-semisimple", Verdict::Reflexive,
    "every proper coconnective dg algebra with semisimple H^0 is reflexive",
    {"proper", "coconnective", "h0-semisimple"}};
const Criterion kCyCompletion{
    "cy-completion", Verdict::Reflexive,
    "for n >= 2 both R_n and the completed n-Calabi-Yau completion of Q are reflexive",
    {"n-at-least-2", "arrows-degree-zero", "rn-coconnective-semisimple-h0"}};
const Criterion kGinzburg{
    "ginzburg", Verdict::Reflexive,
    "for a superpotential whose cycles all have length >= 3, R_3^W and the completed Ginzburg "
    "algebra are reflexive (characteristic 0)",
    {"arrows-degree-zero", "superpotential-cycles-at-least-3", "characteristic-zero"}};
const Criterion kProperGentle{"proper-gentle", Verdict::Reflexive,
                              "every proper graded gentle algebra is reflexive",
                              {"gentle-axioms", "proper"}};

std::vector<const Criterion*> symbolic_criteria() {
  return {&kCommutativeLocal, &kCommutativeNotComplete, &kNoFiniteModules, &kConnectiveLocal,
          &kCoconnectiveA1};
}

std::vector<const Criterion*> criteria_for(const CheckInput& in) {
  struct Visitor {
    std::vector<const Criterion*> operator()(const SymbolicFamily&) const { return symbolic_criteria(); }
    std::vector<const Criterion*> operator()(const DgInput&) const { return dg(); }
    std::vector<const Criterion*> operator()(const TruncatedDgAlgebra&) const { return dg(); }
    std::vector<const Criterion*> operator()(const CyInput&) const { return {&kCyCompletion}; }
    std::vector<const Criterion*> operator()(const GinzburgInput&) const { return {&kGinzburg}; }
    std::vector<const Criterion*> operator()(const GentlePresentation&) const {
      auto out = symbolic_criteria();
      out.insert(out.begin(), &kProperGentle);
      return out;
    }
    std::vector<const Criterion*> operator()(const MarkedSurfaceArcSystem&) const { return {}; }
    std::vector<const Criterion*> operator()(const FiniteDimAlgebra&) const {
      return {&kCommutativeLocal, &kConnectiveLocal, &kConnectiveSplit};
    }
    static std::vector<const Criterion*> dg() {
      return {&kConnectiveLocal, &kConnectiveSplit, &kCoconnectiveA1, &kProperCoconnective};
    }
  };
  return std::visit(Visitor{}, in);
}

Fact exact(bool holds, std::string statement, std::string evidence = "") {
  return {holds, HypothesisTag::VerifiedExactly, std::move(statement), std::move(evidence)};
}

std::string dims_string(const std::map<int, int>& dims) {
  std::string s;
  for (const auto& [d, n] : dims) {
    if (!n) continue;
    s += (s.empty() ? "" : ", ") + ("H^" + std::to_string(d) + " = " + std::to_string(n));
  }
  return s.empty() ? "all cohomology vanishes" : s;
}

// Facts about H^0 shared by the finite and the dg paths.
void add_h0_facts(Facts& f, const FiniteDimAlgebra& h0, const Radical& rad, const SemisimpleSummary& sum,
                  int vertex_count, HypothesisTag tag) {
  const std::string q = "H^0/rad H^0 = " + sum.description;
  f["h0-mod-rad-is-k"] = {sum.dim == 1, tag, "H^0/rad H^0 is k", q};
  f["h0-semisimple"] = {rad.basis.empty(), tag, "H^0 is semisimple",
                        "radical of dimension " + std::to_string(rad.basis.size()) + " in H^0 of dimension " +
                            std::to_string(h0.dim())};
  f["h0-quotient-commutative"] = {sum.commutative, tag, "H^0/rad H^0 is commutative", q};
  f["h0-commutative-semisimple"] = {rad.basis.empty() && sum.commutative, tag,
                                    "H^0 is commutative semisimple", q};
  if (sum.commutative && (sum.dim == 1 || sum.dim == vertex_count))
    f["splitting"] = {true, tag, "A -> H^0/rad H^0 splits",
                      "the vertex idempotents map isomorphically onto H^0/rad H^0"};
  else
    f["splitting"] = {true, HypothesisTag::AssumedByUser, "A -> H^0/rad H^0 splits",
                      "not checked: generators do not all map to the radical"};
}

void h0_failed(Facts& f, const std::string& why) {
  for (const char* id : {"h0-mod-rad-is-k", "h0-semisimple", "h0-quotient-commutative",
                         "h0-commutative-semisimple", "splitting"})
    f[id] = {false, HypothesisTag::VerifiedWithinWindow, id, why};
}

Facts symbolic_facts(const SymbolicFamily& s) {
  Facts f;
  using K = SymbolicFamily::Kind;
  const std::string name = s.to_string();
  if (s.degree == 0) {
    f["commutative-noetherian"] = exact(true, "the algebra is commutative noetherian", name);
    if (s.kind == K::PowerSeries) {
      f["product-of-complete-local"] =
          exact(true, "the algebra is a finite product of complete local algebras with residue fields finite over k",
                "k[[t]] is complete local with residue field k");
    } else {
      f["not-product-of-complete-local"] =
          exact(true, "the algebra is not a finite product of complete local algebras",
                name + " has infinitely many maximal ideals");
    }
    return f;
  }
  if (s.kind == K::Laurent) {
    f["graded-laurent"] = exact(true, "the algebra has no nonzero finite-dimensional modules",
                                "t is invertible of degree " + std::to_string(s.degree) +
                                    ", so multiplication by t^m is an isomorphism across infinitely many degrees");
    return f;
  }
  // Graded k[t] (power series in nonzero degree agree with polynomials degreewise).
  const std::string one = "each degree has dimension at most 1";
  f["locally-proper"] = exact(true, "H^i is finite-dimensional for every i", one);
  f["h0-mod-rad-is-k"] = exact(true, "H^0/rad H^0 is k", "H^0 = k");
  f["h0-commutative-semisimple"] = exact(true, "H^0 is commutative semisimple", "H^0 = k");
  f["h0-semisimple"] = exact(true, "H^0 is semisimple", "H^0 = k");
  if (s.degree < 0) {
    f["connective"] = exact(true, "H^i = 0 for i > 0", name + " lives in degrees <= 0");
  } else {
    f["connective"] = exact(false, "H^i = 0 for i > 0", "t has positive degree");
    f["strictly-coconnective"] = exact(true, "A^i = 0 for i < 0", name + " lives in degrees >= 0");
    f["coconnective"] = exact(true, "H^i = 0 for i < 0", name + " lives in degrees >= 0");
    f["a1-zero"] = exact(s.degree != 1, "A^1 = 0", s.degree == 1 ? "A^1 is spanned by t" : "A^1 = 0");
    f["proper"] = exact(false, "total cohomology is finite-dimensional", "t^m is nonzero for every m");
  }
  return f;
}

Facts dg_facts(const TruncatedDgAlgebra& t) {
  Facts f;
  const bool whole = t.exact.value_or(false) && t.window().unbounded;
  const HypothesisTag tag = whole ? HypothesisTag::VerifiedExactly : HypothesisTag::VerifiedWithinWindow;
  const std::string where = whole ? "whole algebra" : "window " + t.window().to_string() + ", weight <= " +
                                                        std::to_string(t.bound());
  Classification c = classify(t);
  const std::string dims = dims_string(c.cohomology_dims) + " (" + where + ")";
  bool coconnective = true;
  for (const auto& [d, n] : c.cohomology_dims)
    if (d < 0 && n > 0) coconnective = false;
  f["connective"] = {c.connective, tag, "H^i = 0 for i > 0", dims};
  f["coconnective"] = {coconnective, tag, "H^i = 0 for i < 0", dims};
  HypothesisTag chain_tag = tag;
  if (t.presentation) {
    bool nonneg = true;
    for (const auto& a : t.presentation->quiver().arrows())
      if (a.degree < 0) nonneg = false;
    if (nonneg) chain_tag = HypothesisTag::VerifiedExactly;
  }
  f["strictly-coconnective"] = {c.strictly_coconnective, chain_tag, "A^i = 0 for i < 0", where};
  f["a1-zero"] = {c.a1_zero, tag, "A^1 = 0", where};
  f["locally-proper"] = {c.locally_proper_within_window, tag, "H^i is finite-dimensional for every i",
                         whole ? "finite-dimensional algebra" : "H agrees at weight bounds L and L+1 on the window"};
  f["proper"] = whole ? exact(true, "total cohomology is finite-dimensional", dims)
                      : Fact{false, tag, "total cohomology is finite-dimensional",
                             "properness is only decided on a whole finite-dimensional algebra"};
  try {
    auto h0 = h0_algebra(t);
    add_h0_facts(f, h0.algebra, h0.radical, h0.summary, static_cast<int>(t.vertices().size()), tag);
  } catch (const Error& e) {
    h0_failed(f, e.what());
  }
  return f;
}

Facts finite_facts(const FiniteDimAlgebra& a) {
  Facts f;
  const bool comm = a.is_commutative();
  f["connective"] = exact(true, "H^i = 0 for i > 0", "ungraded algebra in degree 0");
  f["locally-proper"] = exact(true, "H^i is finite-dimensional for every i",
                              "dimension " + std::to_string(a.dim()));
  if (comm) {
    f["commutative-noetherian"] = exact(true, "the algebra is commutative noetherian", "finite-dimensional commutative");
    auto factors = commutative_decompose(a);
    std::string ev = std::to_string(factors.size()) + " local factor(s), residue dims";
    for (const auto& lf : factors) ev += " " + std::to_string(lf.residue_dim);
    f["product-of-complete-local"] =
        exact(true, "the algebra is a finite product of complete local algebras with residue fields finite over k", ev);
  }
  try {
    auto rad = radical(a);
    auto quotient = a.quotient(rad.basis).algebra;
    add_h0_facts(f, a, rad, describe_semisimple(quotient), 1, HypothesisTag::VerifiedExactly);
  } catch (const Error& e) {
    h0_failed(f, e.what());
  }
  return f;
}

Facts cy_facts(const CyInput& in, const Field& k) {
  Facts f;
  f["n-at-least-2"] = exact(in.n >= 2, "n >= 2", "n = " + std::to_string(in.n));
  bool zero = true;
  for (const auto& a : in.quiver.arrows())
    if (a.degree != 0) zero = false;
  f["arrows-degree-zero"] = exact(zero, "every arrow of Q has degree 0");
  if (!zero) return f;
  auto rn = build_rn(in.quiver, in.n, k);
  auto c = classify(rn);
  bool coconnective = true;
  for (const auto& [d, n] : c.cohomology_dims)
    if (d < 0 && n > 0) coconnective = false;
  auto h0 = h0_algebra(rn);
  f["rn-coconnective-semisimple-h0"] =
      exact(coconnective && h0.radical.basis.empty(), "R_n is coconnective with semisimple H^0",
            dims_string(c.cohomology_dims) + "; H^0 = " + h0.summary.description);
  return f;
}

Facts ginzburg_facts(const GinzburgInput& in) {
  Facts f;
  bool zero = true;
  for (const auto& a : in.quiver.arrows())
    if (a.degree != 0) zero = false;
  f["arrows-degree-zero"] = exact(zero, "every arrow of Q has degree 0");
  const auto& w = in.superpotential;
  const bool long_cycles = w.is_zero() || w.min_cycle_length() >= 3;
  f["superpotential-cycles-at-least-3"] =
      exact(long_cycles, "every cycle of W has length >= 3",
            w.is_zero() ? "W = 0" : "shortest cycle has length " + std::to_string(w.min_cycle_length()));
  f["characteristic-zero"] = exact(w.field().is_rational(), "the base field has characteristic 0",
                                   "characteristic " + std::to_string(w.field().characteristic()));
  return f;
}

Facts gentle_facts(const GentlePresentation& g) {
  Facts f;
  auto bad = g.gentle_violations();
  f["gentle-axioms"] = exact(bad.empty(), "the presentation satisfies the gentle axioms",
                             bad.empty() ? "" : bad.front());
  const bool finite = bad.empty() && g.finite_dimensional();
  f["proper"] = exact(g.proper && finite, "the gentle algebra is proper",
                      finite ? "no relation-free cycle" : "a relation-free cycle gives infinitely many paths");
  // One loop without relations is k[t].
  if (g.vertices.size() == 1 && g.arrows.size() == 1 && g.relations.empty()) {
    SymbolicFamily poly{SymbolicFamily::Kind::Polynomial, g.arrows[0].degree};
    for (auto& [id, fact] : symbolic_facts(poly)) {
      fact.evidence += " (one vertex, one loop, no relations)";
      f.emplace(id, fact);
    }
  }
  return f;
}

Facts surface_facts(const MarkedSurfaceArcSystem& s) {
  Facts f;
  s.validate();
  f["marked-interval"] = exact(s.has_marked_interval(), "the surface has at least one marked interval");
  std::string zero, all;
  for (const auto& b : s.boundary) {
    if (!b.fully_marked) continue;
    all += (all.empty() ? "" : ", ") + b.name + " (winding " + std::to_string(b.winding) + ")";
    if (b.winding == 0 && zero.empty()) zero = b.name;
  }
  f["fully-marked-winding-zero"] =
      exact(!zero.empty(), "some fully marked component has winding number 0", "component '" + zero + "'");
  f["no-fully-marked"] = exact(all.empty(), "the surface has no fully marked component");
  f["fully-marked-winding-nonzero"] =
      exact(zero.empty() && !all.empty(), "every fully marked component has nonzero winding number", all);
  return f;
}

int characteristic_of(const CheckInput& in, const Field& field) {
  if (auto* d = std::get_if<DgInput>(&in)) return d->presentation.field().characteristic();
  if (auto* t = std::get_if<TruncatedDgAlgebra>(&in)) return t->field().characteristic();
  if (auto* a = std::get_if<FiniteDimAlgebra>(&in)) return a->field().characteristic();
  if (auto* g = std::get_if<GinzburgInput>(&in)) return g->superpotential.field().characteristic();
  return field.characteristic();
}

}  // namespace

std::string SymbolicFamily::to_string() const {
  std::string base = kind == Kind::Polynomial ? "k[t]" : kind == Kind::Laurent ? "k[t, t^-1]" : "k[[t]]";
  return base + " with |t| = " + std::to_string(degree);
}

Facts compute_facts(const CheckInput& input, const Field& field) {
  struct Visitor {
    const Field& k;
    Facts operator()(const SymbolicFamily& s) const { return symbolic_facts(s); }
    Facts operator()(const DgInput& d) const {
      return dg_facts(realize(d.presentation, d.window, d.bound));
    }
    Facts operator()(const TruncatedDgAlgebra& t) const { return dg_facts(t); }
    Facts operator()(const CyInput& c) const { return cy_facts(c, k); }
    Facts operator()(const GinzburgInput& g) const { return ginzburg_facts(g); }
    Facts operator()(const GentlePresentation& g) const { return gentle_facts(g); }
    Facts operator()(const MarkedSurfaceArcSystem& s) const { return surface_facts(s); }
    Facts operator()(const FiniteDimAlgebra& a) const { return finite_facts(a); }
  };
  return std::visit(Visitor{field}, input);
}

ReflexivityVerdict check(const CheckInput& input, const Field& field) {
  if (auto* s = std::get_if<MarkedSurfaceArcSystem>(&input)) {
    auto v = fukaya_verdict(*s);
    v.characteristic = field.characteristic();
    return v;
  }
  ReflexivityVerdict v;
  v.characteristic = characteristic_of(input, field);
  const Facts facts = compute_facts(input, field);
  for (const Criterion* c : criteria_for(input)) {
    std::vector<std::string> missing;
    for (const char* id : c->needs) {
      auto it = facts.find(id);
      if (it == facts.end()) missing.push_back(std::string(id) + " (not applicable)");
      else if (!it->second.holds)
        missing.push_back(std::string(id) + (it->second.evidence.empty() ? "" : ": " + it->second.evidence));
    }
    if (!missing.empty()) {
      std::string line = std::string(c->id) + " misses ";
      for (std::size_t i = 0; i < missing.size(); ++i) line += (i ? "; " : "") + missing[i];
      v.diagnostics.push_back(line);
      continue;
    }
    v.verdict = c->verdict;
    v.certificate.criterion = c->id;
    v.certificate.statement = c->statement;
    for (const char* id : c->needs) {
      const Fact& fact = facts.at(id);
      v.certificate.hypotheses.push_back({id, fact.statement, fact.tag, fact.evidence});
    }
    if (c->verdict == Verdict::NotReflexive) {
      const Fact& last = facts.at(c->needs.back());
      v.certificate.witness = last.evidence;
    }
    v.diagnostics.clear();
    return v;
  }
  return v;
}

std::vector<std::string> replay(const CheckInput& input, const ReflexivityVerdict& verdict, const Field& field) {
  std::vector<std::string> failures;
  const Facts facts = compute_facts(input, field);
  for (const auto& h : verdict.certificate.hypotheses) {
    if (h.tag == HypothesisTag::AssumedByUser) continue;
    auto it = facts.find(h.id);
    if (it == facts.end()) {
      failures.push_back("hypothesis '" + h.id + "' has no check for this input");
    } else if (!it->second.holds) {
      failures.push_back("hypothesis '" + h.id + "' does not hold: " + it->second.evidence);
    } else if (it->second.tag != h.tag) {
      failures.push_back("hypothesis '" + h.id + "' is tagged " + to_string(h.tag) + " but checks as " +
                         to_string(it->second.tag));
    }
  }
  auto again = check(input, field);
  if (again.verdict != verdict.verdict || again.certificate.criterion != verdict.certificate.criterion)
    failures.push_back("re-running the dispatcher gives " + again.summary() + " via '" +
                       again.certificate.criterion + "'");
  return failures;
}

const char* to_string(TriState t) {
  switch (t) {
    case TriState::True: return "true";
    case TriState::False: return "false";
    case TriState::Unknown: return "unknown";
  }
  return "?";
}

CompletenessTriple two_out_of_three(CompletenessTriple t) {
  TriFlag* flags[3] = {&t.reflexive, &t.generator, &t.complete};
  const char* names[3] = {"reflexive", "generator", "complete"};
  int known = 0, unknown = -1, falses = 0;
  for (int i = 0; i < 3; ++i) {
    if (flags[i]->value == TriState::Unknown) unknown = i;
    else ++known;
    if (flags[i]->value == TriState::False) ++falses;
  }
  if (known < 2) throw Error(ErrorKind::TooFewKnownFlags, "two of the three flags must be known");
  if (known == 3) {
    if (falses == 1)
      throw Error(ErrorKind::InvalidInput, "two flags are true and one is false, contradicting two-out-of-three");
    return t;
  }
  if (falses == 0) {
    flags[unknown]->value = TriState::True;
    flags[unknown]->provenance = "inferred by two-out-of-three from the other two flags";
  } else {
    std::string which;
    for (int i = 0; i < 3; ++i)
      if (flags[i]->value == TriState::False) which = names[i];
    flags[unknown]->provenance = std::string("no inference: '") + which +
                                 "' is false and two-out-of-three only propagates joint truth";
  }
  return t;
}

CompletenessTriple completeness_triple(const TruncatedDgAlgebra& a, int lambda, Window window) {
  CompletenessTriple t;
  auto report = completeness_report(a, lambda, window);
  const std::string at = " on window " + window.to_string() + " at bound " + std::to_string(lambda);
  switch (report.verdict) {
    case CompletenessVerdict::CompleteWithinWindow:
      t.complete = {TriState::True, "double dual matches H(A)" + at};
      break;
    case CompletenessVerdict::MismatchAt:
      t.complete = {TriState::False, "double dual differs from H(A)" + at + ": " + report.detail};
      break;
    case CompletenessVerdict::Inconclusive:
      t.complete = {TriState::Unknown, "double dual not stable" + at};
      break;
  }
  // The truncated dual bar is itself a dg algebra; read off its H^0 at two bounds.
  auto dual_at = [&](int bound) {
    auto d = dual_bar(a, bound);
    d.exact = true;
    return d;
  };
  try {
    auto d1 = dual_at(lambda), d2 = dual_at(lambda + 1);
    auto c1 = classify(d1), c2 = classify(d2);
    auto co = [](const Classification& c) {
      for (const auto& [d, n] : c.cohomology_dims)
        if (d < 0 && n > 0) return false;
      return true;
    };
    auto h1 = h0_algebra(d1), h2 = h0_algebra(d2);
    if (co(c1) && co(c2) && h1.radical.basis.empty() && h2.radical.basis.empty()) {
      t.generator = {TriState::True,
                     "Koszul dual is coconnective with semisimple H^0 = " + h1.summary.description +
                         " at bounds " + std::to_string(lambda) + ", " + std::to_string(lambda + 1) +
                         ": its degree <= 0 truncation, the base, generates"};
    } else if (c1.connective && c2.connective && h1.summary.dim == h2.summary.dim) {
      t.generator = {TriState::True, "Koszul dual is connective with H^0/rad H^0 = " + h1.summary.description +
                                         " stable at bounds " + std::to_string(lambda) + ", " +
                                         std::to_string(lambda + 1) + ": its simple modules generate"};
    } else {
      t.generator = {TriState::Unknown, "Koszul dual is neither coconnective with semisimple H^0 nor connective "
                                        "with stable semisimple quotient at the bounds"};
    }
  } catch (const Error& e) {
    t.generator = {TriState::Unknown, e.what()};
  }
  t.reflexive = {TriState::Unknown, "not given"};
  return t;
}

}  // namespace dgkit

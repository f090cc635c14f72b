#include <optional>

#include "doctest.h"
#include "dgkit/error.hpp"
#include "dgkit/reflexivity.hpp"

using namespace dgkit;

namespace {

TruncatedDgAlgebra dual_numbers(int degree, Field k = Field(0)) {
  std::vector<BasisElement> basis{{"e_1", 0, 0, 0, 0, true}, {"eps", degree, 1, 0, 0, false}};
  std::vector<std::vector<SparseVec>> table(2, std::vector<SparseVec>(2));
  table[0][0] = SparseVec::unit(0, k);
  table[0][1] = SparseVec::unit(1, k);
  table[1][0] = SparseVec::unit(1, k);
  return graded_algebra(k, {"1"}, basis, table);
}

// k[x]/(x^2 - c x): c = 0 gives dual numbers, c = 1 gives k x k.
FiniteDimAlgebra two_dim(long c, Field k = Field(0)) {
  std::vector<std::vector<SparseVec>> t(2, std::vector<SparseVec>(2));
  t[0][0] = SparseVec::unit(0, k);
  t[0][1] = SparseVec::unit(1, k);
  t[1][0] = SparseVec::unit(1, k);
  if (c) t[1][1].add(1, k.from_int(c));
  return FiniteDimAlgebra(k, {"1", "x"}, t);
}

// k<x, y>/(x^2, y^2, xy + yx): basis 1, x, y, xy.
FiniteDimAlgebra exterior_like(Field k = Field(0)) {
  std::vector<std::vector<SparseVec>> t(4, std::vector<SparseVec>(4));
  for (int i = 0; i < 4; ++i) {
    t[0][i] = SparseVec::unit(i, k);
    t[i][0] = SparseVec::unit(i, k);
  }
  t[1][2] = SparseVec::unit(3, k);
  t[2][1].add(3, k.from_int(-1));
  return FiniteDimAlgebra(k, {"1", "x", "y", "xy"}, t);
}

FiniteDimAlgebra upper_triangular(Field k = Field(0)) {
  std::vector<std::vector<SparseVec>> t(3, std::vector<SparseVec>(3));
  t[0][0] = SparseVec::unit(0, k);
  t[0][1] = SparseVec::unit(1, k);
  t[1][2] = SparseVec::unit(1, k);
  t[2][2] = SparseVec::unit(2, k);
  return FiniteDimAlgebra(k, {"e11", "e12", "e22"}, t);
}

Quiver one_loop() {
  Quiver q({"1"});
  q.add_arrow("x", 0, 0);
  return q;
}

GinzburgInput cubic_loop(Field k = Field(0)) {
  Quiver q = one_loop();
  Superpotential w(k);
  w.add_cycle(q, {0, 0, 0}, k.one());
  return {q, w};
}

// k[t] with |t| = degree as a dg presentation.
DgInput polynomial(int degree, Window w, int bound) {
  DgPresentation p(Field(0), {"1"});
  p.add_generator("t", 0, 0, degree);
  return {p, w, bound};
}

template <class F>
std::optional<ErrorKind> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

SymbolicFamily family(SymbolicFamily::Kind kind, int degree) { return {kind, degree}; }

void replays(const CheckInput& in, const Field& k = Field(0)) {
  auto v = check(in, k);
  auto failures = replay(in, v, k);
  INFO(v.summary() << " via " << v.certificate.criterion);
  CHECK(failures.empty());
}

}  // namespace

TEST_CASE("one-variable families") {
  using K = SymbolicFamily::Kind;
  auto kt = check(family(K::Polynomial, 0));
  CHECK(kt.verdict == Verdict::NotReflexive);
  CHECK(kt.certificate.criterion == "commutative-not-complete");
  CHECK(kt.certificate.witness.find("maximal ideals") != std::string::npos);

  auto series = check(family(K::PowerSeries, 0));
  CHECK(series.verdict == Verdict::Reflexive);
  CHECK(series.certificate.criterion == "commutative-complete-local");

  CHECK(check(family(K::Laurent, 0)).verdict == Verdict::NotReflexive);
  auto laurent = check(family(K::Laurent, 2));
  CHECK(laurent.verdict == Verdict::NotReflexive);
  CHECK(laurent.certificate.criterion == "no-finite-dimensional-modules");

  CHECK(check(family(K::Polynomial, -1)).certificate.criterion == "connective-local");
  CHECK(check(family(K::Polynomial, 2)).certificate.criterion == "coconnective-a1-zero");
  auto one = check(family(K::Polynomial, 1));
  CHECK(one.verdict == Verdict::Unknown);
  CHECK_FALSE(one.diagnostics.empty());
  CHECK(check(family(K::PowerSeries, 3)).verdict == Verdict::Reflexive);

  for (auto kind : {K::Polynomial, K::Laurent, K::PowerSeries})
    for (int d = -2; d <= 3; ++d) replays(family(kind, d));
}

TEST_CASE("finite-dimensional algebras") {
  auto dn = check(two_dim(0));
  CHECK(dn.verdict == Verdict::Reflexive);
  CHECK(dn.certificate.criterion == "commutative-complete-local");
  CHECK_FALSE(dn.window_conditional());

  auto local = check(exterior_like());
  CHECK(local.verdict == Verdict::Reflexive);
  CHECK(local.certificate.criterion == "connective-local");

  // A_2 path algebra: quotient k x k commutative, splitting by the vertex idempotents is
  // not seen by the bare algebra so it is carried as an assumption.
  auto tri = check(upper_triangular());
  CHECK(tri.verdict == Verdict::Reflexive);
  CHECK(tri.certificate.criterion == "connective-split");
  bool assumed = false;
  for (const auto& h : tri.certificate.hypotheses)
    if (h.id == "splitting") assumed = h.tag == HypothesisTag::AssumedByUser;
  CHECK(assumed);

  for (const auto& a : {two_dim(0), two_dim(1), exterior_like(), upper_triangular()}) replays(a);
  replays(two_dim(0, Field(3)), Field(3));
}

TEST_CASE("local factors of small commutative algebras") {
  auto count = [](const FiniteDimAlgebra& a) { return commutative_decompose(a).size(); };
  CHECK(count(two_dim(0)) == 1);
  CHECK(count(two_dim(1)) == 2);
  auto facts = compute_facts(two_dim(1));
  CHECK(facts.at("product-of-complete-local").evidence.find("2 local factor") != std::string::npos);
}

TEST_CASE("dg inputs") {
  SUBCASE("exact dual numbers") {
    auto up = check(dual_numbers(1));
    CHECK(up.verdict == Verdict::Reflexive);
    CHECK(up.certificate.criterion == "proper-coconnective-semisimple");
    CHECK_FALSE(up.window_conditional());
    auto down = check(dual_numbers(-1));
    CHECK(down.certificate.criterion == "connective-local");
    replays(dual_numbers(1));
    replays(dual_numbers(-1));
  }
  SUBCASE("realized polynomial algebras are window-conditional") {
    auto v = check(polynomial(2, Window{0, 6}, 5));
    CHECK(v.verdict == Verdict::Reflexive);
    CHECK(v.certificate.criterion == "coconnective-a1-zero");
    CHECK(v.window_conditional());
    CHECK(v.summary() == "Reflexive (window-conditional)");
    replays(polynomial(2, Window{0, 6}, 5));

    auto neg = check(polynomial(-2, Window{-6, 0}, 5));
    CHECK(neg.certificate.criterion == "connective-local");
  }
}

TEST_CASE("Calabi-Yau and Ginzburg inputs") {
  auto g = check(cubic_loop());
  CHECK(g.verdict == Verdict::Reflexive);
  CHECK(g.certificate.criterion == "ginzburg");
  replays(cubic_loop());
  CHECK(check(cubic_loop(Field(5))).verdict == Verdict::Unknown);

  Quiver q({"1", "2"});
  q.add_arrow("a", 0, 1);
  auto cy = check(CyInput{q, 3});
  CHECK(cy.verdict == Verdict::Reflexive);
  CHECK(cy.certificate.criterion == "cy-completion");
  replays(CyInput{q, 3});
  CHECK(check(CyInput{q, 1}).verdict == Verdict::Unknown);
}

TEST_CASE("gentle presentations") {
  GentlePresentation kt;
  kt.vertices = {"v"};
  kt.arrows = {{"t", 0, 0, 0}};
  auto v = check(kt);
  CHECK(v.verdict == Verdict::NotReflexive);
  CHECK(v.certificate.criterion == "commutative-not-complete");
  replays(kt);

  GentlePresentation dn = kt;
  dn.relations = {{0, 0}};
  dn.proper = true;
  auto d = check(dn);
  CHECK(d.verdict == Verdict::Reflexive);
  CHECK(d.certificate.criterion == "proper-gentle");
  replays(dn);
}

TEST_CASE("two out of three") {
  auto flag = [](TriState s) { return TriFlag{s, "given"}; };
  SUBCASE("two true infer the third") {
    auto t = two_out_of_three({flag(TriState::True), flag(TriState::True), flag(TriState::Unknown)});
    CHECK(t.complete.value == TriState::True);
    CHECK(t.complete.provenance.find("two-out-of-three") != std::string::npos);
  }
  SUBCASE("a false flag licenses nothing") {
    auto t = two_out_of_three({flag(TriState::Unknown), flag(TriState::False), flag(TriState::True)});
    CHECK(t.reflexive.value == TriState::Unknown);
    CHECK(t.reflexive.provenance.find("generator") != std::string::npos);
  }
  SUBCASE("one known flag is too few") {
    CompletenessTriple t{flag(TriState::True), flag(TriState::Unknown), flag(TriState::Unknown)};
    CHECK(error_of([&] { two_out_of_three(t); }) == ErrorKind::TooFewKnownFlags);
  }
  SUBCASE("inconsistent triple") {
    CompletenessTriple t{flag(TriState::True), flag(TriState::True), flag(TriState::False)};
    CHECK(error_of([&] { two_out_of_three(t); }) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("completeness triple for dual numbers") {
  for (int deg : {1, -1}) {
    CAPTURE(deg);
    Window w = deg > 0 ? Window{0, 3} : Window{-3, 0};
    auto t = completeness_triple(dual_numbers(deg), 6, w);
    CHECK(t.complete.value == TriState::True);
    CHECK(t.generator.value == TriState::True);
    CHECK(t.reflexive.value == TriState::Unknown);
    auto direct = check(dual_numbers(deg));
    CHECK(direct.verdict == Verdict::Reflexive);
    t.reflexive = {TriState::True, "direct criterion " + direct.certificate.criterion};
    auto filled = two_out_of_three(t);
    CHECK(filled.complete.value == TriState::True);
  }
}

TEST_CASE("verdicts are deterministic") {
  auto a = check(cubic_loop()), b = check(cubic_loop());
  CHECK(a.summary() == b.summary());
  CHECK(a.certificate.hypotheses.size() == b.certificate.hypotheses.size());
  for (std::size_t i = 0; i < a.certificate.hypotheses.size(); ++i)
    CHECK(a.certificate.hypotheses[i].evidence == b.certificate.hypotheses[i].evidence);
}

#include <random>
#include <set>

#include "doctest.h"
#include "dgkit/error.hpp"
#include "dgkit/gentle.hpp"
#include "dgkit/koszul.hpp"

using namespace dgkit;

namespace {

using Item = BoundaryItem;

// Disk with two intervals and two segments, one arc across.
MarkedSurfaceArcSystem split_disk() {
  MarkedSurfaceArcSystem s;
  s.boundary = {BoundaryComponent::marked(
      "D", {Item::interval({"p"}), Item::boundary_segment(), Item::interval({"q"}), Item::boundary_segment()})};
  s.arcs = {{"g", "p", "q"}};
  return s;
}

// Disk with three intervals; arcs a = (p1, x), b = (p2, y) share the first interval.
MarkedSurfaceArcSystem a2_disk(int degree = 0) {
  MarkedSurfaceArcSystem s;
  s.boundary = {BoundaryComponent::marked(
      "D", {Item::interval({"p1", "p2"}), Item::boundary_segment(), Item::interval({"y"}),
            Item::boundary_segment(), Item::interval({"x"}), Item::boundary_segment()})};
  s.arcs = {{"a", "p1", "x"}, {"b", "p2", "y"}};
  s.flow_degrees = {{"p1", degree}};
  return s;
}

// Annulus, arc from the marked interval to the fully marked component B.
MarkedSurfaceArcSystem annulus_t(int winding) {
  MarkedSurfaceArcSystem s;
  s.boundary = {BoundaryComponent::marked("O", {Item::interval({"p"}), Item::boundary_segment()}),
                BoundaryComponent::fully("B", winding, {"q"})};
  s.arcs = {{"g", "p", "q"}};
  return s;
}

// Annulus, arc from the interval around the core back to the interval.
MarkedSurfaceArcSystem annulus_x(int winding) {
  MarkedSurfaceArcSystem s;
  auto b = BoundaryComponent::fully("B", winding, {});
  b.attach = "p";
  s.boundary = {BoundaryComponent::marked("O", {Item::interval({"p", "q"}), Item::boundary_segment()}), b};
  s.arcs = {{"g", "p", "q"}};
  return s;
}

// annulus_x plus a second arc feeding into the cylinder arc.
MarkedSurfaceArcSystem annulus_cut(int winding) {
  MarkedSurfaceArcSystem s;
  auto b = BoundaryComponent::fully("B", winding, {});
  b.attach = "p";
  s.boundary = {BoundaryComponent::marked("O", {Item::interval({"a1", "p", "q"}), Item::boundary_segment(),
                                                Item::interval({"a2"}), Item::boundary_segment()}),
                b};
  s.arcs = {{"g", "p", "q"}, {"d", "a1", "a2"}};
  s.flow_degrees = {{"a1", 2}};
  return s;
}

std::vector<MarkedSurfaceArcSystem> formal_corpus() {
  return {split_disk(), a2_disk(), a2_disk(3), annulus_t(0), annulus_t(2), annulus_x(0), annulus_x(-1),
          annulus_cut(0), annulus_cut(3)};
}

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

// Up to 6 vertices. The gentle conditions only see pairs meeting at one vertex, so the
// relations are drawn vertex by vertex until the local conditions hold.
GentlePresentation random_gentle(std::mt19937& rng) {
  GentlePresentation g;
  const int n = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int v = 0; v < n; ++v) g.vertices.push_back("v" + std::to_string(v));
  std::vector<int> in(n, 0), out(n, 0);
  std::uniform_int_distribution<int> vert(0, n - 1), deg(-2, 2);
  const int tries = std::uniform_int_distribution<int>(1, 2 * n + 2)(rng);
  for (int t = 0; t < tries; ++t) {
    int s = vert(rng), u = vert(rng);
    if (out[s] == 2 || in[u] == 2) continue;
    ++out[s];
    ++in[u];
    g.arrows.push_back({"f" + std::to_string(g.arrows.size()), s, u, deg(rng)});
  }
  const int m = static_cast<int>(g.arrows.size());
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (g.arrows[a].target == v && g.arrows[b].source == v) pairs.push_back({a, b});
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::set<std::pair<int, int>> chosen;
      for (const auto& p : pairs)
        if (rng() % 2) chosen.insert(p);
      bool ok = true;
      for (int x = 0; x < m && ok; ++x) {
        int rel_in = 0, free_in = 0, rel_out = 0, free_out = 0;
        for (const auto& p : pairs) {
          if (p.second == x) ++(chosen.count(p) ? rel_in : free_in);
          if (p.first == x) ++(chosen.count(p) ? rel_out : free_out);
        }
        ok = rel_in <= 1 && free_in <= 1 && rel_out <= 1 && free_out <= 1;
      }
      if (ok) {
        g.relations.insert(chosen.begin(), chosen.end());
        break;
      }
    }
  }
  if (!g.gentle_violations().empty()) g.relations.clear(), g.arrows.clear();
  g.proper = g.finite_dimensional();
  g.smooth = g.finite_global_dimension();
  return g;
}

std::map<int, int> basis_dims(const TruncatedDgAlgebra& t) {
  std::map<int, int> out;
  for (const auto& e : t.basis()) ++out[e.degree];
  return out;
}

std::map<int, int> h_dims(const TruncatedDgAlgebra& t) {
  std::map<int, int> out;
  for (const auto& [d, n] : cohomology(t, Window::all()).dims())
    if (n) out[d] = n;
  return out;
}

}  // namespace

TEST_CASE("face tracing") {
  auto f = trace_faces(split_disk());
  REQUIRE(f.size() == 2);
  for (const auto& face : f) {
    CHECK(face.kind == FaceKind::Disk);
    CHECK(face.segments == 1);
  }

  auto t = trace_faces(annulus_t(1));
  REQUIRE(t.size() == 1);
  CHECK(t[0].kind == FaceKind::Disk);
  CHECK(t[0].segments == 1);
  CHECK(t[0].corners == std::vector<std::string>{"p", "q"});

  auto x = trace_faces(annulus_x(1));
  REQUIRE(x.size() == 2);
  CHECK(x[0].kind == FaceKind::HalfOpenCylinder);
  CHECK(x[0].attached == std::vector<std::string>{"B"});
  CHECK(x[1].kind == FaceKind::Disk);
  CHECK(x[1].segments == 1);

  // Every corner appears in exactly one face.
  for (const auto& s : formal_corpus()) {
    std::multiset<std::string> corners;
    std::size_t slots = 0;
    for (const auto& face : trace_faces(s)) corners.insert(face.corners.begin(), face.corners.end());
    for (const auto& arc : s.arcs) {
      CHECK(corners.count(arc.from) == 1);
      CHECK(corners.count(arc.to) == 1);
      slots += 2;
    }
    CHECK(corners.size() == slots);
  }
}

TEST_CASE("malformed ribbons") {
  auto unused = split_disk();
  unused.boundary[0].sequence[2] = Item::interval({"q", "r"});
  CHECK(error_of([&] { unused.validate(); }) == ErrorKind::MalformedRibbon);

  auto adjacent = split_disk();
  adjacent.boundary[0].sequence = {Item::interval({"p", "q"}), Item::boundary_segment(), Item::boundary_segment(),
                                   Item::interval({})};
  CHECK(error_of([&] { adjacent.validate(); }) == ErrorKind::MalformedRibbon);

  auto twice = split_disk();
  twice.arcs.push_back({"h", "p", "q"});
  CHECK(error_of([&] { twice.validate(); }) == ErrorKind::MalformedRibbon);

  auto no_attach = annulus_x(0);
  no_attach.boundary[1].attach.reset();
  CHECK(error_of([&] { no_attach.validate(); }) == ErrorKind::MalformedRibbon);

  // Loop degrees around B must add up to its winding number.
  MarkedSurfaceArcSystem two;
  two.boundary = {BoundaryComponent::marked("O", {Item::interval({"p1", "p2"}), Item::boundary_segment()}),
                  BoundaryComponent::fully("B", 3, {"q1", "q2"})};
  two.arcs = {{"g", "p1", "q1"}, {"h", "p2", "q2"}};
  two.flow_degrees = {{"q1", 1}, {"q2", 1}};
  CHECK(error_of([&] { two.validate(); }) == ErrorKind::MalformedRibbon);
  two.flow_degrees = {{"q1", 1}};
  auto flows = irreducible_flows(two);
  int around = 0;
  for (const auto& f : flows)
    if (f.start_slot == "q1" || f.start_slot == "q2") around += f.degree;
  CHECK(around == 3);

  auto wrong_cylinder = annulus_x(2);
  wrong_cylinder.flow_degrees = {{"p", 0}};
  CHECK(error_of([&] { wrong_cylinder.validate(); }) == ErrorKind::MalformedRibbon);
}

TEST_CASE("arc system classification") {
  auto d = classify_arc_system(split_disk());
  CHECK(d.full);
  CHECK(d.finitely_full);
  CHECK(d.formal);

  auto t = classify_arc_system(annulus_t(0));
  CHECK(t.full);
  CHECK(t.formal);
  CHECK_FALSE(t.finitely_full);

  auto x = classify_arc_system(annulus_x(0));
  CHECK_FALSE(x.full);
  CHECK(x.finitely_full);
  CHECK(x.formal);

  // Both endpoints on one interval with nothing in between: a disk without a boundary segment.
  MarkedSurfaceArcSystem bad;
  bad.boundary = {BoundaryComponent::marked("D", {Item::interval({"p", "q"}), Item::boundary_segment()})};
  bad.arcs = {{"g", "p", "q"}};
  auto b = classify_arc_system(bad);
  CHECK(b.full);
  CHECK_FALSE(b.formal);
  CHECK(error_of([&] { gentle_presentation(bad); }) == ErrorKind::NotFormal);

  MarkedSurfaceArcSystem wide;
  wide.boundary = {BoundaryComponent::marked(
      "D", {Item::interval({"p"}), Item::boundary_segment(), Item::interval({}), Item::boundary_segment(),
            Item::interval({"q"}), Item::boundary_segment()})};
  wide.arcs = {{"g", "p", "q"}};
  auto w = classify_arc_system(wide);
  CHECK_FALSE(w.full);
  CHECK_FALSE(w.finitely_full);
  CHECK_FALSE(w.formal);
}

TEST_CASE("irreducible flows") {
  auto f = irreducible_flows(a2_disk(4));
  REQUIRE(f.size() == 1);
  CHECK(f[0].start_slot == "p1");
  CHECK(f[0].end_slot == "p2");
  CHECK(f[0].degree == 4);

  auto t = irreducible_flows(annulus_t(5));
  REQUIRE(t.size() == 1);
  CHECK(t[0].start_slot == "q");
  CHECK(t[0].end_slot == "q");
  CHECK(t[0].degree == 5);

  auto x = irreducible_flows(annulus_x(3));
  REQUIRE(x.size() == 1);
  CHECK(x[0].degree == -2);
}

TEST_CASE("gentle presentations of surfaces") {
  for (int n : {-1, 0, 2}) {
    auto t = gentle_presentation(annulus_t(n));
    CHECK(t.vertices.size() == 1);
    REQUIRE(t.arrows.size() == 1);
    CHECK(t.arrows[0].degree == n);
    CHECK(t.relations.empty());
    CHECK_FALSE(t.proper);
    CHECK(t.smooth);

    auto x = gentle_presentation(annulus_x(n));
    REQUIRE(x.arrows.size() == 1);
    CHECK(x.arrows[0].degree == 1 - n);
    CHECK(x.relations == std::set<std::pair<int, int>>{{0, 0}});
    CHECK(x.proper);
    CHECK_FALSE(x.smooth);
  }

  auto a = gentle_presentation(a2_disk(1));
  CHECK(a.vertices.size() == 2);
  REQUIRE(a.arrows.size() == 1);
  CHECK(a.arrows[0].source == 0);
  CHECK(a.arrows[0].target == 1);
  CHECK(a.relations.empty());
  CHECK(a.proper);
  CHECK(a.smooth);

  // The properness flag agrees with the enumerated flow space, and smoothness with the
  // absence of relation cycles.
  for (const auto& s : formal_corpus()) {
    auto g = gentle_presentation(s);
    CHECK(g.gentle_violations().empty());
    const int cover = static_cast<int>(g.arrows.size()) + 1;
    const bool finite = g.nonzero_paths(cover).size() == g.nonzero_paths(cover + 3).size();
    CHECK(g.proper == finite);
    CHECK(g.proper == g.finite_dimensional());
    CHECK(g.smooth == g.finite_global_dimension());
  }
}

TEST_CASE("quadratic duality") {
  for (int n : {-2, 0, 1, 3}) {
    auto t = gentle_presentation(annulus_t(n));
    auto d = quadratic_dual(t);
    REQUIRE(d.arrows.size() == 1);
    CHECK(d.arrows[0].degree == 1 - n);
    CHECK(d.arrows[0].label == t.arrows[0].label + "!");
    CHECK(d.relations == std::set<std::pair<int, int>>{{0, 0}});
    CHECK(d.proper);

    auto x = gentle_presentation(annulus_x(n));
    auto e = quadratic_dual(x);
    CHECK(e.arrows[0].degree == n);
    CHECK(e.relations.empty());
  }

  auto a = quadratic_dual(gentle_presentation(a2_disk(2)));
  REQUIRE(a.arrows.size() == 1);
  CHECK(a.arrows[0].source == 1);
  CHECK(a.arrows[0].target == 0);
  CHECK(a.arrows[0].degree == -1);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_gentle(rng);
    REQUIRE(g.gentle_violations().empty());
    auto d = quadratic_dual(g);
    CHECK(d.gentle_violations().empty());
    CHECK(d.proper == d.finite_dimensional());
    CHECK(d.smooth == d.finite_global_dimension());
    for (std::size_t i = 0; i < g.arrows.size(); ++i) CHECK(d.arrows[i].degree == 1 - g.arrows[i].degree);
    CHECK(quadratic_dual(d) == g);
  }

  GentlePresentation star;
  star.vertices = {"c", "a", "b", "z"};
  star.arrows = {{"x", 1, 0, 0}, {"y", 2, 0, 0}, {"w", 3, 0, 0}};
  CHECK(error_of([&] { quadratic_dual(star); }) == ErrorKind::NotGentle);
}

TEST_CASE("quadratic dual agrees with the dual bar construction") {
  Field k(0);
  const int lambda = 4;
  // The annulus pair: the dual bar of k[x]/x^2, |x| = 1 - n, is k[[t]] cut at weight lambda.
  for (int n : {0, 1, 2, 3}) {
    auto x = gentle_presentation(annulus_x(n));
    auto a = realize(x.presentation(k), Window::all(), lambda);
    auto dual = dual_bar(a, lambda);
    std::map<int, int> expected;
    for (int m = 0; m <= lambda; ++m) expected[m * n] += 1;
    CHECK(h_dims(dual) == expected);
    CHECK(basis_dims(realize(quadratic_dual(x).presentation(k), Window::all(), lambda)) == expected);
  }

  std::mt19937 rng(23);
  int compared = 0;
  for (int trial = 0; trial < 40 && compared < 12; ++trial) {
    auto g = random_gentle(rng);
    if (!g.proper || g.arrows.empty()) continue;
    ++compared;
    const int longest = std::max<int>(static_cast<int>(g.arrows.size()) + 1, 3);
    auto a = realize(g.presentation(k), Window::all(), longest);
    auto lhs = h_dims(dual_bar(a, 3));
    auto rhs = basis_dims(realize(quadratic_dual(g).presentation(k), Window::all(), 3));
    CHECK(lhs == rhs);
  }
  CHECK(compared >= 5);
}

TEST_CASE("semiorthogonal peeling") {
  GentlePresentation dn;
  dn.vertices = {"v"};
  dn.arrows = {{"x", 0, 0, 3}};
  dn.relations = {{0, 0}};
  dn.proper = true;
  auto one = extract_sod(dn);
  REQUIRE(one.factors.size() == 1);
  CHECK(one.factors[0].dual_numbers);
  CHECK(one.factors[0].loop_degree == 3);

  GentlePresentation uv;
  uv.vertices = {"u", "v"};
  uv.arrows = {{"a", 0, 1, 0}, {"x", 1, 1, 1}};
  uv.relations = {{1, 1}};
  uv.proper = true;
  REQUIRE(uv.gentle_violations().empty());
  auto two = extract_sod(uv);
  REQUIRE(two.factors.size() == 2);
  CHECK_FALSE(two.factors[0].dual_numbers);
  CHECK(two.factors[0].vertices == std::vector<std::string>{"u"});
  CHECK(two.factors[1].dual_numbers);
  CHECK(two.back_arrows.empty());
  CHECK(two.to_string() == "<{u}, k[x]/x^2 (|x| = 1)>");

  for (int w : {-1, 0, 2}) {
    auto s = extract_sod(gentle_presentation(annulus_x(w)));
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0].loop_degree == 1 - w);

    auto cut = extract_sod(gentle_presentation(annulus_cut(w)));
    REQUIRE(cut.factors.size() == 2);
    CHECK(cut.factors[0].vertices == std::vector<std::string>{"d"});
    CHECK(cut.factors[1].dual_numbers);
    CHECK(cut.factors[1].loop_degree == 1 - w);
    CHECK(cut.back_arrows.empty());
  }

  CHECK(extract_sod(gentle_presentation(a2_disk())).factors.size() == 1);
  CHECK(error_of([] { extract_sod(gentle_presentation(annulus_t(1))); }) == ErrorKind::InvalidInput);
}

TEST_CASE("Fukaya reflexivity verdicts") {
  auto zero = fukaya_verdict(annulus_t(0));
  CHECK(zero.verdict == Verdict::NotReflexive);
  CHECK(zero.certificate.witness.find("|t| = 0") != std::string::npos);
  CHECK(fukaya_verdict(annulus_x(0)).verdict == Verdict::NotReflexive);

  auto two = fukaya_verdict(annulus_t(2));
  CHECK(two.verdict == Verdict::Reflexive);
  CHECK(two.certificate.criterion == "fukaya-winding");

  auto disk = fukaya_verdict(split_disk());
  CHECK(disk.verdict == Verdict::Reflexive);
  CHECK(disk.certificate.criterion == "fukaya-smooth-proper");
  CHECK_FALSE(disk.window_conditional());

  MarkedSurfaceArcSystem closed;
  closed.boundary = {BoundaryComponent::fully("A", 1, {"p"}), BoundaryComponent::fully("B", 1, {"q"})};
  closed.arcs = {{"g", "p", "q"}};
  CHECK(error_of([&] { fukaya_verdict(closed); }) == ErrorKind::NoMarkedInterval);
}

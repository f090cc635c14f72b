// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "dgkit/cy.hpp"
#include "dgkit/error.hpp"
#include "dgkit/gentle.hpp"
#include "dgkit/job.hpp"
#include "dgkit/koszul.hpp"
#include "dgkit/reflexivity.hpp"

using namespace dgkit;

namespace {

const Field k0(0);

Quiver point() { return Quiver({"1"}); }

Quiver loop() {
  Quiver q({"1"});
  q.add_arrow("x", 0, 0);
  return q;
}

Quiver a2() {
  Quiver q({"1", "2"});
  q.add_arrow("a", 0, 1);
  return q;
}

Quiver cycle3() {
  Quiver q({"1", "2", "3"});
  q.add_arrow("x", 0, 1);
  q.add_arrow("y", 1, 2);
  q.add_arrow("z", 2, 0);
  return q;
}

Superpotential cycle_w(const Quiver& q, std::vector<int> cycle, const Field& k) {
  Superpotential w(k);
  w.add_cycle(q, cycle, k.one());
  return w;
}

TruncatedDgAlgebra dual_numbers(int degree, const Field& k = k0) {
  std::vector<BasisElement> basis{{"e_1", 0, 0, 0, 0, true}, {"eps", degree, 1, 0, 0, false}};
  std::vector<std::vector<SparseVec>> table(2, std::vector<SparseVec>(2));
  table[0][0] = SparseVec::unit(0, k);
  table[0][1] = SparseVec::unit(1, k);
  table[1][0] = SparseVec::unit(1, k);
  return graded_algebra(k, {"1"}, basis, table);
}

using Item = BoundaryItem;

MarkedSurfaceArcSystem annulus_t(int winding) {
  MarkedSurfaceArcSystem s;
  s.boundary = {BoundaryComponent::marked("O", {Item::interval({"p"}), Item::boundary_segment()}),
                BoundaryComponent::fully("B", winding, {"q"})};
  s.arcs = {{"g", "p", "q"}};
  return s;
}

MarkedSurfaceArcSystem annulus_x(int winding) {
  MarkedSurfaceArcSystem s;
  auto b = BoundaryComponent::fully("B", winding, {});
  b.attach = "p";
  s.boundary = {BoundaryComponent::marked("O", {Item::interval({"p", "q"}), Item::boundary_segment()}), b};
  s.arcs = {{"g", "p", "q"}};
  return s;
}

// Cut normal form: the cylinder arc g plus an arc d cut off by it.
MarkedSurfaceArcSystem annulus_cut(int winding) {
  MarkedSurfaceArcSystem s;
  auto b = BoundaryComponent::fully("B", winding, {});
  b.attach = "p";
  s.boundary = {BoundaryComponent::marked("O", {Item::interval({"a1", "p", "q"}), Item::boundary_segment(),
                                                Item::interval({"a2"}), Item::boundary_segment()}),
                b};
  s.arcs = {{"g", "p", "q"}, {"d", "a1", "a2"}};
  return s;
}

MarkedSurfaceArcSystem a2_disk() {
  MarkedSurfaceArcSystem s;
  s.boundary = {BoundaryComponent::marked(
      "D", {Item::interval({"p1", "p2"}), Item::boundary_segment(), Item::interval({"y"}),
            Item::boundary_segment(), Item::interval({"x"}), Item::boundary_segment()})};
  s.arcs = {{"a", "p1", "x"}, {"b", "p2", "y"}};
  return s;
}

// Gentle presentation on up to 6 vertices; relations drawn vertex by vertex.
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
  g.proper = g.finite_dimensional();
  g.smooth = g.finite_global_dimension();
  return g;
}

std::map<int, int> nonzero(const std::map<int, int>& dims) {
  std::map<int, int> out;
  for (const auto& [d, n] : dims)
    if (n) out[d] = n;
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome sign_soundness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  auto verify = [&](const std::string& name, const TruncatedDgAlgebra& t) {
    auto r = verify_differential(t);
    checked += r.d_squared_checked + r.leibniz_checked;
    o.require(r.ok(), name + ": " + (r.failures.empty() ? "" : r.failures.front()));
  };
  std::vector<std::pair<std::string, Quiver>> qs{{"point", point()}, {"loop", loop()}, {"A2", a2()}, {"3-cycle", cycle3()}};
  for (int n : {1, 2, 3})
    for (const auto& [name, q] : qs)
      verify("Pi_" + std::to_string(n) + "(" + name + ")", realize(cy_completion(q, n, k0), Window{-4, 1}, 4));
  verify("Gamma(loop, x^3)", realize(ginzburg(loop(), cycle_w(loop(), {0, 0, 0}, k0)), Window{-3, 0}, 6));
  verify("Gamma(3-cycle, xyz)", realize(ginzburg(cycle3(), cycle_w(cycle3(), {0, 1, 2}, k0)), Window{-3, 0}, 6));
  for (int deg : {1, 0, -1, -2})
    for (int lambda = 1; lambda <= 6; ++lambda) {
      auto a = dual_numbers(deg);
      auto bad = bar(a, lambda).d_squared_failures();
      o.require(bad.empty(), "bar of dual numbers: " + (bad.empty() ? "" : bad.front()));
      verify("cobar of dual numbers", cobar(dual_coalgebra(a), lambda));
    }
  const double s = seconds_since(t0);
  o.require(s < 10, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " identities checked, " + std::to_string(s).substr(0, 4) + " s";
  return o;
}

Outcome jacobi_agreement() {
  Outcome o;
  std::vector<std::tuple<std::string, Quiver, std::vector<int>>> corpus{{"loop x^3", loop(), {0, 0, 0}},
                                                                         {"3-cycle xyz", cycle3(), {0, 1, 2}}};
  for (const auto& [name, q, cyc] : corpus)
    for (int L = 1; L <= 6; ++L) {
      auto w = cycle_w(q, cyc, k0);
      const int h0 = cohomology(realize(ginzburg(q, w), Window{-1, 1}, L), Window{0, 0}).dim(0);
      o.require(h0 == jacobi_basis(q, w, L).count(), name + " at L = " + std::to_string(L));
    }
  for (int L = 2; L <= 6; ++L)
    o.require(jacobi_basis(loop(), cycle_w(loop(), {0, 0, 0}, k0), L).count() == 2, "x^3 char 0");
  const Field k3(3);
  for (int L = 0; L <= 6; ++L)
    o.require(jacobi_basis(loop(), cycle_w(loop(), {0, 0, 0}, k3), L).count() == L + 1, "x^3 char 3");
  if (o.pass) o.detail = "x^3: dim 2 in char 0, 1..L+1 in char 3";
  return o;
}

Outcome preprojective() {
  Outcome o;
  // Oracle: the relations e_1 (a a*) e_1 and e_2 (a* a) e_2 are monomial, so H^0 has the
  // paths of the double quiver that avoid both as a basis.
  struct Arr {
    int s, t;
  };
  const std::vector<Arr> arrows{{0, 1}, {1, 0}};  // a, a*
  auto forbidden = [](int x, int y) { return x != y; };  // a a* and a* a
  int oracle = 2, oracle_rad = 0;
  std::vector<std::vector<int>> layer{{0}, {1}};
  for (int len = 1; len <= 8 && !layer.empty(); ++len) {
    oracle += static_cast<int>(layer.size());
    oracle_rad += static_cast<int>(layer.size());
    std::vector<std::vector<int>> next;
    for (const auto& p : layer)
      for (int b = 0; b < 2; ++b)
        if (arrows[p.back()].t == arrows[b].s && !forbidden(p.back(), b)) {
          auto q = p;
          q.push_back(b);
          next.push_back(q);
        }
    layer = next;
  }
  auto h0 = h0_algebra(cy_completion(a2(), 2, k0), 4);
  o.require(h0.algebra.dim() == oracle, "dim " + std::to_string(h0.algebra.dim()) + " vs oracle " + std::to_string(oracle));
  o.require(static_cast<int>(h0.radical.basis.size()) == oracle_rad, "radical dim");
  o.require(h0.summary.commutative && h0.summary.residue_dims == std::vector<int>{1, 1}, "quotient " + h0.summary.description);
  if (o.pass) o.detail = "dim 4, radical 2, quotient " + h0.summary.description;
  return o;
}

Outcome dual_bar_fixture() {
  Outcome o;
  for (int n : {1, 2, 3}) {
    auto d = dual_bar(dual_numbers(1 - n), 6);
    auto dims = cohomology(d, Window{0, 6 * n}).dims();
    for (int deg = 0; deg <= 6 * n; ++deg) {
      const int got = dims.count(deg) ? dims.at(deg) : 0;
      o.require(got == (deg % n == 0 ? 1 : 0), "n = " + std::to_string(n) + ", degree " + std::to_string(deg));
    }
  }
  if (o.pass) o.detail = "dims 1 in degrees 0, n, ..., 6n for n = 1, 2, 3";
  return o;
}

Outcome koszul_pairs() {
  Outcome o;
  int compared = 0;
  for (const auto& [name, q] : std::vector<std::pair<std::string, Quiver>>{{"point", point()}, {"A2", a2()}})
    for (int n : {2, 3})
      for (int lambda = 3; lambda <= 5; ++lambda) {
        auto r = verify_koszul_pair(q, n, lambda, Window{-(lambda - 2), 0}, k0);
        o.require(r.all_match && r.certified, name + " n = " + std::to_string(n) + " Lambda = " +
                                                  std::to_string(lambda) + ": " + r.detail);
        compared += static_cast<int>(r.matches.size());
      }
  if (o.pass) o.detail = std::to_string(compared) + " degrees compared";
  return o;
}

Outcome gentle_duality() {
  Outcome o;
  std::mt19937 rng(2024);
  int sizes = 0;
  for (int i = 0; i < 50; ++i) {
    auto g = random_gentle(rng);
    o.require(g.gentle_violations().empty(), "generator produced a non-gentle presentation");
    sizes = std::max<int>(sizes, static_cast<int>(g.vertices.size()));
    auto d = quadratic_dual(g);
    o.require(quadratic_dual(d) == g, "not involutive on trial " + std::to_string(i));
    for (std::size_t a = 0; a < g.arrows.size(); ++a)
      o.require(d.arrows[a].degree == 1 - g.arrows[a].degree, "degree rule");
  }
  // Annulus pair.
  auto t = gentle_presentation(annulus_t(0));
  auto x = gentle_presentation(annulus_x(0));
  o.require(t.arrows.size() == 1 && t.relations.empty() && t.arrows[0].degree == 0, "k[t] with |t| = 0");
  o.require(x.arrows.size() == 1 && x.relations.size() == 1 && x.arrows[0].degree == 1, "k[x]/x^2 with |x| = 1");
  auto tx = quadratic_dual(t);
  o.require(tx.arrows[0].degree == x.arrows[0].degree && tx.relations.size() == x.relations.size(),
            "dual of k[t] is k[x]/x^2");
  // Dual bar cohomology agrees with the quadratic dual.
  for (int lambda = 1; lambda <= 6; ++lambda) {
    auto dt = nonzero(cohomology(dual_bar(realize(t.presentation(k0), Window::all(), lambda), lambda), Window::all()).dims());
    o.require(dt == std::map<int, int>{{0, 1}, {1, 1}}, "dual bar of k[t] at Lambda " + std::to_string(lambda));
    auto dx = nonzero(cohomology(dual_bar(realize(x.presentation(k0), Window::all(), lambda), lambda), Window::all()).dims());
    o.require(dx == std::map<int, int>{{0, lambda + 1}}, "dual bar of k[x]/x^2 at Lambda " + std::to_string(lambda));
  }
  if (o.pass) o.detail = "50 random presentations up to " + std::to_string(sizes) + " vertices; annulus at Lambda <= 6";
  return o;
}

Outcome sod() {
  Outcome o;
  for (int w : {-1, 0, 1, 2}) {
    auto g = gentle_presentation(annulus_cut(w));
    auto s = extract_sod(g);
    const std::string at = "w = " + std::to_string(w);
    o.require(!s.factors.empty() && s.factors.back().dual_numbers, at + ": no dual-numbers factor");
    if (!o.pass) break;
    o.require(s.factors.back().loop_degree == 1 - w, at + ": loop degree");
    // Independent check: no arrow from a later factor into an earlier one.
    std::map<std::string, int> factor_of;
    for (std::size_t i = 0; i < s.factors.size(); ++i)
      for (const auto& v : s.factors[i].vertices) factor_of[v] = static_cast<int>(i);
    for (const auto& a : g.arrows)
      o.require(factor_of.at(g.vertices[a.source]) <= factor_of.at(g.vertices[a.target]), at + ": back arrow " + a.label);
    o.require(s.back_arrows.empty(), at + ": back arrows reported");
  }
  if (o.pass) o.detail = "dual numbers in degree 1 - w for w = -1, 0, 1, 2";
  return o;
}

Outcome verdict_table() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto fd = [](std::vector<std::string> labels, std::function<void(std::vector<std::vector<SparseVec>>&)> extra) {
    const int n = static_cast<int>(labels.size());
    std::vector<std::vector<SparseVec>> t(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i) {
      t[0][i] = SparseVec::unit(i, k0);
      t[i][0] = SparseVec::unit(i, k0);
    }
    extra(t);
    return FiniteDimAlgebra(k0, labels, t);
  };
  auto k_x_x2 = fd({"1", "x"}, [](auto&) {});
  auto k_times_k = fd({"1", "e"}, [](auto& t) { t[1][1] = SparseVec::unit(1, k0); });
  auto exterior = fd({"1", "x", "y", "xy"}, [](auto& t) {
    t[1][2] = SparseVec::unit(3, k0);
    t[2][1].add(3, k0.from_int(-1));
  });
  struct Row {
    std::string name;
    CheckInput input;
    Verdict expected;
  };
  std::vector<Row> rows{
      {"k[t], |t| = 0", SymbolicFamily{SymbolicFamily::Kind::Polynomial, 0}, Verdict::NotReflexive},
      {"k[t, t^-1], |t| = 0", SymbolicFamily{SymbolicFamily::Kind::Laurent, 0}, Verdict::NotReflexive},
      {"k[t, t^-1], |t| = 2", SymbolicFamily{SymbolicFamily::Kind::Laurent, 2}, Verdict::NotReflexive},
      {"k[x]/x^2", k_x_x2, Verdict::Reflexive},
      {"k x k", k_times_k, Verdict::Reflexive},
      {"k<x,y>/(x^2, y^2, xy+yx)", exterior, Verdict::Reflexive},
      {"k[eps]/eps^2, |eps| = 2", dual_numbers(2), Verdict::Reflexive},
      {"Gamma(loop, x^3)", GinzburgInput{loop(), cycle_w(loop(), {0, 0, 0}, k0)}, Verdict::Reflexive},
      {"Pi_2(A2)", CyInput{a2(), 2}, Verdict::Reflexive},
      {"Pi_3(A2)", CyInput{a2(), 3}, Verdict::Reflexive},
      {"Pi_2(point)", CyInput{point(), 2}, Verdict::Reflexive},
      {"gentle A2 disk", gentle_presentation(a2_disk()), Verdict::Reflexive},
      {"gentle k[x]/x^2", gentle_presentation(annulus_x(0)), Verdict::Reflexive},
      {"gentle cut annulus", gentle_presentation(annulus_cut(1)), Verdict::Reflexive},
      {"annulus winding 0", annulus_t(0), Verdict::NotReflexive},
  };
  for (const auto& r : rows) {
    auto v = check(r.input, k0);
    o.require(v.verdict == r.expected, r.name + ": got " + v.summary());
    auto bad = replay(r.input, v, k0);
    o.require(bad.empty(), r.name + ": replay " + (bad.empty() ? "" : bad.front()));
  }
  const double s = seconds_since(t0);
  o.require(s < 30, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(rows.size()) + " verdicts, all certificates replay";
  return o;
}

Outcome completeness() {
  Outcome o;
  for (int deg : {1, -1}) {
    const std::string at = "|eps| = " + std::to_string(deg);
    Window w = deg > 0 ? Window{0, 3} : Window{-3, 0};
    auto a = dual_numbers(deg);
    auto r = completeness_report(a, 6, w);
    o.require(r.verdict == CompletenessVerdict::CompleteWithinWindow, at + ": " + to_string(r.verdict));
    auto triple = completeness_triple(a, 6, w);
    o.require(triple.reflexive.value == TriState::Unknown, at + ": reflexive flag should start unknown");
    auto inferred = two_out_of_three(triple);
    auto direct = check(a, k0);
    o.require(inferred.reflexive.value == TriState::True, at + ": nothing inferred");
    o.require(direct.verdict == Verdict::Reflexive, at + ": direct " + direct.summary());
  }
  if (o.pass) o.detail = "both gradings complete on 4 degrees at Lambda = 6; inference matches direct verdict";
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const std::string root = DGKIT_SOURCE_DIR;
  auto first = selftest().dump(2) + "\n";
  o.require(first == selftest().dump(2) + "\n", "selftest differs between runs");
  o.require(first == slurp(root + "/tests/golden/selftest.json"), "selftest differs from golden");
  int jobs = 0;
  for (const char* name : {"circle-cochains", "circle-loops", "annulus-t", "annulus-x", "a2-preprojective",
                           "loop-ginzburg", "r3-pair", "disk-gentle"}) {
    auto job = parse_job(slurp(root + "/data/jobs/" + name + ".json"));
    auto a = run_job(job, job.commands).dump(2) + "\n";
    auto b = run_job(job, job.commands).dump(2) + "\n";
    o.require(a == b, std::string(name) + " differs between runs");
    o.require(a == slurp(root + "/tests/golden/" + name + ".json"), std::string(name) + " differs from golden");
    ++jobs;
  }
  if (o.pass) o.detail = "selftest and " + std::to_string(jobs) + " golden reports byte-stable";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sign soundness", sign_soundness},
      {"Jacobi and H^0 agreement", jacobi_agreement},
      {"preprojective H^0 of A_2", preprojective},
      {"dual bar of dual numbers", dual_bar_fixture},
      {"Koszul pair R_n and Pi_n", koszul_pairs},
      {"gentle quadratic duality", gentle_duality},
      {"semiorthogonal decompositions", sod},
      {"reflexivity verdict table", verdict_table},
      {"completeness reports", completeness},
      {"determinism and golden reports", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " [" << (o.pass ? "PASS" : "FAIL") << "] " << criteria[i].first << ": "
              << o.detail << "\n";
  }
  return failures;
}

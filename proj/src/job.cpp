#include "dgkit/job.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "dgkit/cy.hpp"
#include "dgkit/error.hpp"
#include "dgkit/gentle.hpp"
#include "dgkit/koszul.hpp"
#include "dgkit/reflexivity.hpp"

namespace dgkit {

namespace {

// A value in the document together with its JSON pointer.
struct Node {
  const Json* j;
  std::string at;

  [[noreturn]] void fail(const std::string& what) const { throw InputError(at.empty() ? "/" : at, what); }

  bool has(const std::string& key) const { return j->is_object() && j->contains(key); }
  Node operator[](const std::string& key) const {
    if (!j->is_object()) fail("expected an object");
    if (!j->contains(key)) fail("missing required key '" + key + "'");
    return {&j->at(key), at + "/" + key};
  }
  std::optional<Node> get(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return (*this)[key];
  }
  std::vector<Node> items() const {
    if (!j->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j->size(); ++i) out.push_back({&(*j)[i], at + "/" + std::to_string(i)});
    return out;
  }
  int integer() const {
    if (!j->is_number_integer()) fail("expected an integer");
    return j->get<int>();
  }
  bool boolean() const {
    if (!j->is_boolean()) fail("expected true or false");
    return j->get<bool>();
  }
  std::string str() const {
    if (!j->is_string()) fail("expected a string");
    return j->get<std::string>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }
  Scalar scalar(const Field& k) const {
    if (!j->is_string()) fail("scalars are written as integer-fraction strings such as \"-3/4\"");
    try {
      return k.parse(j->get<std::string>());
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
};

// Library errors raised while building an object point at the object.
template <class F>
auto located(const Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Window parse_window_string(const std::string& s, const std::string& at) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw InputError(at, "window must look like LO..HI");
  try {
    std::size_t used = 0;
    const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    Window w{std::stoi(lo, &used), 0, false};
    if (used != lo.size()) throw std::invalid_argument(lo);
    w.hi = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    return w;
  } catch (const std::logic_error&) {
    throw InputError(at, "window must look like LO..HI with integers");
  }
}

std::string kind_of(const JobDocument& job) { return job.object.at("kind").get<std::string>(); }

Node object_node(const JobDocument& job) { return {&job.object, "/object"}; }

Quiver build_quiver(const Node& o) {
  Quiver q(o["vertices"].strings());
  for (const auto& a : o["arrows"].items()) {
    auto endpoint = [&](const char* key) {
      Node v = a[key];
      auto idx = q.find_vertex(v.str());
      if (!idx) v.fail("unknown vertex '" + v.str() + "'");
      return *idx;
    };
    const int s = endpoint("source"), t = endpoint("target");
    const int degree = a.has("degree") ? a["degree"].integer() : 0;
    if (q.find_arrow(a["label"].str())) a["label"].fail("duplicate arrow label");
    q.add_arrow(a["label"].str(), s, t, degree);
  }
  return q;
}

Superpotential build_superpotential(const Node& w, const Quiver& q, const Field& k) {
  Superpotential out(k);
  for (const auto& term : w.items()) {
    std::vector<int> cycle;
    for (const auto& a : term["cycle"].items()) {
      auto idx = q.find_arrow(a.str());
      if (!idx) a.fail("unknown arrow '" + a.str() + "'");
      cycle.push_back(*idx);
    }
    const Scalar c = term["coeff"].scalar(k);
    located(term, [&] {
      out.add_cycle(q, cycle, c);
      return 0;
    });
  }
  return out;
}

PathAlgebraElement build_element(const Node& terms, const DgPresentation& p) {
  PathAlgebraElement sum(p.field());
  for (const auto& t : terms.items()) {
    std::optional<int> vertex;
    if (auto v = t.get("vertex")) {
      auto idx = p.quiver().find_vertex(v->str());
      if (!idx) v->fail("unknown vertex '" + v->str() + "'");
      vertex = *idx;
    }
    auto word = t["word"].strings();
    for (std::size_t i = 0; i < word.size(); ++i)
      if (!p.quiver().find_arrow(word[i])) t["word"].items()[i].fail("unknown generator '" + word[i] + "'");
    const Scalar c = t["coeff"].scalar(p.field());
    sum.add(located(t, [&] { return p.word(word, c, vertex); }), p.field().one());
  }
  return sum;
}

DgPresentation build_dg(const Node& o, const Field& k) {
  DgPresentation p(k, o["vertices"].strings());
  for (const auto& g : o["generators"].items()) {
    std::optional<int> weight;
    if (auto w = g.get("weight")) weight = w->integer();
    located(g, [&] {
      return p.add_generator(g["label"].str(), g["source"].str(), g["target"].str(), g["degree"].integer(), weight);
    });
  }
  if (auto ds = o.get("differentials"))
    for (const auto& d : ds->items()) {
      auto idx = p.quiver().find_arrow(d["generator"].str());
      if (!idx) d["generator"].fail("unknown generator");
      auto value = build_element(d["value"], p);
      located(d, [&] {
        p.set_differential(*idx, value);
        return 0;
      });
    }
  if (auto rs = o.get("relations"))
    for (const auto& r : rs->items()) p.add_relation(build_element(r, p));
  located(o, [&] {
    p.validate();
    return 0;
  });
  if (auto name = o.get("name")) p.name = name->str();
  return p;
}

struct AlgebraData {
  std::vector<std::string> vertices;
  std::vector<BasisElement> basis;
  std::vector<std::vector<SparseVec>> table;
};

AlgebraData build_algebra_data(const Node& o, const Field& k) {
  AlgebraData a;
  a.vertices = o.has("vertices") ? o["vertices"].strings() : std::vector<std::string>{"1"};
  std::map<std::string, int> index;
  auto vertex = [&](const Node& n) {
    auto it = std::find(a.vertices.begin(), a.vertices.end(), n.str());
    if (it == a.vertices.end()) n.fail("unknown vertex '" + n.str() + "'");
    return static_cast<int>(it - a.vertices.begin());
  };
  for (const auto& b : o["basis"].items()) {
    BasisElement e;
    e.label = b["label"].str();
    e.degree = b["degree"].integer();
    e.idempotent = b.has("idempotent") && b["idempotent"].boolean();
    e.weight = b.has("weight") ? b["weight"].integer() : (e.idempotent ? 0 : 1);
    e.source = b.has("source") ? vertex(b["source"]) : 0;
    e.target = b.has("target") ? vertex(b["target"]) : e.source;
    if (e.idempotent && (e.degree != 0 || e.source != e.target)) b.fail("idempotents sit in degree 0 on one vertex");
    if (index.count(e.label)) b["label"].fail("duplicate basis label");
    index[e.label] = static_cast<int>(a.basis.size());
    a.basis.push_back(e);
  }
  const int n = static_cast<int>(a.basis.size());
  std::vector<bool> has_unit(a.vertices.size(), false);
  for (const auto& e : a.basis)
    if (e.idempotent) has_unit[e.source] = true;
  for (std::size_t v = 0; v < has_unit.size(); ++v)
    if (!has_unit[v]) o["basis"].fail("vertex '" + a.vertices[v] + "' has no idempotent basis element");
  a.table.assign(n, std::vector<SparseVec>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto &x = a.basis[i], &y = a.basis[j];
      if (x.idempotent && y.source == x.source) a.table[i][j] = SparseVec::unit(j, k);
      else if (y.idempotent && !x.idempotent && x.target == y.source) a.table[i][j] = SparseVec::unit(i, k);
    }
  auto lookup = [&](const Node& l) {
    auto it = index.find(l.str());
    if (it == index.end()) l.fail("unknown basis element '" + l.str() + "'");
    return it->second;
  };
  if (auto ps = o.get("products"))
    for (const auto& p : ps->items()) {
      const int i = lookup(p["left"]), j = lookup(p["right"]);
      if (a.basis[i].idempotent || a.basis[j].idempotent) p.fail("products with idempotents are implied");
      SparseVec v;
      Node result = p["result"];
      if (!result.j->is_object()) result.fail("expected an object of label: coefficient");
      for (const auto& [label, c] : result.j->items()) {
        Node cn{&c, result.at + "/" + label};
        Node ln{&result.j->at(label), result.at + "/" + label};
        Json key = label;
        v.add(lookup(Node{&key, ln.at}), cn.scalar(k));
      }
      a.table[i][j] = v;
    }
  return a;
}

TruncatedDgAlgebra build_graded(const Node& o, const Field& k) {
  auto a = build_algebra_data(o, k);
  auto t = located(o, [&] { return graded_algebra(k, a.vertices, a.basis, a.table); });
  auto bad = t.associativity_failures(1);
  if (!bad.empty()) o.fail("product is not associative: " + bad.front());
  if (auto name = o.get("name")) t.name = name->str();
  return t;
}

// Ungraded algebras concentrated in degree 0 on one vertex are checked as finite algebras.
std::optional<FiniteDimAlgebra> build_finite(const Node& o, const Field& k) {
  auto a = build_algebra_data(o, k);
  if (a.vertices.size() != 1) return std::nullopt;
  std::vector<std::string> labels;
  for (const auto& e : a.basis) {
    if (e.degree != 0) return std::nullopt;
    labels.push_back(e.label);
  }
  return FiniteDimAlgebra(k, labels, a.table);
}

MarkedSurfaceArcSystem build_surface(const Node& o) {
  MarkedSurfaceArcSystem s;
  for (const auto& b : o["boundary"].items()) {
    BoundaryComponent c;
    if (b["fully_marked"].boolean()) {
      c = BoundaryComponent::fully(b["name"].str(), b["winding"].integer(),
                                   b.has("slots") ? b["slots"].strings() : std::vector<std::string>{});
    } else {
      std::vector<BoundaryItem> seq;
      for (const auto& item : b["sequence"].items()) {
        if (item.has("interval")) seq.push_back(BoundaryItem::interval(item["interval"].strings()));
        else if (item.has("segment") && item["segment"].boolean()) seq.push_back(BoundaryItem::boundary_segment());
        else item.fail("expected {\"interval\": [slots]} or {\"segment\": true}");
      }
      c = BoundaryComponent::marked(b["name"].str(), seq);
    }
    if (auto at = b.get("attach")) c.attach = at->str();
    s.boundary.push_back(c);
  }
  for (const auto& a : o["arcs"].items()) s.arcs.push_back({a["name"].str(), a["from"].str(), a["to"].str()});
  if (auto f = o.get("flow_degrees")) {
    if (!f->j->is_object()) f->fail("expected an object of slot: degree");
    for (const auto& [slot, d] : f->j->items()) s.flow_degrees[slot] = Node{&d, f->at + "/" + slot}.integer();
  }
  located(o, [&] {
    s.validate();
    return 0;
  });
  return s;
}

SymbolicFamily build_symbolic(const Node& o) {
  const std::string f = o["family"].str();
  SymbolicFamily s;
  if (f == "polynomial") s.kind = SymbolicFamily::Kind::Polynomial;
  else if (f == "laurent") s.kind = SymbolicFamily::Kind::Laurent;
  else if (f == "power-series") s.kind = SymbolicFamily::Kind::PowerSeries;
  else o["family"].fail("family must be polynomial, laurent or power-series");
  s.degree = o["degree"].integer();
  return s;
}

// Builds the object once so that the document is rejected up front.
void validate_object(const Node& o, const Field& k) {
  const std::string kind = o["kind"].str();
  if (kind == "quiver") {
    Quiver q = build_quiver(o);
    if (auto n = o.get("n"); n && n->integer() < 1) n->fail("n must be positive");
    if (auto w = o.get("superpotential")) build_superpotential(*w, q, k);
  } else if (kind == "dg") {
    build_dg(o, k);
  } else if (kind == "algebra") {
    build_graded(o, k);
  } else if (kind == "surface") {
    build_surface(o);
  } else if (kind == "symbolic") {
    build_symbolic(o);
  } else {
    o["kind"].fail("kind must be quiver, dg, algebra, surface or symbolic");
  }
}

Json window_json(const Window& w) {
  if (w.unbounded) return "all";
  return std::to_string(w.lo) + ".." + std::to_string(w.hi);
}

Json dims_json(const std::map<int, int>& dims) {
  Json j = Json::object();
  for (const auto& [d, n] : dims) j[std::to_string(d)] = n;
  return j;
}

Json bool_map_json(const std::map<int, bool>& m) {
  Json j = Json::object();
  for (const auto& [d, b] : m) j[std::to_string(d)] = b;
  return j;
}

Json overflow_json(const TruncatedDgAlgebra& t) {
  Json j = Json::array();
  for (const auto& e : t.overflow())
    j.push_back({{"kind", to_string(e.kind)}, {"degree", e.degree}, {"count", e.count}});
  return j;
}

Json verify_json(const TruncatedDgAlgebra& t, const std::string& what) {
  auto r = verify_differential(t);
  Json j = {{"d_squared_checked", r.d_squared_checked},
            {"leibniz_checked", r.leibniz_checked},
            {"failures", r.failures}};
  if (!r.ok()) throw InvariantFailure("d^2 = 0 or Leibniz fails on " + what, j);
  return j;
}

Json h0_json(const H0Algebra& h) {
  return {{"dim", h.algebra.dim()},
          {"radical_dim", static_cast<int>(h.radical.basis.size())},
          {"semisimple_quotient", h.summary.description},
          {"local", h.local()},
          {"stabilized_at", h.stabilized_at}};
}

Json gentle_json(const GentlePresentation& g) {
  Json arrows = Json::array();
  for (const auto& a : g.arrows)
    arrows.push_back(
        {{"label", a.label}, {"source", g.vertices[a.source]}, {"target", g.vertices[a.target]}, {"degree", a.degree}});
  Json rels = Json::array();
  for (const auto& [f, h] : g.relations) rels.push_back(Json::array({g.arrows[f].label, g.arrows[h].label}));
  return {{"vertices", g.vertices}, {"arrows", arrows}, {"relations", rels},
          {"proper", g.proper},     {"smooth", g.smooth}};
}

Json verdict_json(const ReflexivityVerdict& v) {
  Json hyps = Json::array();
  for (const auto& h : v.certificate.hypotheses)
    hyps.push_back({{"id", h.id}, {"statement", h.statement}, {"tag", to_string(h.tag)}, {"evidence", h.evidence}});
  Json j = {{"verdict", to_string(v.verdict)},
            {"summary", v.summary()},
            {"window_conditional", v.window_conditional()},
            {"characteristic", v.characteristic}};
  j["certificate"] = {{"criterion", v.certificate.criterion},
                      {"statement", v.certificate.statement},
                      {"hypotheses", hyps},
                      {"witness", v.certificate.witness}};
  j["diagnostics"] = v.diagnostics;
  return j;
}

// The algebra the Koszul commands act on: a graded algebra as given, or a dg presentation
// realized over all degrees at the path bound.
TruncatedDgAlgebra koszul_source(const JobDocument& job, const Field& k) {
  Node o = object_node(job);
  const std::string kind = kind_of(job);
  if (kind == "algebra") return build_graded(o, k);
  if (kind == "dg") {
    auto p = build_dg(o, k);
    auto t = realize(p, Window::all(), job.bounds.paths);
    t.exact = truncation_is_exact(p, job.bounds.paths);
    return t;
  }
  throw InputError("/object/kind", "koszul-dual and complete need an algebra or dg object");
}

Json cmd_ginzburg(const JobDocument& job, const Field& k) {
  Node o = object_node(job);
  if (kind_of(job) != "quiver" || !o.has("superpotential"))
    throw InputError("/object", "ginzburg needs a quiver object with a superpotential");
  Quiver q = build_quiver(o);
  Superpotential w = build_superpotential(o["superpotential"], q, k);
  auto g = ginzburg(q, w);
  auto t = realize(g, job.bounds.window, job.bounds.paths);
  Json j;
  j["warnings"] = g.warnings;
  j["verify"] = verify_json(t, "the Ginzburg algebra");
  j["cohomology"] = dims_json(cohomology(t, job.bounds.window).dims());
  Json jac = Json::object();
  for (int l = 0; l <= job.bounds.paths; ++l) jac[std::to_string(l)] = jacobi_basis(q, w, l).count();
  j["jacobi"] = jac;
  if (job.bounds.window.contains(0)) {
    const int h0 = cohomology(t, job.bounds.window).dim(0);
    const int jl = jacobi_basis(q, w, job.bounds.paths).count();
    j["h0_matches_jacobi"] = h0 == jl;
  }
  j["overflow"] = overflow_json(t);
  return j;
}

Json cmd_cy(const JobDocument& job, const Field& k) {
  Node o = object_node(job);
  if (kind_of(job) != "quiver" || !o.has("n")) throw InputError("/object", "cy needs a quiver object with n");
  Quiver q = build_quiver(o);
  const int n = o["n"].integer();
  Json j;
  j["n"] = n;
  auto rn = build_rn(q, n, k);
  j["rn"] = dims_json(cohomology(rn, Window::all()).dims());
  auto pi = cy_completion(q, n, k);
  auto t = realize(pi, job.bounds.window, job.bounds.paths);
  j["pi"] = {{"verify", verify_json(t, "the Calabi-Yau completion")},
             {"cohomology", dims_json(cohomology(t, job.bounds.window).dims())},
             {"overflow", overflow_json(t)}};
  if (job.bounds.window.contains(0)) {
    try {
      j["pi"]["h0"] = h0_json(h0_algebra(pi, job.bounds.paths));
    } catch (const Error& e) {
      j["pi"]["h0"] = e.what();
    }
  }
  auto pair = verify_koszul_pair(q, n, job.bounds.words, job.bounds.window, k);
  j["koszul_pair"] = {{"window", window_json(pair.window)},
                      {"bound", pair.bound},
                      {"rn_dual", dims_json(pair.rn_dual_dims)},
                      {"pi", dims_json(pair.pi_dims)},
                      {"matches", bool_map_json(pair.matches)},
                      {"all_match", pair.all_match},
                      {"certified", pair.certified},
                      {"detail", pair.detail}};
  return j;
}

Json cmd_koszul_dual(const JobDocument& job, const Field& k) {
  auto a = koszul_source(job, k);
  auto b = bar(a, job.bounds.words);
  auto failures = b.d_squared_failures();
  if (!failures.empty()) throw InvariantFailure("bar differential squares to nonzero", Json{{"failures", failures}});
  auto d = dual_bar(a, job.bounds.words);
  return {{"bound", job.bounds.words},
          {"window", window_json(job.bounds.window)},
          {"bar_words", static_cast<int>(b.words.size())},
          {"dims", dims_json(cohomology(d, job.bounds.window).dims())}};
}

Json triflag_json(const TriFlag& f) { return {{"value", to_string(f.value)}, {"provenance", f.provenance}}; }

Json cmd_complete(const JobDocument& job, const Field& k) {
  auto a = koszul_source(job, k);
  auto r = completeness_report(a, job.bounds.words, job.bounds.window);
  Json j = {{"window", window_json(r.window)},
            {"bound", r.bound},
            {"dims", dims_json(r.dims)},
            {"double_dual", dims_json(r.double_dims)},
            {"double_dual_next", dims_json(r.next_dims)},
            {"matches", bool_map_json(r.matches)},
            {"verdict", to_string(r.verdict)}};
  j["mismatch_degree"] = r.mismatch_degree ? Json(*r.mismatch_degree) : Json(nullptr);
  j["detail"] = r.detail;
  auto triple = completeness_triple(a, job.bounds.words, job.bounds.window);
  auto direct = check(a, k);
  Json t = {{"reflexive", triflag_json(triple.reflexive)},
            {"generator", triflag_json(triple.generator)},
            {"complete", triflag_json(triple.complete)}};
  j["triple"] = t;
  try {
    auto inferred = two_out_of_three(triple);
    j["inferred"] = {{"reflexive", triflag_json(inferred.reflexive)},
                     {"generator", triflag_json(inferred.generator)},
                     {"complete", triflag_json(inferred.complete)}};
    if (inferred.reflexive.value == TriState::True && direct.verdict == Verdict::NotReflexive)
      throw InvariantFailure("two-out-of-three contradicts the direct verdict", j);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TooFewKnownFlags) throw;
    j["inferred"] = e.what();
  }
  j["direct"] = {{"verdict", direct.summary()}, {"criterion", direct.certificate.criterion}};
  return j;
}

Json cmd_gentle(const JobDocument& job, const Field& k) {
  if (kind_of(job) != "surface") throw InputError("/object/kind", "gentle needs a surface object");
  auto s = build_surface(object_node(job));
  Json j;
  Json faces = Json::array();
  for (const auto& f : trace_faces(s))
    faces.push_back({{"kind", to_string(f.kind)}, {"corners", f.corners}, {"segments", f.segments},
                     {"attached", f.attached}});
  j["faces"] = faces;
  auto c = classify_arc_system(s);
  j["classification"] = {{"full", c.full}, {"finitely_full", c.finitely_full}, {"formal", c.formal},
                         {"reasons", c.reasons}};
  Json flows = Json::array();
  for (const auto& f : irreducible_flows(s))
    flows.push_back({{"label", f.label}, {"source", s.arcs[f.source].name}, {"target", s.arcs[f.target].name},
                     {"degree", f.degree}});
  j["flows"] = flows;
  if (!c.formal) {
    j["presentation"] = nullptr;
    return j;
  }
  auto g = gentle_presentation(s);
  auto d = quadratic_dual(g);
  j["presentation"] = gentle_json(g);
  j["dual"] = gentle_json(d);
  if (!(quadratic_dual(d) == g)) throw InvariantFailure("quadratic dual is not involutive", j);
  // Both flags come from the combinatorics; they must agree with the algebra.
  if (g.proper != g.finite_dimensional() || d.proper != d.finite_dimensional())
    throw InvariantFailure("proper flag disagrees with finite-dimensionality", j);
  if (g.proper) {
    auto sod = extract_sod(g);
    j["sod"] = {{"decomposition", sod.to_string()}, {"back_arrows", sod.back_arrows}};
    if (!sod.back_arrows.empty()) throw InvariantFailure("semiorthogonal decomposition has back arrows", j);
  } else {
    j["sod"] = nullptr;
  }
  (void)k;
  return j;
}

CheckInput check_input(const JobDocument& job, const Field& k) {
  Node o = object_node(job);
  const std::string kind = kind_of(job);
  if (kind == "symbolic") return build_symbolic(o);
  if (kind == "surface") return build_surface(o);
  if (kind == "dg") return DgInput{build_dg(o, k), job.bounds.window, job.bounds.paths};
  if (kind == "algebra") {
    if (auto f = build_finite(o, k)) return *f;
    return build_graded(o, k);
  }
  Quiver q = build_quiver(o);
  if (o.has("superpotential")) return GinzburgInput{q, build_superpotential(o["superpotential"], q, k)};
  if (o.has("n")) return CyInput{q, o["n"].integer()};
  throw InputError("/object", "a quiver object needs n or a superpotential for reflexive");
}

Json cmd_reflexive(const JobDocument& job, const Field& k) {
  auto in = check_input(job, k);
  auto v = located(object_node(job), [&] { return check(in, k); });
  Json j = verdict_json(v);
  auto failures = replay(in, v, k);
  j["replay"] = {{"ok", failures.empty()}, {"failures", failures}};
  if (!failures.empty()) throw InvariantFailure("certificate does not replay", j);
  return j;
}

void render(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
  const std::string pad(indent * 2, ' ');
  auto scalar = [](const Json& s) { return s.is_string() ? s.get<std::string>() : s.dump(); };
  if (v.is_object()) {
    if (v.empty()) {
      out << pad << key << ": (none)\n";
      return;
    }
    out << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render(out, k, x, indent + 1);
  } else if (v.is_array()) {
    bool flat = std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); });
    if (v.empty()) {
      out << pad << key << ": (none)\n";
    } else if (flat) {
      out << pad << key << ": ";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
      out << "\n";
    } else {
      out << pad << key << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) render(out, "[" + std::to_string(i) + "]", v[i], indent + 1);
    }
  } else {
    out << pad << key << ": " << scalar(v) << "\n";
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ginzburg", "cy",        "koszul-dual", "complete",
                                              "gentle",   "reflexive", "selftest"};
  return names;
}

JobDocument parse_job(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("byte " + std::to_string(e.byte), e.what());
  }
  Node root{&doc, ""};
  if (!doc.is_object()) root.fail("expected a job object");
  if (root["schema"].str() != "job-v1") root["schema"].fail("unsupported schema (expected job-v1)");
  JobDocument job;
  job.name = root["name"].str();
  job.characteristic = root["characteristic"].integer();
  if (job.characteristic != 0 && !is_prime(job.characteristic))
    root["characteristic"].fail("characteristic must be 0 or a prime");
  Node b = root["bounds"];
  job.bounds.window = parse_window_string(b["window"].str(), b["window"].at);
  if (job.bounds.window.lo > job.bounds.window.hi) b["window"].fail("empty window");
  job.bounds.words = b["words"].integer();
  job.bounds.paths = b["paths"].integer();
  if (job.bounds.words < 1) b["words"].fail("bounds must be positive");
  if (job.bounds.paths < 1) b["paths"].fail("bounds must be positive");
  for (const auto& c : root["commands"].items()) {
    const std::string name = c.str();
    if (std::find(command_names().begin(), command_names().end(), name) == command_names().end())
      c.fail("unknown command '" + name + "'");
    job.commands.push_back(name);
  }
  job.object = doc.at("object");
  validate_object(root["object"], Field(job.characteristic));
  return job;
}

Json run_command(const std::string& command, const JobDocument& job) {
  const Field k(job.characteristic);
  if (command == "ginzburg") return cmd_ginzburg(job, k);
  if (command == "cy") return cmd_cy(job, k);
  if (command == "koszul-dual") return cmd_koszul_dual(job, k);
  if (command == "complete") return cmd_complete(job, k);
  if (command == "gentle") return cmd_gentle(job, k);
  if (command == "reflexive") return cmd_reflexive(job, k);
  if (command == "selftest") return selftest();
  throw InputError("/commands", "unknown command '" + command + "'");
}

Json run_job(const JobDocument& job, const std::vector<std::string>& commands) {
  Json r;
  r["schema"] = "report-v1";
  r["job"] = job.name;
  r["characteristic"] = job.characteristic;
  r["bounds"] = {{"window", window_json(job.bounds.window)}, {"words", job.bounds.words},
                 {"paths", job.bounds.paths}};
  r["object"] = job.object.at("kind");
  Json results = Json::object();
  for (const auto& c : commands) results[c] = run_command(c, job);
  r["results"] = results;
  return r;
}

Json selftest() {
  Json r;
  r["schema"] = "report-v1";
  r["job"] = "selftest";
  const Field k(0);
  int failures = 0;

  // d^2 and Leibniz on the construction corpus.
  auto point = [] { return Quiver({"1"}); };
  auto loop = [] {
    Quiver q({"1"});
    q.add_arrow("x", 0, 0);
    return q;
  };
  auto a2 = [] {
    Quiver q({"1", "2"});
    q.add_arrow("a", 0, 1);
    return q;
  };
  auto cycle3 = [] {
    Quiver q({"1", "2", "3"});
    q.add_arrow("x", 0, 1);
    q.add_arrow("y", 1, 2);
    q.add_arrow("z", 2, 0);
    return q;
  };
  std::vector<std::pair<std::string, Quiver>> quivers{
      {"point", point()}, {"loop", loop()}, {"A2", a2()}, {"3-cycle", cycle3()}};
  Json diff = Json::object();
  auto record = [&](const std::string& name, const TruncatedDgAlgebra& t) {
    auto v = verify_differential(t);
    failures += static_cast<int>(v.failures.size());
    diff[name] = {{"d_squared_checked", v.d_squared_checked}, {"leibniz_checked", v.leibniz_checked},
                  {"failures", static_cast<int>(v.failures.size())}};
  };
  for (int n : {1, 2, 3})
    for (const auto& [name, q] : quivers)
      record("Pi_" + std::to_string(n) + "(" + name + ")", realize(cy_completion(q, n, k), Window{-4, 4}, 4));
  {
    Quiver q = loop();
    Superpotential w(k);
    w.add_cycle(q, {0, 0, 0}, k.one());
    record("Gamma(loop, x^3)", realize(ginzburg(q, w), Window{-3, 1}, 5));
  }
  {
    Quiver q = cycle3();
    Superpotential w(k);
    w.add_cycle(q, {0, 1, 2}, k.one());
    record("Gamma(3-cycle, xyz)", realize(ginzburg(q, w), Window{-3, 1}, 5));
  }
  r["differential"] = diff;

  // Bar complexes of dual numbers in several degrees.
  Json bars = Json::object();
  for (int deg : {1, 0, -1, -2}) {
    std::vector<BasisElement> basis{{"e_1", 0, 0, 0, 0, true}, {"eps", deg, 1, 0, 0, false}};
    std::vector<std::vector<SparseVec>> table(2, std::vector<SparseVec>(2));
    table[0][0] = SparseVec::unit(0, k);
    table[0][1] = SparseVec::unit(1, k);
    table[1][0] = SparseVec::unit(1, k);
    auto a = graded_algebra(k, {"1"}, basis, table);
    auto b = bar(a, 6);
    const int bad = static_cast<int>(b.d_squared_failures().size());
    failures += bad;
    bars["|eps| = " + std::to_string(deg)] = {{"words", static_cast<int>(b.words.size())}, {"failures", bad}};
  }
  r["bar"] = bars;

  // Quadratic duality on annuli and a disk.
  Json gentle = Json::object();
  for (int w : {-1, 0, 1, 2}) {
    MarkedSurfaceArcSystem s;
    auto b = BoundaryComponent::fully("B", w, {});
    b.attach = "p";
    s.boundary = {BoundaryComponent::marked("O", {BoundaryItem::interval({"p", "q"}), BoundaryItem::boundary_segment()}),
                  b};
    s.arcs = {{"g", "p", "q"}};
    auto g = gentle_presentation(s);
    auto d = quadratic_dual(g);
    const bool ok = quadratic_dual(d) == g && d.arrows.at(0).degree == 1 - g.arrows.at(0).degree;
    failures += ok ? 0 : 1;
    gentle["annulus winding " + std::to_string(w)] = {{"involutive", ok}, {"loop_degree", g.arrows.at(0).degree}};
  }
  r["gentle"] = gentle;

  // Reflexivity certificates replay.
  Json refl = Json::object();
  std::vector<std::pair<std::string, CheckInput>> inputs{
      {"k[t], |t| = 0", SymbolicFamily{SymbolicFamily::Kind::Polynomial, 0}},
      {"k[t, t^-1], |t| = 2", SymbolicFamily{SymbolicFamily::Kind::Laurent, 2}},
      {"k[[t]], |t| = 0", SymbolicFamily{SymbolicFamily::Kind::PowerSeries, 0}},
      {"R_2(A2)", CyInput{a2(), 2}}};
  {
    Quiver q = loop();
    Superpotential w(k);
    w.add_cycle(q, {0, 0, 0}, k.one());
    inputs.push_back({"Gamma(loop, x^3)", GinzburgInput{q, w}});
  }
  for (const auto& [name, in] : inputs) {
    auto v = check(in, k);
    auto bad = replay(in, v, k);
    failures += static_cast<int>(bad.size());
    refl[name] = {{"verdict", v.summary()}, {"criterion", v.certificate.criterion}, {"replay_failures", bad}};
  }
  r["reflexivity"] = refl;
  r["failures"] = failures;
  if (failures) throw InvariantFailure("selftest found failures", r);
  return r;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  for (const auto& [k, v] : report.items()) render(out, k, v, 0);
  return out.str();
}

}  // namespace dgkit

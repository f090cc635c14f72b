#include "dgkit/gentle.hpp"

#include <algorithm>
#include <functional>

#include "dgkit/error.hpp"

namespace dgkit {

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorKind::MalformedRibbon, msg); }

// Slots in order of appearance along the boundary, with the boundary combinatorics.
struct Ribbon {
  std::vector<std::string> slots;
  std::map<std::string, int> index;
  std::vector<int> next;        // next slot along the same boundary component
  std::vector<int> segs_after;  // boundary segments between p and next(p)
  std::vector<int> other;       // other endpoint of the same arc
  std::vector<int> arc;
  std::vector<int> component;
  std::vector<bool> flow_from;  // p -> next(p) is an irreducible flow
  std::map<int, int> attach;    // slotless component -> corner slot
};

Ribbon build(const MarkedSurfaceArcSystem& s) {
  Ribbon r;
  std::set<std::string> names;
  for (std::size_t c = 0; c < s.boundary.size(); ++c) {
    const auto& b = s.boundary[c];
    const std::string where = "boundary component '" + b.name + "'";
    if (b.name.empty()) malformed("boundary component " + std::to_string(c) + " has no name");
    if (!names.insert(b.name).second) malformed("duplicate " + where);
    // Cyclic token list: slot index, or -1 for a boundary segment.
    std::vector<int> tokens;
    auto add_slot = [&](const std::string& slot) {
      if (slot.empty()) malformed(where + " has an empty slot name");
      if (r.index.count(slot)) malformed("slot '" + slot + "' appears twice on the boundary");
      r.index[slot] = static_cast<int>(r.slots.size());
      r.slots.push_back(slot);
      r.component.push_back(static_cast<int>(c));
      r.next.push_back(-1);
      r.segs_after.push_back(0);
      tokens.push_back(r.index[slot]);
    };
    if (b.fully_marked) {
      if (!b.sequence.empty()) malformed(where + " is fully marked but lists intervals");
      for (const auto& slot : b.slots) add_slot(slot);
    } else {
      if (!b.slots.empty()) malformed(where + " lists bare slots; use marked intervals");
      const auto n = b.sequence.size();
      if (n < 2 || n % 2)
        malformed(where + " must alternate marked intervals and boundary segments");
      for (std::size_t i = 0; i < n; ++i) {
        const auto& item = b.sequence[i];
        if (item.segment == b.sequence[(i + 1) % n].segment)
          malformed(where + " has two adjacent " +
                    std::string(item.segment ? "boundary segments" : "marked intervals"));
        if (item.segment) {
          if (!item.slots.empty()) malformed(where + ": a boundary segment carries slots");
          tokens.push_back(-1);
        } else {
          for (const auto& slot : item.slots) add_slot(slot);
        }
      }
    }
    const int m = static_cast<int>(tokens.size());
    for (int i = 0; i < m; ++i) {
      if (tokens[i] < 0) continue;
      int segs = 0, j = (i + 1) % m;
      for (; tokens[j] < 0; j = (j + 1) % m) ++segs;
      r.next[tokens[i]] = tokens[j];
      r.segs_after[tokens[i]] = segs;
    }
    bool has_slots = std::any_of(tokens.begin(), tokens.end(), [](int t) { return t >= 0; });
    if (has_slots && b.attach) malformed(where + " has arc endpoints and must not declare an attachment");
    if (!has_slots && !b.attach)
      malformed(where + " has no arc endpoints; declare the corner slot of the face it bounds");
  }
  const int n = static_cast<int>(r.slots.size());
  r.flow_from.assign(n, false);
  for (int p = 0; p < n; ++p) r.flow_from[p] = r.segs_after[p] == 0;

  r.other.assign(n, -1);
  r.arc.assign(n, -1);
  std::set<std::string> arc_names;
  for (std::size_t a = 0; a < s.arcs.size(); ++a) {
    const auto& arc = s.arcs[a];
    if (arc.name.empty()) malformed("arc " + std::to_string(a) + " has no name");
    if (!arc_names.insert(arc.name).second) malformed("duplicate arc '" + arc.name + "'");
    if (arc.from == arc.to) malformed("arc '" + arc.name + "' uses slot '" + arc.from + "' twice");
    for (const auto* slot : {&arc.from, &arc.to}) {
      auto it = r.index.find(*slot);
      if (it == r.index.end()) malformed("arc '" + arc.name + "' ends at unknown slot '" + *slot + "'");
      if (r.arc[it->second] >= 0) malformed("slot '" + *slot + "' is used by two arc ends");
      r.arc[it->second] = static_cast<int>(a);
    }
    r.other[r.index[arc.from]] = r.index[arc.to];
    r.other[r.index[arc.to]] = r.index[arc.from];
  }
  for (int p = 0; p < n; ++p)
    if (r.arc[p] < 0) malformed("slot '" + r.slots[p] + "' is not an arc endpoint");

  for (std::size_t c = 0; c < s.boundary.size(); ++c) {
    const auto& b = s.boundary[c];
    if (!b.attach) continue;
    auto it = r.index.find(*b.attach);
    if (it == r.index.end())
      malformed("boundary component '" + b.name + "' attaches at unknown slot '" + *b.attach + "'");
    r.attach[static_cast<int>(c)] = it->second;
  }
  for (const auto& [slot, deg] : s.flow_degrees) {
    auto it = r.index.find(slot);
    if (it == r.index.end() || !r.flow_from[it->second])
      malformed("flow degree given for slot '" + slot + "', which starts no irreducible flow");
  }
  return r;
}

std::vector<std::vector<int>> face_cycles(const Ribbon& r) {
  const int n = static_cast<int>(r.slots.size());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < n; ++p) {
    if (seen[p]) continue;
    std::vector<int> cycle;
    for (int q = p; !seen[q]; q = r.other[r.next[q]]) {
      seen[q] = true;
      cycle.push_back(q);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<Face> faces_of(const MarkedSurfaceArcSystem& s, const Ribbon& r) {
  std::vector<Face> out;
  for (const auto& cycle : face_cycles(r)) {
    Face f;
    for (int p : cycle) {
      f.corners.push_back(r.slots[p]);
      f.segments += r.segs_after[p];
    }
    for (const auto& [c, p] : r.attach)
      if (std::find(cycle.begin(), cycle.end(), p) != cycle.end())
        f.attached.push_back(s.boundary[c].name);
    int fully_attached = 0;
    for (const auto& [c, p] : r.attach)
      if (s.boundary[c].fully_marked && std::find(cycle.begin(), cycle.end(), p) != cycle.end())
        ++fully_attached;
    if (f.attached.empty()) f.kind = FaceKind::Disk;
    else if (f.attached.size() == 1 && fully_attached == 1 && f.segments == 0)
      f.kind = FaceKind::HalfOpenCylinder;
    else f.kind = FaceKind::Other;
    out.push_back(std::move(f));
  }
  return out;
}

// Flow degrees, with the winding constraints applied.
std::vector<int> resolve_degrees(const MarkedSurfaceArcSystem& s, const Ribbon& r) {
  const int n = static_cast<int>(r.slots.size());
  std::vector<int> deg(n, 0);
  std::vector<bool> given(n, false);
  for (const auto& [slot, d] : s.flow_degrees) {
    deg[r.index.at(slot)] = d;
    given[r.index.at(slot)] = true;
  }
  for (std::size_t c = 0; c < s.boundary.size(); ++c) {
    const auto& b = s.boundary[c];
    if (!b.fully_marked || b.slots.empty()) continue;
    // The loop around B from any endpoint has degree winding(B). Missing entries are 0 except
    // the last missing one, which takes the remainder.
    int sum = 0, last_missing = -1;
    for (const auto& slot : b.slots) {
      int p = r.index.at(slot);
      if (given[p]) sum += deg[p];
      else last_missing = p;
    }
    if (last_missing >= 0) deg[last_missing] = b.winding - sum;
    else if (sum != b.winding)
      malformed("flow degrees around fully marked component '" + b.name + "' sum to " +
                std::to_string(sum) + ", winding is " + std::to_string(b.winding));
  }
  // A cylinder on a fully marked component B bounded by a single flow: that flow has degree
  // 1 - winding(B).
  for (const auto& [c, p] : r.attach) {
    const auto& b = s.boundary[c];
    if (!b.fully_marked || !r.flow_from[p] || r.other[r.next[p]] != p) continue;
    const int want = 1 - b.winding;
    if (!given[p]) deg[p] = want;
    else if (deg[p] != want)
      malformed("flow at slot '" + r.slots[p] + "' around the cylinder on '" + b.name +
                "' must have degree " + std::to_string(want));
  }
  return deg;
}

bool has_cycle(const GentlePresentation& g, bool along_relations) {
  const int m = static_cast<int>(g.arrows.size());
  std::vector<int> color(m, 0);
  std::function<bool(int)> visit = [&](int a) {
    color[a] = 1;
    for (int b = 0; b < m; ++b) {
      if (!g.composable(a, b) || g.relations.count({a, b}) != static_cast<std::size_t>(along_relations))
        continue;
      if (color[b] == 1) return true;
      if (color[b] == 0 && visit(b)) return true;
    }
    color[a] = 2;
    return false;
  };
  for (int a = 0; a < m; ++a)
    if (color[a] == 0 && visit(a)) return true;
  return false;
}

std::string dual_arrow_label(const std::string& label) {
  if (!label.empty() && label.back() == '!') return label.substr(0, label.size() - 1);
  return label + "!";
}

}  // namespace

BoundaryComponent BoundaryComponent::marked(std::string name, std::vector<BoundaryItem> sequence) {
  BoundaryComponent b;
  b.name = std::move(name);
  b.sequence = std::move(sequence);
  return b;
}

BoundaryComponent BoundaryComponent::fully(std::string name, int winding,
                                           std::vector<std::string> slots) {
  BoundaryComponent b;
  b.name = std::move(name);
  b.fully_marked = true;
  b.winding = winding;
  b.slots = std::move(slots);
  return b;
}

void MarkedSurfaceArcSystem::validate() const {
  auto r = build(*this);
  resolve_degrees(*this, r);
}

bool MarkedSurfaceArcSystem::has_marked_interval() const {
  for (const auto& b : boundary)
    if (!b.fully_marked)
      for (const auto& item : b.sequence)
        if (!item.segment) return true;
  return false;
}

const char* to_string(FaceKind k) {
  switch (k) {
    case FaceKind::Disk: return "disk";
    case FaceKind::HalfOpenCylinder: return "half-open cylinder";
    case FaceKind::Other: return "other";
  }
  return "?";
}

std::vector<Face> trace_faces(const MarkedSurfaceArcSystem& s) {
  auto r = build(s);
  return faces_of(s, r);
}

ArcClassification classify_arc_system(const MarkedSurfaceArcSystem& s) {
  auto r = build(s);
  ArcClassification c;
  bool disks_ok = true, cylinders_ok = true, has_cylinder = false, segment_in_every_disk = true;
  for (const auto& f : faces_of(s, r)) {
    const std::string at = "face at corner '" + f.corners.front() + "'";
    if (f.kind == FaceKind::Disk) {
      if (f.segments > 1) {
        disks_ok = false;
        c.reasons.push_back(at + " is a disk with " + std::to_string(f.segments) + " boundary segments");
      }
      if (f.segments == 0) {
        segment_in_every_disk = false;
        c.reasons.push_back(at + " is a disk without a boundary segment");
      }
    } else if (f.kind == FaceKind::HalfOpenCylinder) {
      has_cylinder = true;
      c.reasons.push_back(at + " is a half-open cylinder");
    } else {
      cylinders_ok = false;
      c.reasons.push_back(at + " is neither a disk nor a half-open cylinder on a fully marked component");
    }
  }
  bool endpoint_on_fully_marked = false;
  for (std::size_t p = 0; p < r.slots.size(); ++p)
    if (s.boundary[r.component[p]].fully_marked) endpoint_on_fully_marked = true;
  if (endpoint_on_fully_marked) c.reasons.push_back("an arc ends on a fully marked component");
  c.full = disks_ok && cylinders_ok && !has_cylinder;
  c.finitely_full = disks_ok && cylinders_ok && !endpoint_on_fully_marked;
  c.formal = (c.full || c.finitely_full) && segment_in_every_disk;
  return c;
}

std::vector<Flow> irreducible_flows(const MarkedSurfaceArcSystem& s) {
  auto r = build(s);
  auto deg = resolve_degrees(s, r);
  std::vector<Flow> out;
  for (std::size_t p = 0; p < r.slots.size(); ++p) {
    if (!r.flow_from[p]) continue;
    const int q = r.next[p];
    out.push_back({r.slots[p] + "->" + r.slots[q], r.slots[p], r.slots[q], r.arc[p], r.arc[q], deg[p]});
  }
  return out;
}

int GentlePresentation::vertex_index(const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return static_cast<int>(i);
  throw Error(ErrorKind::InvalidInput, "unknown vertex '" + label + "'");
}

std::vector<std::string> GentlePresentation::gentle_violations() const {
  std::vector<std::string> out;
  const int n = static_cast<int>(vertices.size()), m = static_cast<int>(arrows.size());
  for (const auto& a : arrows)
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n)
      out.push_back("arrow '" + a.label + "' has an endpoint outside the vertex set");
  if (!out.empty()) return out;
  for (const auto& [f, g] : relations)
    if (f < 0 || g < 0 || f >= m || g >= m || !composable(f, g))
      out.push_back("relation (" + std::to_string(f) + ", " + std::to_string(g) + ") is not a composable pair");
  std::vector<int> in(n, 0), outd(n, 0);
  for (const auto& a : arrows) {
    ++outd[a.source];
    ++in[a.target];
  }
  for (int v = 0; v < n; ++v) {
    if (in[v] > 2) out.push_back("vertex '" + vertices[v] + "' has more than 2 incoming arrows");
    if (outd[v] > 2) out.push_back("vertex '" + vertices[v] + "' has more than 2 outgoing arrows");
  }
  for (int b = 0; b < m; ++b) {
    int rel_in = 0, free_in = 0, rel_out = 0, free_out = 0;
    for (int a = 0; a < m; ++a) {
      if (composable(a, b)) ++(relations.count({a, b}) ? rel_in : free_in);
      if (composable(b, a)) ++(relations.count({b, a}) ? rel_out : free_out);
    }
    const std::string& l = arrows[b].label;
    if (rel_in > 1) out.push_back("more than one relation ends with '" + l + "'");
    if (free_in > 1) out.push_back("more than one nonzero composite ends with '" + l + "'");
    if (rel_out > 1) out.push_back("more than one relation starts with '" + l + "'");
    if (free_out > 1) out.push_back("more than one nonzero composite starts with '" + l + "'");
  }
  return out;
}

bool GentlePresentation::finite_dimensional() const { return !has_cycle(*this, false); }

bool GentlePresentation::finite_global_dimension() const { return !has_cycle(*this, true); }

std::vector<std::vector<int>> GentlePresentation::nonzero_paths(int max_length) const {
  std::vector<std::vector<int>> out, frontier;
  for (int a = 0; a < static_cast<int>(arrows.size()); ++a) frontier.push_back({a});
  for (int len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<std::vector<int>> grown;
    for (auto& p : frontier) {
      out.push_back(p);
      if (len == max_length) continue;
      for (int b = 0; b < static_cast<int>(arrows.size()); ++b)
        if (composable(p.back(), b) && !relations.count({p.back(), b})) {
          auto q = p;
          q.push_back(b);
          grown.push_back(std::move(q));
        }
    }
    frontier = std::move(grown);
  }
  return out;
}

Quiver GentlePresentation::quiver() const {
  Quiver q(vertices);
  for (const auto& a : arrows) q.add_arrow(a.label, a.source, a.target, a.degree);
  return q;
}

DgPresentation GentlePresentation::presentation(const Field& k) const {
  DgPresentation p(k, vertices);
  for (const auto& a : arrows) p.add_generator(a.label, a.source, a.target, a.degree, 1);
  for (const auto& [f, g] : relations)
    p.add_relation(PathAlgebraElement::of(k, Path::of(p.quiver(), {f, g}), k.one()));
  return p;
}

GentlePresentation gentle_presentation(const MarkedSurfaceArcSystem& s) {
  auto r = build(s);
  auto c = classify_arc_system(s);
  if (!c.formal) {
    std::string why;
    for (const auto& reason : c.reasons) why += (why.empty() ? "" : "; ") + reason;
    throw Error(ErrorKind::NotFormal, "arc system is not formal (" + why + ")");
  }
  GentlePresentation g;
  for (const auto& arc : s.arcs) g.vertices.push_back(arc.name);
  auto flows = irreducible_flows(s);
  for (const auto& f : flows) g.arrows.push_back({f.label, f.source, f.target, f.degree});
  const int m = static_cast<int>(flows.size());
  for (int f = 0; f < m; ++f)
    for (int h = 0; h < m; ++h) {
      const int end = r.index.at(flows[f].end_slot), start = r.index.at(flows[h].start_slot);
      if (r.arc[end] == r.arc[start] && end != start) g.relations.insert({f, h});
    }
  g.proper = c.finitely_full;
  g.smooth = c.full;
  auto bad = g.gentle_violations();
  if (!bad.empty()) throw Error(ErrorKind::NotGentle, bad.front());
  return g;
}

GentlePresentation quadratic_dual(const GentlePresentation& g) {
  auto bad = g.gentle_violations();
  if (!bad.empty()) throw Error(ErrorKind::NotGentle, bad.front());
  GentlePresentation d;
  d.vertices = g.vertices;
  for (const auto& a : g.arrows)
    d.arrows.push_back({dual_arrow_label(a.label), a.target, a.source, 1 - a.degree});
  const int m = static_cast<int>(g.arrows.size());
  // f then h composable in g  <=>  h^! then f^! composable in the dual.
  for (int f = 0; f < m; ++f)
    for (int h = 0; h < m; ++h)
      if (g.composable(f, h) && !g.relations.count({f, h})) d.relations.insert({h, f});
  d.proper = g.smooth;
  d.smooth = g.proper;
  return d;
}

std::string SemiorthogonalDecomposition::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ", ";
    const auto& f = factors[i];
    if (f.dual_numbers) {
      s += "k[x]/x^2 (|x| = " + std::to_string(f.loop_degree) + ")";
    } else {
      s += "{";
      for (std::size_t j = 0; j < f.vertices.size(); ++j) s += (j ? ", " : "") + f.vertices[j];
      s += "}";
    }
  }
  return s + ">";
}

SemiorthogonalDecomposition extract_sod(const GentlePresentation& g) {
  if (!g.proper) throw Error(ErrorKind::InvalidInput, "semiorthogonal peeling needs a proper presentation");
  const int n = static_cast<int>(g.vertices.size()), m = static_cast<int>(g.arrows.size());
  std::vector<bool> alive(n, true);
  std::vector<int> peeled;
  std::vector<int> loop_of(n, -1);
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n && !changed; ++v) {
      if (!alive[v]) continue;
      int loops = 0, loop = -1;
      bool exits = false;
      for (int a = 0; a < m; ++a) {
        const auto& ar = g.arrows[a];
        if (ar.source != v || !alive[ar.target]) continue;
        if (ar.target == v) {
          ++loops;
          loop = a;
        } else {
          exits = true;
        }
      }
      if (exits || loops != 1 || !g.relations.count({loop, loop})) continue;
      alive[v] = false;
      loop_of[v] = loop;
      peeled.push_back(v);
      changed = true;
    }
  }
  SemiorthogonalDecomposition sod;
  std::vector<int> factor_of(n, -1);
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (alive[v]) rest.push_back(v);
  if (!rest.empty()) {
    SodFactor f;
    std::vector<int> local(n, -1);
    for (int v : rest) {
      local[v] = static_cast<int>(f.algebra.vertices.size());
      f.algebra.vertices.push_back(g.vertices[v]);
      f.vertices.push_back(g.vertices[v]);
      factor_of[v] = 0;
    }
    std::vector<int> arrow_local(m, -1);
    for (int a = 0; a < m; ++a) {
      const auto& ar = g.arrows[a];
      if (!alive[ar.source] || !alive[ar.target]) continue;
      arrow_local[a] = static_cast<int>(f.algebra.arrows.size());
      f.algebra.arrows.push_back({ar.label, local[ar.source], local[ar.target], ar.degree});
    }
    for (const auto& [a, b] : g.relations)
      if (arrow_local[a] >= 0 && arrow_local[b] >= 0) f.algebra.relations.insert({arrow_local[a], arrow_local[b]});
    f.algebra.proper = f.algebra.finite_dimensional();
    f.algebra.smooth = f.algebra.finite_global_dimension();
    sod.factors.push_back(std::move(f));
  }
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
    const int v = *it;
    SodFactor f;
    f.dual_numbers = true;
    const auto& loop = g.arrows[loop_of[v]];
    f.loop_degree = loop.degree;
    f.vertices = {g.vertices[v]};
    f.algebra.vertices = {g.vertices[v]};
    f.algebra.arrows = {{loop.label, 0, 0, loop.degree}};
    f.algebra.relations = {{0, 0}};
    f.algebra.proper = true;
    factor_of[v] = static_cast<int>(sod.factors.size());
    sod.factors.push_back(std::move(f));
  }
  for (const auto& a : g.arrows)
    if (factor_of[a.source] > factor_of[a.target]) sod.back_arrows.push_back(a.label);
  return sod;
}

ReflexivityVerdict fukaya_verdict(const MarkedSurfaceArcSystem& s) {
  s.validate();
  if (!s.has_marked_interval())
    throw Error(ErrorKind::NoMarkedInterval, "the surface has no marked interval");
  ReflexivityVerdict v;
  Hypothesis interval{"marked-interval", "the surface has at least one marked interval",
                      HypothesisTag::VerifiedExactly, ""};
  std::vector<std::string> zero, fully;
  for (const auto& b : s.boundary) {
    if (!b.fully_marked) continue;
    fully.push_back(b.name + " (winding " + std::to_string(b.winding) + ")");
    if (b.winding == 0) zero.push_back(b.name);
  }
  for (const auto& b : s.boundary)
    if (!b.fully_marked) {
      interval.evidence = "boundary component '" + b.name + "'";
      break;
    }
  v.certificate.hypotheses.push_back(interval);
  if (!zero.empty()) {
    v.verdict = Verdict::NotReflexive;
    v.certificate.criterion = "fukaya-winding-zero";
    v.certificate.statement =
        "a fully marked boundary component of winding number 0 makes the Fukaya category "
        "non-reflexive: an arc from a marked interval to it has endomorphism algebra k[t] "
        "with |t| = 0, a polynomial ring that is not reflexive";
    v.certificate.hypotheses.push_back({"fully-marked-winding-zero",
                                        "some fully marked component has winding number 0",
                                        HypothesisTag::VerifiedExactly, "component '" + zero.front() + "'"});
    v.certificate.witness = "k[t] with |t| = 0 (arc from a marked interval to '" + zero.front() + "')";
  } else if (fully.empty()) {
    v.verdict = Verdict::Reflexive;
    v.certificate.criterion = "fukaya-smooth-proper";
    v.certificate.statement =
        "without fully marked components the Fukaya category is smooth and proper, hence reflexive";
    v.certificate.hypotheses.push_back({"no-fully-marked", "the surface has no fully marked component",
                                        HypothesisTag::VerifiedExactly, ""});
  } else {
    v.verdict = Verdict::Reflexive;
    v.certificate.criterion = "fukaya-winding";
    v.certificate.statement =
        "a graded marked surface with a marked interval and no fully marked component of "
        "winding number 0 has a reflexive Fukaya category";
    std::string ev;
    for (const auto& f : fully) ev += (ev.empty() ? "" : ", ") + f;
    v.certificate.hypotheses.push_back({"fully-marked-winding-nonzero",
                                        "every fully marked component has nonzero winding number",
                                        HypothesisTag::VerifiedExactly, ev});
  }
  return v;
}

}  // namespace dgkit

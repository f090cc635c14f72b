#include "dgkit/quiver.hpp"

#include <algorithm>
#include <tuple>

#include "dgkit/error.hpp"

namespace dgkit {

Quiver::Quiver(std::vector<std::string> vertices) {
  for (const auto& v : vertices) add_vertex(v);
}

int Quiver::add_vertex(const std::string& label) {
  if (vertex_lookup_.count(label))
    throw Error(ErrorKind::InvalidInput, "duplicate vertex '" + label + "'");
  int index = vertex_count();
  vertices_.push_back(label);
  vertex_lookup_[label] = index;
  out_.emplace_back();
  return index;
}

int Quiver::add_arrow(const std::string& label, int source, int target, int degree, int weight) {
  if (arrow_lookup_.count(label) || vertex_lookup_.count(label))
    throw Error(ErrorKind::InvalidInput, "duplicate label '" + label + "'");
  if (source < 0 || source >= vertex_count() || target < 0 || target >= vertex_count())
    throw Error(ErrorKind::InvalidInput, "arrow '" + label + "' has an undeclared endpoint");
  if (weight < 1)
    throw Error(ErrorKind::InvalidInput, "arrow '" + label + "' must have positive weight");
  int index = arrow_count();
  arrows_.push_back(Arrow{label, source, target, degree, weight});
  arrow_lookup_[label] = index;
  out_[source].push_back(index);
  return index;
}

int Quiver::add_arrow(const std::string& label, const std::string& source,
                      const std::string& target, int degree, int weight) {
  return add_arrow(label, vertex_index(source), vertex_index(target), degree, weight);
}

std::optional<int> Quiver::find_vertex(const std::string& label) const {
  auto it = vertex_lookup_.find(label);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Quiver::find_arrow(const std::string& label) const {
  auto it = arrow_lookup_.find(label);
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

int Quiver::vertex_index(const std::string& label) const {
  if (auto v = find_vertex(label)) return *v;
  throw Error(ErrorKind::InvalidInput, "unknown vertex '" + label + "'");
}

int Quiver::arrow_index(const std::string& label) const {
  if (auto a = find_arrow(label)) return *a;
  throw Error(ErrorKind::UnknownArrow, "unknown arrow '" + label + "'");
}

Path Path::of(const Quiver& q, std::vector<int> arrows) {
  if (arrows.empty()) throw Error(ErrorKind::InvalidInput, "empty arrow list needs a vertex");
  for (std::size_t i = 0; i + 1 < arrows.size(); ++i) {
    if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
      throw Error(ErrorKind::InvalidInput, "arrows '" + q.arrow(arrows[i]).label + "' and '" +
                                               q.arrow(arrows[i + 1]).label + "' do not compose");
  }
  int v = q.arrow(arrows.front()).source;
  return Path{v, std::move(arrows)};
}

int Path::target(const Quiver& q) const {
  return arrows.empty() ? vertex : q.arrow(arrows.back()).target;
}

int Path::degree(const Quiver& q) const {
  int d = 0;
  for (int a : arrows) d += q.arrow(a).degree;
  return d;
}

int Path::weight(const Quiver& q) const {
  int w = 0;
  for (int a : arrows) w += q.arrow(a).weight;
  return w;
}

std::string Path::label(const Quiver& q) const {
  if (arrows.empty()) return "e_" + q.vertices().at(vertex);
  std::string out;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (i) out += '.';
    out += q.arrow(arrows[i]).label;
  }
  return out;
}

bool operator<(const Path& a, const Path& b) {
  if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
  return std::tie(a.arrows, a.vertex) < std::tie(b.arrows, b.vertex);
}

std::optional<Path> concatenate(const Quiver& q, const Path& a, const Path& b) {
  if (a.target(q) != b.source()) return std::nullopt;
  Path out{a.vertex, a.arrows};
  out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
  return out;
}

PathAlgebraElement PathAlgebraElement::of(const Field& field, const Path& p, const Scalar& coeff) {
  PathAlgebraElement e(field);
  e.add(p, coeff);
  return e;
}

void PathAlgebraElement::add(const Path& p, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PathAlgebraElement::add(const PathAlgebraElement& other, const Scalar& factor) {
  for (const auto& [p, c] : other.terms_) add(p, factor * c);
}

PathAlgebraElement PathAlgebraElement::scaled(const Scalar& factor) const {
  PathAlgebraElement out(field_);
  out.add(*this, factor);
  return out;
}

std::optional<std::pair<int, int>> PathAlgebraElement::endpoints(const Quiver& q) const {
  std::optional<std::pair<int, int>> ends;
  for (const auto& [p, _] : terms_) {
    std::pair<int, int> e{p.source(), p.target(q)};
    if (ends && *ends != e) return std::nullopt;
    ends = e;
  }
  return ends;
}

std::optional<int> PathAlgebraElement::homogeneous_degree(const Quiver& q) const {
  std::optional<int> deg;
  for (const auto& [p, _] : terms_) {
    int d = p.degree(q);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

int PathAlgebraElement::max_length() const {
  int m = 0;
  for (const auto& [p, _] : terms_) m = std::max(m, p.length());
  return m;
}

int PathAlgebraElement::min_weight(const Quiver& q) const {
  int m = -1;
  for (const auto& [p, _] : terms_) {
    int w = p.weight(q);
    if (m < 0 || w < m) m = w;
  }
  return m;
}

int PathAlgebraElement::max_weight(const Quiver& q) const {
  int m = 0;
  for (const auto& [p, _] : terms_) m = std::max(m, p.weight(q));
  return m;
}

std::string PathAlgebraElement::to_string(const Quiver& q) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (!c.is_one()) out += "(" + c.to_string() + ")";
    out += p.label(q);
  }
  return out;
}

PathAlgebraElement path_mul(const Quiver& q, const PathAlgebraElement& a,
                            const PathAlgebraElement& b) {
  PathAlgebraElement out(a.field());
  for (const auto& [p, c] : a.terms())
    for (const auto& [r, d] : b.terms())
      if (auto pr = concatenate(q, p, r)) out.add(*pr, c * d);
  return out;
}

std::vector<int> Superpotential::canonical_rotation(const std::vector<int>& cycle) {
  std::vector<int> best = cycle;
  std::vector<int> rot = cycle;
  for (std::size_t i = 1; i < cycle.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

void Superpotential::add_cycle(const Quiver& q, const std::vector<int>& cycle,
                               const Scalar& coeff) {
  if (cycle.empty()) throw Error(ErrorKind::InvalidInput, "superpotential cycle is empty");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Arrow& a = q.arrow(cycle[i]);
    const Arrow& b = q.arrow(cycle[(i + 1) % cycle.size()]);
    if (a.degree != 0)
      throw Error(ErrorKind::NonzeroArrowDegree,
                  "superpotential arrow '" + a.label + "' has nonzero degree");
    if (a.target != b.source)
      throw Error(ErrorKind::InvalidInput, "superpotential term is not a cycle at '" + a.label + "'");
  }
  if (coeff.is_zero()) return;
  auto key = canonical_rotation(cycle);
  auto [it, inserted] = cycles_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) cycles_.erase(it);
  }
}

int Superpotential::min_cycle_length() const {
  int m = 0;
  for (const auto& [c, _] : cycles_)
    if (m == 0 || static_cast<int>(c.size()) < m) m = static_cast<int>(c.size());
  return m;
}

bool Superpotential::is_homogeneous() const {
  std::optional<std::size_t> len;
  for (const auto& [c, _] : cycles_) {
    if (len && *len != c.size()) return false;
    len = c.size();
  }
  return true;
}

PathAlgebraElement cyclic_derivative(const Quiver& q, const Superpotential& w, int arrow) {
  if (arrow < 0 || arrow >= q.arrow_count())
    throw Error(ErrorKind::UnknownArrow, "arrow index " + std::to_string(arrow));
  PathAlgebraElement out(w.field());
  for (const auto& [cycle, coeff] : w.cycles()) {
    const std::size_t n = cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (cycle[i] != arrow) continue;
      // W = u a v with u = cycle[0..i), v = cycle(i..n): contribute v u.
      std::vector<int> vu;
      for (std::size_t k = 1; k < n; ++k) vu.push_back(cycle[(i + k) % n]);
      Path p = vu.empty() ? Path::trivial(q.arrow(arrow).target) : Path::of(q, vu);
      out.add(p, coeff);
    }
  }
  return out;
}

std::vector<Path> enumerate_paths(const Quiver& q, int max_length) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (int v = 0; v < q.vertex_count(); ++v) frontier.push_back(Path::trivial(v));
  for (int len = 0; len <= max_length && !frontier.empty(); ++len) {
    std::sort(frontier.begin(), frontier.end());
    out.insert(out.end(), frontier.begin(), frontier.end());
    if (len == max_length) break;
    std::vector<Path> next;
    for (const Path& p : frontier)
      for (int a : q.out_arrows(p.target(q))) {
        Path e = p;
        e.arrows.push_back(a);
        next.push_back(std::move(e));
      }
    frontier = std::move(next);
  }
  return out;
}

QuotientBasis reduce_modulo_relations(const Quiver& q,
                                      const std::vector<PathAlgebraElement>& relations,
                                      int max_length, const Field& field) {
  if (max_length < 0) throw Error(ErrorKind::InvalidInput, "length bound must be >= 0");
  std::vector<Path> paths = enumerate_paths(q, max_length);
  QuotientBasis out;
  out.total_paths = static_cast<int>(paths.size());

  // Column order is descending deg-lex so the pivot of each ideal vector is its largest path.
  std::map<Path, int> column;
  for (std::size_t i = 0; i < paths.size(); ++i)
    column[paths[i]] = static_cast<int>(paths.size() - 1 - i);

  // Paths ending / starting at each vertex, for the u r v sweep.
  std::vector<std::vector<const Path*>> ending(q.vertex_count()), starting(q.vertex_count());
  for (const Path& p : paths) {
    ending[p.target(q)].push_back(&p);
    starting[p.source()].push_back(&p);
  }

  Echelon ideal(field);
  for (const auto& r : relations) {
    if (r.is_zero()) continue;
    auto ends = r.endpoints(q);
    if (!ends) throw Error(ErrorKind::InvalidInput, "relation is not vertex-homogeneous: " + r.to_string(q));
    int room = max_length - r.max_length();
    if (room < 0) continue;
    for (const Path* u : ending[ends->first]) {
      if (u->length() > room) continue;
      for (const Path* v : starting[ends->second]) {
        if (u->length() + v->length() > room) continue;
        SparseVec vec;
        for (const auto& [p, c] : r.terms()) {
          Path full = *concatenate(q, *concatenate(q, *u, p), *v);
          vec.add(column.at(full), c);
        }
        ideal.insert(std::move(vec));
      }
    }
  }
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (!ideal.has_pivot(column.at(paths[i]))) out.basis.push_back(paths[i]);
  return out;
}

}  // namespace dgkit

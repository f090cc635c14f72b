#include "dgkit/dg.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "dgkit/error.hpp"

namespace dgkit {

std::string Window::to_string() const {
  if (unbounded) return "all";
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

const char* to_string(OverflowKind kind) {
  switch (kind) {
    case OverflowKind::Differential: return "differential";
    case OverflowKind::Window: return "window";
    case OverflowKind::Product: return "product";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------------------------
// Presentations

DgPresentation::DgPresentation(Field field, std::vector<std::string> vertices)
    : field_(field), quiver_(std::move(vertices)) {
  if (quiver_.vertex_count() == 0) throw Error(ErrorKind::InvalidInput, "presentation needs a vertex");
}

int DgPresentation::add_generator(const std::string& label, int source, int target, int degree,
                                  std::optional<int> weight) {
  if (weight && *weight < 1)
    throw Error(ErrorKind::InvalidInput, "generator '" + label + "' needs positive weight");
  int g = quiver_.add_arrow(label, source, target, degree, weight.value_or(1));
  user_weight_.push_back(weight);
  validated_ = false;
  return g;
}

int DgPresentation::add_generator(const std::string& label, const std::string& source,
                                  const std::string& target, int degree,
                                  std::optional<int> weight) {
  return add_generator(label, quiver_.vertex_index(source), quiver_.vertex_index(target), degree,
                       weight);
}

void DgPresentation::set_differential(int generator, PathAlgebraElement value) {
  if (generator < 0 || generator >= generator_count())
    throw Error(ErrorKind::UnknownArrow, "generator index " + std::to_string(generator));
  if (value.is_zero()) {
    differential_.erase(generator);
  } else {
    differential_[generator] = std::move(value);
  }
  validated_ = false;
}

void DgPresentation::add_relation(PathAlgebraElement relation) {
  if (!relation.is_zero()) relations_.push_back(std::move(relation));
  validated_ = false;
}

PathAlgebraElement DgPresentation::word(const std::vector<std::string>& labels,
                                        const Scalar& coeff, std::optional<int> vertex) const {
  if (labels.empty()) {
    if (!vertex) throw Error(ErrorKind::InvalidInput, "empty word needs a vertex");
    return PathAlgebraElement::of(field_, Path::trivial(*vertex), coeff);
  }
  std::vector<int> arrows;
  for (const auto& l : labels) arrows.push_back(quiver_.arrow_index(l));
  return PathAlgebraElement::of(field_, Path::of(quiver_, arrows), coeff);
}

const PathAlgebraElement& DgPresentation::differential(int generator) const {
  static const PathAlgebraElement zero;
  auto it = differential_.find(generator);
  return it == differential_.end() ? zero : it->second;
}

void DgPresentation::validate() {
  if (validated_) return;
  const int n = generator_count();
  for (const auto& [g, dg] : differential_) {
    const Arrow& a = quiver_.arrow(g);
    auto deg = dg.homogeneous_degree(quiver_);
    if (!deg || *deg != a.degree + 1)
      throw Error(ErrorKind::InvalidInput, "differential of '" + a.label + "' must have degree " +
                                               std::to_string(a.degree + 1) + ": " +
                                               dg.to_string(quiver_));
    auto ends = dg.endpoints(quiver_);
    if (!ends || ends->first != a.source || ends->second != a.target)
      throw Error(ErrorKind::InvalidInput,
                  "differential of '" + a.label + "' does not match its endpoints");
    for (const auto& [p, _] : dg.terms())
      if (p.length() == 0)
        throw Error(ErrorKind::Unsupported,
                    "differential of '" + a.label + "' has a constant term");
  }
  for (const auto& r : relations_) {
    if (!r.homogeneous_degree(quiver_))
      throw Error(ErrorKind::InvalidInput, "relation is not degree-homogeneous: " + r.to_string(quiver_));
    if (!r.endpoints(quiver_))
      throw Error(ErrorKind::InvalidInput, "relation is not vertex-homogeneous: " + r.to_string(quiver_));
  }

  // Weights: fixed point over the differential dependency order.
  std::vector<std::optional<int>> w(n);
  for (int g = 0; g < n; ++g) {
    if (user_weight_[g]) w[g] = user_weight_[g];
    else if (!differential_.count(g)) w[g] = 1;
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& [g, dg] : differential_) {
      if (w[g]) continue;
      std::optional<int> least;
      bool ready = true;
      for (const auto& [p, _] : dg.terms()) {
        int s = 0;
        for (int a : p.arrows) {
          if (!w[a]) {
            ready = false;
            break;
          }
          s += *w[a];
        }
        if (!ready) break;
        least = least ? std::min(*least, s) : s;
      }
      if (ready) {
        w[g] = std::max(1, least.value_or(1));
        progress = true;
      }
    }
  }
  for (int g = 0; g < n; ++g) quiver_.arrow_mut(g).weight = w[g].value_or(1);
  for (const auto& [g, dg] : differential_) {
    const Arrow& a = quiver_.arrow(g);
    for (const auto& [p, _] : dg.terms())
      if (p.weight(quiver_) < a.weight)
        throw Error(ErrorKind::InvalidInput,
                    "differential of '" + a.label + "' lowers word weight (term " +
                        p.label(quiver_) + ")");
  }
  validated_ = true;
}

bool DgPresentation::has_augmentation() const {
  for (const auto& r : relations_)
    for (const auto& [p, _] : r.terms())
      if (p.length() == 0) return false;
  for (const auto& [g, dg] : differential_)
    for (const auto& [p, _] : dg.terms())
      if (p.length() == 0) return false;
  return true;
}

int DgPresentation::max_generator_weight() const {
  int m = 0;
  for (const auto& a : quiver_.arrows()) m = std::max(m, a.weight);
  return m;
}

// ---------------------------------------------------------------------------------------------
// Truncated algebras

using OverflowMap = TruncatedDgAlgebra::OverflowLedger;

TruncatedDgAlgebra::TruncatedDgAlgebra(Field field, std::vector<std::string> vertices,
                                       std::vector<BasisElement> basis,
                                       std::vector<std::optional<SparseVec>> d, ProductFn product,
                                       Window window, int bound,
                                       std::shared_ptr<OverflowLedger> ledger)
    : field_(field),
      vertices_(std::move(vertices)),
      basis_(std::move(basis)),
      d_(std::move(d)),
      product_(std::move(product)),
      window_(window),
      bound_(bound),
      overflow_(ledger ? std::move(ledger) : std::make_shared<OverflowLedger>()),
      cache_(std::make_shared<std::map<std::pair<int, int>, std::optional<SparseVec>>>()) {
  if (d_.size() != basis_.size())
    throw Error(ErrorKind::InvalidInput, "differential table size mismatch");
  local_.resize(basis_.size());
  std::map<int, std::set<std::string>> seen;
  for (int i = 0; i < size(); ++i) {
    const auto& b = basis_[i];
    if (!realized(b.degree))
      throw Error(ErrorKind::InvalidInput, "basis element '" + b.label + "' outside realized degrees");
    if (!seen[b.degree].insert(b.label).second)
      throw Error(ErrorKind::InvalidInput, "duplicate basis label '" + b.label + "'");
    auto& list = by_degree_[b.degree];
    local_[i] = static_cast<int>(list.size());
    list.push_back(i);
  }
}

bool TruncatedDgAlgebra::realized(int degree) const {
  if (window_.unbounded) return true;
  if (window_.empty()) return false;
  return window_.lo - 1 <= degree && degree <= window_.hi + 1;
}

const std::vector<int>& TruncatedDgAlgebra::degree_basis(int degree) const {
  static const std::vector<int> empty;
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? empty : it->second;
}

GradedVectorSpace TruncatedDgAlgebra::spaces() const {
  GradedVectorSpace out;
  for (const auto& [deg, idx] : by_degree_) {
    if (!window_.contains(deg)) continue;
    std::vector<std::string> labels;
    for (int i : idx) labels.push_back(basis_[i].label);
    out.set_degree(deg, std::move(labels));
  }
  return out;
}

std::optional<SparseVec> TruncatedDgAlgebra::d(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v) {
    const auto& di = d_.at(i);
    if (!di) return std::nullopt;
    out.axpy(c, *di);
  }
  return out;
}

SparseVec TruncatedDgAlgebra::to_global(int degree, const SparseVec& local) const {
  const auto& idx = degree_basis(degree);
  SparseVec out;
  for (const auto& [i, c] : local) out.add(idx.at(i), c);
  return out;
}

SparseVec TruncatedDgAlgebra::to_local(const SparseVec& global) const {
  SparseVec out;
  for (const auto& [i, c] : global) out.add(local_.at(i), c);
  return out;
}

SparseMatrix TruncatedDgAlgebra::differential_matrix(int degree) const {
  if (!realized(degree) || !realized(degree + 1))
    throw Error(ErrorKind::UnsafeWindow,
                "differential out of degree " + std::to_string(degree) + " is not realized");
  const auto& src = degree_basis(degree);
  SparseMatrix m(static_cast<int>(degree_basis(degree + 1).size()), static_cast<int>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto& di = d_[src[c]];
    if (!di)
      throw Error(ErrorKind::UnsafeWindow, "differential of '" + basis_[src[c]].label + "' escaped");
    m.set_column(static_cast<int>(c), to_local(*di));
  }
  return m;
}

std::optional<SparseVec> TruncatedDgAlgebra::multiply(int i, int j) const {
  auto key = std::make_pair(i, j);
  auto it = cache_->find(key);
  if (it != cache_->end()) return it->second;
  std::optional<SparseVec> out;
  if (basis_.at(i).target != basis_.at(j).source) {
    out = SparseVec();
  } else {
    out = product_(i, j);
  }
  cache_->emplace(key, out);
  return out;
}

std::optional<SparseVec> TruncatedDgAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      auto p = multiply(i, j);
      if (!p) return std::nullopt;
      out.axpy(a * b, *p);
    }
  return out;
}

SparseVec TruncatedDgAlgebra::unit() const {
  SparseVec out;
  for (int i = 0; i < size(); ++i)
    if (basis_[i].idempotent) out.add(i, field_.one());
  return out;
}

std::vector<OverflowEntry> TruncatedDgAlgebra::overflow() const {
  std::vector<OverflowEntry> out;
  for (const auto& [key, count] : *overflow_) out.push_back({key.first, key.second, count});
  return out;
}

void TruncatedDgAlgebra::add_overflow(OverflowKind kind, int degree, int count) {
  if (count > 0) (*overflow_)[{kind, degree}] += count;
}

bool TruncatedDgAlgebra::differential_clean(int lo, int hi) const {
  for (const auto& [key, count] : *overflow_)
    if (key.first == OverflowKind::Differential && lo <= key.second && key.second <= hi && count)
      return false;
  return true;
}

std::vector<std::string> TruncatedDgAlgebra::associativity_failures(int limit) const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      if (basis_[i].target != basis_[j].source) continue;
      auto ij = multiply(i, j);
      if (!ij) continue;
      for (int k = 0; k < size(); ++k) {
        if (basis_[j].target != basis_[k].source) continue;
        auto jk = multiply(j, k);
        if (!jk) continue;
        auto left = multiply(*ij, SparseVec::unit(k, field_));
        auto right = multiply(SparseVec::unit(i, field_), *jk);
        if (!left || !right) continue;
        if (!(*left == *right)) {
          out.push_back("(" + basis_[i].label + " " + basis_[j].label + ") " + basis_[k].label);
          if (static_cast<int>(out.size()) >= limit) return out;
        }
      }
    }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Realization of presentations

namespace {

bool word_less(const Quiver& q, const Path& a, const Path& b) {
  int wa = a.weight(q), wb = b.weight(q);
  if (wa != wb) return wa < wb;
  return a < b;
}

// Words of weight <= L modulo the relation ideal, split into (degree, source, target) blocks.
struct Realization {
  Quiver q;
  Field k;
  int bound = 0;
  std::vector<Path> words;
  std::map<Path, int> index;
  std::vector<int> weight, degree;
  struct Block {
    std::vector<int> words;  // ascending word order
    Echelon ideal;
  };
  std::vector<Block> blocks;
  std::vector<int> block_of, column_of;
  std::vector<int> basis_of;  // word -> global basis index, -1 if none

  void enumerate() {
    std::vector<Path> frontier;
    for (int v = 0; v < q.vertex_count(); ++v) frontier.push_back(Path::trivial(v));
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (Path& p : frontier) {
        int w = p.weight(q);
        for (int a : q.out_arrows(p.target(q))) {
          if (w + q.arrow(a).weight > bound) continue;
          Path e = p;
          e.arrows.push_back(a);
          next.push_back(std::move(e));
        }
        words.push_back(std::move(p));
      }
      frontier = std::move(next);
    }
    std::sort(words.begin(), words.end(),
              [&](const Path& a, const Path& b) { return word_less(q, a, b); });
    std::map<std::tuple<int, int, int>, int> block_index;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Path& p = words[i];
      index.emplace(p, static_cast<int>(i));
      weight.push_back(p.weight(q));
      degree.push_back(p.degree(q));
      auto key = std::make_tuple(degree.back(), p.source(), p.target(q));
      auto [it, inserted] = block_index.emplace(key, static_cast<int>(blocks.size()));
      if (inserted) blocks.push_back(Block{{}, Echelon(k)});
      block_of.push_back(it->second);
      blocks[it->second].words.push_back(static_cast<int>(i));
    }
    column_of.assign(words.size(), 0);
    for (auto& b : blocks) {
      const int n = static_cast<int>(b.words.size());
      for (int pos = 0; pos < n; ++pos) column_of[b.words[pos]] = n - 1 - pos;
    }
    basis_of.assign(words.size(), -1);
  }

  int word_at(int block, int column) const {
    const auto& b = blocks[block];
    return b.words[b.words.size() - 1 - column];
  }

  void add_relations(const std::vector<PathAlgebraElement>& relations) {
    std::vector<std::vector<int>> ending(q.vertex_count()), starting(q.vertex_count());
    for (std::size_t i = 0; i < words.size(); ++i) {
      ending[words[i].target(q)].push_back(static_cast<int>(i));
      starting[words[i].source()].push_back(static_cast<int>(i));
    }
    for (const auto& r : relations) {
      auto ends = *r.endpoints(q);
      int wr = r.min_weight(q);
      for (int u : ending[ends.first]) {
        if (weight[u] + wr > bound) break;
        for (int v : starting[ends.second]) {
          if (weight[u] + wr + weight[v] > bound) break;
          SparseVec vec;
          int block = -1;
          for (const auto& [p, c] : r.terms()) {
            Path full = *concatenate(q, *concatenate(q, words[u], p), words[v]);
            if (full.weight(q) > bound) continue;
            int w = index.at(full);
            block = block_of[w];
            vec.add(column_of[w], c);
          }
          if (block >= 0) blocks[block].ideal.insert(std::move(vec));
        }
      }
    }
  }

  bool is_basis_word(int w) const { return !blocks[block_of[w]].ideal.has_pivot(column_of[w]); }

  // Normal form in word coordinates; terms above the bound are dropped and counted.
  SparseVec normal_form(const std::map<Path, Scalar>& terms, int* dropped) const {
    std::map<int, SparseVec> per_block;
    for (const auto& [p, c] : terms) {
      if (p.weight(q) > bound) {
        if (dropped) ++*dropped;
        continue;
      }
      int w = index.at(p);
      per_block[block_of[w]].add(column_of[w], c);
    }
    SparseVec out;
    for (auto& [b, v] : per_block) {
      blocks[b].ideal.reduce_full(v);
      for (const auto& [col, c] : v) out.add(word_at(b, col), c);
    }
    return out;
  }

  std::map<Path, Scalar> d_word(const Path& word, const DgPresentation& p) const {
    PathAlgebraElement out(k);
    int prefix_degree = 0;
    for (std::size_t i = 0; i < word.arrows.size(); ++i) {
      int g = word.arrows[i];
      const auto& dg = p.differential(g);
      if (!dg.is_zero()) {
        Path prefix{word.vertex, std::vector<int>(word.arrows.begin(), word.arrows.begin() + i)};
        Path suffix{q.arrow(g).target,
                    std::vector<int>(word.arrows.begin() + i + 1, word.arrows.end())};
        Scalar sign = prefix_degree % 2 == 0 ? k.one() : -k.one();
        for (const auto& [t, c] : dg.terms())
          out.add(*concatenate(q, *concatenate(q, prefix, t), suffix), sign * c);
      }
      prefix_degree += q.arrow(g).degree;
    }
    return out.terms();
  }
};

std::shared_ptr<Realization> build_realization(const DgPresentation& p, int bound) {
  auto r = std::make_shared<Realization>();
  r->q = p.quiver();
  r->k = p.field();
  r->bound = bound;
  r->enumerate();
  r->add_relations(p.relations());
  return r;
}

}  // namespace

TruncatedDgAlgebra realize(DgPresentation p, Window window, int length_bound) {
  if (length_bound < 1) throw Error(ErrorKind::InvalidInput, "length bound must be >= 1");
  p.validate();
  const Field k = p.field();
  auto r = build_realization(p, length_bound);
  const Quiver& q = r->q;

  // Relations must be closed under d within the bound.
  for (const auto& rel : p.relations()) {
    PathAlgebraElement dr(k);
    for (const auto& [path, c] : rel.terms()) {
      if (path.weight(q) > length_bound) continue;
      for (const auto& [t, e] : r->d_word(path, p)) dr.add(t, c * e);
    }
    SparseVec nf = r->normal_form(dr.terms(), nullptr);
    if (!nf.empty()) {
      PathAlgebraElement witness(k);
      for (const auto& [w, c] : nf) witness.add(r->words[w], c);
      throw Error(ErrorKind::InconsistentPresentation,
                  "d(" + rel.to_string(q) + ") = " + witness.to_string(q) +
                      " is not in the relation ideal");
    }
  }

  auto in_realized = [window](int d) {
    if (window.unbounded) return true;
    if (window.empty()) return false;
    return window.lo - 1 <= d && d <= window.hi + 1;
  };

  std::vector<int> order;
  std::map<int, int> excluded;
  for (std::size_t w = 0; w < r->words.size(); ++w) {
    if (!r->is_basis_word(static_cast<int>(w))) continue;
    if (in_realized(r->degree[w])) {
      order.push_back(static_cast<int>(w));
    } else {
      ++excluded[r->degree[w]];
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return r->degree[a] < r->degree[b]; });
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int w = order[i];
    r->basis_of[w] = static_cast<int>(i);
    const Path& path = r->words[w];
    basis.push_back(BasisElement{path.label(q), r->degree[w], r->weight[w], path.source(),
                                 path.target(q), path.length() == 0});
  }

  auto to_basis = [r](const SparseVec& words) -> std::optional<SparseVec> {
    SparseVec out;
    for (const auto& [w, c] : words) {
      int b = r->basis_of[w];
      if (b < 0) return std::nullopt;
      out.add(b, c);
    }
    return out;
  };

  std::vector<std::optional<SparseVec>> d(order.size());
  std::map<int, int> dropped_by_degree;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int w = order[i];
    int dropped = 0;
    SparseVec nf = r->normal_form(r->d_word(r->words[w], p), &dropped);
    if (dropped) dropped_by_degree[r->degree[w]] += dropped;
    if (!nf.empty() && !in_realized(r->degree[w] + 1)) continue;
    d[i] = nf.empty() ? SparseVec() : to_basis(nf);
  }

  auto ledger = std::make_shared<OverflowMap>();
  TruncatedDgAlgebra::ProductFn product = [r, order, to_basis, in_realized, ledger](
                                              int i, int j) -> std::optional<SparseVec> {
    const Path& a = r->words[order[i]];
    const Path& b = r->words[order[j]];
    Path ab = *concatenate(r->q, a, b);
    int deg = ab.degree(r->q);
    if (ab.weight(r->q) > r->bound) {
      ++(*ledger)[{OverflowKind::Product, deg}];
      return SparseVec();
    }
    if (!in_realized(deg)) return std::nullopt;
    std::map<Path, Scalar> one{{ab, r->k.one()}};
    return to_basis(r->normal_form(one, nullptr));
  };

  TruncatedDgAlgebra t(k, q.vertices(), std::move(basis), std::move(d), product, window,
                       length_bound, ledger);
  for (const auto& [deg, n] : dropped_by_degree) t.add_overflow(OverflowKind::Differential, deg, n);
  for (const auto& [deg, n] : excluded) t.add_overflow(OverflowKind::Window, deg, n);
  t.presentation = p;
  t.name = p.name;
  return t;
}

bool truncation_is_exact(const DgPresentation& pres, int length_bound) {
  DgPresentation p = pres;
  p.validate();
  auto r = build_realization(p, length_bound + p.max_generator_weight());
  for (std::size_t w = 0; w < r->words.size(); ++w)
    if (r->weight[w] > length_bound && r->is_basis_word(static_cast<int>(w))) return false;
  return true;
}

// ---------------------------------------------------------------------------------------------
// Verification

VerifyReport verify_differential(const TruncatedDgAlgebra& t, int max_failures) {
  VerifyReport rep;
  const Field& k = t.field();
  auto fail = [&](std::string msg) {
    if (static_cast<int>(rep.failures.size()) < max_failures) rep.failures.push_back(std::move(msg));
  };
  for (int i = 0; i < t.size(); ++i) {
    const auto& di = t.d(i);
    if (!di) continue;
    auto ddi = t.d(*di);
    if (!ddi) continue;
    ++rep.d_squared_checked;
    if (!ddi->empty()) fail("d^2(" + t.element(i).label + ") != 0");
  }
  for (int i = 0; i < t.size(); ++i) {
    const auto& di = t.d(i);
    if (!di) continue;
    const auto& bi = t.element(i);
    Scalar sign = bi.degree % 2 == 0 ? k.one() : -k.one();
    for (int j = 0; j < t.size(); ++j) {
      if (bi.target != t.element(j).source) continue;
      const auto& dj = t.d(j);
      if (!dj) continue;
      auto ij = t.multiply(i, j);
      if (!ij) continue;
      auto lhs = t.d(*ij);
      auto left = t.multiply(*di, SparseVec::unit(j, k));
      auto right = t.multiply(SparseVec::unit(i, k), *dj);
      if (!lhs || !left || !right) continue;
      ++rep.leibniz_checked;
      SparseVec rhs = *left;
      rhs.axpy(sign, *right);
      if (!(rhs == *lhs))
        fail("Leibniz fails on (" + bi.label + ", " + t.element(j).label + ")");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Cohomology

DgCohomology::DgCohomology(const TruncatedDgAlgebra& t, Window safe) : t_(t), window_(safe) {
  if (safe.unbounded) {
    if (!t.window().unbounded)
      throw Error(ErrorKind::UnsafeWindow, "unbounded cohomology needs an unbounded realization");
    if (t.by_degree().empty()) {
      window_ = Window{0, -1, false};
    } else {
      window_ = Window{t.by_degree().begin()->first, t.by_degree().rbegin()->first, false};
    }
  }
  if (window_.empty()) return;
  const int lo = window_.lo, hi = window_.hi;
  if (!t.realized(lo - 1) || !t.realized(hi + 1))
    throw Error(ErrorKind::UnsafeWindow, "window " + window_.to_string() +
                                             " needs degrees " + std::to_string(lo - 1) + ".." +
                                             std::to_string(hi + 1) + " realized");
  if (!t.differential_clean(lo - 1, hi))
    throw Error(ErrorKind::UnsafeWindow,
                "truncation drops differential terms inside " + window_.to_string());
  ChainComplex c;
  for (int i = lo - 1; i <= hi + 1; ++i) {
    std::vector<std::string> labels;
    for (int g : t.degree_basis(i)) labels.push_back(t.element(g).label);
    c.spaces.set_degree(i, std::move(labels));
  }
  for (int i = lo - 1; i <= hi; ++i) c.differentials.emplace(i, t.differential_matrix(i));
  h_ = cohomology_of_complex(c, lo, hi, t.field());
}

SparseVec DgCohomology::representative(int degree, int index) const {
  return t_.to_global(degree, h_.representatives.at(degree).at(index));
}

const Echelon& DgCohomology::reducer(int degree) const {
  auto it = reducers_.find(degree);
  if (it != reducers_.end()) return it->second;
  Echelon e(t_.field());
  if (t_.realized(degree - 1)) {
    SparseMatrix in = t_.differential_matrix(degree - 1);
    for (int c = 0; c < in.cols(); ++c) e.insert(in.column(c));
  }
  auto reps = h_.representatives.find(degree);
  if (reps != h_.representatives.end())
    for (std::size_t i = 0; i < reps->second.size(); ++i)
      e.insert(reps->second[i], SparseVec::unit(static_cast<int>(i), t_.field()));
  return reducers_.emplace(degree, std::move(e)).first->second;
}

SparseVec DgCohomology::classify_cocycle(int degree, const SparseVec& cocycle) const {
  SparseVec v = t_.to_local(cocycle), tag;
  reducer(degree).reduce(v, &tag);
  if (!v.empty()) throw Error(ErrorKind::InvalidInput, "vector is not a cocycle");
  tag.scale(-t_.field().one());
  return tag;
}

std::optional<SparseVec> DgCohomology::product(int i, int a, int j, int b) const {
  if (!window_.contains(i + j)) return std::nullopt;
  auto p = t_.multiply(representative(i, a), representative(j, b));
  if (!p) return std::nullopt;
  return classify_cocycle(i + j, *p);
}

DgCohomology cohomology(const TruncatedDgAlgebra& t, Window safe) { return DgCohomology(t, safe); }

// ---------------------------------------------------------------------------------------------
// Classification and H^0

namespace {

Window effective_window(const TruncatedDgAlgebra& t) {
  if (!t.window().unbounded) return t.window();
  if (t.by_degree().empty()) return Window{0, 0, false};
  return Window{t.by_degree().begin()->first, t.by_degree().rbegin()->first, false};
}

}  // namespace

Classification classify(const TruncatedDgAlgebra& t) {
  Classification c;
  c.window = effective_window(t);
  DgCohomology h(t, t.window().unbounded ? Window::all() : c.window);
  c.cohomology_dims = h.dims();
  c.connective = true;
  for (const auto& [deg, n] : c.cohomology_dims)
    if (deg > 0 && n > 0) c.connective = false;

  bool negative_basis = false;
  for (const auto& [deg, idx] : t.by_degree())
    if (deg < 0 && !idx.empty()) negative_basis = true;
  if (t.presentation) {
    bool all_nonneg = true;
    for (const auto& a : t.presentation->quiver().arrows())
      if (a.degree < 0) all_nonneg = false;
    c.strictly_coconnective = all_nonneg || !negative_basis;
  } else {
    c.strictly_coconnective = !negative_basis;
  }

  if (t.realized(1)) {
    c.a1_zero = t.degree_basis(1).empty();
  } else if (t.presentation) {
    c.a1_zero = realize(*t.presentation, Window{1, 1}, t.bound()).degree_basis(1).empty();
  }

  int idempotents = 0, dim0 = 0;
  for (int i : t.degree_basis(0)) {
    ++dim0;
    if (t.element(i).idempotent) ++idempotents;
  }
  if (dim0 == idempotents) {
    c.a0_description = "semisimple base k^" + std::to_string(idempotents);
  } else {
    c.a0_description = "dim " + std::to_string(dim0) + " within weight " + std::to_string(t.bound());
  }

  if (t.exact.value_or(false)) {
    c.locally_proper_within_window = true;
  } else if (t.presentation) {
    auto next = realize(*t.presentation, c.window, t.bound() + 1);
    c.locally_proper_within_window = DgCohomology(next, c.window).dims() == c.cohomology_dims;
  } else {
    c.locally_proper_within_window = true;
  }
  return c;
}

namespace {

H0Algebra h0_from(const TruncatedDgAlgebra& t) {
  DgCohomology h(t, Window{0, 0});
  const Field& k = t.field();
  const int n = h.dim(0);
  std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto p = h.product(0, a, 0, b);
      if (!p) throw Error(ErrorKind::UnsafeWindow, "H^0 product left the realized degrees");
      table[a][b] = *p;
    }
  std::vector<int> weights;
  for (int a = 0; a < n; ++a) {
    std::set<int> ws;
    for (const auto& [i, _] : h.representative(0, a)) ws.insert(t.element(i).weight);
    if (ws.size() != 1) {
      weights.clear();
      break;
    }
    weights.push_back(*ws.begin());
  }
  H0Algebra out;
  out.algebra = FiniteDimAlgebra(k, h.classes().labels(0), std::move(table));
  out.algebra.set_weights(weights);
  out.radical = radical(out.algebra);
  out.semisimple_quotient = out.algebra.quotient(out.radical.basis).algebra;
  out.summary = describe_semisimple(out.semisimple_quotient);
  out.stabilized_at = t.bound();
  return out;
}

}  // namespace

H0Algebra h0_algebra(const DgPresentation& p, int length_bound) {
  auto t = realize(p, Window{0, 0}, length_bound);
  auto next = realize(p, Window{0, 0}, length_bound + 1);
  int here = DgCohomology(t, Window{0, 0}).dim(0);
  int there = DgCohomology(next, Window{0, 0}).dim(0);
  if (here != there)
    throw Error(ErrorKind::NotStabilized, "H^0 has dim " + std::to_string(here) + " at bound " +
                                              std::to_string(length_bound) + " but " +
                                              std::to_string(there) + " at bound " +
                                              std::to_string(length_bound + 1));
  return h0_from(t);
}

H0Algebra h0_algebra(const TruncatedDgAlgebra& t) {
  if (t.presentation) return h0_algebra(*t.presentation, t.bound());
  if (t.exact.value_or(false)) return h0_from(t);
  throw Error(ErrorKind::NotStabilized, "truncation has no presentation to re-realize");
}

FiniteDimAlgebra degree_zero_algebra(const TruncatedDgAlgebra& t) {
  const auto& idx = t.degree_basis(0);
  const int n = static_cast<int>(idx.size());
  std::vector<std::string> labels;
  std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
  for (int a = 0; a < n; ++a) {
    labels.push_back(t.element(idx[a]).label);
    for (int b = 0; b < n; ++b) {
      auto p = t.multiply(idx[a], idx[b]);
      if (!p) throw Error(ErrorKind::UnsafeWindow, "degree-0 product escaped");
      table[a][b] = t.to_local(*p);
    }
  }
  return FiniteDimAlgebra(t.field(), std::move(labels), std::move(table));
}

TruncatedDgAlgebra graded_algebra(Field field, std::vector<std::string> vertices,
                                  std::vector<BasisElement> basis,
                                  std::vector<std::vector<SparseVec>> table) {
  const std::size_t n = basis.size();
  if (table.size() != n) throw Error(ErrorKind::InvalidInput, "product table size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [r, c] : table[i][j])
        if (basis[r].degree != basis[i].degree + basis[j].degree)
          throw Error(ErrorKind::InvalidInput, "product " + basis[i].label + "*" + basis[j].label +
                                                   " is not degree-homogeneous");
  int bound = 0;
  for (const auto& b : basis) bound = std::max(bound, b.weight);
  auto shared = std::make_shared<std::vector<std::vector<SparseVec>>>(std::move(table));
  std::vector<std::optional<SparseVec>> d(n, SparseVec());
  TruncatedDgAlgebra t(field, std::move(vertices), std::move(basis), std::move(d),
                       [shared](int i, int j) -> std::optional<SparseVec> {
                         return (*shared)[i][j];
                       },
                       Window::all(), bound);
  t.exact = true;
  return t;
}

}  // namespace dgkit

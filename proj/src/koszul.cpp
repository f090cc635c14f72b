#include "dgkit/koszul.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

#include "dgkit/error.hpp"

namespace dgkit {

namespace {

Scalar sign(const Field& k, int exponent) { return exponent % 2 == 0 ? k.one() : -k.one(); }

// Letters of an augmented truncation and their structure constants in letter coordinates.
struct Letters {
  std::vector<int> basis;  // letter -> basis index
  std::map<int, int> of;   // basis index -> letter
};

Letters letters_of(const TruncatedDgAlgebra& a) {
  Letters l;
  for (int i = 0; i < a.size(); ++i) {
    if (a.element(i).idempotent) continue;
    if (a.element(i).weight < 1)
      throw Error(ErrorKind::InvalidInput,
                  "augmentation ideal element '" + a.element(i).label + "' has weight 0");
    l.of[i] = static_cast<int>(l.basis.size());
    l.basis.push_back(i);
  }
  return l;
}

// Checks that v has no idempotent component and that every term has weight `weight`.
void check_letter_span(const TruncatedDgAlgebra& a, const SparseVec& v, int weight,
                       const std::string& what) {
  for (const auto& [i, c] : v) {
    if (a.element(i).idempotent)
      throw Error(ErrorKind::InvalidInput, what + " has an idempotent component: no augmentation");
    if (a.element(i).weight != weight)
      throw Error(ErrorKind::Unsupported, what + " is not weight-homogeneous");
  }
}

std::string word_label(const TruncatedDgAlgebra& a, const BarWord& w) {
  if (w.letters.empty()) return "[]_" + a.vertices().at(w.source);
  std::string s = "[";
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += "|";
    s += a.element(w.letters[i]).label;
  }
  return s + "]";
}

TruncatedDgAlgebra at_bound(const TruncatedDgAlgebra& a, int bound) {
  if (a.exact.value_or(false) || a.bound() >= bound) return a;
  if (a.presentation) return realize(*a.presentation, Window::all(), bound);
  throw Error(ErrorKind::UnsafeWindow, "algebra is truncated at weight " +
                                           std::to_string(a.bound()) + ", below " +
                                           std::to_string(bound));
}

}  // namespace

std::map<int, int> BarComplex::dims() const {
  std::map<int, int> out;
  for (const auto& w : words) ++out[w.degree];
  return out;
}

std::vector<std::string> BarComplex::d_squared_failures() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    SparseVec dd;
    for (const auto& [j, c] : differential[i]) dd.axpy(c, differential[j]);
    if (!dd.empty()) out.push_back("D^2" + labels[i] + " != 0");
  }
  return out;
}

BarComplex bar(const TruncatedDgAlgebra& a, int lambda) {
  if (!a.window().unbounded)
    throw Error(ErrorKind::UnsafeWindow, "bar construction needs an unbounded realization");
  if (!a.exact.value_or(false) && a.bound() < lambda)
    throw Error(ErrorKind::UnsafeWindow, "algebra truncated at weight " + std::to_string(a.bound()) +
                                             " cannot supply bar words of weight " +
                                             std::to_string(lambda));
  const Field& k = a.field();
  Letters letters = letters_of(a);

  BarComplex b;
  b.field = k;
  b.vertices = a.vertices();
  b.bound = lambda;
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<BarWord> frontier;
  for (int v = 0; v < static_cast<int>(a.vertices().size()); ++v)
    frontier.push_back(BarWord{v, v, {}, 0, 0});
  while (!frontier.empty()) {
    std::vector<BarWord> next;
    for (auto& w : frontier) {
      for (int x : letters.basis) {
        const auto& e = a.element(x);
        if (e.source != w.target || w.weight + e.weight > lambda) continue;
        BarWord n = w;
        n.letters.push_back(x);
        n.target = e.target;
        n.degree += e.degree - 1;
        n.weight += e.weight;
        next.push_back(std::move(n));
      }
      index.emplace(std::make_pair(w.source, w.letters), static_cast<int>(b.words.size()));
      b.labels.push_back(word_label(a, w));
      b.words.push_back(std::move(w));
    }
    frontier = std::move(next);
  }

  auto find = [&](int source, const std::vector<int>& ls) -> std::optional<int> {
    auto it = index.find({source, ls});
    if (it == index.end()) return std::nullopt;
    return it->second;
  };

  b.differential.resize(b.words.size());
  for (std::size_t wi = 0; wi < b.words.size(); ++wi) {
    const BarWord& w = b.words[wi];
    const int m = static_cast<int>(w.letters.size());
    SparseVec out;
    int eps = 0;  // sum of (|a_j| - 1) for j < i
    for (int i = 0; i < m; ++i) {
      const int x = w.letters[i];
      const auto& dx = a.d(x);
      if (!dx) throw Error(ErrorKind::UnsafeWindow, "differential of a letter escaped");
      check_letter_span(a, *dx, a.element(x).weight, "d(" + a.element(x).label + ")");
      for (const auto& [y, c] : *dx) {
        std::vector<int> ls = w.letters;
        ls[i] = y;
        if (auto j = find(w.source, ls)) out.axpy(-sign(k, eps) * c, SparseVec::unit(*j, k));
      }
      eps += a.element(x).degree - 1;
      if (i + 1 < m) {
        const int y = w.letters[i + 1];
        auto p = a.multiply(x, y);
        if (!p) throw Error(ErrorKind::UnsafeWindow, "letter product escaped");
        check_letter_span(a, *p, a.element(x).weight + a.element(y).weight,
                          a.element(x).label + "*" + a.element(y).label);
        for (const auto& [z, c] : *p) {
          std::vector<int> ls(w.letters.begin(), w.letters.begin() + i);
          ls.push_back(z);
          ls.insert(ls.end(), w.letters.begin() + i + 2, w.letters.end());
          if (auto j = find(w.source, ls)) out.axpy(sign(k, eps) * c, SparseVec::unit(*j, k));
        }
      }
    }
    b.differential[wi] = std::move(out);
  }
  return b;
}

TruncatedDgAlgebra dual_bar(const TruncatedDgAlgebra& a, int lambda) {
  auto b = std::make_shared<BarComplex>(bar(a, lambda));
  const Field k = b->field;
  const std::size_t n = b->words.size();

  std::vector<BasisElement> basis;
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = b->words[i];
    std::string label = w.letters.empty() ? "e_" + b->vertices.at(w.source) : b->labels[i] + "*";
    basis.push_back(BasisElement{label, -w.degree, w.weight, w.source, w.target, w.letters.empty()});
    index.emplace(std::make_pair(w.source, w.letters), static_cast<int>(i));
  }
  // d(u*) = (-1)^{|u|+1} sum_w <Dw, u> w*
  std::vector<SparseVec> d(n);
  for (std::size_t wi = 0; wi < n; ++wi)
    for (const auto& [u, c] : b->differential[wi])
      d[u].add(static_cast<int>(wi), sign(k, b->words[u].degree + 1) * c);
  std::vector<std::optional<SparseVec>> dd(d.begin(), d.end());

  auto ledger = std::make_shared<TruncatedDgAlgebra::OverflowLedger>();
  auto product = [b, index, ledger, k, lambda](int i, int j) -> std::optional<SparseVec> {
    const auto& u = b->words[i];
    const auto& v = b->words[j];
    if (u.weight + v.weight > lambda) {
      ++(*ledger)[{OverflowKind::Product, -(u.degree + v.degree)}];
      return SparseVec();
    }
    std::vector<int> ls = u.letters;
    ls.insert(ls.end(), v.letters.begin(), v.letters.end());
    int w = index.at({u.source, ls});
    SparseVec out = SparseVec::unit(w, k);
    out.scale(sign(k, u.degree * v.degree));
    return out;
  };
  TruncatedDgAlgebra t(k, b->vertices, std::move(basis), std::move(dd), product, Window::all(),
                       lambda, ledger);
  t.name = a.name.empty() ? "dual bar" : "dual bar of " + a.name;
  return t;
}

// ---------------------------------------------------------------------------------------------
// Coalgebras and cobar

bool CoalgebraPresentation::conilpotent() const {
  const int n = static_cast<int>(cogenerators.size());
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::function<bool(int)> acyclic = [&](int c) {
    if (state[c] == 1) return false;
    if (state[c] == 2) return true;
    state[c] = 1;
    for (const auto& t : coproduct[c])
      if (!acyclic(t.left) || !acyclic(t.right)) return false;
    state[c] = 2;
    return true;
  };
  for (int c = 0; c < n; ++c)
    if (!acyclic(c)) return false;
  return true;
}

std::vector<std::string> CoalgebraPresentation::coassociativity_failures() const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < cogenerators.size(); ++c) {
    // (D x 1) D and (1 x D) D on the reduced part, as maps to triples.
    std::map<std::tuple<int, int, int>, Scalar> left, right;
    for (const auto& t : coproduct[c]) {
      for (const auto& s : coproduct[t.left]) {
        auto key = std::make_tuple(s.left, s.right, t.right);
        auto [it, _] = left.emplace(key, field.zero());
        it->second += t.coeff * s.coeff;
      }
      for (const auto& s : coproduct[t.right]) {
        auto key = std::make_tuple(t.left, s.left, s.right);
        auto [it, _] = right.emplace(key, field.zero());
        it->second += t.coeff * s.coeff;
      }
    }
    std::erase_if(left, [](const auto& e) { return e.second.is_zero(); });
    std::erase_if(right, [](const auto& e) { return e.second.is_zero(); });
    if (left != right) out.push_back(cogenerators[c].label);
  }
  return out;
}

CoalgebraPresentation dual_coalgebra(const TruncatedDgAlgebra& a) {
  if (!a.window().unbounded)
    throw Error(ErrorKind::UnsafeWindow, "dual coalgebra needs an unbounded realization");
  const Field& k = a.field();
  Letters letters = letters_of(a);
  const int n = static_cast<int>(letters.basis.size());
  CoalgebraPresentation c;
  c.field = k;
  c.vertices = a.vertices();
  c.coproduct.resize(n);
  c.differential.resize(n);
  for (int x : letters.basis) {
    const auto& e = a.element(x);
    c.cogenerators.push_back(Cogenerator{e.label + "*", e.source, e.target, -e.degree, e.weight});
  }
  for (int i = 0; i < n; ++i) {
    const int x = letters.basis[i];
    const auto& dx = a.d(x);
    if (!dx) throw Error(ErrorKind::UnsafeWindow, "differential of a letter escaped");
    check_letter_span(a, *dx, a.element(x).weight, "d(" + a.element(x).label + ")");
    // d(c^v) = (-1)^{|c|+1} sum_x coef_c(dx) x^v
    for (const auto& [y, coef] : *dx)
      c.differential[letters.of.at(y)].add(i, sign(k, a.element(y).degree + 1) * coef);
    for (int j = 0; j < n; ++j) {
      const int y = letters.basis[j];
      if (a.element(x).target != a.element(y).source) continue;
      auto p = a.multiply(x, y);
      if (!p) throw Error(ErrorKind::UnsafeWindow, "letter product escaped");
      check_letter_span(a, *p, a.element(x).weight + a.element(y).weight,
                        a.element(x).label + "*" + a.element(y).label);
      // b.c' = sum coef_c c  gives  coef_c (-1)^{|b||c'|} b^v (x) c'^v in D(c^v)
      for (const auto& [z, coef] : *p)
        c.coproduct[letters.of.at(z)].push_back(
            CoproductTerm{sign(k, a.element(x).degree * a.element(y).degree) * coef, i, j});
    }
  }
  return c;
}

DgPresentation cobar_presentation(const CoalgebraPresentation& c) {
  if (!c.conilpotent())
    throw Error(ErrorKind::NotConilpotent, "reduced comultiplication does not terminate");
  const Field& k = c.field;
  DgPresentation p(k, c.vertices);
  for (const auto& g : c.cogenerators)
    p.add_generator(g.label, g.source, g.target, g.degree + 1, g.weight);
  const Quiver& q = p.quiver();
  for (std::size_t i = 0; i < c.cogenerators.size(); ++i) {
    PathAlgebraElement d(k);
    for (const auto& [j, coef] : c.differential[i])
      d.add(Path::of(q, {j}), -coef);
    for (const auto& t : c.coproduct[i])
      d.add(Path::of(q, {t.left, t.right}), sign(k, c.cogenerators[t.left].degree) * t.coeff);
    p.set_differential(static_cast<int>(i), std::move(d));
  }
  p.name = "cobar";
  return p;
}

TruncatedDgAlgebra cobar(const CoalgebraPresentation& c, int lambda, Window window) {
  return realize(cobar_presentation(c), window, lambda);
}

// ---------------------------------------------------------------------------------------------
// Completeness

const char* to_string(CompletenessVerdict v) {
  switch (v) {
    case CompletenessVerdict::CompleteWithinWindow: return "CompleteWithinWindow";
    case CompletenessVerdict::MismatchAt: return "MismatchAt";
    case CompletenessVerdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

CompletenessReport completeness_report(const TruncatedDgAlgebra& a, int lambda, Window window) {
  if (window.unbounded || window.empty())
    throw Error(ErrorKind::InvalidInput, "completeness needs a bounded nonempty window");
  CompletenessReport r;
  r.window = window;
  r.bound = lambda;
  auto restrict = [&](const std::map<int, int>& all) {
    std::map<int, int> out;
    for (int i = window.lo; i <= window.hi; ++i) {
      auto it = all.find(i);
      out[i] = it == all.end() ? 0 : it->second;
    }
    return out;
  };
  auto base = at_bound(a, lambda + 1);
  r.dims = restrict(cohomology(base, Window::all()).dims());
  auto double_dims = [&](int l) {
    auto once = dual_bar(base, l);
    auto twice = dual_bar(once, l);
    return restrict(cohomology(twice, Window::all()).dims());
  };
  r.double_dims = double_dims(lambda);
  r.next_dims = double_dims(lambda + 1);
  for (int i = window.lo; i <= window.hi; ++i) r.matches[i] = r.dims[i] == r.double_dims[i];
  if (r.double_dims != r.next_dims) {
    r.verdict = CompletenessVerdict::Inconclusive;
    for (int i = window.lo; i <= window.hi; ++i)
      if (r.double_dims[i] != r.next_dims[i]) {
        r.detail = "double dual changes in degree " + std::to_string(i) + " between weight " +
                   std::to_string(lambda) + " and " + std::to_string(lambda + 1);
        break;
      }
    return r;
  }
  for (int i = window.lo; i <= window.hi; ++i)
    if (!r.matches[i]) {
      r.verdict = CompletenessVerdict::MismatchAt;
      r.mismatch_degree = i;
      r.detail = "H^" + std::to_string(i) + " has dim " + std::to_string(r.dims[i]) +
                 " but the double dual has " + std::to_string(r.double_dims[i]);
      return r;
    }
  r.verdict = CompletenessVerdict::CompleteWithinWindow;
  return r;
}

}  // namespace dgkit

#include "dgkit/cy.hpp"

#include "dgkit/error.hpp"
#include "dgkit/koszul.hpp"

namespace dgkit {

namespace {

void require_degree_zero(const Quiver& q) {
  for (const auto& a : q.arrows())
    if (a.degree != 0)
      throw Error(ErrorKind::NonzeroArrowDegree,
                  "arrow '" + a.label + "' has degree " + std::to_string(a.degree));
}

bool isolated(const Quiver& q, int v) {
  for (const auto& a : q.arrows())
    if (a.source == v || a.target == v) return false;
  return true;
}

// Shared skeleton of Pi_n and Gamma: arrows first (same indices as in q), then duals, then z.
DgPresentation skeleton(const Quiver& q, int n, const Field& k) {
  require_degree_zero(q);
  DgPresentation p(k, q.vertices());
  for (const auto& a : q.arrows()) p.add_generator(a.label, a.source, a.target, 0);
  for (const auto& a : q.arrows()) p.add_generator(dual_label(a.label), a.target, a.source, 2 - n);
  const int m = q.arrow_count();
  const Quiver& g = p.quiver();
  for (int v = 0; v < q.vertex_count(); ++v) {
    std::optional<int> weight;
    if (isolated(q, v)) weight = 2;
    int z = p.add_generator("z_" + q.vertices()[v], v, v, 1 - n, weight);
    PathAlgebraElement dz(k);
    for (int a = 0; a < m; ++a) {
      if (q.arrow(a).source == v) dz.add(Path::of(g, {a, m + a}), k.one());
      if (q.arrow(a).target == v) dz.add(Path::of(g, {m + a, a}), -k.one());
    }
    p.set_differential(z, std::move(dz));
  }
  return p;
}

std::map<int, int> window_dims(const std::map<int, int>& all, Window w) {
  std::map<int, int> out;
  for (int i = w.lo; i <= w.hi; ++i) {
    auto it = all.find(i);
    out[i] = it == all.end() ? 0 : it->second;
  }
  return out;
}

}  // namespace

std::string dual_label(const std::string& arrow) { return arrow + "^v"; }

TruncatedDgAlgebra build_rn(const Quiver& q, int n, const Field& k) {
  require_degree_zero(q);
  const int v = q.vertex_count(), m = q.arrow_count();
  std::vector<BasisElement> basis;
  for (int i = 0; i < v; ++i) basis.push_back({"e_" + q.vertices()[i], 0, 0, i, i, true});
  for (const auto& a : q.arrows()) basis.push_back({a.label, 1, 1, a.source, a.target, false});
  for (const auto& a : q.arrows())
    basis.push_back({dual_label(a.label), n - 1, 1, a.target, a.source, false});
  for (int i = 0; i < v; ++i) basis.push_back({"w_" + q.vertices()[i], n, 2, i, i, false});
  const int size = static_cast<int>(basis.size());
  auto arrow = [v](int a) { return v + a; };
  auto dual = [v, m](int a) { return v + m + a; };
  auto w = [v, m](int i) { return v + 2 * m + i; };

  // (x, a, b^v, y)(u, r, s^v, v') = (xu, xr + au, xs^v + b^v u, <a, s^v> + <b^v, r> + xv' + yu)
  std::vector<std::vector<SparseVec>> table(size, std::vector<SparseVec>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const auto& bi = basis[i];
      const auto& bj = basis[j];
      if (bi.target != bj.source) continue;
      if (bi.idempotent) table[i][j] = SparseVec::unit(j, k);
      else if (bj.idempotent) table[i][j] = SparseVec::unit(i, k);
    }
  }
  for (int a = 0; a < m; ++a) {
    const Arrow& ar = q.arrow(a);
    table[arrow(a)][dual(a)] = SparseVec::unit(w(ar.source), k);
    table[dual(a)][arrow(a)] = SparseVec::unit(w(ar.target), k);
  }
  auto t = graded_algebra(k, q.vertices(), std::move(basis), std::move(table));
  t.name = "R_" + std::to_string(n);
  return t;
}

DgPresentation cy_completion(const Quiver& q, int n, const Field& k) {
  auto p = skeleton(q, n, k);
  p.name = "Pi_" + std::to_string(n);
  return p;
}

DgPresentation ginzburg(const Quiver& q, const Superpotential& w) {
  const Field& k = w.field();
  auto p = skeleton(q, 3, k);
  const int m = q.arrow_count();
  // Arrows of q keep their indices in p, so derivatives carry over unchanged.
  for (int a = 0; a < m; ++a) p.set_differential(m + a, cyclic_derivative(q, w, a));
  if (!w.is_zero() && w.min_cycle_length() < 3)
    p.warnings.push_back("superpotential has a cycle of length " +
                         std::to_string(w.min_cycle_length()) + " < 3");
  if (!k.is_rational())
    p.warnings.push_back("characteristic " + std::to_string(k.characteristic()) +
                         ": superpotential results assume characteristic 0");
  p.name = "Gamma";
  return p;
}

QuotientBasis jacobi_basis(const Quiver& q, const Superpotential& w, int length_bound) {
  std::vector<PathAlgebraElement> rels;
  for (int a = 0; a < q.arrow_count(); ++a) {
    auto d = cyclic_derivative(q, w, a);
    if (!d.is_zero()) rels.push_back(std::move(d));
  }
  return reduce_modulo_relations(q, rels, length_bound, w.field());
}

KoszulPairReport verify_koszul_pair(const Quiver& q, int n, int lambda, Window window,
                                    const Field& k) {
  if (window.unbounded || window.empty())
    throw Error(ErrorKind::InvalidInput, "Koszul pair check needs a bounded nonempty window");
  KoszulPairReport r;
  r.window = window;
  r.bound = lambda;
  auto rn = build_rn(q, n, k);
  auto dual = dual_bar(rn, lambda);
  r.rn_dual_dims = window_dims(cohomology(dual, Window::all()).dims(), window);
  auto pi = realize(cy_completion(q, n, k), window, lambda);
  r.pi_dims = window_dims(cohomology(pi, window).dims(), window);
  r.all_match = true;
  for (int i = window.lo; i <= window.hi; ++i) {
    r.matches[i] = r.rn_dual_dims[i] == r.pi_dims[i];
    if (!r.matches[i]) {
      r.all_match = false;
      if (r.detail.empty())
        r.detail = "degree " + std::to_string(i) + ": dual of R_n has " +
                   std::to_string(r.rn_dual_dims[i]) + ", Pi_n has " + std::to_string(r.pi_dims[i]);
    }
  }
  r.certified = r.all_match && n >= 2;
  if (n < 2) r.detail += std::string(r.detail.empty() ? "" : "; ") + "n < 2: no certificate";
  return r;
}

}  // namespace dgkit

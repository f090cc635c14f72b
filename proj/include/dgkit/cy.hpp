#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgkit/dg.hpp"
#include "dgkit/quiver.hpp"

namespace dgkit {

/// Label of the dual arrow a^v used by R_n, Pi_n and Gamma.
std::string dual_label(const std::string& arrow);

/// R_n = kQ_0 + kQ_1[-1] + kQ_1^v[1-n] + kQ_0[-n] with zero differential. Basis order:
/// e_i, arrows, dual arrows, w_i. Weights 0, 1, 1, 2. Throws NonzeroArrowDegree.
TruncatedDgAlgebra build_rn(const Quiver& q, int n, const Field& k);

/// Pi_n(Q): arrows (0), dual arrows (2-n), z_i (1-n) with dz_i = sum_a e_i [a, a^v] e_i.
DgPresentation cy_completion(const Quiver& q, int n, const Field& k);

/// Gamma(Q, W): Pi_3(Q) with d a^v = d_a W. Short cycles and positive characteristic are
/// recorded in `warnings`.
DgPresentation ginzburg(const Quiver& q, const Superpotential& w);

/// kQ / (d_a W : a) on paths of length <= L.
QuotientBasis jacobi_basis(const Quiver& q, const Superpotential& w, int length_bound);

struct KoszulPairReport {
  Window window;
  int bound = 0;
  std::map<int, int> rn_dual_dims;  // H of the dual bar of R_n
  std::map<int, int> pi_dims;       // H of the weight truncation of Pi_n
  std::map<int, bool> matches;
  bool all_match = false;
  /// n >= 2: both sides live in the setting where the pair is asserted.
  bool certified = false;
  std::string detail;
};

/// Compares the Koszul dual of R_n with Pi_n(Q), both cut at weight Lambda, on the window.
KoszulPairReport verify_koszul_pair(const Quiver& q, int n, int lambda, Window window,
                                    const Field& k);

}  // namespace dgkit

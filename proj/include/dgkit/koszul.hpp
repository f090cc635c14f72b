#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/dg.hpp"

namespace dgkit {

/// Word [a_1|...|a_m] in augmentation-ideal letters; length 0 is the vertex idempotent.
struct BarWord {
  int source = 0;
  int target = 0;
  std::vector<int> letters;  // basis indices of the algebra
  int degree = 0;            // sum of (|a_j| - 1)
  int weight = 0;
};

/// Bar complex of an augmented truncation, cut at total letter weight Lambda. Terms of the
/// differential that land above the bound are dropped (a quotient complex).
struct BarComplex {
  Field field;
  std::vector<std::string> vertices;
  std::vector<BarWord> words;
  std::vector<std::string> labels;
  /// D(word) in word coordinates.
  std::vector<SparseVec> differential;
  int bound = 0;

  std::map<int, int> dims() const;
  /// D^2 on every word; empty when the signs are right.
  std::vector<std::string> d_squared_failures() const;
};

/// Requires an unbounded realization with weight bound >= Lambda whose idempotents split off
/// as an augmentation (products and differentials of letters stay in the letter span).
BarComplex bar(const TruncatedDgAlgebra& a, int lambda);

/// Graded dual of the bar complex with the concatenation product: the Koszul dual of A.
TruncatedDgAlgebra dual_bar(const TruncatedDgAlgebra& a, int lambda);

/// Reduced coalgebra on cogenerators over the vertex base.
struct Cogenerator {
  std::string label;
  int source = 0;
  int target = 0;
  int degree = 0;
  int weight = 1;
};

struct CoproductTerm {
  Scalar coeff;
  int left = 0;
  int right = 0;
};

struct CoalgebraPresentation {
  Field field;
  std::vector<std::string> vertices;
  std::vector<Cogenerator> cogenerators;
  /// Reduced comultiplication per cogenerator.
  std::vector<std::vector<CoproductTerm>> coproduct;
  /// Internal differential per cogenerator, in cogenerator coordinates.
  std::vector<SparseVec> differential;

  /// Iterated reduced comultiplication terminates: the left/right factor graph is acyclic.
  bool conilpotent() const;
  /// Coassociativity of the reduced comultiplication; failures name the cogenerator.
  std::vector<std::string> coassociativity_failures() const;
};

/// Linear dual of the augmentation ideal of A (which must be finite: an exact truncation).
CoalgebraPresentation dual_coalgebra(const TruncatedDgAlgebra& a);

/// Free algebra on the cogenerators shifted up by one with the cobar differential.
/// Throws NotConilpotent.
DgPresentation cobar_presentation(const CoalgebraPresentation& c);
TruncatedDgAlgebra cobar(const CoalgebraPresentation& c, int lambda, Window window = Window::all());

enum class CompletenessVerdict { CompleteWithinWindow, MismatchAt, Inconclusive };
const char* to_string(CompletenessVerdict v);

struct CompletenessReport {
  Window window;
  int bound = 0;
  std::map<int, int> dims;          // H(A)
  std::map<int, int> double_dims;   // H(A!!) at Lambda
  std::map<int, int> next_dims;     // H(A!!) at Lambda + 1
  std::map<int, bool> matches;
  CompletenessVerdict verdict = CompletenessVerdict::Inconclusive;
  std::optional<int> mismatch_degree;
  std::string detail;
};

/// Compares H(A) with H of the Koszul double dual on a window, at Lambda and Lambda + 1.
CompletenessReport completeness_report(const TruncatedDgAlgebra& a, int lambda, Window window);

}  // namespace dgkit

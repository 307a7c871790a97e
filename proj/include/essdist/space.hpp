#pragma once

// Finite metric spaces and candidate generalized distances kappa, with
// decidable checkers for the axioms (tau1)-(tau4), (tau4)' and the e- / e0-
// distance classifications.
//
// Everything here works under finite-space semantics: on a finite metric
// space convergence is eventual constancy, which reduces two of the axioms
// to decidable conditions:
//
//   * (tau2) quantifies over convergent sequences {y_n}; an eventually
//     constant sequence makes the condition automatic, so (tau2) is vacuous
//     and the checker reports pass unconditionally (with a note).
//   * (tau3) reduces to a zero-structure condition: it fails exactly when
//     there are points a != b with kappa(a,a) = 0 and kappa(a,b) = 0 (take
//     x_n = a, y_n = b constant; conversely any counterexample pair of
//     sequences eventually revisits such a pair of values). The reduction is
//     not assumed silently: sequence_oracle_tau3 searches eventually-periodic
//     sequence pairs directly and must agree with check_zero_structure.
//
// Numeric contract: distances are IEEE doubles; generated corpora only emit
// integer multiples of 2^-6 bounded well below 2^10, so every sum and
// comparison taken by these checkers is exact. Checkers therefore use exact
// <= / == comparisons with no tolerance anywhere.

#include <optional>
#include <string>
#include <vector>

#include "essdist/report.hpp"

namespace essdist {

// Dense n x n table of nonnegative reals, row major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(int n, double fill);

  // Validates squareness and finiteness; throws std::invalid_argument.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int n() const { return n_; }
  double operator()(int i, int j) const { return v_[static_cast<size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return v_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return v_; }
  std::vector<std::vector<double>> rows() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> v_;
};

struct PointId {
  int index = 0;
  std::string label;
};

// The ambient space (X, d). Constructing one validates structure only
// (unique labels, matching dimensions); the metric axioms themselves are the
// job of validate_metric so that invalid metrics remain representable and
// reportable.
struct FiniteMetricSpace {
  std::vector<std::string> labels;
  SquareMatrix d;

  int size() const { return d.n(); }
  int index_of(const std::string& label) const;  // -1 if unknown
  std::vector<PointId> points() const;
};

FiniteMetricSpace make_space(std::vector<std::string> labels, SquareMatrix d);

// The 3-point fixture used throughout the tests: p0, p1, p2 on a line at
// coordinates 0, 1, 3.
FiniteMetricSpace canonical_line_space();

// A candidate kappa: X x X -> [0, inf) over the same point set. Symmetry is
// never assumed. Entries must be nonnegative and finite.
struct DistanceFunction {
  SquareMatrix kappa;

  int size() const { return kappa.n(); }
  double operator()(int i, int j) const { return kappa(i, j); }
};

DistanceFunction make_distance(SquareMatrix kappa);

// Verdict key "metric": the four metric axioms (zero diagonal, symmetry,
// positivity off the diagonal, triangle inequality). The witness names the
// first violating tuple in lexicographic point order.
AxiomReport validate_metric(const FiniteMetricSpace& space);

// Verdict key "tau1": kappa(x,z) <= kappa(x,y) + kappa(y,z) over every
// ordered triple.
AxiomReport check_tau1(const DistanceFunction& kappa);

// Verdict keys "tau2", "tau3", "tau4", "tau4prime" under finite-space
// semantics (see the header comment for the tau2/tau3 reductions).
AxiomReport check_zero_structure(const DistanceFunction& kappa);

// One pure cycle of point indices; the sequence it denotes repeats it
// forever. Preperiods are irrelevant to the (tau3) conditions (they are all
// limit conditions), and rotating a cycle realizes every possible phase, so
// searching pure cycles covers every eventually-periodic sequence pair.
struct SequenceTemplate {
  std::vector<int> cycle;
};

struct Tau3OracleResult {
  bool pass = true;
  int depth = 0;
  std::optional<SequenceTemplate> x_template;
  std::optional<SequenceTemplate> y_template;
  std::string note;
};

// Independent brute-force search for a (tau3) counterexample over pairs of
// eventually-periodic sequences with period <= depth: the x-tail must have
// all forward kappa values 0, kappa(x_n, y_n) must vanish on the joint
// cycle, and x_n != y_n at some joint position (so d(x_n, y_n) does not
// vanish). Returns the first counterexample in search order, else
// pass-at-depth.
Tau3OracleResult sequence_oracle_tau3(const DistanceFunction& kappa, int depth);

// Full classification: tau1..tau4prime, "zero_diagonal", and the derived
// keys "is_e_distance" (tau1 & tau2 & tau3), "is_e0_distance" (e-distance
// with zero diagonal), "is_tau_function" (e-distance & tau4).
AxiomReport classify(const DistanceFunction& kappa);

// kappa(x, C) = min over C; throws std::invalid_argument on an empty set.
double point_to_set(const DistanceFunction& kappa, int x, const std::vector<int>& set);

}  // namespace essdist

#pragma once

// Multivalued maps T: X -> N(X), the coincidence structure with a self map
// phi, decidable checkers for the hypothesis conditions (S1)-(S6) and the
// (S2) alternatives (H1)-(H5), the greedy Picard-type orbit iterator, the
// Cauchy diagnostic, and theorem-level verification against enumeration
// oracles.
//
// Finite-space reductions used by the (S2) checkers:
//   * (H1)-(H3): the topology is discrete, so every multivalued map is
//     closed and every function is lower semicontinuous. The checkers pass
//     unconditionally but say so in a note instead of silently.
//   * (H4): a convergent orbit x_{n+1} in Tx_n is eventually constant at its
//     limit v, which forces v in Tv; the condition reduces to
//     kappa(v, Tv) = 0 for every fixed point v, vacuous when F(T) is empty.
//   * (H5): the infimum is an exact minimum, evaluated for every z outside
//     F(T); vacuous (with a note) when F(T) = X.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "essdist/gauge.hpp"
#include "essdist/report.hpp"
#include "essdist/space.hpp"

namespace essdist {

struct Instance;  // defined in essdist/instance.hpp

struct MultivaluedMap {
  std::vector<std::vector<int>> image;  // image[x]: sorted, unique, nonempty

  // Validates, sorts and dedups images; throws std::invalid_argument.
  static MultivaluedMap of(std::vector<std::vector<int>> image);

  int size() const { return static_cast<int>(image.size()); }
  bool contains(int x, int y) const;
  bool single_valued() const;
};

struct SelfMap {
  std::vector<int> image;

  static SelfMap identity(int n);
  static SelfMap of(std::vector<int> image);

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int x) const { return image[x]; }
  bool is_identity() const;
};

// F(T) = {x : x in Tx}, by exact enumeration.
std::vector<int> fixed_points(const MultivaluedMap& T);

// COP(phi, T) = {x : phi(x) in Tx}.
std::vector<int> coincidence_points(const SelfMap& phi, const MultivaluedMap& T);

// (S1): for each x and y in Tx with y != x there exists z in Ty with
// kappa(y,z) <= mu(kappa(x,y)) * kappa(x,y).
Verdict check_S1(const DistanceFunction& kappa, const MultivaluedMap& T,
                 const PiecewiseLinearGauge& mu);

// (S3): kappa(y, Ty) <= mu(kappa(x,y)) * kappa(x,y) for all y in Tx,
// including y = x.
Verdict check_S3(const DistanceFunction& kappa, const MultivaluedMap& T,
                 const PiecewiseLinearGauge& mu);

// (S4): phi(Tx) is a subset of Tx for every x.
Verdict check_S4(const SelfMap& phi, const MultivaluedMap& T);

// (S5): kappa(y,Ty) <= mu(kappa(x,y)) kappa(x,y) + L kappa(phi y, Tx) over
// all ordered pairs (x, y).
Verdict check_S5(const DistanceFunction& kappa, const MultivaluedMap& T, const SelfMap& phi,
                 const PiecewiseLinearGauge& mu, double L);

// (S6): same scan with D_kappa(Tx, Ty) on the left.
Verdict check_S6(const DistanceFunction& kappa, const MultivaluedMap& T, const SelfMap& phi,
                 const PiecewiseLinearGauge& mu, double L);

enum class S2Alternative { kH1, kH2, kH3, kH4, kH5 };

Verdict check_S2(const DistanceFunction& kappa, const MultivaluedMap& T, S2Alternative which);

// All five alternatives keyed "H1".."H5" plus the disjunction "S2".
AxiomReport check_S2_all(const DistanceFunction& kappa, const MultivaluedMap& T);

struct OrbitTrace {
  enum class Outcome { kFixedPoint, kIterationCap, kStalled };

  std::vector<int> points;
  std::vector<double> gaps;          // kappa(x_n, x_{n+1})
  std::vector<double> cauchy_bound;  // b_n; see cauchy_diagnostic
  Outcome outcome = Outcome::kIterationCap;
  std::optional<int> fixed_point;

  nlohmann::json to_json() const;
  nlohmann::json to_json(const std::vector<std::string>& labels) const;
};

std::string to_string(OrbitTrace::Outcome o);

// Greedy Picard-type orbit: from x, stop if x in Tx, otherwise step to the
// point of Tx minimizing kappa(x, .) with smallest-index tie breaking. Stops
// with kIterationCap after max_iter steps. (Outcome kStalled is reserved in
// the trace schema for zero-progress policies; the greedy rule never
// produces it.)
OrbitTrace iterate(const DistanceFunction& kappa, const MultivaluedMap& T, int x0,
                   int max_iter);

struct CauchyDiagnostic {
  std::vector<double> bounds;
  bool eventually_zero = false;
};

// b_n = max_{m > n} kappa(x_n, x_m) over the recorded trace. For traces that
// end in a fixed point v the orbit continues constantly at v, so the bounds
// gain a final entry kappa(v, v) accounting for that tail. Requires trace
// length >= 2.
CauchyDiagnostic cauchy_diagnostic(const OrbitTrace& trace, const DistanceFunction& kappa);

enum class TheoremId {
  kT21,
  kT22,
  kT23,
  kT24,
  kT11BerindeBerinde,
  kMizoguchiTakahashi,
  kNadler,
  kBanach,
};

TheoremId theorem_from_string(const std::string& s);
std::string to_string(TheoremId id);

struct TheoremReport {
  TheoremId theorem = TheoremId::kT21;
  std::map<std::string, Verdict> hypotheses;
  bool hypotheses_pass = false;
  // Engaged only when the hypotheses pass; the conclusion of a theorem with
  // failed hypotheses is not asserted.
  std::optional<bool> conclusion_pass;
  std::string conclusion_statement;
  std::vector<int> fixed_point_set;
  std::vector<int> coincidence_set;
  std::optional<OrbitTrace> orbit;

  // 0: hypotheses and conclusion pass. 1: some hypothesis fails. 3:
  // hypotheses pass but the conclusion fails, which would falsify the
  // theorem; reserved so soundness sweeps are scriptable.
  int exit_code() const;
  nlohmann::json to_json(const std::vector<std::string>& labels) const;
};

// Runs the hypothesis checkers for the chosen theorem and, when they all
// pass, asserts the conclusion against the enumeration oracles.
// Specializations: T1.1 takes kappa = d and phi = identity; Mizoguchi-
// Takahashi additionally forces L = 0; Nadler requires a constant gauge;
// Banach requires a single-valued map. Missing components throw
// ConfigurationError.
TheoremReport verify_theorem(const Instance& instance, TheoremId which);

struct ConfigurationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace essdist

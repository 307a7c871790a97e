#pragma once

// Point-to-set and set-to-set distances: the one-sided excess xi_kappa, the
// e0-metric D_kappa, the classical Hausdorff metric, and the property suite
// for the hyperspace axioms.
//
// On a finite space every nonempty subset is closed and bounded, so N(X),
// C(X) and CB(X) all collapse to "nonempty point set"; FiniteSubset
// represents all three.
//
// xi and dkappa are total formulas and evaluate for any kappa; only
// check_theorem13 enforces the e0-distance hypothesis (negative tests need
// to evaluate the formulas on bad kappa).

#include <cstddef>
#include <map>
#include <vector>

#include "essdist/report.hpp"
#include "essdist/space.hpp"

namespace essdist {

struct FiniteSubset {
  std::vector<int> members;  // sorted, unique, nonempty

  // Validates, sorts and dedups; throws std::invalid_argument when empty or
  // out of range for n.
  static FiniteSubset of(std::vector<int> members, int n);

  bool contains(int x) const;
  bool subset_of(const FiniteSubset& other) const;
};

// xi_kappa(A, B) = max_{x in A} min_{y in B} kappa(x, y).
double xi(const DistanceFunction& kappa, const FiniteSubset& A, const FiniteSubset& B);

// D_kappa(A, B) = max{xi(A,B), xi(B,A)}.
double dkappa(const DistanceFunction& kappa, const FiniteSubset& A, const FiniteSubset& B);

// H(A, B) = max{ sup_{x in B} d(x, A), sup_{x in A} d(x, B) }, assembled
// independently of dkappa so the specialization H = D_d is a real check.
double hausdorff(const FiniteMetricSpace& space, const FiniteSubset& A, const FiniteSubset& B);

// Spaces up to this size get exhaustive verification over all nonempty
// subsets (4095 sets at 12 points); larger spaces use the supplied sample.
inline constexpr int kExhaustiveSubsetLimit = 12;

struct HyperspaceReport {
  // Keys: subset_iff_zero (i), xi_triangle (ii), and the four metric axioms
  // of D_kappa (iii): dkappa_identity, dkappa_positivity, dkappa_symmetry,
  // dkappa_triangle.
  std::map<std::string, Verdict> verdicts;
  bool exhaustive = false;
  std::size_t sets_checked = 0;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Verifies (i) over all ordered set pairs, (ii) over all ordered triples and
// (iii) over the same range. Requires kappa to classify as an e0-distance;
// throws std::invalid_argument naming the failed axiom otherwise. `sets` is
// only consulted above kExhaustiveSubsetLimit points and must then be
// nonempty.
HyperspaceReport check_theorem13(const DistanceFunction& kappa,
                                 const std::vector<FiniteSubset>& sets = {});

// All-pairs tables over every nonempty subset of an n-point space with
// n <= kExhaustiveSubsetLimit, indexed by bitmask: entry [A * (2^n) + B].
// Row/column 0 is unused padding. dkappa_table is assembled from xi;
// hausdorff_table from the sup-over-the-other-set form; the two must agree
// bit for bit when kappa = d.
std::vector<double> xi_table_all_subsets(const DistanceFunction& kappa);
std::vector<double> dkappa_table_all_subsets(const DistanceFunction& kappa);
std::vector<double> hausdorff_table_all_subsets(const FiniteMetricSpace& space);

}  // namespace essdist

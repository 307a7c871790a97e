#pragma once

// Seeded, reproducible generation of spaces, e0-distances, gauges, maps and
// full instances: positive (hypothesis-satisfying), negative (mutated) and
// adversarial. Identical profiles produce bit-identical instances.
//
// Spaces come from shortest-path closures of random positive dyadic weights
// (Euclidean layouts would introduce irrational distances and break the
// exact-comparison contract). All emitted values are integer multiples of
// 2^-6 and stay far below 2^10, so checker arithmetic is exact.

#include <cstdint>
#include <optional>
#include <string>

#include "essdist/instance.hpp"

namespace essdist {

enum class SpaceKind { kClosure, kLine };
enum class KappaKind { kMetric, kScaledMetric, kAsymmetricClosure };
enum class MapKind { kConstantTarget, kFunnel, kRandomRejection, kCycle };
enum class TheoremTarget { kNone, kS1, kS3, kT23, kT24, kNadler, kBanach };
enum class MutationKind { kDropZ, kRaiseGap, kBreakInvariance, kZeroOffdiagonal };

std::string to_string(SpaceKind k);
std::string to_string(KappaKind k);
std::string to_string(MapKind k);
std::string to_string(TheoremTarget t);
std::string to_string(MutationKind m);

struct GenProfile {
  std::uint64_t seed = 0;
  int n_points = 4;
  SpaceKind space_kind = SpaceKind::kClosure;
  KappaKind kappa_kind = KappaKind::kMetric;
  MapKind map_kind = MapKind::kFunnel;
  TheoremTarget theorem_target = TheoremTarget::kNone;
  std::optional<MutationKind> mutation;

  // Canonical "k=v,..." form, stable under parse/print round trips.
  std::string to_string() const;
  // Accepts the keys seed, n, space, kappa, map, target, mutation; missing
  // keys keep their defaults. Throws on unknown keys or values.
  static GenProfile parse(const std::string& text);
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Always passes validate_metric; n_points >= 2 required (domain error below).
FiniteMetricSpace gen_space(const GenProfile& profile);

// Always classifies as an e0-distance, except under the zero-offdiagonal
// mutation which plants a single kappa(a,b) = 0 with a != b.
DistanceFunction gen_kappa(const GenProfile& profile, const FiniteMetricSpace& space);

// lambda must be a power of two so that scaling and interior evaluation stay
// exact; want_mt = false plants at least one right intercept equal to lambda
// (which needs at least two breakpoints).
PiecewiseLinearGauge gen_gauge(std::uint64_t seed, bool want_mt, double lambda = 1.0);

struct GeneratedMap {
  MultivaluedMap T;
  std::optional<SelfMap> phi;
  std::optional<double> L;
};

// Builds T (and phi, L when the target needs them) so that the targeted
// hypothesis checkers pass; repairs are monotone (images only grow), so
// generation cannot fail for the supported targets. MapKind::kCycle rejects
// targets: cycles are the fixed-point-free negative fixture.
GeneratedMap gen_map(const GenProfile& profile, const FiniteMetricSpace& space,
                     const DistanceFunction& kappa, const PiecewiseLinearGauge& mu);

// The full pipeline: space, kappa, mu, map, then the optional mutation.
// Re-checks every targeted hypothesis before returning.
Instance gen_instance(const GenProfile& profile);

struct MutationDelta {
  MutationKind kind = MutationKind::kZeroOffdiagonal;
  std::string description;
};

struct MutationResult {
  // applied = false is the explicit skip signal: the mutation has no
  // admissible edit on this instance. `instance` is then the input unchanged.
  bool applied = false;
  Instance instance;
  std::optional<MutationDelta> delta;
};

// Applies exactly one structural edit and confirms that the targeted checker
// now fails; otherwise signals skip.
MutationResult mutate(const Instance& instance, MutationKind kind, std::uint64_t seed);

// The checker a mutation is aimed at, used by negative-effectiveness sweeps.
// kDropZ -> S1, kRaiseGap -> S3, kBreakInvariance -> S4,
// kZeroOffdiagonal -> the e0 classification.
bool targeted_checker_fails(const Instance& instance, MutationKind kind);

}  // namespace essdist

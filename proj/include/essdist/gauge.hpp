#pragma once

// Exact piecewise-linear candidates mu: [0, inf) -> [0, lambda) and deciders
// for the ten equivalent characterizations of MT(lambda)-functions.
//
// A gauge has breakpoints 0 = t_0 < t_1 < ... < t_k and k+1 pieces:
//
//   mu(t_i) = point_values[i]
//   mu(s)   = right_intercepts[i] + slopes[i] * (s - t_i)  on (t_i, t_{i+1})
//
// with the last entry describing the unbounded tail (t_k, inf). The tail
// slope must be 0: any positive slope leaves [0, lambda) at a finite s and a
// negative one eventually goes below 0, so generators insert an explicit
// breakpoint where a descending segment reaches 0 instead of clamping.
//
// right_intercepts[i] is the right-limit of mu at t_i and may differ from
// point_values[i]; it may even equal lambda (with a falling slope), which is
// exactly how non-MT(lambda) examples with an unattained right-limit of
// lambda are represented. Attaining lambda at an actual point is rejected by
// validation.
//
// On this class every statement of the ten-way characterization is decided
// exactly by breakpoint analysis; the sequence sampler is a stress test for
// statements (7)-(10) and never the verdict of record.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "essdist/report.hpp"

namespace essdist {

struct PiecewiseLinearGauge {
  double lambda = 1.0;
  std::vector<double> breakpoints;
  std::vector<double> point_values;
  std::vector<double> right_intercepts;
  std::vector<double> slopes;

  static PiecewiseLinearGauge constant(double value, double lambda = 1.0);

  int pieces() const { return static_cast<int>(breakpoints.size()); }
  bool is_constant() const;

  // Empty result = valid.
  std::vector<std::string> validation_errors() const;
  void require_valid() const;  // throws std::invalid_argument

  // mu(t); t must be finite and >= 0.
  double value_at(double t) const;

  nlohmann::json to_json() const;
  static PiecewiseLinearGauge from_json(const nlohmann::json& j);
};

// Exact right-limit of mu at t (piecewise linear, so right-limits exist and
// equal the right-limsup).
double right_limsup(const PiecewiseLinearGauge& mu, double t);

// Statements 1..10 of the MT(lambda) characterization. k out of range throws
// std::domain_error.
Verdict check_statement(const PiecewiseLinearGauge& mu, int k);

bool is_mt(const PiecewiseLinearGauge& mu);

// Divides all values by lambda and sets lambda to 1. Exact when lambda is a
// power of two (the generators only emit those); idempotent at lambda = 1.
PiecewiseLinearGauge scale_to_unit(const PiecewiseLinearGauge& mu);

struct MTReport {
  std::array<Verdict, 10> statements;

  bool all_pass() const;
  // Theorem-level invariant: the ten verdicts must be identical.
  bool agree() const;
  nlohmann::json to_json() const;
};

MTReport check_all_statements(const PiecewiseLinearGauge& mu);

enum class SequenceKind {
  kNonincreasing,
  kStrictlyDecreasing,
  kEventuallyNonincreasing,
  kEventuallyStrictlyDecreasing,
};

SequenceKind sequence_kind_from_string(const std::string& s);
std::string to_string(SequenceKind kind);

struct SamplerResult {
  double sup = 0.0;
  std::vector<double> sequence;  // the extremal sequence observed
};

// Deterministically samples n_sequences of the requested kind, biased to
// approach each breakpoint from the right geometrically, and reports the
// largest observed sup of mu over a sequence.
SamplerResult sequence_sampler(const PiecewiseLinearGauge& mu, SequenceKind kind,
                               std::uint64_t seed, int n_sequences);

}  // namespace essdist

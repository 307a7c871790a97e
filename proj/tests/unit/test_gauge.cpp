#include <doctest.h>

#include <cmath>

#include "essdist/gauge.hpp"
#include "essdist/generator.hpp"
#include "oracles.hpp"

using namespace essdist;

namespace {

// mu(s) = lambda - s/16 on (0, 16), 0 beyond; the right-limit at 0 equals
// lambda without being attained. The canonical non-MT fixture.
PiecewiseLinearGauge descending_to_lambda(double lambda = 1.0) {
  PiecewiseLinearGauge g;
  g.lambda = lambda;
  g.breakpoints = {0.0, 16.0};
  g.point_values = {lambda / 2.0, 0.0};
  g.right_intercepts = {lambda, 0.0};
  g.slopes = {-lambda / 16.0, 0.0};
  g.require_valid();
  return g;
}

// Chordal interpolation of s/(s+1) on integer breakpoints 0..top, constant
// beyond. Chords of a concave function only lower values, so the gauge stays
// an MT-function like the original.
PiecewiseLinearGauge chordal_s_over_s_plus_1(int top) {
  PiecewiseLinearGauge g;
  g.lambda = 1.0;
  for (int i = 0; i <= top; ++i) {
    const double t = static_cast<double>(i);
    const double v = t / (t + 1.0);
    g.breakpoints.push_back(t);
    g.point_values.push_back(v);
    g.right_intercepts.push_back(v);
    g.slopes.push_back(0.0);
  }
  for (int i = 0; i < top; ++i) {
    g.slopes[i] = g.point_values[i + 1] - g.point_values[i];  // width 1 chords
  }
  g.require_valid();
  return g;
}

}  // namespace

TEST_SUITE("gauge") {

TEST_CASE("constant gauge: right limits, statements and sampler") {
  const PiecewiseLinearGauge g = PiecewiseLinearGauge::constant(0.5);
  CHECK(right_limsup(g, 0.0) == 0.5);
  CHECK(right_limsup(g, 3.25) == 0.5);
  CHECK(g.value_at(100.0) == 0.5);
  for (int k = 1; k <= 10; ++k) CHECK(check_statement(g, k).pass);
  CHECK(is_mt(g));
  for (SequenceKind kind :
       {SequenceKind::kNonincreasing, SequenceKind::kStrictlyDecreasing,
        SequenceKind::kEventuallyNonincreasing, SequenceKind::kEventuallyStrictlyDecreasing}) {
    CHECK(sequence_sampler(g, kind, 7, 8).sup == 0.5);
  }
}

TEST_CASE("descending gauge: right limit at 0 is the intercept") {
  const PiecewiseLinearGauge g = descending_to_lambda();
  CHECK(right_limsup(g, 0.0) == 1.0);   // the intercept, not mu(0) = 0.5
  CHECK(g.value_at(0.0) == 0.5);
  CHECK(right_limsup(g, 8.0) == 0.5);   // 1 - 8/16
  CHECK(g.value_at(8.0) == 0.5);
  // Dense numeric sampling right of t approximates the same limit.
  CHECK(std::abs(oracle::right_limit_by_sampling(g, 8.0) - 0.5) < 1e-6);
  CHECK(std::abs(oracle::right_limit_by_sampling(g, 0.0) - 1.0) < 1e-5);
}

TEST_CASE("descending gauge fails all ten statements with witness t = 0") {
  const PiecewiseLinearGauge g = descending_to_lambda();
  const MTReport r = check_all_statements(g);
  CHECK(r.agree());
  CHECK_FALSE(r.all_pass());
  for (const Verdict& v : r.statements) {
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->values[0] == 0.0);  // the witness t
    // Witness reproducibility: the right-limsup at the witness t reaches
    // lambda exactly.
    CHECK(right_limsup(g, v.witness->values[0]) == g.lambda);
  }
  CHECK_FALSE(is_mt(g));
}

TEST_CASE("chordal s/(s+1) gauge passes every statement") {
  const PiecewiseLinearGauge g = chordal_s_over_s_plus_1(8);
  // Oracle: scan the right limits over all breakpoints; chords only lower
  // the values in between.
  double worst = 0.0;
  for (double t : g.breakpoints) worst = std::max(worst, right_limsup(g, t));
  CHECK(worst == doctest::Approx(8.0 / 9.0));
  CHECK(worst < 1.0);
  const MTReport r = check_all_statements(g);
  CHECK(r.all_pass());
}

TEST_CASE("scale_to_unit scales values and is idempotent at lambda 1") {
  const PiecewiseLinearGauge two = PiecewiseLinearGauge::constant(1.0, 2.0);
  const PiecewiseLinearGauge unit = scale_to_unit(two);
  CHECK(unit.lambda == 1.0);
  CHECK(unit.value_at(5.0) == 0.5);
  const PiecewiseLinearGauge again = scale_to_unit(unit);
  CHECK(again.value_at(5.0) == 0.5);
  CHECK(again.lambda == 1.0);
}

TEST_CASE("statement (2) equals statement (1) after scaling, over a corpus") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const double lambda = static_cast<double>(1ull << (seed % 3));  // 1, 2, 4
    const PiecewiseLinearGauge g = gen_gauge(seed, seed % 3 != 0, lambda);
    CHECK(check_statement(g, 1).pass == check_statement(g, 2).pass);
    CHECK(is_mt(g) == is_mt(scale_to_unit(g)));
    CHECK(check_statement(scale_to_unit(g), 1).pass == check_statement(g, 1).pass);
  }
}

TEST_CASE("ten-way agreement over generated gauges") {
  int non_mt = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const bool want_mt = seed % 2 == 0;
    const PiecewiseLinearGauge g = gen_gauge(seed, want_mt, 1.0);
    const MTReport r = check_all_statements(g);
    CHECK(r.agree());
    CHECK(r.all_pass() == want_mt);
    if (!r.all_pass()) ++non_mt;
  }
  CHECK(non_mt == 40);
}

TEST_CASE("the open and closed interval variants (3)-(6) coincide") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PiecewiseLinearGauge g = gen_gauge(seed, seed % 2 == 0, 1.0);
    const bool s3 = check_statement(g, 3).pass;
    for (int k : {4, 5, 6}) CHECK(check_statement(g, k).pass == s3);
  }
}

TEST_CASE("sampler soundness: a failing statement (7) is demonstrated within 64 sequences") {
  const PiecewiseLinearGauge g = descending_to_lambda();
  REQUIRE_FALSE(check_statement(g, 7).pass);
  const SamplerResult r =
      sequence_sampler(g, SequenceKind::kStrictlyDecreasing, 3, 64);
  CHECK(r.sup > g.lambda - std::ldexp(1.0, -20));
  CHECK(r.sup < g.lambda);  // lambda itself is never attained
}

TEST_CASE("sampled sequences have the requested shape") {
  const PiecewiseLinearGauge g = gen_gauge(5, true, 1.0);
  {
    const SamplerResult r = sequence_sampler(g, SequenceKind::kNonincreasing, 11, 6);
    for (size_t i = 1; i < r.sequence.size(); ++i) {
      CHECK(r.sequence[i] <= r.sequence[i - 1]);
    }
  }
  {
    const SamplerResult r = sequence_sampler(g, SequenceKind::kStrictlyDecreasing, 11, 6);
    for (size_t i = 1; i < r.sequence.size(); ++i) {
      CHECK(r.sequence[i] < r.sequence[i - 1]);
    }
  }
  {
    // Eventually nonincreasing: an arbitrary head, then a monotone tail.
    const SamplerResult r =
        sequence_sampler(g, SequenceKind::kEventuallyNonincreasing, 11, 6);
    for (size_t i = 4; i < r.sequence.size(); ++i) {
      CHECK(r.sequence[i] <= r.sequence[i - 1]);
    }
  }
  CHECK_THROWS_AS(sequence_sampler(g, SequenceKind::kNonincreasing, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("range validation rejects gauges attaining lambda") {
  PiecewiseLinearGauge g = PiecewiseLinearGauge::constant(1.0, 1.0);  // mu(0) = lambda
  CHECK_FALSE(g.validation_errors().empty());
  CHECK_THROWS_AS(g.require_valid(), std::invalid_argument);
  CHECK_THROWS_AS(check_statement(g, 1), std::invalid_argument);
  CHECK_THROWS_AS(right_limsup(g, 0.0), std::invalid_argument);
}

TEST_CASE("structural validation catches the documented shapes") {
  PiecewiseLinearGauge g = descending_to_lambda();
  SUBCASE("tail slope must be zero") {
    g.slopes.back() = -0.5;
    CHECK_FALSE(g.validation_errors().empty());
  }
  SUBCASE("breakpoints must increase") {
    g.breakpoints = {0.0, 0.0};
    CHECK_FALSE(g.validation_errors().empty());
  }
  SUBCASE("first breakpoint must be zero") {
    g.breakpoints = {1.0, 16.0};
    CHECK_FALSE(g.validation_errors().empty());
  }
  SUBCASE("segment may not exit [0, lambda]") {
    g.slopes[0] = 1.0;  // climbs to 17 by the next breakpoint
    CHECK_FALSE(g.validation_errors().empty());
  }
  SUBCASE("negative values are rejected") {
    g.point_values[0] = -0.25;
    CHECK_FALSE(g.validation_errors().empty());
  }
  SUBCASE("array lengths must match") {
    g.slopes.pop_back();
    CHECK_FALSE(g.validation_errors().empty());
  }
}

TEST_CASE("statement index is range-checked") {
  const PiecewiseLinearGauge g = PiecewiseLinearGauge::constant(0.5);
  CHECK_THROWS_AS(check_statement(g, 0), std::domain_error);
  CHECK_THROWS_AS(check_statement(g, 11), std::domain_error);
}

TEST_CASE("gauge arguments must be finite and nonnegative") {
  const PiecewiseLinearGauge g = PiecewiseLinearGauge::constant(0.5);
  CHECK_THROWS_AS(g.value_at(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(right_limsup(g, std::nan("")), std::invalid_argument);
}

}  // TEST_SUITE

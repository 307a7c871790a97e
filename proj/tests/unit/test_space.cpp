#include <doctest.h>

#include "essdist/generator.hpp"
#include "essdist/space.hpp"
#include "oracles.hpp"

using namespace essdist;

namespace {

DistanceFunction dist_from(std::vector<std::vector<double>> rows) {
  return make_distance(SquareMatrix::from_rows(rows));
}

GenProfile kappa_profile(std::uint64_t seed, int n, KappaKind kind, bool mutated = false) {
  GenProfile p;
  p.seed = seed;
  p.n_points = n;
  p.kappa_kind = kind;
  if (mutated) p.mutation = MutationKind::kZeroOffdiagonal;
  return p;
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("canonical line space is a metric space") {
  const FiniteMetricSpace space = canonical_line_space();
  CHECK(space.size() == 3);
  CHECK(space.d(0, 2) == 3.0);
  const AxiomReport r = validate_metric(space);
  CHECK(r.passed("metric"));
}

TEST_CASE("triangle violation is caught with the first lexicographic witness") {
  const FiniteMetricSpace space =
      make_space({"p0", "p1", "p2"},
                 SquareMatrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
  const AxiomReport r = validate_metric(space);
  CHECK_FALSE(r.passed("metric"));
  const Witness& w = *r.verdicts.at("metric").witness;
  CHECK(w.points == std::vector<int>{0, 1, 2});
  // Witness reproducibility: the named triple reproduces the violation.
  CHECK(space.d(0, 2) == w.values[0]);
  CHECK(space.d(0, 2) > space.d(0, 1) + space.d(1, 2));
}

TEST_CASE("one-point space is a metric space") {
  const FiniteMetricSpace space = make_space({"p0"}, SquareMatrix::from_rows({{0}}));
  CHECK(validate_metric(space).passed("metric"));
}

TEST_CASE("asymmetry and zero diagonal failures are reported") {
  const FiniteMetricSpace asym =
      make_space({"a", "b"}, SquareMatrix::from_rows({{0, 1}, {2, 0}}));
  CHECK_FALSE(validate_metric(asym).passed("metric"));
  const FiniteMetricSpace diag =
      make_space({"a", "b"}, SquareMatrix::from_rows({{1, 1}, {1, 0}}));
  CHECK_FALSE(validate_metric(diag).passed("metric"));
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(SquareMatrix::from_rows({{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(SquareMatrix::from_rows({{0, std::nan("")}, {1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_distance(SquareMatrix::from_rows({{0, -1}, {1, 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_space({"a", "a"}, SquareMatrix::from_rows({{0, 1}, {1, 0}})),
                  std::invalid_argument);
}

TEST_CASE("tau1 holds for the metric itself") {
  const FiniteMetricSpace space = canonical_line_space();
  CHECK(check_tau1(DistanceFunction{space.d}).passed("tau1"));
}

TEST_CASE("tau1 holds for shortest-path closures, cross-checked by triple scan") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    GenProfile p = kappa_profile(seed, 6, KappaKind::kAsymmetricClosure);
    const FiniteMetricSpace space = gen_space(p);
    const DistanceFunction k = gen_kappa(p, space);
    CHECK(check_tau1(k).passed("tau1"));
    CHECK_FALSE(oracle::tau1_violation(k.kappa).has_value());
  }
}

TEST_CASE("tau1 violation witness is reproducible") {
  const DistanceFunction k = dist_from({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}});
  const AxiomReport r = check_tau1(k);
  CHECK_FALSE(r.passed("tau1"));
  const Witness& w = *r.verdicts.at("tau1").witness;
  CHECK(w.points == std::vector<int>{0, 1, 2});
  CHECK(w.values == std::vector<double>{10.0, 1.0, 1.0});
  CHECK(oracle::tau1_violation(k.kappa).value() == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("zero structure of a genuine metric") {
  const DistanceFunction k{canonical_line_space().d};
  const AxiomReport r = check_zero_structure(k);
  CHECK(r.passed("tau2"));
  CHECK(r.passed("tau3"));
  CHECK(r.passed("tau4"));
  CHECK(r.passed("tau4prime"));
  CHECK_FALSE(r.verdicts.at("tau2").note.empty());  // the vacuity is explained
}

TEST_CASE("an off-diagonal zero with zero-diagonal source breaks tau3") {
  const DistanceFunction k = dist_from({{0, 0, 2}, {1, 0, 1}, {2, 1, 0}});
  const AxiomReport r = check_zero_structure(k);
  CHECK_FALSE(r.passed("tau3"));
  const Witness& w = *r.verdicts.at("tau3").witness;
  CHECK(w.points == std::vector<int>{0, 1});
  // The independent sequence search finds the same counterexample at depth 1.
  const Tau3OracleResult o = sequence_oracle_tau3(k, 1);
  CHECK_FALSE(o.pass);
  CHECK(o.x_template->cycle == std::vector<int>{0});
  CHECK(o.y_template->cycle == std::vector<int>{1});
}

TEST_CASE("strictly positive off-diagonal entries pass the whole zero structure") {
  const DistanceFunction k = dist_from({{0, 5, 2}, {1, 0, 1}, {2, 7, 0}});
  const AxiomReport r = check_zero_structure(k);
  for (const char* key : {"tau2", "tau3", "tau4", "tau4prime"}) CHECK(r.passed(key));
}

TEST_CASE("sequence oracle passes on the metric at depth 3") {
  CHECK(sequence_oracle_tau3(DistanceFunction{canonical_line_space().d}, 3).pass);
}

TEST_CASE("sequence oracle rejects depth 0") {
  CHECK_THROWS_AS(sequence_oracle_tau3(DistanceFunction{canonical_line_space().d}, 0),
                  std::invalid_argument);
}

TEST_CASE("sequence oracle agrees with the zero-structure characterization") {
  // The finite-space reduction of (tau3) is validated, not assumed.
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const KappaKind kind = seed % 3 == 0   ? KappaKind::kMetric
                           : seed % 3 == 1 ? KappaKind::kScaledMetric
                                           : KappaKind::kAsymmetricClosure;
    GenProfile p = kappa_profile(seed, 2 + static_cast<int>(seed % 5), kind,
                                 /*mutated=*/seed % 4 == 0);
    const FiniteMetricSpace space = gen_space(p);
    const DistanceFunction k = gen_kappa(p, space);
    const bool characterization = check_zero_structure(k).passed("tau3");
    CHECK(sequence_oracle_tau3(k, 4).pass == characterization);
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("classify the metric: e-distance, e0-distance and tau-function") {
  const AxiomReport r = classify(DistanceFunction{canonical_line_space().d});
  CHECK(r.passed("is_e_distance"));
  CHECK(r.passed("is_e0_distance"));
  CHECK(r.passed("is_tau_function"));
}

TEST_CASE("classify agrees with its component checkers on generated kappa") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    GenProfile p = kappa_profile(seed, 5, KappaKind::kAsymmetricClosure);
    const FiniteMetricSpace space = gen_space(p);
    const DistanceFunction k = gen_kappa(p, space);
    const AxiomReport r = classify(k);
    CHECK(r.passed("is_e0_distance"));
    CHECK(r.passed("tau1") == check_tau1(k).passed("tau1"));
    CHECK(r.passed("tau3") == check_zero_structure(k).passed("tau3"));
  }
}

TEST_CASE("the zero function on two points is not an e-distance") {
  const AxiomReport r = classify(dist_from({{0, 0}, {0, 0}}));
  CHECK_FALSE(r.passed("tau3"));
  CHECK_FALSE(r.passed("is_e_distance"));
  CHECK_FALSE(r.passed("is_e0_distance"));
}

TEST_CASE("Lemma 1.1: tau3 implies tau4prime over a generated corpus") {
  int tau3_passes = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenProfile p = kappa_profile(seed, 2 + static_cast<int>(seed % 7),
                                 static_cast<KappaKind>(seed % 3), seed % 3 == 0);
    const FiniteMetricSpace space = gen_space(p);
    const DistanceFunction k = gen_kappa(p, space);
    const AxiomReport r = check_zero_structure(k);
    if (r.passed("tau3")) {
      ++tau3_passes;
      CHECK(r.passed("tau4prime"));
    }
  }
  CHECK(tau3_passes > 0);
}

TEST_CASE("Remark 1.1: every tau-function is an e-distance") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenProfile p = kappa_profile(seed, 3 + static_cast<int>(seed % 5),
                                 static_cast<KappaKind>(seed % 3), seed % 2 == 0);
    const DistanceFunction k = gen_kappa(p, gen_space(p));
    const AxiomReport r = classify(k);
    if (r.passed("is_tau_function")) CHECK(r.passed("is_e_distance"));
  }
}

TEST_CASE("point_to_set basics") {
  const FiniteMetricSpace space = canonical_line_space();
  const DistanceFunction k{space.d};
  CHECK(point_to_set(k, 0, {0, 1}) == 0.0);   // x in C with zero diagonal
  CHECK(point_to_set(k, 0, {1, 2}) == 1.0);   // min(1, 3)
  CHECK(point_to_set(k, 0, {2}) == k(0, 2));  // singleton
  CHECK(point_to_set(k, 0, {1, 2}) == oracle::point_to_set(k.kappa, 0, {1, 2}));
  CHECK_THROWS_AS(point_to_set(k, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(point_to_set(k, 5, {0}), std::invalid_argument);
}

TEST_CASE("Lemma 1.3: kappa(z,C) = 0 iff z in C, for e0-distances") {
  for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
    GenProfile p = kappa_profile(seed, 6, KappaKind::kAsymmetricClosure);
    const DistanceFunction k = gen_kappa(p, gen_space(p));
    REQUIRE(classify(k).passed("is_e0_distance"));
    for (const auto& c : oracle::all_subsets(4)) {  // subsets of the first 4 points
      for (int z = 0; z < 6; ++z) {
        const bool zero = point_to_set(k, z, c) == 0.0;
        const bool member = std::find(c.begin(), c.end(), z) != c.end();
        CHECK(zero == member);
      }
    }
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include "essdist/generator.hpp"
#include "essdist/hyperspace.hpp"
#include "oracles.hpp"

using namespace essdist;

namespace {

FiniteSubset sub(std::vector<int> members, int n = 3) {
  return FiniteSubset::of(std::move(members), n);
}

DistanceFunction gen_e0(std::uint64_t seed, int n) {
  GenProfile p;
  p.seed = seed;
  p.n_points = n;
  p.kappa_kind = KappaKind::kAsymmetricClosure;
  return gen_kappa(p, gen_space(p));
}

}  // namespace

TEST_SUITE("hyperspace") {

TEST_CASE("xi on the line space") {
  const DistanceFunction k{canonical_line_space().d};
  CHECK(xi(k, sub({0, 1}), sub({0, 1})) == 0.0);  // xi(A,A) with zero diagonal
  CHECK(xi(k, sub({0, 1}), sub({2})) == 3.0);     // max(min(3), min(2))
  CHECK(xi(k, sub({2}), sub({0, 1})) == 2.0);     // min(3, 2)
  CHECK(xi(k, sub({0, 1}), sub({2})) == oracle::xi(k.kappa, {0, 1}, {2}));
  CHECK_THROWS_AS(FiniteSubset::of({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSubset::of({4}, 3), std::invalid_argument);
}

TEST_CASE("dkappa on the line space") {
  const DistanceFunction k{canonical_line_space().d};
  CHECK(dkappa(k, sub({0, 1}), sub({0, 1})) == 0.0);
  CHECK(dkappa(k, sub({0, 1}), sub({2})) == 3.0);  // max(3, 2)
  CHECK(dkappa(k, sub({0, 1}), sub({2})) == oracle::dkappa(k.kappa, {0, 1}, {2}));
}

TEST_CASE("hausdorff basics") {
  const FiniteMetricSpace two =
      make_space({"a", "b"}, SquareMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(hausdorff(two, FiniteSubset::of({0}, 2), FiniteSubset::of({1}, 2)) == 1.0);

  const FiniteMetricSpace line = canonical_line_space();
  CHECK(hausdorff(line, sub({0, 2}), sub({1})) == 2.0);  // max over both sides
  // A inside B = X: the metric collapses to the one-sided excess from B.
  const FiniteSubset a = sub({1});
  const FiniteSubset all = sub({0, 1, 2});
  double one_sided = 0.0;
  for (int x : all.members) {
    one_sided = std::max(one_sided, oracle::point_to_set(line.d, x, a.members));
  }
  CHECK(hausdorff(line, a, all) == one_sided);
}

TEST_CASE("dkappa equals hausdorff bit for bit when kappa is the metric") {
  const FiniteMetricSpace line = canonical_line_space();
  const DistanceFunction k{line.d};
  for (const auto& a : oracle::all_subsets(3)) {
    for (const auto& b : oracle::all_subsets(3)) {
      CHECK(dkappa(k, sub(a), sub(b)) == hausdorff(line, sub(a), sub(b)));
    }
  }
}

TEST_CASE("check_theorem13 passes exhaustively on the line metric") {
  const HyperspaceReport r = check_theorem13(DistanceFunction{canonical_line_space().d});
  CHECK(r.exhaustive);
  CHECK(r.sets_checked == 7);
  CHECK(r.all_pass());

  // Independent verification of (i) and (ii) by definition-level loops.
  const SquareMatrix& k = canonical_line_space().d;
  const auto sets = oracle::all_subsets(3);
  for (const auto& a : sets) {
    for (const auto& b : sets) {
      CHECK((oracle::xi(k, a, b) == 0.0) == oracle::subset_of(a, b));
      for (const auto& c : sets) {
        CHECK(oracle::xi(k, a, b) <= oracle::xi(k, a, c) + oracle::xi(k, c, b));
      }
    }
  }
}

TEST_CASE("check_theorem13 passes on generated asymmetric e0-distances") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const DistanceFunction k = gen_e0(seed, 5);
    const HyperspaceReport r = check_theorem13(k);
    CHECK(r.exhaustive);
    CHECK(r.all_pass());
  }
}

TEST_CASE("a zero-structure violation shows up in xi and is refused upstream") {
  // kappa(0,1) = 0 with 0 != 1: xi({0},{1}) = 0 while {0} is not inside {1}.
  // The matrix satisfies (tau1), so the classification fails at (tau3).
  const DistanceFunction k =
      make_distance(SquareMatrix::from_rows({{0, 0, 1}, {1, 0, 1}, {1, 1, 0}}));
  CHECK(xi(k, sub({0}), sub({1})) == 0.0);
  CHECK_FALSE(oracle::subset_of({0}, {1}));
  CHECK_THROWS_WITH_AS(check_theorem13(k), doctest::Contains("tau3"),
                       std::invalid_argument);
}

TEST_CASE("xi is antitone in the target set") {
  for (std::uint64_t seed : {41u, 42u}) {
    const DistanceFunction k = gen_e0(seed, 6);
    const auto sets = oracle::all_subsets(6);
    for (size_t trial = 0; trial < 200; ++trial) {
      const auto& a = sets[(trial * 37) % sets.size()];
      const auto& b = sets[(trial * 53) % sets.size()];
      std::vector<int> bigger = b;
      bigger.push_back(static_cast<int>(trial % 6));
      std::sort(bigger.begin(), bigger.end());
      bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
      CHECK(xi(k, FiniteSubset::of(a, 6), FiniteSubset::of(bigger, 6)) <=
            xi(k, FiniteSubset::of(a, 6), FiniteSubset::of(b, 6)));
    }
  }
}

TEST_CASE("generated asymmetric kappa has an asymmetric excess pair") {
  const DistanceFunction k = gen_e0(43, 5);
  bool found = false;
  for (int a = 0; a < 5 && !found; ++a) {
    for (int b = 0; b < 5; ++b) {
      if (xi(k, FiniteSubset::of({a}, 5), FiniteSubset::of({b}, 5)) !=
          xi(k, FiniteSubset::of({b}, 5), FiniteSubset::of({a}, 5))) {
        found = true;
        break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("subset tables agree with per-call evaluation") {
  const DistanceFunction k = gen_e0(44, 4);
  const auto table = xi_table_all_subsets(k);
  const unsigned full = 1u << 4;
  const auto sets = oracle::all_subsets(4);
  for (unsigned a = 1; a < full; ++a) {
    for (unsigned b = 1; b < full; ++b) {
      CHECK(table[a * full + b] == oracle::xi(k.kappa, sets[a - 1], sets[b - 1]));
    }
  }
}

TEST_CASE("dkappa and hausdorff tables agree bit for bit on the metric") {
  for (std::uint64_t seed : {45u, 46u}) {
    GenProfile p;
    p.seed = seed;
    p.n_points = 6;
    const FiniteMetricSpace space = gen_space(p);
    const auto dk = dkappa_table_all_subsets(DistanceFunction{space.d});
    const auto hs = hausdorff_table_all_subsets(space);
    CHECK(dk == hs);
  }
}

TEST_CASE("the sample path covers larger spaces") {
  GenProfile p;
  p.seed = 47;
  p.n_points = 14;
  const FiniteMetricSpace space = gen_space(p);
  const DistanceFunction k{space.d};
  CHECK_THROWS_AS(check_theorem13(k), std::invalid_argument);  // sample required
  std::vector<FiniteSubset> sample;
  for (int i = 0; i < 14; ++i) sample.push_back(FiniteSubset::of({i, (i + 3) % 14}, 14));
  sample.push_back(FiniteSubset::of({0, 5, 9, 13}, 14));
  const HyperspaceReport r = check_theorem13(k, sample);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.sets_checked == sample.size());
  CHECK(r.all_pass());
}

}  // TEST_SUITE

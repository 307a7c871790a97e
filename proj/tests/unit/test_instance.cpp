#include <doctest.h>

#include "essdist/generator.hpp"
#include "essdist/instance.hpp"

using namespace essdist;

namespace {

Instance sample_instance(std::uint64_t seed = 101, TheoremTarget target = TheoremTarget::kT23) {
  GenProfile p;
  p.seed = seed;
  p.n_points = 5;
  p.kappa_kind = KappaKind::kAsymmetricClosure;
  p.theorem_target = target;
  return gen_instance(p);
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("canonical serialization round-trips byte for byte") {
  const Instance inst = sample_instance();
  const std::string text = serialize_instance(inst);
  const Instance back = parse_instance(text);
  CHECK(serialize_instance(back) == text);
  CHECK(instance_hash(back) == instance_hash(inst));
}

TEST_CASE("optional components survive the round trip") {
  const Instance inst = sample_instance();
  REQUIRE(inst.phi.has_value());
  REQUIRE(inst.mu.has_value());
  REQUIRE(inst.L.has_value());
  const Instance back = parse_instance(serialize_instance(inst));
  CHECK(back.phi->image == inst.phi->image);
  CHECK(back.mu->right_intercepts == inst.mu->right_intercepts);
  CHECK(back.L == inst.L);
  CHECK(back.provenance->seed == inst.provenance->seed);

  Instance bare = inst;
  bare.phi.reset();
  bare.mu.reset();
  bare.L.reset();
  bare.provenance.reset();
  const Instance bare_back = parse_instance(serialize_instance(bare));
  CHECK_FALSE(bare_back.phi.has_value());
  CHECK_FALSE(bare_back.mu.has_value());
  CHECK_FALSE(bare_back.L.has_value());
}

TEST_CASE("integer number spellings normalize to the canonical form") {
  const std::string text = R"({
    "schema_version": "1",
    "points": ["a", "b"],
    "metric": [[0, 1], [1, 0]],
    "kappa": [[0, 1], [1, 0]],
    "map_T": {"a": ["b"], "b": ["b"]}
  })";
  const Instance inst = parse_instance(text);
  const std::string canonical = serialize_instance(inst);
  CHECK(canonical.find("1.0") != std::string::npos);  // shortest-exact doubles
  CHECK(serialize_instance(parse_instance(canonical)) == canonical);
}

TEST_CASE("parse failures carry position info and reject bad shapes") {
  CHECK_THROWS_WITH_AS(parse_instance("{\"schema_version\": \"1\""),
                       doctest::Contains("parse error"), std::invalid_argument);
  const std::string base = serialize_instance(sample_instance());

  SUBCASE("wrong schema version") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["schema_version"] = "2";
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
  SUBCASE("non-square metric") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["metric"][0].erase(0);
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
  SUBCASE("unknown label in map_T") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["map_T"]["p0"] = {"nope"};
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
  SUBCASE("empty image") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["map_T"]["p0"] = nlohmann::json::array();
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
  SUBCASE("negative kappa entry") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["kappa"][0][1] = -1.0;
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
  SUBCASE("negative L") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["L"] = -0.5;
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
  SUBCASE("gauge attaining lambda at a point") {
    nlohmann::json j = nlohmann::json::parse(base);
    j["mu"] = nlohmann::json{{"lambda", 1.0},
                             {"breakpoints", {0.0}},
                             {"point_values", {1.0}},
                             {"right_intercepts", {1.0}},
                             {"slopes", {0.0}}};
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
  }
}

TEST_CASE("hashes are stable and content-sensitive") {
  const Instance a = sample_instance(7);
  const Instance b = sample_instance(7);
  CHECK(instance_hash(a) == instance_hash(b));
  CHECK(instance_hash(a).size() == 16);
  const Instance c = sample_instance(8);
  CHECK(instance_hash(a) != instance_hash(c));

  Instance edited = a;
  edited.kappa.kappa(0, 1) = edited.kappa(0, 1) + 0.25;
  CHECK(instance_hash(edited) != instance_hash(a));
}

TEST_CASE("save and load through a file") {
  const Instance inst = sample_instance();
  const std::string path = "/tmp/essdist_test_instance.json";
  save_instance(inst, path);
  const Instance back = load_instance(path);
  CHECK(instance_hash(back) == instance_hash(inst));
  CHECK_THROWS_AS(load_instance("/tmp/essdist_does_not_exist.json"), std::invalid_argument);
}

TEST_CASE("fnv1a64 matches its published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

}  // TEST_SUITE

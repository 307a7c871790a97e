#pragma once

// The Instance bundle (space, kappa, T, phi, mu, L) and its JSON interchange
// format.
//
// Canonical form: object keys sorted (the default for nlohmann's std::map
// storage) and numbers rendered shortest-exact, so serialize-then-parse is
// the identity on canonical files and file hashes are meaningful.

#include <cstdint>
#include <optional>
#include <string>

#include "essdist/fixpoint.hpp"
#include "essdist/gauge.hpp"
#include "essdist/space.hpp"

namespace essdist {

inline constexpr const char* kSchemaVersion = "1";

struct Provenance {
  std::uint64_t seed = 0;
  std::string profile;
};

struct Instance {
  FiniteMetricSpace space;
  DistanceFunction kappa;
  MultivaluedMap map;  // T
  std::optional<SelfMap> phi;
  std::optional<PiecewiseLinearGauge> mu;
  std::optional<double> L;
  std::optional<Provenance> provenance;

  int size() const { return space.size(); }
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Canonical serialization (compact, sorted keys, shortest-exact numbers).
std::string serialize_instance(const Instance& inst);
// Throws std::invalid_argument with position info on malformed text.
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// FNV-1a 64 over the canonical serialization, as 16 hex digits. A content
// fingerprint for determinism checks, not a cryptographic hash.
std::uint64_t fnv1a64(std::string_view bytes);
std::string instance_hash(const Instance& inst);

}  // namespace essdist

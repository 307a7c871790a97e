#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace essdist {

// A reproducible counterexample: the point tuple (and, for hyperspace checks,
// the subsets) together with the numeric values of the violated relation.
// Re-evaluating the named tuple reproduces `values` exactly; tests rely on it.
struct Witness {
  std::vector<int> points;
  std::vector<double> values;
  std::vector<std::vector<int>> sets;
  std::string detail;

  nlohmann::json to_json() const;
};

struct Verdict {
  bool pass = true;
  std::optional<Witness> witness;
  std::string note;

  static Verdict ok(std::string note = "");
  static Verdict fail(Witness w);

  nlohmann::json to_json() const;
};

// Named verdicts, e.g. {"tau1": ..., "tau3": ...}. std::map keeps keys sorted
// so serialized reports are canonical.
struct AxiomReport {
  std::map<std::string, Verdict> verdicts;

  bool all_pass() const;
  // Throws std::out_of_range if the key was never emitted.
  bool passed(const std::string& key) const;
  void merge(AxiomReport other);

  nlohmann::json to_json() const;
};

}  // namespace essdist

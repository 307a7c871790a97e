#include "essdist/report.hpp"

#include <stdexcept>
#include <utility>

namespace essdist {

nlohmann::json Witness::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  if (!points.empty()) j["points"] = points;
  if (!values.empty()) j["values"] = values;
  if (!sets.empty()) j["sets"] = sets;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

Verdict Verdict::ok(std::string note) {
  Verdict v;
  v.pass = true;
  v.note = std::move(note);
  return v;
}

Verdict Verdict::fail(Witness w) {
  Verdict v;
  v.pass = false;
  v.witness = std::move(w);
  return v;
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  j["pass"] = pass;
  if (witness) j["witness"] = witness->to_json();
  if (!note.empty()) j["note"] = note;
  return j;
}

bool AxiomReport::all_pass() const {
  for (const auto& [name, v] : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

bool AxiomReport::passed(const std::string& key) const {
  return verdicts.at(key).pass;
}

void AxiomReport::merge(AxiomReport other) {
  for (auto& [name, v] : other.verdicts) {
    verdicts[name] = std::move(v);
  }
}

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json vs = nlohmann::json::object();
  for (const auto& [name, v] : verdicts) vs[name] = v.to_json();
  return nlohmann::json{{"all_pass", all_pass()}, {"verdicts", vs}};
}

}  // namespace essdist

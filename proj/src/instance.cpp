#include "essdist/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace essdist {

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  throw std::invalid_argument("malformed instance: " + msg);
}

std::vector<std::vector<double>> matrix_rows(const nlohmann::json& j, const char* field,
                                             size_t n) {
  if (!j.is_array() || j.size() != n) {
    malformed(std::string(field) + " must be an n x n array");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) {
      malformed(std::string(field) + " must be an n x n array");
    }
    std::vector<double> r;
    r.reserve(n);
    for (const auto& v : row) {
      if (!v.is_number()) malformed(std::string(field) + " entries must be numbers");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

nlohmann::json instance_to_json(const Instance& inst) {
  const auto& labels = inst.space.labels;
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["points"] = labels;
  j["metric"] = inst.space.d.rows();
  j["kappa"] = inst.kappa.kappa.rows();

  nlohmann::json map_t = nlohmann::json::object();
  for (int x = 0; x < inst.map.size(); ++x) {
    nlohmann::json img = nlohmann::json::array();
    for (int y : inst.map.image[x]) img.push_back(labels[y]);
    map_t[labels[x]] = img;
  }
  j["map_T"] = map_t;

  if (inst.phi) {
    nlohmann::json phi = nlohmann::json::object();
    for (int x = 0; x < inst.phi->size(); ++x) phi[labels[x]] = labels[(*inst.phi)(x)];
    j["phi"] = phi;
  }
  if (inst.mu) j["mu"] = inst.mu->to_json();
  if (inst.L) j["L"] = *inst.L;
  if (inst.provenance) {
    j["provenance"] = nlohmann::json{{"seed", inst.provenance->seed},
                                     {"profile", inst.provenance->profile}};
  }
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) malformed("top level must be an object");
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion) {
    malformed("schema_version must be \"1\"");
  }
  for (const char* field : {"points", "metric", "kappa", "map_T"}) {
    if (!j.contains(field)) malformed(std::string("missing field ") + field);
  }

  std::vector<std::string> labels;
  for (const auto& l : j.at("points")) {
    if (!l.is_string()) malformed("points must be a list of labels");
    labels.push_back(l.get<std::string>());
  }
  const size_t n = labels.size();
  if (n == 0) malformed("points must be nonempty");

  Instance inst;
  inst.space = make_space(labels, SquareMatrix::from_rows(matrix_rows(j.at("metric"), "metric", n)));
  inst.kappa = make_distance(SquareMatrix::from_rows(matrix_rows(j.at("kappa"), "kappa", n)));

  auto index_of = [&](const std::string& label, const char* what) {
    const int i = inst.space.index_of(label);
    if (i < 0) malformed(std::string("unknown label in ") + what + ": " + label);
    return i;
  };

  const auto& map_t = j.at("map_T");
  if (!map_t.is_object() || map_t.size() != n) {
    malformed("map_T must map every point label to a nonempty label list");
  }
  std::vector<std::vector<int>> image(n);
  for (const auto& [key, value] : map_t.items()) {
    const int x = index_of(key, "map_T");
    if (!value.is_array() || value.empty()) malformed("map_T images must be nonempty lists");
    for (const auto& l : value) {
      if (!l.is_string()) malformed("map_T images must contain labels");
      image[x].push_back(index_of(l.get<std::string>(), "map_T"));
    }
  }
  inst.map = MultivaluedMap::of(std::move(image));

  if (j.contains("phi")) {
    const auto& phi = j.at("phi");
    if (!phi.is_object() || phi.size() != n) malformed("phi must be total over the points");
    std::vector<int> table(n, 0);
    for (const auto& [key, value] : phi.items()) {
      if (!value.is_string()) malformed("phi values must be labels");
      table[index_of(key, "phi")] = index_of(value.get<std::string>(), "phi");
    }
    inst.phi = SelfMap::of(std::move(table));
  }
  if (j.contains("mu")) {
    inst.mu = PiecewiseLinearGauge::from_json(j.at("mu"));
  }
  if (j.contains("L")) {
    if (!j.at("L").is_number()) malformed("L must be a number");
    const double L = j.at("L").get<double>();
    if (!std::isfinite(L) || L < 0.0) malformed("L must be a finite nonnegative number");
    inst.L = L;
  }
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    Provenance prov;
    if (p.contains("seed")) prov.seed = p.at("seed").get<std::uint64_t>();
    if (p.contains("profile")) prov.profile = p.at("profile").get<std::string>();
    inst.provenance = prov;
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(); }

Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write instance file: " + path);
  out << serialize_instance(inst) << "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string instance_hash(const Instance& inst) {
  const std::uint64_t h = fnv1a64(serialize_instance(inst));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace essdist

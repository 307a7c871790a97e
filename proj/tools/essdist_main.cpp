// essdist: finite-space toolkit for essential distances, e0-metrics and
// multivalued fixed-point verification.
//
// Exit codes: 0 = all checks pass / value computed; 1 = some check fails
// (or the orbit hit its iteration cap); 2 = malformed input or
// configuration error; 3 = hypotheses pass but a theorem conclusion fails
// (a theorem violation; reserved so soundness sweeps are scriptable).
//
// Reports go to standard output as JSON; diagnostics go to standard error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "essdist/fixpoint.hpp"
#include "essdist/generator.hpp"
#include "essdist/gauge.hpp"
#include "essdist/hyperspace.hpp"
#include "essdist/instance.hpp"
#include "essdist/space.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using essdist::Instance;
using nlohmann::json;

struct RunLogger {
  std::string path;
  std::vector<std::string> argv;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& command, const json& report, const std::string& hash) const {
    if (path.empty()) return;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    json rec{{"command", command},
             {"argv", argv},
             {"instance_hash", hash.empty() ? json(nullptr) : json(hash)},
             {"report", report},
             {"wall_ms", ms},
             {"version", kVersion}};
    std::ofstream out(path, std::ios::app);
    out << rec.dump() << "\n";
  }
};

void emit(const json& report) { std::cout << report.dump() << "\n"; }

std::vector<int> parse_label_list(const Instance& inst, const std::string& csv) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    const std::string label = csv.substr(pos, comma - pos);
    pos = comma + 1;
    if (label.empty()) continue;
    const int i = inst.space.index_of(label);
    if (i < 0) throw std::invalid_argument("unknown label: " + label);
    out.push_back(i);
  }
  if (out.empty()) throw std::invalid_argument("empty label list");
  return out;
}

int cmd_check(const Instance& inst, const RunLogger& log) {
  essdist::AxiomReport report = essdist::validate_metric(inst.space);
  report.merge(essdist::classify(inst.kappa));
  const json j = report.to_json();
  emit(j);
  log.write("check", j, essdist::instance_hash(inst));
  return report.all_pass() ? 0 : 1;
}

int cmd_check_mt(const Instance& inst, const RunLogger& log) {
  if (!inst.mu) throw essdist::ConfigurationError("instance has no gauge mu to check");
  const essdist::MTReport report = essdist::check_all_statements(*inst.mu);
  const json j = report.to_json();
  emit(j);
  log.write("check-mt", j, essdist::instance_hash(inst));
  return report.all_pass() ? 0 : 1;
}

int cmd_dist(const Instance& inst, const std::string& flavor, const std::string& a,
             const std::string& b, const RunLogger& log) {
  const int n = inst.size();
  const essdist::FiniteSubset A = essdist::FiniteSubset::of(parse_label_list(inst, a), n);
  const essdist::FiniteSubset B = essdist::FiniteSubset::of(parse_label_list(inst, b), n);
  double value = 0.0;
  if (flavor == "dkappa") {
    if (!essdist::classify(inst.kappa).passed("is_e0_distance")) {
      std::cerr << "warning: kappa is not an e0-distance; D_kappa need not be a metric\n";
    }
    value = essdist::dkappa(inst.kappa, A, B);
  } else if (flavor == "hausdorff") {
    value = essdist::hausdorff(inst.space, A, B);
  } else if (flavor == "xi") {
    value = essdist::xi(inst.kappa, A, B);
  } else {
    throw std::invalid_argument("unknown distance flavor: " + flavor);
  }
  const json j = value;
  emit(j);
  log.write("dist", j, essdist::instance_hash(inst));
  return 0;
}

int cmd_solve(const Instance& inst, const std::string& x0, int max_iter, const RunLogger& log) {
  const int start = inst.space.index_of(x0);
  if (start < 0) throw std::invalid_argument("unknown label: " + x0);
  const int cap = max_iter > 0 ? max_iter : inst.size() * inst.size() + 1;
  const essdist::OrbitTrace trace = essdist::iterate(inst.kappa, inst.map, start, cap);
  const json j = trace.to_json(inst.space.labels);
  emit(j);
  log.write("solve", j, essdist::instance_hash(inst));
  return trace.outcome == essdist::OrbitTrace::Outcome::kFixedPoint ? 0 : 1;
}

int cmd_verify_one(const Instance& inst, const std::string& theorem, const RunLogger& log) {
  const essdist::TheoremReport report =
      essdist::verify_theorem(inst, essdist::theorem_from_string(theorem));
  const json j = report.to_json(inst.space.labels);
  emit(j);
  log.write("verify", j, essdist::instance_hash(inst));
  return report.exit_code();
}

int cmd_verify_dir(const std::string& dir, const std::string& theorem, const RunLogger& log) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  const essdist::TheoremId id = essdist::theorem_from_string(theorem);
  int worst = 0;
  json per_file = json::array();
  int pass = 0, hyp_fail = 0, concl_fail = 0, malformed = 0;
  for (const auto& f : files) {
    int code = 0;
    try {
      const Instance inst = essdist::load_instance(f.string());
      code = essdist::verify_theorem(inst, id).exit_code();
    } catch (const std::exception& e) {
      std::cerr << f.string() << ": " << e.what() << "\n";
      code = 2;
    }
    (code == 0 ? pass : code == 1 ? hyp_fail : code == 2 ? malformed : concl_fail) += 1;
    per_file.push_back(json{{"file", f.filename().string()}, {"exit", code}});
    worst = std::max(worst, code);
  }
  const json j{{"files", files.size()},
               {"pass", pass},
               {"hypothesis_fail", hyp_fail},
               {"conclusion_fail", concl_fail},
               {"malformed", malformed},
               {"per_file", per_file},
               {"theorem", theorem}};
  emit(j);
  log.write("verify", j, "");
  return worst;
}

int cmd_gen(const std::string& profile_text, std::uint64_t seed, bool seed_set, int n,
            const std::string& out_path, const RunLogger& log) {
  essdist::GenProfile profile = essdist::GenProfile::parse(profile_text);
  if (seed_set) profile.seed = seed;
  if (n > 0) profile.n_points = n;
  const Instance inst = essdist::gen_instance(profile);
  essdist::save_instance(inst, out_path);
  const json j{{"file", out_path},
               {"hash", essdist::instance_hash(inst)},
               {"profile", profile.to_string()}};
  emit(j);
  log.write("gen", j, essdist::instance_hash(inst));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-space toolkit for essential distances and e0-metrics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunLogger logger;
  for (int i = 0; i < argc; ++i) logger.argv.emplace_back(argv[i]);
  app.add_option("--log", logger.path, "append one JSON run record per command to this file");

  std::string file, flavor = "dkappa", set_a, set_b, x0, theorem = "T2.1", dir, out_path,
              profile_text;
  int max_iter = 0, n_points = 0;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check", "validate the metric and classify kappa");
  check->add_option("file", file)->required();

  auto* check_mt = app.add_subcommand("check-mt", "run the ten MT(lambda) statement deciders");
  check_mt->add_option("file", file)->required();

  auto* dist = app.add_subcommand("dist", "set-to-set distance between two label lists");
  dist->add_option("file", file)->required();
  dist->add_option("--flavor", flavor, "dkappa | hausdorff | xi");
  dist->add_option("--a", set_a, "first set: comma separated labels")->required();
  dist->add_option("--b", set_b, "second set: comma separated labels")->required();

  auto* solve = app.add_subcommand("solve", "run the greedy Picard-type orbit");
  solve->add_option("file", file)->required();
  solve->add_option("--x0", x0, "start label")->required();
  solve->add_option("--max-iter", max_iter, "iteration cap (default |X|^2 + 1)");

  auto* verify = app.add_subcommand("verify", "check theorem hypotheses and conclusion");
  verify->add_option("file", file);
  verify->add_option("--theorem", theorem,
                     "T2.1 | T2.2 | T2.3 | T2.4 | T1.1 | MT | Nadler | Banach");
  verify->add_option("--dir", dir, "verify every .json instance in a directory");

  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--profile", profile_text, "comma separated key=value generation profile");
  auto* seed_opt = gen->add_option("--seed", seed, "generation seed");
  gen->add_option("--n", n_points, "number of points");
  gen->add_option("--out", out_path, "output instance path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(essdist::load_instance(file), logger);
    if (check_mt->parsed()) return cmd_check_mt(essdist::load_instance(file), logger);
    if (dist->parsed()) {
      return cmd_dist(essdist::load_instance(file), flavor, set_a, set_b, logger);
    }
    if (solve->parsed()) return cmd_solve(essdist::load_instance(file), x0, max_iter, logger);
    if (verify->parsed()) {
      if (!dir.empty()) return cmd_verify_dir(dir, theorem, logger);
      if (file.empty()) throw std::invalid_argument("verify needs a file or --dir");
      return cmd_verify_one(essdist::load_instance(file), theorem, logger);
    }
    if (gen->parsed()) {
      return cmd_gen(profile_text, seed, seed_opt->count() > 0, n_points, out_path, logger);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

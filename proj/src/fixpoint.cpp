#include "essdist/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "essdist/hyperspace.hpp"
#include "essdist/instance.hpp"

namespace essdist {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_same_size(const DistanceFunction& kappa, const MultivaluedMap& T) {
  require(kappa.size() == T.size(), "kappa and T disagree on the point count");
}

double mt_bound(const PiecewiseLinearGauge& mu, double t) {
  return mu.value_at(t) * t;
}

}  // namespace

MultivaluedMap MultivaluedMap::of(std::vector<std::vector<int>> image) {
  const int n = static_cast<int>(image.size());
  for (auto& img : image) {
    require(!img.empty(), "every image of a multivalued map must be nonempty");
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    require(img.front() >= 0 && img.back() < n, "image member out of range");
  }
  return MultivaluedMap{std::move(image)};
}

bool MultivaluedMap::contains(int x, int y) const {
  const auto& img = image[x];
  return std::binary_search(img.begin(), img.end(), y);
}

bool MultivaluedMap::single_valued() const {
  return std::all_of(image.begin(), image.end(),
                     [](const std::vector<int>& img) { return img.size() == 1; });
}

SelfMap SelfMap::identity(int n) {
  SelfMap m;
  m.image.resize(n);
  for (int i = 0; i < n; ++i) m.image[i] = i;
  return m;
}

SelfMap SelfMap::of(std::vector<int> image) {
  const int n = static_cast<int>(image.size());
  for (int y : image) require(y >= 0 && y < n, "self map value out of range");
  return SelfMap{std::move(image)};
}

bool SelfMap::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (image[i] != i) return false;
  }
  return true;
}

std::vector<int> fixed_points(const MultivaluedMap& T) {
  std::vector<int> out;
  for (int x = 0; x < T.size(); ++x) {
    if (T.contains(x, x)) out.push_back(x);
  }
  return out;
}

std::vector<int> coincidence_points(const SelfMap& phi, const MultivaluedMap& T) {
  require(phi.size() == T.size(), "phi and T disagree on the point count");
  std::vector<int> out;
  for (int x = 0; x < T.size(); ++x) {
    if (T.contains(x, phi(x))) out.push_back(x);
  }
  return out;
}

Verdict check_S1(const DistanceFunction& kappa, const MultivaluedMap& T,
                 const PiecewiseLinearGauge& mu) {
  require_same_size(kappa, T);
  mu.require_valid();
  for (int x = 0; x < T.size(); ++x) {
    for (int y : T.image[x]) {
      if (y == x) continue;
      const double bound = mt_bound(mu, kappa(x, y));
      double best = std::numeric_limits<double>::infinity();
      for (int z : T.image[y]) best = std::min(best, kappa(y, z));
      if (!(best <= bound)) {
        return Verdict::fail({{x, y},
                              {kappa(x, y), bound, best},
                              {},
                              "no z in Ty with kappa(y,z) <= mu(kappa(x,y)) * kappa(x,y)"});
      }
    }
  }
  return Verdict::ok();
}

Verdict check_S3(const DistanceFunction& kappa, const MultivaluedMap& T,
                 const PiecewiseLinearGauge& mu) {
  require_same_size(kappa, T);
  mu.require_valid();
  for (int x = 0; x < T.size(); ++x) {
    for (int y : T.image[x]) {  // y = x is included: (S3) states no exclusion
      const double lhs = point_to_set(kappa, y, T.image[y]);
      const double bound = mt_bound(mu, kappa(x, y));
      if (!(lhs <= bound)) {
        return Verdict::fail({{x, y},
                              {lhs, bound, kappa(x, y)},
                              {},
                              "kappa(y,Ty) > mu(kappa(x,y)) * kappa(x,y)"});
      }
    }
  }
  return Verdict::ok();
}

Verdict check_S4(const SelfMap& phi, const MultivaluedMap& T) {
  require(phi.size() == T.size(), "phi and T disagree on the point count");
  for (int x = 0; x < T.size(); ++x) {
    for (int y : T.image[x]) {
      if (!T.contains(x, phi(y))) {
        return Verdict::fail({{x, y, phi(y)}, {}, {}, "phi(y) escapes Tx for y in Tx"});
      }
    }
  }
  return Verdict::ok();
}

Verdict check_S5(const DistanceFunction& kappa, const MultivaluedMap& T, const SelfMap& phi,
                 const PiecewiseLinearGauge& mu, double L) {
  require_same_size(kappa, T);
  require(phi.size() == T.size(), "phi and T disagree on the point count");
  require(std::isfinite(L) && L >= 0.0, "L must be a nonnegative real");
  mu.require_valid();
  for (int x = 0; x < T.size(); ++x) {
    for (int y = 0; y < T.size(); ++y) {
      const double lhs = point_to_set(kappa, y, T.image[y]);
      const double rescue = L * point_to_set(kappa, phi(y), T.image[x]);
      const double bound = mt_bound(mu, kappa(x, y)) + rescue;
      if (!(lhs <= bound)) {
        return Verdict::fail({{x, y},
                              {lhs, mt_bound(mu, kappa(x, y)), rescue},
                              {},
                              "kappa(y,Ty) > mu(kappa(x,y)) kappa(x,y) + L kappa(phi y, Tx)"});
      }
    }
  }
  return Verdict::ok();
}

Verdict check_S6(const DistanceFunction& kappa, const MultivaluedMap& T, const SelfMap& phi,
                 const PiecewiseLinearGauge& mu, double L) {
  require_same_size(kappa, T);
  require(phi.size() == T.size(), "phi and T disagree on the point count");
  require(std::isfinite(L) && L >= 0.0, "L must be a nonnegative real");
  mu.require_valid();
  const int n = T.size();
  std::vector<FiniteSubset> images;
  images.reserve(n);
  for (int x = 0; x < n; ++x) images.push_back(FiniteSubset{T.image[x]});
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double lhs = dkappa(kappa, images[x], images[y]);
      const double rescue = L * point_to_set(kappa, phi(y), T.image[x]);
      const double bound = mt_bound(mu, kappa(x, y)) + rescue;
      if (!(lhs <= bound)) {
        return Verdict::fail({{x, y},
                              {lhs, mt_bound(mu, kappa(x, y)), rescue},
                              {},
                              "D_kappa(Tx,Ty) > mu(kappa(x,y)) kappa(x,y) + L kappa(phi y, Tx)"});
      }
    }
  }
  return Verdict::ok();
}

Verdict check_S2(const DistanceFunction& kappa, const MultivaluedMap& T, S2Alternative which) {
  require_same_size(kappa, T);
  switch (which) {
    case S2Alternative::kH1:
      return Verdict::ok(
          "finite spaces carry the discrete topology, so every multivalued map is closed");
    case S2Alternative::kH2:
      return Verdict::ok(
          "every function on a finite space is lower semicontinuous; f(x) = kappa(x,Tx)");
    case S2Alternative::kH3:
      return Verdict::ok(
          "every function on a finite space is lower semicontinuous; g(x) = d(x,Tx)");
    case S2Alternative::kH4: {
      // A convergent orbit is eventually constant at its limit v, forcing
      // v in Tv; kappa(x_n, Tv) on the constant tail is kappa(v, Tv).
      const std::vector<int> fps = fixed_points(T);
      if (fps.empty()) {
        return Verdict::ok("vacuous: F(T) is empty, so no orbit converges");
      }
      for (int v : fps) {
        const double gap = point_to_set(kappa, v, T.image[v]);
        if (gap != 0.0) {
          return Verdict::fail({{v},
                                {gap},
                                {},
                                "the constant orbit at v has kappa(x_n, Tv) = kappa(v,Tv) != 0"});
        }
      }
      return Verdict::ok("kappa(v,Tv) = 0 at every possible orbit limit v in F(T)");
    }
    case S2Alternative::kH5: {
      const std::vector<int> fps = fixed_points(T);
      if (static_cast<int>(fps.size()) == T.size()) {
        return Verdict::ok("vacuous: F(T) = X leaves no z to quantify over");
      }
      for (int z = 0; z < T.size(); ++z) {
        if (std::binary_search(fps.begin(), fps.end(), z)) continue;
        double inf = std::numeric_limits<double>::infinity();
        int argmin = -1;
        for (int x = 0; x < T.size(); ++x) {
          const double val = kappa(x, z) + point_to_set(kappa, x, T.image[x]);
          if (val < inf) {
            inf = val;
            argmin = x;
          }
        }
        if (!(inf > 0.0)) {
          return Verdict::fail(
              {{z, argmin}, {inf}, {}, "inf over x of kappa(x,z) + kappa(x,Tx) is 0"});
        }
      }
      return Verdict::ok();
    }
  }
  throw std::invalid_argument("unknown S2 alternative");
}

AxiomReport check_S2_all(const DistanceFunction& kappa, const MultivaluedMap& T) {
  AxiomReport report;
  report.verdicts["H1"] = check_S2(kappa, T, S2Alternative::kH1);
  report.verdicts["H2"] = check_S2(kappa, T, S2Alternative::kH2);
  report.verdicts["H3"] = check_S2(kappa, T, S2Alternative::kH3);
  report.verdicts["H4"] = check_S2(kappa, T, S2Alternative::kH4);
  report.verdicts["H5"] = check_S2(kappa, T, S2Alternative::kH5);
  bool any = false;
  for (const char* k : {"H1", "H2", "H3", "H4", "H5"}) any = any || report.passed(k);
  Verdict s2;
  s2.pass = any;
  s2.note = "holds if at least one of (H1)-(H5) holds";
  report.verdicts["S2"] = s2;
  return report;
}

std::string to_string(OrbitTrace::Outcome o) {
  switch (o) {
    case OrbitTrace::Outcome::kFixedPoint: return "fixed-point";
    case OrbitTrace::Outcome::kIterationCap: return "iteration-cap";
    case OrbitTrace::Outcome::kStalled: return "stalled";
  }
  return "?";
}

namespace {

// b_n = max_{m > n} kappa(x_n, x_m); traces ending at a fixed point v
// continue constantly, adding the tail term kappa(v, v) as the final bound.
std::vector<double> orbit_bounds(const std::vector<int>& points, const DistanceFunction& kappa,
                                 bool fixed_point_tail) {
  const int len = static_cast<int>(points.size());
  std::vector<double> bounds;
  const int count = fixed_point_tail ? len : len - 1;
  bounds.reserve(std::max(count, 0));
  for (int i = 0; i < count; ++i) {
    double b = fixed_point_tail ? kappa(points[i], points[len - 1]) : 0.0;
    for (int m = i + 1; m < len; ++m) b = std::max(b, kappa(points[i], points[m]));
    bounds.push_back(b);
  }
  return bounds;
}

}  // namespace

OrbitTrace iterate(const DistanceFunction& kappa, const MultivaluedMap& T, int x0,
                   int max_iter) {
  require_same_size(kappa, T);
  require(x0 >= 0 && x0 < T.size(), "iterate: start point out of range");
  require(max_iter >= 1, "iterate: max_iter must be >= 1");

  OrbitTrace trace;
  int x = x0;
  trace.points.push_back(x);
  for (;;) {
    if (T.contains(x, x)) {
      trace.outcome = OrbitTrace::Outcome::kFixedPoint;
      trace.fixed_point = x;
      break;
    }
    if (static_cast<int>(trace.gaps.size()) >= max_iter) {
      trace.outcome = OrbitTrace::Outcome::kIterationCap;
      break;
    }
    int next = T.image[x][0];
    double best = kappa(x, next);
    for (int y : T.image[x]) {
      if (kappa(x, y) < best) {
        best = kappa(x, y);
        next = y;
      }
    }
    trace.gaps.push_back(best);
    trace.points.push_back(next);
    x = next;
  }
  trace.cauchy_bound = orbit_bounds(trace.points, kappa,
                                    trace.outcome == OrbitTrace::Outcome::kFixedPoint);
  return trace;
}

CauchyDiagnostic cauchy_diagnostic(const OrbitTrace& trace, const DistanceFunction& kappa) {
  require(trace.points.size() >= 2, "cauchy_diagnostic: trace length must be >= 2");
  CauchyDiagnostic diag;
  diag.bounds = orbit_bounds(trace.points, kappa,
                             trace.outcome == OrbitTrace::Outcome::kFixedPoint);
  diag.eventually_zero = !diag.bounds.empty() && diag.bounds.back() == 0.0;
  return diag;
}

nlohmann::json OrbitTrace::to_json() const { return to_json({}); }

nlohmann::json OrbitTrace::to_json(const std::vector<std::string>& labels) const {
  auto name = [&](int p) -> nlohmann::json {
    if (p >= 0 && p < static_cast<int>(labels.size())) return labels[p];
    return p;
  };
  nlohmann::json pts = nlohmann::json::array();
  for (int p : points) pts.push_back(name(p));
  nlohmann::json j{{"points", pts},
                   {"gaps", gaps},
                   {"cauchy_bound", cauchy_bound},
                   {"outcome", to_string(outcome)},
                   {"steps", gaps.size()}};
  if (fixed_point) j["fixed_point"] = name(*fixed_point);
  return j;
}

TheoremId theorem_from_string(const std::string& s) {
  if (s == "T2.1") return TheoremId::kT21;
  if (s == "T2.2") return TheoremId::kT22;
  if (s == "T2.3") return TheoremId::kT23;
  if (s == "T2.4") return TheoremId::kT24;
  if (s == "T1.1" || s == "T1.1-BerindeBerinde" || s == "BerindeBerinde") {
    return TheoremId::kT11BerindeBerinde;
  }
  if (s == "MT" || s == "MizoguchiTakahashi") return TheoremId::kMizoguchiTakahashi;
  if (s == "Nadler") return TheoremId::kNadler;
  if (s == "Banach") return TheoremId::kBanach;
  throw std::invalid_argument("unknown theorem id: " + s);
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::kT21: return "T2.1";
    case TheoremId::kT22: return "T2.2";
    case TheoremId::kT23: return "T2.3";
    case TheoremId::kT24: return "T2.4";
    case TheoremId::kT11BerindeBerinde: return "T1.1-BerindeBerinde";
    case TheoremId::kMizoguchiTakahashi: return "MizoguchiTakahashi";
    case TheoremId::kNadler: return "Nadler";
    case TheoremId::kBanach: return "Banach";
  }
  return "?";
}

int TheoremReport::exit_code() const {
  if (!hypotheses_pass) return 1;
  return (conclusion_pass && *conclusion_pass) ? 0 : 3;
}

nlohmann::json TheoremReport::to_json(const std::vector<std::string>& labels) const {
  auto names = [&](const std::vector<int>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (int p : pts) arr.push_back(labels[p]);
    return arr;
  };
  nlohmann::json hyp = nlohmann::json::object();
  for (const auto& [k, v] : hypotheses) hyp[k] = v.to_json();
  nlohmann::json j{{"theorem", to_string(theorem)},
                   {"hypotheses", hyp},
                   {"hypotheses_pass", hypotheses_pass},
                   {"conclusion", conclusion_statement},
                   {"conclusion_pass", conclusion_pass ? nlohmann::json(*conclusion_pass)
                                                       : nlohmann::json(nullptr)},
                   {"fixed_points", names(fixed_point_set)},
                   {"coincidence_points", names(coincidence_set)},
                   {"exit_code", exit_code()}};
  if (orbit) j["orbit"] = orbit->to_json(labels);
  return j;
}

TheoremReport verify_theorem(const Instance& inst, TheoremId which) {
  const int n = inst.size();
  const bool coincidence_flavor = (which == TheoremId::kT23 || which == TheoremId::kT24);
  const bool metric_specialization =
      (which == TheoremId::kT11BerindeBerinde || which == TheoremId::kMizoguchiTakahashi ||
       which == TheoremId::kNadler || which == TheoremId::kBanach);

  if (!inst.mu) throw ConfigurationError("instance has no gauge mu, required by every theorem");
  if (coincidence_flavor && !inst.phi) {
    throw ConfigurationError("instance has no self map phi, required by " + to_string(which));
  }
  if ((coincidence_flavor || which == TheoremId::kT11BerindeBerinde) && !inst.L) {
    throw ConfigurationError("instance has no constant L, required by " + to_string(which));
  }
  const PiecewiseLinearGauge& mu = *inst.mu;
  mu.require_valid();
  if (mu.lambda != 1.0) {
    throw ConfigurationError("theorem verification needs an MT-function gauge with lambda = 1");
  }

  const DistanceFunction kappa =
      metric_specialization ? DistanceFunction{inst.space.d} : inst.kappa;
  const SelfMap phi = coincidence_flavor ? *inst.phi : SelfMap::identity(n);
  const double L =
      (which == TheoremId::kMizoguchiTakahashi || which == TheoremId::kNadler ||
       which == TheoremId::kBanach)
          ? 0.0
          : (coincidence_flavor || which == TheoremId::kT11BerindeBerinde ? *inst.L : 0.0);

  TheoremReport report;
  report.theorem = which;

  {
    Verdict v = validate_metric(inst.space).verdicts.at("metric");
    if (v.pass) v.note = "finite metric spaces are complete";
    report.hypotheses["space_is_complete_metric"] = v;
  }
  report.hypotheses["kappa_is_e0_distance"] = [&] {
    AxiomReport cls = classify(kappa);
    Verdict v = cls.verdicts.at("is_e0_distance");
    if (metric_specialization) v.note = "kappa taken to be the ambient metric d";
    return v;
  }();
  {
    Verdict v = check_statement(mu, 1);
    if (v.pass && metric_specialization) v.note = "alpha in the specialized condition";
    report.hypotheses["mu_is_mt"] = v;
  }

  switch (which) {
    case TheoremId::kT21:
      report.hypotheses["S1"] = check_S1(kappa, inst.map, mu);
      break;
    case TheoremId::kT22:
      report.hypotheses["S3"] = check_S3(kappa, inst.map, mu);
      break;
    case TheoremId::kT23:
      report.hypotheses["S4"] = check_S4(phi, inst.map);
      report.hypotheses["S5"] = check_S5(kappa, inst.map, phi, mu, L);
      break;
    case TheoremId::kT24:
      report.hypotheses["S4"] = check_S4(phi, inst.map);
      report.hypotheses["S6"] = check_S6(kappa, inst.map, phi, mu, L);
      break;
    case TheoremId::kT11BerindeBerinde:
    case TheoremId::kMizoguchiTakahashi:
    case TheoremId::kNadler:
    case TheoremId::kBanach: {
      if (which == TheoremId::kNadler || which == TheoremId::kBanach) {
        Verdict v;
        v.pass = mu.is_constant();
        if (!v.pass) {
          v.witness = Witness{{}, {}, {}, "the gauge is not a constant contraction factor"};
        }
        report.hypotheses["mu_is_constant"] = v;
      }
      if (which == TheoremId::kBanach) {
        Verdict v;
        v.pass = inst.map.single_valued();
        if (!v.pass) v.witness = Witness{{}, {}, {}, "T has a multivalued image"};
        report.hypotheses["T_single_valued"] = v;
      }
      // With kappa = d and phi = identity, D_kappa is the Hausdorff metric
      // and kappa(phi y, Tx) = d(y, Tx): the Berinde-Berinde inequality.
      Verdict v = check_S6(kappa, inst.map, phi, mu, L);
      if (which == TheoremId::kMizoguchiTakahashi || which == TheoremId::kNadler ||
          which == TheoremId::kBanach) {
        report.hypotheses["S6_with_L0"] = v;
      } else {
        report.hypotheses["S6_on_hausdorff"] = v;
      }
      break;
    }
  }

  if (!metric_specialization) {
    report.hypotheses.merge(check_S2_all(kappa, inst.map).verdicts);
  }

  report.hypotheses_pass = true;
  for (const auto& [k, v] : report.hypotheses) report.hypotheses_pass &= v.pass;

  report.fixed_point_set = fixed_points(inst.map);
  report.coincidence_set = coincidence_points(phi, inst.map);
  report.conclusion_statement =
      coincidence_flavor ? "COP(phi,T) and F(T) intersect" : "F(T) is nonempty";

  if (report.hypotheses_pass) {
    if (coincidence_flavor) {
      bool hit = false;
      for (int v : report.fixed_point_set) {
        if (std::binary_search(report.coincidence_set.begin(), report.coincidence_set.end(),
                               v)) {
          hit = true;
          break;
        }
      }
      report.conclusion_pass = hit;
    } else {
      report.conclusion_pass = !report.fixed_point_set.empty();
    }
    report.orbit = iterate(kappa, inst.map, 0, n * n + 1);
  }
  return report;
}

}  // namespace essdist

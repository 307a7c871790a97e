#include "essdist/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "essdist/rng.hpp"

namespace essdist {

PiecewiseLinearGauge PiecewiseLinearGauge::constant(double value, double lambda) {
  PiecewiseLinearGauge g;
  g.lambda = lambda;
  g.breakpoints = {0.0};
  g.point_values = {value};
  g.right_intercepts = {value};
  g.slopes = {0.0};
  return g;
}

bool PiecewiseLinearGauge::is_constant() const {
  if (breakpoints.empty()) return false;
  const double v = point_values[0];
  for (int i = 0; i < pieces(); ++i) {
    if (point_values[i] != v || right_intercepts[i] != v || slopes[i] != 0.0) return false;
  }
  return true;
}

std::vector<std::string> PiecewiseLinearGauge::validation_errors() const {
  std::vector<std::string> errs;
  auto bad = [&](const std::string& m) { errs.push_back(m); };

  if (!(std::isfinite(lambda) && lambda > 0.0)) bad("lambda must be a positive finite real");
  const size_t b = breakpoints.size();
  if (b == 0) bad("a gauge needs at least one breakpoint");
  if (point_values.size() != b || right_intercepts.size() != b || slopes.size() != b) {
    bad("breakpoints, point_values, right_intercepts and slopes must have equal length");
  }
  if (!errs.empty()) return errs;

  if (breakpoints[0] != 0.0) bad("the first breakpoint must be 0");
  for (size_t i = 0; i < b; ++i) {
    if (!std::isfinite(breakpoints[i]) || !std::isfinite(point_values[i]) ||
        !std::isfinite(right_intercepts[i]) || !std::isfinite(slopes[i])) {
      bad("gauge entries must be finite");
      return errs;
    }
    if (i + 1 < b && !(breakpoints[i] < breakpoints[i + 1])) {
      bad("breakpoints must be strictly increasing");
    }
  }
  for (size_t i = 0; i < b; ++i) {
    if (point_values[i] < 0.0) bad("mu(t_i) below 0 at breakpoint " + std::to_string(i));
    if (point_values[i] >= lambda) {
      bad("gauge attains lambda at breakpoint " + std::to_string(i));
    }
  }
  // Open pieces must stay inside [0, lambda] and may touch lambda only as an
  // unattained end limit.
  for (size_t i = 0; i + 1 < b; ++i) {
    const double c = right_intercepts[i];
    const double e = c + slopes[i] * (breakpoints[i + 1] - breakpoints[i]);
    if (c < 0.0 || c > lambda) bad("right limit outside [0, lambda] on piece " + std::to_string(i));
    if (e < 0.0 || e > lambda) bad("left end limit outside [0, lambda] on piece " + std::to_string(i));
    if (slopes[i] == 0.0 && c >= lambda) {
      bad("gauge attains lambda on the open piece " + std::to_string(i));
    }
  }
  // Tail: any nonzero slope exits [0, lambda) at a finite s.
  if (slopes[b - 1] != 0.0) bad("tail slope must be 0");
  const double tail_c = right_intercepts[b - 1];
  if (tail_c < 0.0 || tail_c >= lambda) bad("tail value must lie in [0, lambda)");
  return errs;
}

void PiecewiseLinearGauge::require_valid() const {
  auto errs = validation_errors();
  if (!errs.empty()) throw std::invalid_argument("invalid gauge: " + errs.front());
}

namespace {

// Piece containing t: largest i with t_i <= t.
int piece_of(const PiecewiseLinearGauge& g, double t) {
  auto it = std::upper_bound(g.breakpoints.begin(), g.breakpoints.end(), t);
  return static_cast<int>(it - g.breakpoints.begin()) - 1;
}

void require_point(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("gauge argument must be a finite nonnegative real");
  }
}

}  // namespace

double PiecewiseLinearGauge::value_at(double t) const {
  require_point(t);
  const int i = piece_of(*this, t);
  if (breakpoints[i] == t) return point_values[i];
  return right_intercepts[i] + slopes[i] * (t - breakpoints[i]);
}

nlohmann::json PiecewiseLinearGauge::to_json() const {
  return nlohmann::json{{"lambda", lambda},
                        {"breakpoints", breakpoints},
                        {"point_values", point_values},
                        {"right_intercepts", right_intercepts},
                        {"slopes", slopes}};
}

PiecewiseLinearGauge PiecewiseLinearGauge::from_json(const nlohmann::json& j) {
  PiecewiseLinearGauge g;
  try {
    g.lambda = j.at("lambda").get<double>();
    g.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    g.point_values = j.at("point_values").get<std::vector<double>>();
    g.right_intercepts = j.at("right_intercepts").get<std::vector<double>>();
    g.slopes = j.at("slopes").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed gauge object: ") + e.what());
  }
  g.require_valid();
  return g;
}

double right_limsup(const PiecewiseLinearGauge& mu, double t) {
  mu.require_valid();
  require_point(t);
  const int i = piece_of(mu, t);
  if (mu.breakpoints[i] == t) return mu.right_intercepts[i];
  return mu.right_intercepts[i] + mu.slopes[i] * (t - mu.breakpoints[i]);
}

namespace {

// All statements are decided by breakpoint analysis. Interior points of a
// piece never fail on this class: their right-limit equals the interior
// value, which validation keeps strictly below lambda. The only way a
// right-limsup can reach lambda is a right intercept equal to lambda.
Verdict statement_verdict(const PiecewiseLinearGauge& mu, int k) {
  const double lambda = mu.lambda;

  switch (k) {
    case 2: {
      PiecewiseLinearGauge unit = scale_to_unit(mu);
      Verdict inner = statement_verdict(unit, 1);
      if (inner.pass) return Verdict::ok("lambda^-1 mu is an MT-function");
      Witness w = *inner.witness;
      w.detail = "after scaling by lambda^-1: " + w.detail;
      return Verdict::fail(w);
    }
    case 1:
    case 3:
    case 4:
    case 5:
    case 6: {
      const bool closed_left = (k == 4 || k == 6);
      for (int i = 0; i < mu.pieces(); ++i) {
        double needed = mu.right_intercepts[i];
        if (closed_left) needed = std::max(needed, mu.point_values[i]);
        if (needed >= lambda) {
          const char* variant = k == 1   ? "limsup_{s->t+} mu(s)"
                                : k == 3 ? "sup over (t, t+eps)"
                                : k == 4 ? "sup over [t, t+eps]"
                                : k == 5 ? "sup over (t, t+eps]"
                                         : "sup over [t, t+eps)";
          return Verdict::fail({{},
                                {mu.breakpoints[i], needed},
                                {},
                                std::string(variant) + " reaches lambda at t = breakpoint " +
                                    std::to_string(i) + "; no xi < lambda bounds it"});
        }
      }
      return Verdict::ok(k == 1 ? "every right-limsup stays below lambda"
                                : "per-t bounds xi_t < lambda exist for every t");
    }
    case 7:
    case 8:
    case 9:
    case 10: {
      // Attained values stay below lambda by validation, so a monotone
      // sequence can push sup mu(x_n) to lambda only by decreasing onto a
      // breakpoint whose right intercept equals lambda. Eventually-monotone
      // prefixes add finitely many values below lambda and change nothing.
      const char* kind = k == 7   ? "nonincreasing"
                         : k == 8 ? "strictly decreasing"
                         : k == 9 ? "eventually nonincreasing"
                                  : "eventually strictly decreasing";
      for (int i = 0; i < mu.pieces(); ++i) {
        if (mu.right_intercepts[i] >= lambda) {
          const double t = mu.breakpoints[i];
          const double span = (i + 1 < mu.pieces()) ? (mu.breakpoints[i + 1] - t) : 1.0;
          return Verdict::fail({{},
                                {t, mu.right_intercepts[i]},
                                {},
                                std::string("the ") + kind + " sequence x_j = " +
                                    std::to_string(t) + " + " + std::to_string(span) +
                                    " * 2^-j drives sup mu(x_j) to lambda"});
        }
      }
      return Verdict::ok(std::string("sup mu(x_n) < lambda for every ") + kind + " sequence");
    }
    default:
      throw std::domain_error("check_statement: k must be in 1..10");
  }
}

}  // namespace

Verdict check_statement(const PiecewiseLinearGauge& mu, int k) {
  if (k < 1 || k > 10) throw std::domain_error("check_statement: k must be in 1..10");
  mu.require_valid();
  return statement_verdict(mu, k);
}

bool is_mt(const PiecewiseLinearGauge& mu) { return check_statement(mu, 1).pass; }

PiecewiseLinearGauge scale_to_unit(const PiecewiseLinearGauge& mu) {
  mu.require_valid();
  PiecewiseLinearGauge out = mu;
  const double inv = 1.0 / mu.lambda;
  for (double& v : out.point_values) v *= inv;
  for (double& v : out.right_intercepts) v *= inv;
  for (double& v : out.slopes) v *= inv;
  out.lambda = 1.0;
  return out;
}

bool MTReport::all_pass() const {
  return std::all_of(statements.begin(), statements.end(),
                     [](const Verdict& v) { return v.pass; });
}

bool MTReport::agree() const {
  for (const Verdict& v : statements) {
    if (v.pass != statements[0].pass) return false;
  }
  return true;
}

nlohmann::json MTReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) {
    nlohmann::json v = statements[i].to_json();
    v["statement"] = i + 1;
    arr.push_back(v);
  }
  return nlohmann::json{{"all_pass", all_pass()}, {"agree", agree()}, {"statements", arr}};
}

MTReport check_all_statements(const PiecewiseLinearGauge& mu) {
  MTReport r;
  for (int k = 1; k <= 10; ++k) r.statements[k - 1] = check_statement(mu, k);
  return r;
}

SequenceKind sequence_kind_from_string(const std::string& s) {
  if (s == "nonincreasing") return SequenceKind::kNonincreasing;
  if (s == "strictly-decreasing") return SequenceKind::kStrictlyDecreasing;
  if (s == "eventually-nonincreasing") return SequenceKind::kEventuallyNonincreasing;
  if (s == "eventually-strictly-decreasing") return SequenceKind::kEventuallyStrictlyDecreasing;
  throw std::invalid_argument("unknown sequence kind: " + s);
}

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kNonincreasing: return "nonincreasing";
    case SequenceKind::kStrictlyDecreasing: return "strictly-decreasing";
    case SequenceKind::kEventuallyNonincreasing: return "eventually-nonincreasing";
    case SequenceKind::kEventuallyStrictlyDecreasing: return "eventually-strictly-decreasing";
  }
  return "?";
}

SamplerResult sequence_sampler(const PiecewiseLinearGauge& mu, SequenceKind kind,
                               std::uint64_t seed, int n_sequences) {
  mu.require_valid();
  if (n_sequences < 1) throw std::invalid_argument("sequence_sampler: n must be >= 1");

  const bool allow_ties = (kind == SequenceKind::kNonincreasing ||
                           kind == SequenceKind::kEventuallyNonincreasing);
  const bool with_prefix = (kind == SequenceKind::kEventuallyNonincreasing ||
                            kind == SequenceKind::kEventuallyStrictlyDecreasing);
  // 40 halvings close any right limit to well under 2^-20 while the offsets
  // stay large enough that t + step remains strictly above t in doubles.
  constexpr int kMaxHalvings = 40;

  Rng rng(seed);
  SamplerResult best;
  best.sup = -1.0;

  for (int s = 0; s < n_sequences; ++s) {
    const int i = s % mu.pieces();
    const double t = mu.breakpoints[i];
    const double gap = (i + 1 < mu.pieces()) ? (mu.breakpoints[i + 1] - t) : 1.0;
    const double span = gap * static_cast<double>(rng.range(1, 64)) / 64.0;

    std::vector<double> xs;
    if (with_prefix) {
      // Arbitrary head; only the monotone tail matters for the statements.
      const double top = mu.breakpoints.back() + 2.0;
      for (int p = 0; p < 3; ++p) xs.push_back(top * static_cast<double>(rng.range(0, 64)) / 64.0);
    }
    double step = span;
    double prev = std::numeric_limits<double>::infinity();
    int halvings = 0;
    int tail_count = 0;
    while (halvings < kMaxHalvings && tail_count < kMaxHalvings + 16) {
      if (allow_ties && tail_count > 0 && rng.chance(1, 4)) {
        xs.push_back(xs.back());
        ++tail_count;
        continue;
      }
      const double cand = t + step;
      if (!(cand > t) || !(cand < prev)) break;  // double resolution reached
      xs.push_back(cand);
      prev = cand;
      ++tail_count;
      step *= 0.5;
      ++halvings;
    }

    double sup = 0.0;
    for (double x : xs) sup = std::max(sup, mu.value_at(x));
    if (sup > best.sup) {
      best.sup = sup;
      best.sequence = xs;
    }
  }
  return best;
}

}  // namespace essdist

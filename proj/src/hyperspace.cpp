#include "essdist/hyperspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

namespace essdist {

FiniteSubset FiniteSubset::of(std::vector<int> members, int n) {
  if (members.empty()) throw std::invalid_argument("a subset must be nonempty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.front() < 0 || members.back() >= n) {
    throw std::invalid_argument("subset member out of range");
  }
  return FiniteSubset{std::move(members)};
}

bool FiniteSubset::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool FiniteSubset::subset_of(const FiniteSubset& other) const {
  return std::includes(other.members.begin(), other.members.end(), members.begin(),
                       members.end());
}

double xi(const DistanceFunction& kappa, const FiniteSubset& A, const FiniteSubset& B) {
  if (A.members.empty() || B.members.empty()) {
    throw std::invalid_argument("xi: empty set");
  }
  double sup = 0.0;
  for (int x : A.members) sup = std::max(sup, point_to_set(kappa, x, B.members));
  return sup;
}

double dkappa(const DistanceFunction& kappa, const FiniteSubset& A, const FiniteSubset& B) {
  return std::max(xi(kappa, A, B), xi(kappa, B, A));
}

double hausdorff(const FiniteMetricSpace& space, const FiniteSubset& A, const FiniteSubset& B) {
  if (A.members.empty() || B.members.empty()) {
    throw std::invalid_argument("hausdorff: empty set");
  }
  const DistanceFunction d{space.d};
  double from_b = 0.0;
  for (int x : B.members) from_b = std::max(from_b, point_to_set(d, x, A.members));
  double from_a = 0.0;
  for (int x : A.members) from_a = std::max(from_a, point_to_set(d, x, B.members));
  return std::max(from_b, from_a);
}

namespace {

using Mask = std::uint32_t;

std::vector<int> mask_members(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

// pts[x * full + m] = min_{y in m} kappa(x, y), by lowest-bit recursion.
std::vector<double> point_to_subset_table(const SquareMatrix& k) {
  const int n = k.n();
  const Mask full = Mask{1} << n;
  std::vector<double> pts(static_cast<size_t>(n) * full,
                          std::numeric_limits<double>::infinity());
  for (int x = 0; x < n; ++x) {
    double* row = pts.data() + static_cast<size_t>(x) * full;
    for (Mask m = 1; m < full; ++m) {
      const int low = std::countr_zero(m);
      const Mask rest = m & (m - 1);
      row[m] = rest == 0 ? k(x, low) : std::min(k(x, low), row[rest]);
    }
  }
  return pts;
}

}  // namespace

std::vector<double> xi_table_all_subsets(const DistanceFunction& kappa) {
  const int n = kappa.size();
  if (n > kExhaustiveSubsetLimit) {
    throw std::invalid_argument("xi_table_all_subsets: space too large for exhaustive tables");
  }
  const Mask full = Mask{1} << n;
  const std::vector<double> pts = point_to_subset_table(kappa.kappa);

  // xi[A][B] = max_{x in A} pts[x][B], again by lowest-bit recursion on A.
  std::vector<double> xi_tab(static_cast<size_t>(full) * full, 0.0);
  for (Mask a = 1; a < full; ++a) {
    const int low = std::countr_zero(a);
    const Mask rest = a & (a - 1);
    double* row = xi_tab.data() + static_cast<size_t>(a) * full;
    const double* plow = pts.data() + static_cast<size_t>(low) * full;
    if (rest == 0) {
      std::copy(plow + 1, plow + full, row + 1);
    } else {
      const double* rrow = xi_tab.data() + static_cast<size_t>(rest) * full;
      for (Mask b = 1; b < full; ++b) row[b] = std::max(plow[b], rrow[b]);
    }
  }
  return xi_tab;
}

namespace {

// In place: v[a][b] = v[b][a] = max(v[a][b], v[b][a]), in cache-friendly
// tile pairs.
void symmetrize_max(std::vector<double>& v, Mask full) {
  constexpr Mask kBlock = 64;
  for (Mask ab = 0; ab < full; ab += kBlock) {
    for (Mask bb = ab; bb < full; bb += kBlock) {
      const Mask ae = std::min<Mask>(ab + kBlock, full);
      const Mask be = std::min<Mask>(bb + kBlock, full);
      for (Mask a = ab; a < ae; ++a) {
        for (Mask b = std::max(bb, a + 1); b < be; ++b) {
          const size_t ij = static_cast<size_t>(a) * full + b;
          const size_t ji = static_cast<size_t>(b) * full + a;
          const double m = std::max(v[ij], v[ji]);
          v[ij] = m;
          v[ji] = m;
        }
      }
    }
  }
}

}  // namespace

std::vector<double> dkappa_table_all_subsets(const DistanceFunction& kappa) {
  const int n = kappa.size();
  const Mask full = Mask{1} << n;
  std::vector<double> tab = xi_table_all_subsets(kappa);
  symmetrize_max(tab, full);
  return tab;
}

std::vector<double> hausdorff_table_all_subsets(const FiniteMetricSpace& space) {
  const int n = space.size();
  if (n > kExhaustiveSubsetLimit) {
    throw std::invalid_argument("hausdorff_table_all_subsets: space too large");
  }
  const Mask full = Mask{1} << n;
  const SquareMatrix& d = space.d;

  // Direct member loops rather than the DP above, so the comparison against
  // dkappa_table is a genuine double computation.
  std::vector<double> dist(static_cast<size_t>(n) * full, 0.0);
  for (int x = 0; x < n; ++x) {
    for (Mask m = 1; m < full; ++m) {
      double best = std::numeric_limits<double>::infinity();
      Mask rest = m;
      while (rest != 0) {
        const int y = std::countr_zero(rest);
        rest &= rest - 1;
        best = std::min(best, d(x, y));
      }
      dist[static_cast<size_t>(x) * full + m] = best;
    }
  }

  // sup_over[B][A] = sup_{x in B} d(x, A); H is its symmetric max.
  std::vector<double> sup_over(static_cast<size_t>(full) * full, 0.0);
  for (Mask b = 1; b < full; ++b) {
    const int low = std::countr_zero(b);
    const Mask rest = b & (b - 1);
    double* row = sup_over.data() + static_cast<size_t>(b) * full;
    const double* dlow = dist.data() + static_cast<size_t>(low) * full;
    if (rest == 0) {
      std::copy(dlow + 1, dlow + full, row + 1);
    } else {
      const double* rrow = sup_over.data() + static_cast<size_t>(rest) * full;
      for (Mask a = 1; a < full; ++a) row[a] = std::max(dlow[a], rrow[a]);
    }
  }
  symmetrize_max(sup_over, full);
  return sup_over;
}

namespace {

struct TripleViolation {
  Mask a = 0, b = 0, c = 0;
  double lhs = 0.0, via1 = 0.0, via2 = 0.0;

  bool operator<(const TripleViolation& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

// Scans lhs[A][B] <= left[A][C] + right[B][C] over all triples and returns
// the lexicographically least violation. `left` and `right` are row-major
// tables addressed by their first index, so the inner loop is contiguous.
// With symmetric_pairs the (A,B) range is restricted to A <= B, valid when
// lhs is symmetric and left == right (the D_kappa triangle).
std::optional<TripleViolation> scan_triangle(const std::vector<double>& lhs,
                                             const std::vector<double>& left,
                                             const std::vector<double>& right, Mask full,
                                             bool symmetric_pairs = false) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<Mask>(hw, full - 1));
  std::vector<std::optional<TripleViolation>> found(workers);

  auto run = [&](unsigned w) {
    std::optional<TripleViolation>& best = found[w];
    const Mask lo = 1 + static_cast<Mask>((static_cast<std::uint64_t>(full - 1) * w) / workers);
    const Mask hi = 1 + static_cast<Mask>((static_cast<std::uint64_t>(full - 1) * (w + 1)) / workers);
    // A-blocking keeps the scan memory-bound traffic at one pass over
    // `right` per block instead of one per row: each rb row is loaded once
    // and reused from cache across the block.
    constexpr Mask kABlock = 32;
    for (Mask a0 = lo; a0 < hi && !best; a0 += kABlock) {
      const Mask a1 = std::min<Mask>(a0 + kABlock, hi);
      std::vector<std::optional<TripleViolation>> local(a1 - a0);
      Mask open = a1 - a0;  // a's in the block still scanning
      for (Mask b = symmetric_pairs ? a0 : 1; b < full && open != 0; ++b) {
        const double* rb = right.data() + static_cast<size_t>(b) * full;
        for (Mask a = a0; a < a1; ++a) {
          if (local[a - a0]) continue;
          if (symmetric_pairs && b < a) continue;
          const double bound = lhs[static_cast<size_t>(a) * full + b];
          if (bound <= 0.0) continue;
          const double* la = left.data() + static_cast<size_t>(a) * full;
          // Four independent accumulator chains; the strict-FP min
          // reduction does not vectorize on its own.
          double m0 = std::numeric_limits<double>::infinity();
          double m1 = m0, m2 = m0, m3 = m0;
          Mask c = 1;
          for (; c + 4 <= full; c += 4) {
            m0 = std::min(m0, la[c] + rb[c]);
            m1 = std::min(m1, la[c + 1] + rb[c + 1]);
            m2 = std::min(m2, la[c + 2] + rb[c + 2]);
            m3 = std::min(m3, la[c + 3] + rb[c + 3]);
          }
          for (; c < full; ++c) m0 = std::min(m0, la[c] + rb[c]);
          const double m = std::min(std::min(m0, m1), std::min(m2, m3));
          if (m < bound) {
            for (c = 1; c < full; ++c) {
              if (la[c] + rb[c] < bound) {
                local[a - a0] = TripleViolation{a, b, c, bound, la[c], rb[c]};
                --open;
                break;
              }
            }
          }
        }
      }
      for (const auto& f : local) {
        if (f && (!best || *f < *best)) best = f;
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  std::optional<TripleViolation> merged;
  for (const auto& f : found) {
    if (f && (!merged || *f < *merged)) merged = f;
  }
  return merged;
}

Witness triple_witness(const TripleViolation& v, const char* what) {
  Witness w;
  w.sets = {mask_members(v.a), mask_members(v.b), mask_members(v.c)};
  w.values = {v.lhs, v.via1, v.via2};
  w.detail = what;
  return w;
}

HyperspaceReport exhaustive_check(const DistanceFunction& kappa) {
  const int n = kappa.size();
  const Mask full = Mask{1} << n;

  HyperspaceReport report;
  report.exhaustive = true;
  report.sets_checked = full - 1;

  std::vector<double> xi_tab = xi_table_all_subsets(kappa);

  // (i) xi(A,B) = 0 iff A is a subset of B.
  {
    Verdict v = Verdict::ok();
    for (Mask a = 1; a < full && v.pass; ++a) {
      const double* row = xi_tab.data() + static_cast<size_t>(a) * full;
      for (Mask b = 1; b < full; ++b) {
        const bool zero = row[b] == 0.0;
        const bool subset = (a & ~b) == 0;
        if (zero != subset) {
          Witness w;
          w.sets = {mask_members(a), mask_members(b)};
          w.values = {row[b]};
          w.detail = zero ? "xi(A,B) = 0 but A is not a subset of B"
                          : "A is a subset of B but xi(A,B) != 0";
          v = Verdict::fail(w);
          break;
        }
      }
    }
    report.verdicts["subset_iff_zero"] = v;
  }

  // (ii) xi(A,B) <= xi(A,C) + xi(C,B). right[b][c] must address xi(C,B), so
  // build the transpose once (blocked; the table is large).
  {
    std::vector<double> xi_t(static_cast<size_t>(full) * full, 0.0);
    constexpr Mask kBlock = 64;
    for (Mask ab = 1; ab < full; ab += kBlock) {
      for (Mask bb = 1; bb < full; bb += kBlock) {
        const Mask ae = std::min<Mask>(ab + kBlock, full);
        const Mask be = std::min<Mask>(bb + kBlock, full);
        for (Mask a = ab; a < ae; ++a) {
          for (Mask b = bb; b < be; ++b) {
            xi_t[static_cast<size_t>(b) * full + a] = xi_tab[static_cast<size_t>(a) * full + b];
          }
        }
      }
    }
    auto viol = scan_triangle(xi_tab, xi_tab, xi_t, full);
    report.verdicts["xi_triangle"] =
        viol ? Verdict::fail(triple_witness(*viol, "xi(A,B) > xi(A,C) + xi(C,B)"))
             : Verdict::ok();

    // (iii): the four metric axioms of D_kappa = max{xi(A,B), xi(B,A)}.
    // Overwrite the transpose buffer with D to keep peak memory at two
    // tables.
    for (size_t i = 0; i < xi_t.size(); ++i) xi_t[i] = std::max(xi_t[i], xi_tab[i]);
    const std::vector<double>& dk = xi_t;

    {
      Verdict v = Verdict::ok();
      for (Mask a = 1; a < full && v.pass; ++a) {
        const double da = dk[static_cast<size_t>(a) * full + a];
        if (da != 0.0) {
          Witness w;
          w.sets = {mask_members(a)};
          w.values = {da};
          w.detail = "D(A,A) != 0";
          v = Verdict::fail(w);
        }
      }
      report.verdicts["dkappa_identity"] = v;
    }
    {
      Verdict v = Verdict::ok();
      for (Mask a = 1; a < full && v.pass; ++a) {
        const double* row = dk.data() + static_cast<size_t>(a) * full;
        for (Mask b = 1; b < full; ++b) {
          if (b != a && !(row[b] > 0.0)) {
            Witness w;
            w.sets = {mask_members(a), mask_members(b)};
            w.values = {row[b]};
            w.detail = "D(A,B) = 0 for A != B";
            v = Verdict::fail(w);
            break;
          }
        }
      }
      report.verdicts["dkappa_positivity"] = v;
    }
    {
      Verdict v = Verdict::ok();
      for (Mask a = 1; a < full && v.pass; ++a) {
        for (Mask b = a + 1; b < full; ++b) {
          const double ab = dk[static_cast<size_t>(a) * full + b];
          const double ba = dk[static_cast<size_t>(b) * full + a];
          if (ab != ba) {
            Witness w;
            w.sets = {mask_members(a), mask_members(b)};
            w.values = {ab, ba};
            w.detail = "D(A,B) != D(B,A)";
            v = Verdict::fail(w);
            break;
          }
        }
      }
      report.verdicts["dkappa_symmetry"] = v;
    }
    {
      // D is symmetric, so D(C,B) reads from row B and pairs with A > B add
      // nothing.
      auto viol = scan_triangle(dk, dk, dk, full, /*symmetric_pairs=*/true);
      report.verdicts["dkappa_triangle"] =
          viol ? Verdict::fail(triple_witness(*viol, "D(A,B) > D(A,C) + D(C,B)"))
               : Verdict::ok();
    }
  }
  return report;
}

HyperspaceReport sample_check(const DistanceFunction& kappa,
                              const std::vector<FiniteSubset>& sets) {
  HyperspaceReport report;
  report.exhaustive = false;
  report.sets_checked = sets.size();
  const size_t m = sets.size();

  std::vector<double> xs(m * m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) xs[i * m + j] = xi(kappa, sets[i], sets[j]);
  }

  auto set_witness = [&](std::initializer_list<size_t> idx, std::vector<double> values,
                         std::string detail) {
    Witness w;
    for (size_t i : idx) w.sets.push_back(sets[i].members);
    w.values = std::move(values);
    w.detail = std::move(detail);
    return w;
  };

  {
    Verdict v = Verdict::ok();
    for (size_t i = 0; i < m && v.pass; ++i) {
      for (size_t j = 0; j < m; ++j) {
        const bool zero = xs[i * m + j] == 0.0;
        const bool subset = sets[i].subset_of(sets[j]);
        if (zero != subset) {
          v = Verdict::fail(set_witness({i, j}, {xs[i * m + j]},
                                        "xi(A,B) = 0 iff A subset of B fails"));
          break;
        }
      }
    }
    report.verdicts["subset_iff_zero"] = v;
  }
  {
    Verdict v = Verdict::ok();
    for (size_t i = 0; i < m && v.pass; ++i) {
      for (size_t j = 0; j < m && v.pass; ++j) {
        for (size_t c = 0; c < m; ++c) {
          if (xs[i * m + j] > xs[i * m + c] + xs[c * m + j]) {
            v = Verdict::fail(set_witness({i, j, c},
                                          {xs[i * m + j], xs[i * m + c], xs[c * m + j]},
                                          "xi(A,B) > xi(A,C) + xi(C,B)"));
            break;
          }
        }
      }
    }
    report.verdicts["xi_triangle"] = v;
  }
  auto dk = [&](size_t i, size_t j) { return std::max(xs[i * m + j], xs[j * m + i]); };
  {
    Verdict v = Verdict::ok();
    for (size_t i = 0; i < m && v.pass; ++i) {
      if (dk(i, i) != 0.0) {
        v = Verdict::fail(set_witness({i}, {dk(i, i)}, "D(A,A) != 0"));
      }
    }
    report.verdicts["dkappa_identity"] = v;
  }
  {
    Verdict v = Verdict::ok();
    for (size_t i = 0; i < m && v.pass; ++i) {
      for (size_t j = 0; j < m; ++j) {
        if (sets[i].members != sets[j].members && !(dk(i, j) > 0.0)) {
          v = Verdict::fail(set_witness({i, j}, {dk(i, j)}, "D(A,B) = 0 for A != B"));
          break;
        }
      }
    }
    report.verdicts["dkappa_positivity"] = v;
  }
  {
    Verdict v = Verdict::ok();
    for (size_t i = 0; i < m && v.pass; ++i) {
      for (size_t j = 0; j < m; ++j) {
        if (dk(i, j) != dk(j, i)) {
          v = Verdict::fail(set_witness({i, j}, {dk(i, j), dk(j, i)}, "D(A,B) != D(B,A)"));
          break;
        }
      }
    }
    report.verdicts["dkappa_symmetry"] = v;
  }
  {
    Verdict v = Verdict::ok();
    for (size_t i = 0; i < m && v.pass; ++i) {
      for (size_t j = 0; j < m && v.pass; ++j) {
        for (size_t c = 0; c < m; ++c) {
          if (dk(i, j) > dk(i, c) + dk(c, j)) {
            v = Verdict::fail(set_witness({i, j, c}, {dk(i, j), dk(i, c), dk(c, j)},
                                          "D(A,B) > D(A,C) + D(C,B)"));
            break;
          }
        }
      }
    }
    report.verdicts["dkappa_triangle"] = v;
  }
  return report;
}

}  // namespace

bool HyperspaceReport::all_pass() const {
  for (const auto& [k, v] : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

nlohmann::json HyperspaceReport::to_json() const {
  nlohmann::json vs = nlohmann::json::object();
  for (const auto& [k, v] : verdicts) vs[k] = v.to_json();
  return nlohmann::json{{"all_pass", all_pass()},
                        {"exhaustive", exhaustive},
                        {"sets_checked", sets_checked},
                        {"verdicts", vs}};
}

HyperspaceReport check_theorem13(const DistanceFunction& kappa,
                                 const std::vector<FiniteSubset>& sets) {
  AxiomReport cls = classify(kappa);
  if (!cls.passed("is_e0_distance")) {
    std::string failed;
    for (const char* key : {"tau1", "tau2", "tau3", "zero_diagonal"}) {
      if (!cls.passed(key)) {
        failed = key;
        break;
      }
    }
    throw std::invalid_argument(
        "check_theorem13 requires an e0-distance; failed axiom: " + failed);
  }
  if (kappa.size() <= kExhaustiveSubsetLimit) return exhaustive_check(kappa);
  if (sets.empty()) {
    throw std::invalid_argument(
        "check_theorem13: a subset sample is required above " +
        std::to_string(kExhaustiveSubsetLimit) + " points");
  }
  return sample_check(kappa, sets);
}

}  // namespace essdist

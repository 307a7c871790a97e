#pragma once

#include <cstdint>

namespace essdist {

// Deterministic 64-bit generator (splitmix64). <random> distributions are
// implementation-defined, which would make corpus hashes differ across
// standard libraries; this generator is pinned by construction.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Multiple of 2^-6 with numerator in [lo_k, hi_k]. All generated distance
  // values go through this so that checker arithmetic stays exact.
  double dyadic64(long long lo_k, long long hi_k) {
    return static_cast<double>(range(lo_k, hi_k)) / 64.0;
  }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream, used for reject-and-reseed loops.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ull * (salt + 0x243f6a8885a308d3ull)));
  r.next();
  return r.next();
}

}  // namespace essdist

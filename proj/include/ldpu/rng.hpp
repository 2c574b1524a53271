// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic RNG with named substreams. All distributions are generated from
// raw mt19937_64 output (53-bit uniforms, Box-Muller Gaussians, inverse-CDF
// Laplace) rather than std::*_distribution, so a pinned seed produces the same
// sequence on every platform and build.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ldpu {

// splitmix64 finalizer; used both to condition seeds and to derive substreams.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  // Independent generator for (this seed, stream id); derivation is stateless,
  // so substream(k) is the same no matter how much this generator has been used.
  Rng substream(std::uint64_t stream_id) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream_id + 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller (one value per call; no cached spare, to keep
  // call sequences trivially reproducible).
  double gaussian() {
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ldpu

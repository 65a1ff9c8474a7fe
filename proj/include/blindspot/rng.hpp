// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace blindspot {

// Seeded random source with explicitly implemented distributions.
// std::mt19937_64 output is fixed by the standard; the distribution
// mappings below are our own, so identical seeds give identical streams
// on every platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Independent stream: stream 0 differs from Rng(seed).
  Rng(uint64_t seed, uint64_t stream) : engine_(mix(seed, stream)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(bounded(span));
  }

  // Standard normal via Box-Muller; second value cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // Poisson draw; exact for any lambda >= 0 (chunked Knuth product method).
  int64_t poisson(double lambda) {
    int64_t total = 0;
    while (lambda > 500.0) {
      total += poisson_knuth(500.0);
      lambda -= 500.0;
    }
    return total + poisson_knuth(lambda);
  }

 private:
  static uint64_t mix(uint64_t seed, uint64_t stream) {
    // splitmix64 finalizer over (seed, stream + 1)
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased bounded draw by rejection.
  uint64_t bounded(uint64_t span) {
    if (span == 0) return next_u64();
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % span;
  }

  int64_t poisson_knuth(double lambda) {
    if (lambda <= 0.0) return 0;
    const double threshold = std::exp(-lambda);
    int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > threshold);
    return k - 1;
  }

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace blindspot

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace netmon {

using Engine = std::mt19937_64;

/// splitmix64 finalizer; used to spread (seed, purpose, index) triples into
/// well-separated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Purposes get disjoint streams so that, for example, changing edge rates at
/// one time point cannot shift the draws of any other time point.
enum class Stream : std::uint64_t {
  LatentPositions = 1,
  Communities = 2,
  Propensities = 3,
  Edges = 4,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream purpose, std::uint64_t index = 0) {
  return mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(purpose)) + index);
}

inline Engine make_engine(std::uint64_t seed, Stream purpose, std::uint64_t index = 0) {
  return Engine(stream_seed(seed, purpose, index));
}

/// Seed of replicate r in a scenario: base_seed + r.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t replicate) {
  return base_seed + replicate;
}

/// Uniform double in [0, 1) from the top 53 bits; cheaper and more portable
/// than std::uniform_real_distribution for per-edge draws.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Poisson draw. Small rates use sequential inversion (one uniform plus a
/// short walk up the CDF); large rates defer to the standard library.
inline std::uint32_t draw_poisson(Engine& engine, double rate) {
  if (!(rate > 0.0)) return 0;
  if (rate < 30.0) {
    double p = std::exp(-rate);
    double cdf = p;
    const double u = uniform01(engine);
    std::uint32_t k = 0;
    while (u >= cdf && k < 1000) {
      ++k;
      p *= rate / k;
      cdf += p;
    }
    return k;
  }
  return std::poisson_distribution<std::uint32_t>(rate)(engine);
}

}  // namespace netmon

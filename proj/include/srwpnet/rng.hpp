#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace srwpnet {

/// PCG-XSH-RR 64/32 generator (O'Neill). Small state, good statistics, and a
/// stream parameter, so independent substreams can be derived from a single
/// master seed: rng for trial i is Pcg32(seed, i). Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
class Pcg32 {
 public:
  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t seed = 0x853c49e6748fea9bULL, std::uint64_t stream = 0) {
    inc_ = (stream << 1u) | 1u;
    state_ = 0u;
    (*this)();
    state_ += seed;
    (*this)();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }

  result_type operator()() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

/// SplitMix64 mix step; used to spread (trial, substream) pairs over the
/// 63-bit Pcg32 stream space without collisions between structured indices.
inline std::uint64_t mix_stream(std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Pcg32& rng) {
  std::uint64_t hi = rng();
  std::uint64_t lo = rng();
  return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

inline double uniform(Pcg32& rng, double a, double b) {
  return a + (b - a) * uniform_double(rng);
}

/// Uniform angle in [0, 2*pi).
inline double uniform_angle(Pcg32& rng) {
  return 2.0 * M_PI * uniform_double(rng);
}

/// Unit-mean exponential variate.
inline double exponential(Pcg32& rng) {
  return -std::log1p(-uniform_double(rng));
}

/// Poisson variate with the given mean.
inline long poisson(Pcg32& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<long> dist(mean);
  return dist(rng);
}

}  // namespace srwpnet

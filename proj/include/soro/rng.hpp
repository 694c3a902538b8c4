#pragma once

#include <cstdint>

namespace soro {

// Stateless 64-bit finalizer (splitmix64). Used both as the PRNG step and
// for deriving independent substream seeds.
inline std::uint64_t hash_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Mix coordinates into a master seed so per-pair / per-trial streams are
// reproducible and do not overlap.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t h = hash_mix(master ^ 0x5bf03635f0935ad1ULL);
  h = hash_mix(h ^ a);
  h = hash_mix(h ^ b);
  return h;
}

// Deterministic generator; every random choice in the library flows through
// an explicit seed, never ambient entropy. The implementation is fixed here
// (not delegated to std:: distributions) so output is stable across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); n >= 1. Multiply-shift; bias is < n / 2^64.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace soro

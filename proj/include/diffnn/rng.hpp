#ifndef DIFFNN_RNG_HPP
#define DIFFNN_RNG_HPP

#include <cstdint>
#include <random>

namespace diffnn {

// SplitMix64 finalizer; good avalanche, cheap, stateless.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent child seed from a base seed and a salt so that
// per-neuron / per-instance streams never overlap.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  return splitmix64(base ^ splitmix64(salt));
}

// Deterministic uniform draws on top of std::mt19937_64. The engine is
// bit-exact per the standard, and the [0,1) mapping uses only exact
// float operations, so streams replay identically for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53 random bits.
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi]; never exceeds the endpoints.
  double uniform(double lo, double hi) { return lo + u01() * (hi - lo); }

  // Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(u01() * static_cast<double>(n));
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace diffnn

#endif  // DIFFNN_RNG_HPP

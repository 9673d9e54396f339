#pragma once

#include <array>
#include <cstdint>

namespace liebundle {

/// xoshiro256** with splitmix64 seeding. Output is defined by the algorithm
/// alone, so streams reproduce bit-for-bit across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  /// Deterministic substream: used to give each batch item its own generator
  /// so results are independent of execution order.
  static Rng derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = stream + 0x9e3779b97f4a7c15ULL;
    return Rng(a ^ splitmix64(t));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Magnitude in [lo, hi], sign random. Used for "nonzero" parameter draws.
  double signed_magnitude(double lo, double hi) {
    const double m = uniform(lo, hi);
    return (next_u64() & 1u) ? m : -m;
  }

  bool coin() { return (next_u64() & 1u) != 0; }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace liebundle

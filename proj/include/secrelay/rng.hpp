#pragma once

#include <cstdint>

namespace secrelay {

// splitmix64, used to derive independent stream seeds.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** with an explicit, platform-independent uniform mapping.
// std::uniform_real_distribution is implementation-defined, which would
// break the byte-identical rerun guarantee of the experiment harness.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Seed for the i-th parallel stream of a master seed.  Streams indexed by
// position so that enlarging a budget keeps the prefix of streams intact.
inline uint64_t stream_seed(uint64_t master, uint64_t index) {
  uint64_t s = master ^ 0x5851f42d4c957f2dULL;
  uint64_t a = splitmix64(s);
  return a + 0x9e3779b97f4a7c15ULL * (index + 1);
}

}  // namespace secrelay

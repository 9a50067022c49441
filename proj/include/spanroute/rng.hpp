#pragma once

#include <cstdint>

namespace spanroute {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (splitmix64(b) + kGolden + (a << 6) + (a >> 2)));
}

/// Uniform double in [0, 1) from 53 high bits.
inline double u01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// Counter-based stream keyed by (seed, tag): value i is a pure function of
/// the key and i, so streams never interfere.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t tag) : key_(mix(seed, tag)) {}

  std::uint64_t next_u64() { return mix(key_, counter_++); }
  double next_u01() { return u01(next_u64()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace spanroute

#pragma once

#include <cstdint>

namespace macrograph::detail {

// MurmurHash3 64-bit finalizer. Fixed so fingerprints and seeded
// projections are identical across platforms and releases.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ (mix64(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// Counter-based stream: value i of the stream keyed by `key` depends only
// on (key, i), never on how many values were drawn before.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(mix64(key ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // uniform on (0, 1]; never returns 0 so it is safe under log()
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace macrograph::detail

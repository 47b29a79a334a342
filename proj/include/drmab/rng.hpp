#pragma once

#include <cstdint>
#include <random>

namespace drmab {

enum class Channel : std::uint64_t { reward = 1, duel = 2, policy = 3 };

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of the sub-stream for (repetition, channel):
//   mix64(mix64(base_seed ^ mix64(rep)) + channel)
// Depends only on its arguments, so scheduling order cannot change results.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t rep, Channel channel) {
  return mix64(mix64(base_seed ^ mix64(rep)) + static_cast<std::uint64_t>(channel));
}

// A 64-bit Mersenne Twister sub-stream. Uniform variates are built from the top
// 53 bits directly so the bit stream does not depend on the standard library's
// distribution implementations.
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t rep, Channel channel)
      : seed_(derive_seed(base_seed, rep, channel)), engine_(seed_) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace drmab

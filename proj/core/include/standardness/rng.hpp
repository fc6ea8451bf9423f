#pragma once
// Splittable seeded random streams.
//
// Stream derivation rule (version-pinned; seeded experiment output depends on
// it byte for byte):
//
//   w1 = mix64(master_seed ^ (0x9E3779B97F4A7C15 * (cell_index + 1)))
//   w2 = mix64(master_seed ^ (0xC2B2AE3D27D4EB4F * (rep_index  + 1)))
//   state = { mix64(w1), mix64(w1 ^ mix64(w2 + 0x9E3779B97F4A7C15)),
//             mix64(w2), mix64(w2 ^ mix64(w1 + 0xC2B2AE3D27D4EB4F)) }
//
// where mix64 is the splitmix64 finalizer. mix64 and odd-constant
// multiplication are bijections on 64-bit words, so for a fixed master seed
// distinct (cell, rep) pairs give distinct (w1, w2), and state words 0 and 2
// are bijective images of those: states never collide. Words 1 and 3 fold the
// opposite half in so every output, including the first, depends on both
// indices. The all-zero state would need mix64(w1) = mix64(w2) = 0, which
// pins (w1, w2) to a single pair whose folded words are nonzero (asserted in
// the test suite). Streams are value types: copy freely, never share one
// instance across threads mid-sequence.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace standardness {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kRepSalt = 0xC2B2AE3D27D4EB4FULL;

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256** with fixed word consumption per draw.
class Stream {
 public:
  Stream(std::uint64_t w1, std::uint64_t w2)
      : s_{mix64(w1), mix64(w1 ^ mix64(w2 + kGolden)),
           mix64(w2), mix64(w2 ^ mix64(w1 + kRepSalt))} {}

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // standard normal; always consumes exactly two uniforms
  double next_gaussian() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps the log finite
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_;
};

struct SeedSpec {
  std::uint64_t master_seed = 0;

  // Child stream for (cell, replication); see the derivation rule above.
  Stream stream(std::uint64_t cell_index, std::uint64_t rep_index) const {
    const std::uint64_t w1 = mix64(master_seed ^ (kGolden * (cell_index + 1)));
    const std::uint64_t w2 = mix64(master_seed ^ (kRepSalt * (rep_index + 1)));
    return Stream(w1, w2);
  }
};

}  // namespace standardness

#pragma once

#include <cstdint>

namespace ecmo {

/// Counter-based random stream. Each draw is a pure function of
/// (seed, stream, key), so identical seeds reproduce identical values no
/// matter how calls interleave across workers.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : base_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL))) {}

  /// Uniform double in (0, 1).
  double uniform(std::uint64_t key) const {
    const std::uint64_t bits = mix(base_ ^ mix(key + 0x94d049bb133111ebULL));
    // 53 mantissa bits, offset so the value is never exactly 0.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller from two decorrelated uniforms.
  double normal(std::uint64_t key) const;

  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Order-insensitive composite key for nested indices.
  static std::uint64_t key(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                           std::uint64_t d = 0) {
    std::uint64_t h = mix(a + 0x2545f4914f6cdd1dULL);
    h = mix(h ^ (b + 0x6c62272e07bb0142ULL));
    h = mix(h ^ (c + 0x27220a95fe9d8bc9ULL));
    h = mix(h ^ (d + 0x9ddfea08eb382d69ULL));
    return h;
  }

 private:
  std::uint64_t base_;
};

}  // namespace ecmo

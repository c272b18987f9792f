#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace uvt::rng {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Identifies one deterministic random stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Child stream keyed by a path of integers, e.g. (design, grid, replicate).
  SeedSpec derive(std::initializer_list<std::uint64_t> path) const noexcept {
    std::uint64_t s = mix64(stream_id ^ 0x6A09E667F3BCC908ULL);
    for (std::uint64_t p : path) s = mix64(s ^ mix64(p));
    return {master_seed, s};
  }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// xoshiro256** seeded from a SeedSpec, with the variate transforms the
/// simulation needs. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(SeedSpec seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  /// Uniform integer on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal (Marsaglia polar method).
  double normal() noexcept;

  /// Gamma(shape, 1) by Marsaglia-Tsang; boosted for shape < 1.
  double gamma(double shape) noexcept;

  double chi_square(double df) noexcept { return 2.0 * gamma(0.5 * df); }

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace uvt::rng

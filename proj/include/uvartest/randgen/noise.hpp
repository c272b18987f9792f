#pragma once

#include <cstddef>
#include <vector>

#include "uvartest/randgen/rng.hpp"

namespace uvt::rng {

enum class NoiseFamily { Normal, ScaledT, SkewTStd };

/// A zero-mean noise law with a prescribed variance.
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::Normal;
  double df = 0.0;        // t families
  double skew = 0.0;      // skew-t asymmetry lambda
  double variance = 1.0;

  static NoiseSpec normal(double variance = 1.0) {
    return {NoiseFamily::Normal, 0.0, 0.0, variance};
  }
  static NoiseSpec scaled_t(double df, double variance = 1.0) {
    return {NoiseFamily::ScaledT, df, 0.0, variance};
  }
  static NoiseSpec skew_t(double skew, double df, double variance = 1.0) {
    return {NoiseFamily::SkewTStd, df, skew, variance};
  }

  /// Throws std::domain_error for df <= 2 on t families or variance <= 0.
  void validate() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

struct SkewTMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
};

/// Mean and variance of the skew-t (location 0, scale 1); requires df > 2.
/// skewness is left NaN.
SkewTMoments skew_t_mean_variance(double skew, double df);

/// Mean, variance and skewness; requires df > 3.
SkewTMoments skew_t_moments(double skew, double df);

/// Draws from a NoiseSpec. Cheap to copy; holds no generator state.
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseSpec& spec);

  double operator()(Rng& rng) const noexcept;

  /// Multiplier applied to the raw variate (t or centered skew-t).
  double scale() const noexcept { return scale_; }
  const NoiseSpec& spec() const noexcept { return spec_; }

 private:
  NoiseSpec spec_;
  double scale_ = 1.0;
  double shift_ = 0.0;     // skew-t mean
  double delta_ = 0.0;     // skew-normal delta
  double delta_c_ = 0.0;   // sqrt(1 - delta^2)
};

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t count,
                                 SeedSpec seed);

}  // namespace uvt::rng

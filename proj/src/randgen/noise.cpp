#include "uvartest/randgen/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uvartest/core/tails.hpp"

namespace uvt::rng {
namespace {

double skew_delta(double skew) { return skew / std::sqrt(1.0 + skew * skew); }

// b_nu = sqrt(nu / pi) Gamma((nu - 1) / 2) / Gamma(nu / 2)
double b_nu(double df) {
  return std::sqrt(df / std::numbers::pi) *
         std::exp(log_gamma(0.5 * (df - 1.0)) - log_gamma(0.5 * df));
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::domain_error("noise variance must be positive and finite");
  }
  if (family != NoiseFamily::Normal && !(df > 2.0)) {
    throw std::domain_error("t-family noise needs df > 2 for a finite variance");
  }
  if (family == NoiseFamily::SkewTStd && !std::isfinite(skew)) {
    throw std::domain_error("skew-t asymmetry must be finite");
  }
}

SkewTMoments skew_t_mean_variance(double skew, double df) {
  if (!(df > 2.0)) throw std::domain_error("skew-t variance needs df > 2");
  const double mean = b_nu(df) * skew_delta(skew);
  SkewTMoments m;
  m.mean = mean;
  m.variance = df / (df - 2.0) - mean * mean;
  m.skewness = std::numeric_limits<double>::quiet_NaN();
  return m;
}

SkewTMoments skew_t_moments(double skew, double df) {
  if (!(df > 3.0)) throw std::domain_error("skew-t skewness needs df > 3");
  SkewTMoments m = skew_t_mean_variance(skew, df);
  const double delta = skew_delta(skew);
  const double third = df * (3.0 - delta * delta) / (df - 3.0) -
                       3.0 * df / (df - 2.0) + 2.0 * m.mean * m.mean;
  m.skewness = m.mean * third / std::pow(m.variance, 1.5);
  return m;
}

NoiseSampler::NoiseSampler(const NoiseSpec& spec) : spec_(spec) {
  spec_.validate();
  switch (spec_.family) {
    case NoiseFamily::Normal:
      scale_ = std::sqrt(spec_.variance);
      break;
    case NoiseFamily::ScaledT:
      scale_ = std::sqrt(spec_.variance * (spec_.df - 2.0) / spec_.df);
      break;
    case NoiseFamily::SkewTStd: {
      const SkewTMoments m = skew_t_mean_variance(spec_.skew, spec_.df);
      shift_ = m.mean;
      scale_ = std::sqrt(spec_.variance / m.variance);
      delta_ = skew_delta(spec_.skew);
      delta_c_ = std::sqrt(1.0 - delta_ * delta_);
      break;
    }
  }
}

double NoiseSampler::operator()(Rng& rng) const noexcept {
  switch (spec_.family) {
    case NoiseFamily::Normal:
      return scale_ * rng.normal();
    case NoiseFamily::ScaledT: {
      const double z = rng.normal();
      const double v = rng.chi_square(spec_.df);
      return scale_ * z / std::sqrt(v / spec_.df);
    }
    case NoiseFamily::SkewTStd: {
      const double u0 = rng.normal();
      const double u1 = rng.normal();
      const double z = delta_ * std::fabs(u0) + delta_c_ * u1;
      const double v = rng.chi_square(spec_.df);
      const double y = z / std::sqrt(v / spec_.df);
      return scale_ * (y - shift_);
    }
  }
  return 0.0;
}

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t count,
                                 SeedSpec seed) {
  const NoiseSampler sampler(spec);
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& x : out) x = sampler(rng);
  return out;
}

}  // namespace uvt::rng

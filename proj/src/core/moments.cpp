#include "uvartest/core/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "uvartest/core/ustat.hpp"

namespace uvt {

MomentOracle moment_oracle(const Design& design, double sigma_b2,
                           double sigma_e2, double e4) {
  if (!(sigma_b2 >= 0.0)) throw std::domain_error("sigma_b2 must be >= 0");
  if (!(sigma_e2 > 0.0)) throw std::domain_error("sigma_e2 must be > 0");
  const double se4 = sigma_e2 * sigma_e2;
  if (!(e4 >= se4)) {
    throw std::domain_error("E[e^4] must be at least sigma_e2^2");
  }
  const double n = static_cast<double>(design.n());
  const double mn = m_n(design);
  double sum_sq = 0.0;
  MomentOracle o;
  o.var_ui.reserve(design.k());
  for (std::size_t ni : design.sizes()) {
    const double s = static_cast<double>(ni);
    sum_sq += s * s;
    o.var_ui.push_back(e4 / s - (s - 3.0) * se4 / ((s - 1.0) * s));
  }
  const double pairs = 0.5 * n * (n - 1.0);
  o.e_bn = sigma_b2 * (n * n - sum_sq) / (n * (n - 1.0));
  o.var_bn_null = se4 * mn / (pairs * pairs);
  o.lambda_n = mn / (n * n * n);
  // sigma_b2 = delta^2 / sqrt(n)  =>  delta^2 = sigma_b2 * sqrt(n).
  o.shift = sigma_b2 * std::sqrt(n) / (2.0 * sigma_e2 * std::sqrt(o.lambda_n));
  return o;
}

double local_shift(const Design& design, double delta, double sigma_e2) {
  if (!(sigma_e2 > 0.0)) throw std::domain_error("sigma_e2 must be > 0");
  const double n = static_cast<double>(design.n());
  const double lambda = m_n(design) / (n * n * n);
  return delta * delta / (2.0 * sigma_e2 * std::sqrt(lambda));
}

double icc(double sigma_b2, double sigma_e2) {
  if (!(sigma_e2 > 0.0)) throw std::domain_error("sigma_e2 must be > 0");
  if (!(sigma_b2 >= 0.0)) throw std::domain_error("sigma_b2 must be >= 0");
  return sigma_b2 / (sigma_b2 + sigma_e2);
}

double kappa(const Design& design) {
  if (design.balanced()) return 1.0;
  const double k = static_cast<double>(design.k());
  double mean = 0.0;
  for (std::size_t s : design.sizes()) mean += static_cast<double>(s);
  mean /= k;
  double var = 0.0;
  for (std::size_t s : design.sizes()) {
    const double d = static_cast<double>(s) - mean;
    var += d * d;
  }
  var /= k;
  return 1.0 / (1.0 + var / (mean * mean));
}

}  // namespace uvt

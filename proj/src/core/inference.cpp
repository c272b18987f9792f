#include "uvartest/core/inference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uvartest/core/errors.hpp"
#include "uvartest/core/tails.hpp"

namespace uvt {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

double pairs(const Design& d) {
  const double n = static_cast<double>(d.n());
  return 0.5 * n * (n - 1.0);
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::U: return "U";
    case Method::F: return "F";
    case Method::Perm: return "PERM";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  if (s == "U" || s == "u") return Method::U;
  if (s == "F" || s == "f") return Method::F;
  if (s == "PERM" || s == "perm") return Method::Perm;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

double j_statistic(const Design& design, const GroupMoments& moments) {
  const Decomposition dec = decompose(design, moments);
  if (dec.w_n == 0.0) {
    throw DegenerateWithinVariance(
        "within-treatment variance is zero: every group is constant");
  }
  return pairs(design) * dec.b_n / (dec.w_n * std::sqrt(m_n(design)));
}

TestResult u_test(const Design& design, const GroupMoments& moments,
                  double alpha) {
  check_alpha(alpha);
  const Decomposition dec = decompose(design, moments);
  if (dec.w_n == 0.0) {
    throw DegenerateWithinVariance(
        "within-treatment variance is zero: every group is constant");
  }
  const double mn = m_n(design);
  TestResult r;
  r.method = Method::U;
  r.alpha = alpha;
  r.statistic = pairs(design) * dec.b_n / (dec.w_n * std::sqrt(mn));
  r.p_value = normal_sf(r.statistic);
  // p <= alpha is the same event as J_n >= z_alpha, and keeps the boundary
  // case exact without inverting the normal tail.
  r.reject = r.p_value <= alpha;
  r.extras = {{"w_n", dec.w_n},
              {"b_n", dec.b_n},
              {"m_n", mn},
              {"u_pooled", dec.u_pooled},
              {"z_alpha", normal_upper_quantile(alpha)}};
  return r;
}

TestResult u_test(const Dataset& data, double alpha) {
  return u_test(data.design(), group_moments(data), alpha);
}

TestResult f_test(const Design& design, const GroupMoments& moments,
                  double alpha) {
  check_alpha(alpha);
  double ss_within = 0.0;
  double ss_between = 0.0;
  for (std::size_t i = 0; i < design.k(); ++i) {
    ss_within += moments.css[i];
    const double dm = moments.mean[i] - moments.grand_mean;
    ss_between += static_cast<double>(design.size(i)) * dm * dm;
  }
  if (ss_within == 0.0) {
    throw DegenerateWithinVariance(
        "within-treatment sum of squares is zero: every group is constant");
  }
  const double d1 = static_cast<double>(design.k() - 1);
  const double d2 = static_cast<double>(design.n() - design.k());
  TestResult r;
  r.method = Method::F;
  r.alpha = alpha;
  r.statistic = (ss_between / d1) / (ss_within / d2);
  r.p_value = f_sf(r.statistic, d1, d2);
  r.reject = r.p_value <= alpha;
  r.df = std::make_pair(d1, d2);
  r.extras = {{"ss_between", ss_between}, {"ss_within", ss_within}};
  return r;
}

TestResult f_test(const Dataset& data, double alpha) {
  return f_test(data.design(), group_moments(data), alpha);
}

}  // namespace uvt

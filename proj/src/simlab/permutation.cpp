#include "uvartest/simlab/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uvartest/core/errors.hpp"
#include "uvartest/core/ustat.hpp"

namespace uvt::sim {
namespace {

// Relabelled copies of the same split can differ from J_obs in the last
// bits; treat those as ties.
double tie_slack(double j_obs) { return 1e-10 * std::max(1.0, std::fabs(j_obs)); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

bool exceeds(const Design& design, std::span<const double> values, double bound) {
  try {
    return j_statistic(design, group_moments(design, values)) >= bound;
  } catch (const DegenerateWithinVariance&) {
    return false;
  }
}

TestResult make_result(double j_obs, std::size_t exceed, std::size_t total,
                       double alpha) {
  TestResult r;
  r.method = Method::Perm;
  r.alpha = alpha;
  r.statistic = j_obs;
  r.p_value = static_cast<double>(1 + exceed) / static_cast<double>(total + 1);
  r.reject = r.p_value <= alpha;
  r.extras = {{"n_perm", static_cast<double>(total)},
              {"exceedances", static_cast<double>(exceed)}};
  return r;
}

}  // namespace

TestResult permutation_test(const Dataset& data, std::size_t n_perm,
                            rng::SeedSpec seed, double alpha) {
  if (n_perm == 0) throw std::invalid_argument("n_perm must be >= 1");
  check_alpha(alpha);
  const Design& design = data.design();
  const double j_obs = j_statistic(design, group_moments(data));
  const double bound = j_obs - tie_slack(j_obs);

  rng::Rng gen(seed);
  std::vector<double> y(data.values().begin(), data.values().end());
  std::size_t exceed = 0;
  for (std::size_t b = 0; b < n_perm; ++b) {
    for (std::size_t i = y.size() - 1; i > 0; --i) {
      std::swap(y[i], y[gen.below(i + 1)]);
    }
    if (exceeds(design, y, bound)) ++exceed;
  }
  TestResult r = make_result(j_obs, exceed, n_perm, alpha);
  r.extras["exhaustive"] = 0.0;
  return r;
}

TestResult permutation_test_exhaustive(const Dataset& data, double alpha,
                                       std::size_t max_assignments) {
  check_alpha(alpha);
  const Design& design = data.design();
  // Multinomial count n! / prod n_i!, built as a product of binomials.
  std::size_t count = 1;
  std::size_t placed = 0;
  for (std::size_t ni : design.sizes()) {
    for (std::size_t j = 1; j <= ni; ++j) {
      ++placed;
      // count *= placed / j, exact at every step.
      const long double next =
          static_cast<long double>(count) * static_cast<long double>(placed) / j;
      if (next > static_cast<long double>(max_assignments)) {
        throw std::invalid_argument(
            "too many group assignments for exhaustive enumeration");
      }
      count = static_cast<std::size_t>(std::llround(next));
    }
  }

  const double j_obs = j_statistic(design, group_moments(data));
  const double bound = j_obs - tie_slack(j_obs);

  std::vector<std::size_t> labels;
  labels.reserve(design.n());
  for (std::size_t i = 0; i < design.k(); ++i) {
    labels.insert(labels.end(), design.size(i), i);
  }
  const auto y = data.values();
  std::vector<double> regrouped(design.n());
  std::vector<std::size_t> cursor(design.k());
  std::size_t exceed = 0;
  std::size_t total = 0;
  do {
    for (std::size_t i = 0; i < design.k(); ++i) cursor[i] = design.offset(i);
    for (std::size_t r = 0; r < labels.size(); ++r) {
      regrouped[cursor[labels[r]]++] = y[r];
    }
    if (exceeds(design, regrouped, bound)) ++exceed;
    ++total;
  } while (std::next_permutation(labels.begin(), labels.end()));

  TestResult r = make_result(j_obs, exceed, total, alpha);
  r.extras["exhaustive"] = 1.0;
  return r;
}

}  // namespace uvt::sim

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "uvartest/core/design.hpp"
#include "uvartest/core/ustat.hpp"

namespace uvt {

enum class Method { U, F, Perm };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct TestResult {
  Method method = Method::U;
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  std::optional<std::pair<double, double>> df;
  std::map<std::string, double> extras;
};

/// U-test: J_n = C(n,2) B_n / (W_n sqrt(M_n)) against the upper standard
/// normal tail. Rejects when J_n >= z_alpha (boundary inclusive).
/// Throws DegenerateWithinVariance when W_n == 0.
TestResult u_test(const Dataset& data, double alpha);
TestResult u_test(const Design& design, const GroupMoments& moments,
                  double alpha);

/// J_n alone; throws DegenerateWithinVariance when W_n == 0.
double j_statistic(const Design& design, const GroupMoments& moments);

/// Classical ANOVA F-test with (k - 1, n - k) degrees of freedom.
/// Throws DegenerateWithinVariance when the within sum of squares is 0.
TestResult f_test(const Dataset& data, double alpha);
TestResult f_test(const Design& design, const GroupMoments& moments,
                  double alpha);

}  // namespace uvt

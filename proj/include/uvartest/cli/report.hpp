#pragma once

#include "json.hpp"

#include "uvartest/core/design.hpp"
#include "uvartest/core/inference.hpp"

namespace uvt::cli {

/// {method, statistic, p_value, reject, alpha, k, n, group_sizes, kappa,
/// extras}. Method-specific values (degrees of freedom, J_n components,
/// permutation counts) live only inside `extras`.
nlohmann::json report_json(const TestResult& result, const Design& design);

}  // namespace uvt::cli

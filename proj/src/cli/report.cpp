#include "uvartest/cli/report.hpp"

#include <string>

#include "uvartest/core/moments.hpp"

namespace uvt::cli {

nlohmann::json report_json(const TestResult& result, const Design& design) {
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [key, value] : result.extras) extras[key] = value;
  if (result.df) {
    extras["df1"] = result.df->first;
    extras["df2"] = result.df->second;
  }
  nlohmann::json sizes = nlohmann::json::array();
  for (std::size_t s : design.sizes()) sizes.push_back(s);
  return {
      {"method", std::string(to_string(result.method))},
      {"statistic", result.statistic},
      {"p_value", result.p_value},
      {"reject", result.reject},
      {"alpha", result.alpha},
      {"k", design.k()},
      {"n", design.n()},
      {"group_sizes", std::move(sizes)},
      {"kappa", kappa(design)},
      {"extras", std::move(extras)},
  };
}

}  // namespace uvt::cli

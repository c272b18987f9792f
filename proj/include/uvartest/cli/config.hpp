#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "uvartest/simlab/scenario.hpp"

namespace uvt::cli {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario from a JSON object mirroring ScenarioSpec. Unknown keys are
/// rejected. Throws ConfigError.
sim::ScenarioSpec scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const sim::ScenarioSpec& spec);

}  // namespace uvt::cli

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uvartest/simlab/scenario.hpp"

namespace uvt::sim {

/// Names accepted by preset(), in table order.
const std::vector<std::string>& preset_names();

/// Ready-made size/power study configurations:
///   table1-normal, table1-t5,
///   table2-balanced-normal, table2-geometric, table2-heavy, table2-skew.
/// Throws std::invalid_argument for an unknown name.
ScenarioSpec preset(std::string_view name);

}  // namespace uvt::sim

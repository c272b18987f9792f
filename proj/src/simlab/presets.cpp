#include "uvartest/simlab/presets.hpp"

#include <stdexcept>
#include <string>

namespace uvt::sim {
namespace {

constexpr std::uint64_t kDefaultSeed = 20080101;

ScenarioSpec common(std::string name) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.mu = 2.0;
  s.e_spec = rng::NoiseSpec::normal(1.0);
  s.sigma_b2_grid = {0.0, 0.2, 0.5, 1.0};
  s.alpha = 0.05;
  s.replicates = 10'000;
  s.seed = {kDefaultSeed, 0};
  return s;
}

ScenarioSpec table1(std::string name, rng::NoiseSpec errors) {
  ScenarioSpec s = common(std::move(name));
  for (std::size_t k : {10u, 30u, 100u}) {
    for (std::size_t m : {2u, 4u, 5u, 10u}) {
      s.designs.push_back(rng::DesignGen::balanced(k, m));
    }
  }
  s.b_spec = rng::NoiseSpec::scaled_t(3.0);
  s.e_spec = errors;
  s.methods = {Method::U};
  return s;
}

template <typename MakeDesign>
ScenarioSpec table2(std::string name, MakeDesign make) {
  ScenarioSpec s = common(std::move(name));
  for (std::size_t k : {10u, 20u, 30u, 50u, 100u}) s.designs.push_back(make(k));
  s.methods = {Method::F, Method::U};
  return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "table1-normal",    "table1-t5",    "table2-balanced-normal",
      "table2-geometric", "table2-heavy", "table2-skew"};
  return names;
}

ScenarioSpec preset(std::string_view name) {
  if (name == "table1-normal") {
    return table1("table1-normal", rng::NoiseSpec::normal(1.0));
  }
  if (name == "table1-t5") {
    return table1("table1-t5", rng::NoiseSpec::scaled_t(5.0, 1.0));
  }
  if (name == "table2-balanced-normal") {
    ScenarioSpec s = table2("table2-balanced-normal", [](std::size_t k) {
      return rng::DesignGen::balanced(k, 5);
    });
    s.b_spec = rng::NoiseSpec::normal();
    return s;
  }
  if (name == "table2-geometric") {
    ScenarioSpec s = table2("table2-geometric", [](std::size_t k) {
      return rng::DesignGen::geometric(k, 0.15, 2);
    });
    s.b_spec = rng::NoiseSpec::normal();
    s.redraw_design_per_replicate = true;
    return s;
  }
  if (name == "table2-heavy") {
    ScenarioSpec s = table2("table2-heavy", [](std::size_t k) {
      return rng::DesignGen::uniform_set(k, 5, 10);
    });
    s.b_spec = rng::NoiseSpec::scaled_t(4.1);
    s.e_spec = rng::NoiseSpec::scaled_t(4.1, 1.0);
    s.redraw_design_per_replicate = true;
    return s;
  }
  if (name == "table2-skew") {
    ScenarioSpec s = table2("table2-skew", [](std::size_t k) {
      return rng::DesignGen::balanced(k, 5);
    });
    s.b_spec = rng::NoiseSpec::skew_t(1.0, 4.1);
    s.e_spec = rng::NoiseSpec::skew_t(1.0, 4.1, 1.0);
    return s;
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace uvt::sim

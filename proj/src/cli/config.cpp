#include "uvartest/cli/config.hpp"

#include <initializer_list>
#include <string_view>

namespace uvt::cli {
namespace {

using nlohmann::json;

void only_keys(const json& j, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

template <typename T>
T require(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) {
    throw ConfigError("missing key '" + std::string(key) + "' in " +
                      std::string(where));
  }
  return get_or<T>(j, key, T{});
}

rng::DesignGen design_from_json(const json& j) {
  const auto kind = require<std::string>(j, "kind", "design");
  const auto k = require<std::size_t>(j, "k", "design");
  if (kind == "balanced") {
    only_keys(j, "balanced design", {"kind", "k", "m"});
    return rng::DesignGen::balanced(k, require<std::size_t>(j, "m", "design"));
  }
  if (kind == "geometric") {
    only_keys(j, "geometric design", {"kind", "k", "p", "shift"});
    return rng::DesignGen::geometric(k, require<double>(j, "p", "design"),
                                     get_or<std::size_t>(j, "shift", 2));
  }
  if (kind == "uniform_set") {
    only_keys(j, "uniform_set design", {"kind", "k", "lo", "hi"});
    return rng::DesignGen::uniform_set(k, require<std::size_t>(j, "lo", "design"),
                                       require<std::size_t>(j, "hi", "design"));
  }
  throw ConfigError("unknown design kind '" + kind + "'");
}

json design_to_json(const rng::DesignGen& d) {
  switch (d.kind) {
    case rng::DesignGen::Kind::Balanced:
      return {{"kind", "balanced"}, {"k", d.k}, {"m", d.m}};
    case rng::DesignGen::Kind::Geometric:
      return {{"kind", "geometric"}, {"k", d.k}, {"p", d.p}, {"shift", d.shift}};
    case rng::DesignGen::Kind::UniformSet:
      return {{"kind", "uniform_set"}, {"k", d.k}, {"lo", d.lo}, {"hi", d.hi}};
  }
  return {};
}

rng::NoiseSpec noise_from_json(const json& j, std::string_view where) {
  only_keys(j, where, {"family", "df", "skew", "variance"});
  const auto family = require<std::string>(j, "family", where);
  const double variance = get_or<double>(j, "variance", 1.0);
  if (family == "normal") return rng::NoiseSpec::normal(variance);
  if (family == "scaled_t") {
    return rng::NoiseSpec::scaled_t(require<double>(j, "df", where), variance);
  }
  if (family == "skew_t") {
    return rng::NoiseSpec::skew_t(require<double>(j, "skew", where),
                                  require<double>(j, "df", where), variance);
  }
  throw ConfigError("unknown noise family '" + family + "' in " + std::string(where));
}

json noise_to_json(const rng::NoiseSpec& s) {
  switch (s.family) {
    case rng::NoiseFamily::Normal:
      return {{"family", "normal"}, {"variance", s.variance}};
    case rng::NoiseFamily::ScaledT:
      return {{"family", "scaled_t"}, {"df", s.df}, {"variance", s.variance}};
    case rng::NoiseFamily::SkewTStd:
      return {{"family", "skew_t"},
              {"skew", s.skew},
              {"df", s.df},
              {"variance", s.variance}};
  }
  return {};
}

}  // namespace

sim::ScenarioSpec scenario_from_json(const json& j) {
  only_keys(j, "scenario",
            {"name", "designs", "redraw_design_per_replicate", "b", "e", "mu",
             "sigma_b2_grid", "alpha", "replicates", "seed", "stream", "methods",
             "n_perm"});
  sim::ScenarioSpec s;
  s.name = get_or<std::string>(j, "name", "custom");
  if (s.name.empty() || s.name.find(',') != std::string::npos) {
    throw ConfigError("scenario name must be non-empty and contain no commas");
  }
  if (!j.contains("designs") || !j.at("designs").is_array()) {
    throw ConfigError("'designs' must be an array");
  }
  for (const auto& d : j.at("designs")) s.designs.push_back(design_from_json(d));
  s.redraw_design_per_replicate =
      get_or<bool>(j, "redraw_design_per_replicate", false);
  if (j.contains("b")) s.b_spec = noise_from_json(j.at("b"), "b");
  if (j.contains("e")) s.e_spec = noise_from_json(j.at("e"), "e");
  s.mu = get_or<double>(j, "mu", 0.0);
  s.sigma_b2_grid = get_or<std::vector<double>>(j, "sigma_b2_grid", {0.0});
  s.alpha = get_or<double>(j, "alpha", 0.05);
  s.replicates = get_or<std::size_t>(j, "replicates", 1000);
  s.seed.master_seed = get_or<std::uint64_t>(j, "seed", 0);
  s.seed.stream_id = get_or<std::uint64_t>(j, "stream", 0);
  if (j.contains("methods")) {
    s.methods.clear();
    for (const auto& m : get_or<std::vector<std::string>>(j, "methods", {})) {
      try {
        s.methods.push_back(method_from_string(m));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  s.n_perm = get_or<std::size_t>(j, "n_perm", 199);
  try {
    s.validate();
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

json scenario_to_json(const sim::ScenarioSpec& s) {
  json designs = json::array();
  for (const auto& d : s.designs) designs.push_back(design_to_json(d));
  json methods = json::array();
  for (Method m : s.methods) methods.push_back(std::string(to_string(m)));
  return {{"name", s.name},
          {"designs", std::move(designs)},
          {"redraw_design_per_replicate", s.redraw_design_per_replicate},
          {"b", noise_to_json(s.b_spec)},
          {"e", noise_to_json(s.e_spec)},
          {"mu", s.mu},
          {"sigma_b2_grid", s.sigma_b2_grid},
          {"alpha", s.alpha},
          {"replicates", s.replicates},
          {"seed", s.seed.master_seed},
          {"stream", s.seed.stream_id},
          {"methods", std::move(methods)},
          {"n_perm", s.n_perm}};
}

}  // namespace uvt::cli

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uvartest/core/inference.hpp"
#include "uvartest/randgen/design_gen.hpp"
#include "uvartest/randgen/noise.hpp"
#include "uvartest/randgen/rng.hpp"

namespace uvt::sim {

/// A Monte Carlo size/power study of Y_ij = mu + b_i + e_ij.
///
/// Each entry of `designs` is one column block of the output table. The
/// random effect law is taken from `b_spec` with its variance replaced by
/// each value of `sigma_b2_grid`; `e_spec.variance` is sigma_e^2.
struct ScenarioSpec {
  std::string name = "custom";
  std::vector<rng::DesignGen> designs;
  bool redraw_design_per_replicate = false;
  rng::NoiseSpec b_spec = rng::NoiseSpec::normal();
  rng::NoiseSpec e_spec = rng::NoiseSpec::normal();
  double mu = 0.0;
  std::vector<double> sigma_b2_grid = {0.0};
  double alpha = 0.05;
  std::size_t replicates = 1000;
  rng::SeedSpec seed;
  std::vector<Method> methods = {Method::U};
  std::size_t n_perm = 199;

  /// Throws std::invalid_argument / std::domain_error on bad configuration.
  void validate() const;
};

/// One cell of a rejection-rate table.
struct RejectionCell {
  std::string scenario;
  std::size_t k = 0;
  std::string design;
  double sigma_b2 = 0.0;
  Method method = Method::U;
  std::size_t rejections = 0;
  std::size_t replicates = 0;
  std::size_t degenerate = 0;  // diagnostic only; not serialized

  double rate() const noexcept;
  double se() const noexcept;
};

struct RejectionTable {
  std::vector<RejectionCell> cells;

  const RejectionCell* find(std::size_t k, const std::string& design,
                            double sigma_b2, Method method) const;
};

/// sqrt(rate (1 - rate) / n). Throws std::domain_error outside [0, 1] or n == 0.
double mc_se(double rate, std::size_t n);

struct RunOptions {
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Runs every (design, sigma_b2, replicate) work item. Each replicate draws
/// from its own stream derived from (seed, design index, grid index,
/// replicate index), so the table does not depend on the thread count.
/// Replicates whose test is degenerate count as non-rejections.
RejectionTable run_scenario(const ScenarioSpec& spec, RunOptions options = {});

/// Simulates one dataset of the scenario; exposed for diagnostics and tests.
Dataset simulate_dataset(const ScenarioSpec& spec, const Design& design,
                         double sigma_b2, rng::Rng& rng);

}  // namespace uvt::sim

#include "uvartest/simlab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "uvartest/core/errors.hpp"
#include "uvartest/core/tails.hpp"
#include "uvartest/core/ustat.hpp"
#include "uvartest/simlab/permutation.hpp"

namespace uvt::sim {
namespace {

constexpr std::uint64_t kFixedDesignTag = 0x64657369676eULL;  // "design"
constexpr std::uint64_t kPermTag = 0x7065726dULL;             // "perm"
constexpr std::size_t kBlock = 32;

rng::NoiseSpec unit_variance(rng::NoiseSpec s) {
  s.variance = 1.0;
  return s;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (designs.empty()) throw std::invalid_argument("scenario has no designs");
  for (const auto& d : designs) d.validate();
  unit_variance(b_spec).validate();
  e_spec.validate();
  if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
  if (sigma_b2_grid.empty()) {
    throw std::invalid_argument("sigma_b2 grid is empty");
  }
  for (double s : sigma_b2_grid) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("sigma_b2 grid values must be finite and >= 0");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (methods.empty()) throw std::invalid_argument("no test methods requested");
  if (std::find(methods.begin(), methods.end(), Method::Perm) != methods.end() &&
      n_perm < 1) {
    throw std::invalid_argument("n_perm must be >= 1");
  }
}

double RejectionCell::rate() const noexcept {
  return replicates == 0 ? 0.0
                         : static_cast<double>(rejections) /
                               static_cast<double>(replicates);
}

double RejectionCell::se() const noexcept {
  if (replicates == 0) return 0.0;
  const double r = rate();
  return std::sqrt(r * (1.0 - r) / static_cast<double>(replicates));
}

const RejectionCell* RejectionTable::find(std::size_t k, const std::string& design,
                                          double sigma_b2, Method method) const {
  for (const auto& c : cells) {
    if (c.k == k && c.design == design && c.sigma_b2 == sigma_b2 &&
        c.method == method) {
      return &c;
    }
  }
  return nullptr;
}

double mc_se(double rate, std::size_t n) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::domain_error("rate must lie in [0, 1]");
  }
  if (n == 0) throw std::domain_error("mc_se needs n >= 1");
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(n));
}

Dataset simulate_dataset(const ScenarioSpec& spec, const Design& design,
                         double sigma_b2, rng::Rng& rng) {
  const rng::NoiseSampler draw_b(unit_variance(spec.b_spec));
  const rng::NoiseSampler draw_e(spec.e_spec);
  const double sigma_b = std::sqrt(sigma_b2);
  std::vector<double> y;
  y.reserve(design.n());
  for (std::size_t i = 0; i < design.k(); ++i) {
    const double level = spec.mu + sigma_b * draw_b(rng);
    for (std::size_t j = 0; j < design.size(i); ++j) {
      y.push_back(level + draw_e(rng));
    }
  }
  return Dataset(design, std::move(y));
}

RejectionTable run_scenario(const ScenarioSpec& spec, RunOptions options) {
  spec.validate();
  const std::size_t n_design = spec.designs.size();
  const std::size_t n_grid = spec.sigma_b2_grid.size();
  const std::size_t n_method = spec.methods.size();
  const std::size_t reps = spec.replicates;

  std::vector<std::optional<Design>> fixed(n_design);
  if (!spec.redraw_design_per_replicate) {
    for (std::size_t d = 0; d < n_design; ++d) {
      fixed[d] = rng::gen_design(spec.designs[d],
                                 spec.seed.derive({kFixedDesignTag, d}));
    }
  }

  const std::size_t blocks_per_cell = (reps + kBlock - 1) / kBlock;
  const std::size_t total_blocks = n_design * n_grid * blocks_per_cell;
  const std::size_t n_counters = n_design * n_grid * n_method;

  std::vector<std::size_t> rejections(n_counters, 0);
  std::vector<std::size_t> degenerate(n_counters, 0);
  std::mutex merge_mutex;
  std::atomic<std::size_t> next_block{0};

  auto worker = [&] {
    std::vector<std::size_t> local_rej(n_counters, 0);
    std::vector<std::size_t> local_deg(n_counters, 0);
    for (;;) {
      const std::size_t block = next_block.fetch_add(1, std::memory_order_relaxed);
      if (block >= total_blocks) break;
      const std::size_t cell = block / blocks_per_cell;
      const std::size_t d = cell / n_grid;
      const std::size_t g = cell % n_grid;
      const std::size_t first = (block % blocks_per_cell) * kBlock;
      const std::size_t last = std::min(reps, first + kBlock);
      const double sigma_b2 = spec.sigma_b2_grid[g];
      for (std::size_t r = first; r < last; ++r) {
        const rng::SeedSpec rep_seed = spec.seed.derive({d, g, r});
        rng::Rng gen(rep_seed);
        const Design design = spec.redraw_design_per_replicate
                                  ? rng::gen_design(spec.designs[d], gen)
                                  : *fixed[d];
        const Dataset data = simulate_dataset(spec, design, sigma_b2, gen);
        const GroupMoments moments = group_moments(data);
        for (std::size_t m = 0; m < n_method; ++m) {
          const std::size_t idx = cell * n_method + m;
          try {
            bool reject = false;
            switch (spec.methods[m]) {
              case Method::U:
                reject = normal_sf(j_statistic(design, moments)) <= spec.alpha;
                break;
              case Method::F:
                reject = f_test(design, moments, spec.alpha).reject;
                break;
              case Method::Perm:
                reject = permutation_test(data, spec.n_perm,
                                          rep_seed.derive({kPermTag}), spec.alpha)
                             .reject;
                break;
            }
            if (reject) ++local_rej[idx];
          } catch (const DegenerateWithinVariance&) {
            ++local_deg[idx];
          }
        }
      }
    }
    std::lock_guard lock(merge_mutex);
    for (std::size_t i = 0; i < n_counters; ++i) {
      rejections[i] += local_rej[i];
      degenerate[i] += local_deg[i];
    }
  };

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, total_blocks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  RejectionTable table;
  table.cells.reserve(n_counters);
  for (std::size_t d = 0; d < n_design; ++d) {
    for (std::size_t g = 0; g < n_grid; ++g) {
      for (std::size_t m = 0; m < n_method; ++m) {
        const std::size_t idx = (d * n_grid + g) * n_method + m;
        RejectionCell c;
        c.scenario = spec.name;
        c.k = spec.designs[d].k;
        c.design = spec.designs[d].label();
        c.sigma_b2 = spec.sigma_b2_grid[g];
        c.method = spec.methods[m];
        c.rejections = rejections[idx];
        c.replicates = reps;
        c.degenerate = degenerate[idx];
        table.cells.push_back(std::move(c));
      }
    }
  }
  return table;
}

}  // namespace uvt::sim

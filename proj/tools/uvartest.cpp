// uvartest: variance-component tests for one-way random effects data and
// the Monte Carlo study that compares them.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "uvartest/cli/config.hpp"
#include "uvartest/cli/input_csv.hpp"
#include "uvartest/cli/report.hpp"
#include "uvartest/core/errors.hpp"
#include "uvartest/core/inference.hpp"
#include "uvartest/simlab/permutation.hpp"
#include "uvartest/simlab/presets.hpp"
#include "uvartest/simlab/table_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDegenerate = 1;
constexpr int kInputError = 2;

constexpr std::uint64_t kDefaultTestSeed = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("UVARTEST_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t v = 0;
  const std::string_view s(raw);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw UsageError("UVARTEST_SEED is not an unsigned integer: '" +
                     std::string(s) + "'");
  }
  return v;
}

std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  return env_seed();
}

struct TestArgs {
  std::string path;
  std::string method = "u";
  double alpha = 0.05;
  std::size_t n_perm = 999;
  std::optional<std::uint64_t> seed;
};

int run_test(const TestArgs& args) {
  std::ifstream in(args.path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + args.path + "'");
  const auto input = uvt::cli::read_dataset_csv(in);
  const uvt::Dataset& data = input.data;

  std::vector<uvt::TestResult> results;
  if (args.method == "u" || args.method == "both") {
    results.push_back(uvt::u_test(data, args.alpha));
  }
  if (args.method == "f" || args.method == "both") {
    results.push_back(uvt::f_test(data, args.alpha));
  }
  if (args.method == "perm") {
    const std::uint64_t seed = resolve_seed(args.seed).value_or(kDefaultTestSeed);
    results.push_back(
        uvt::sim::permutation_test(data, args.n_perm, {seed, 0}, args.alpha));
  }
  for (const auto& r : results) {
    std::cout << uvt::cli::report_json(r, data.design()).dump() << '\n';
  }
  return kOk;
}

struct SimulateArgs {
  std::string scenario;
  std::optional<std::size_t> replicates;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
};

uvt::sim::ScenarioSpec load_scenario(const std::string& name) {
  for (const auto& p : uvt::sim::preset_names()) {
    if (p == name) return uvt::sim::preset(name);
  }
  if (!std::filesystem::is_regular_file(name)) {
    throw UsageError("unknown preset '" + name +
                     "' (and no such config file); presets: table1-normal, "
                     "table1-t5, table2-balanced-normal, table2-geometric, "
                     "table2-heavy, table2-skew");
  }
  std::ifstream in(name);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + name + "' is not valid JSON: " + e.what());
  }
  return uvt::cli::scenario_from_json(j);
}

int run_simulate(const SimulateArgs& args) {
  uvt::sim::ScenarioSpec spec = load_scenario(args.scenario);
  if (args.replicates) spec.replicates = *args.replicates;
  if (auto seed = resolve_seed(args.seed)) spec.seed.master_seed = *seed;
  try {
    spec.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }

  const auto table = uvt::sim::run_scenario(spec, {args.threads});
  const std::string body = args.format == "md" ? uvt::sim::to_markdown(table)
                                               : uvt::sim::to_csv(table);

  std::ostream& log = args.out.empty() ? std::cerr : std::cout;
  for (const auto& c : table.cells) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "%s k=%zu %s sigma_b2=%g %s rate=%.4f se=%.4f reps=%zu degenerate=%zu",
                  c.scenario.c_str(), c.k, c.design.c_str(), c.sigma_b2,
                  std::string(uvt::to_string(c.method)).c_str(), c.rate(), c.se(),
                  c.replicates, c.degenerate);
    log << line << '\n';
  }
  if (args.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + args.out + "'");
    out << body;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"U-statistic and F tests for the between-treatment variance "
               "component of a one-way random effects model"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test = app.add_subcommand("test", "Test sigma_b^2 = 0 on a CSV dataset");
  test->add_option("file", test_args.path, "CSV with header treatment,value")
      ->required();
  test->add_option("--method", test_args.method, "u, f, both or perm")
      ->check(CLI::IsMember({"u", "f", "both", "perm"}));
  test->add_option("--alpha", test_args.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  test->add_option("--n-perm", test_args.n_perm, "Permutations for --method perm")
      ->check(CLI::PositiveNumber);
  test->add_option("--seed", test_args.seed,
                   "Permutation seed (default: $UVARTEST_SEED or 1)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand(
      "simulate", "Run a rejection-rate study from a preset or JSON config");
  simulate->add_option("scenario", sim_args.scenario, "Preset name or config path")
      ->required();
  simulate->add_option("--replicates", sim_args.replicates,
                       "Override the replicate count")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_args.seed,
                       "Master seed (default: $UVARTEST_SEED or the scenario's)");
  simulate->add_option("--out", sim_args.out, "Output file (default: stdout)");
  simulate->add_option("--format", sim_args.format, "csv or md")
      ->check(CLI::IsMember({"csv", "md"}));
  simulate->add_option("--threads", sim_args.threads,
                       "Worker threads (0 = all cores)");

  app.add_subcommand("presets", "List preset names")->callback([] {
    for (const auto& p : uvt::sim::preset_names()) std::cout << p << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (test->parsed()) {
      if (!(test_args.alpha > 0.0 && test_args.alpha < 1.0)) {
        throw UsageError("--alpha must lie strictly between 0 and 1");
      }
      return run_test(test_args);
    }
    if (simulate->parsed()) return run_simulate(sim_args);
    return kOk;
  } catch (const uvt::DegenerateWithinVariance& e) {
    std::cerr << "uvartest: degenerate test: " << e.what() << '\n';
    return kDegenerate;
  } catch (const uvt::cli::InputError& e) {
    std::cerr << "uvartest: " << test_args.path << ": " << e.what() << '\n';
    return kInputError;
  } catch (const uvt::cli::ConfigError& e) {
    std::cerr << "uvartest: " << e.what() << '\n';
    return kInputError;
  } catch (const UsageError& e) {
    std::cerr << "uvartest: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "uvartest: " << e.what() << '\n';
    return kInputError;
  }
}

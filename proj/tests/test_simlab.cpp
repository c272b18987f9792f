#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "uvartest/core/errors.hpp"
#include "uvartest/core/ustat.hpp"
#include "uvartest/simlab/permutation.hpp"
#include "uvartest/simlab/presets.hpp"
#include "uvartest/simlab/scenario.hpp"
#include "uvartest/simlab/table_io.hpp"

using doctest::Approx;
using uvt::Dataset;
using uvt::Method;
using namespace uvt::sim;

namespace {

ScenarioSpec small_scenario() {
  ScenarioSpec s;
  s.name = "small";
  s.designs = {uvt::rng::DesignGen::balanced(6, 3),
               uvt::rng::DesignGen::geometric(5, 0.3, 2)};
  s.redraw_design_per_replicate = true;
  s.b_spec = uvt::rng::NoiseSpec::scaled_t(3.0);
  s.e_spec = uvt::rng::NoiseSpec::skew_t(1.0, 4.1, 1.0);
  s.mu = 2.0;
  s.sigma_b2_grid = {0.0, 0.5};
  s.replicates = 300;
  s.seed = {99, 0};
  s.methods = {Method::F, Method::U, Method::Perm};
  s.n_perm = 49;
  return s;
}

}  // namespace

TEST_SUITE("simlab") {
  TEST_CASE("mc_se") {
    CHECK(mc_se(0.05, 10000) == Approx(0.0021794).epsilon(1e-4));
    CHECK(mc_se(0.0, 17) == 0.0);
    CHECK(mc_se(0.5, 100) == Approx(0.05).epsilon(1e-15));
    CHECK_THROWS_AS(mc_se(1.2, 10), std::domain_error);
    CHECK_THROWS_AS(mc_se(-0.1, 10), std::domain_error);
    CHECK_THROWS_AS(mc_se(0.5, 0), std::domain_error);
  }

  TEST_CASE("cell rate and se") {
    RejectionCell c;
    c.rejections = 540;
    c.replicates = 10000;
    CHECK(c.rate() == 0.054);
    CHECK(c.se() == Approx(std::sqrt(0.054 * 0.946 / 10000)).epsilon(1e-14));
  }

  TEST_CASE("preset table1-normal") {
    const auto s = preset("table1-normal");
    CHECK(s.designs.size() == 12);
    CHECK(s.designs.front() == uvt::rng::DesignGen::balanced(10, 2));
    CHECK(s.designs.back() == uvt::rng::DesignGen::balanced(100, 10));
    CHECK(s.b_spec.family == uvt::rng::NoiseFamily::ScaledT);
    CHECK(s.b_spec.df == 3.0);
    CHECK(s.e_spec == uvt::rng::NoiseSpec::normal(1.0));
    CHECK(s.sigma_b2_grid == std::vector<double>{0.0, 0.2, 0.5, 1.0});
    CHECK(s.mu == 2.0);
    CHECK(s.alpha == 0.05);
    CHECK(s.replicates == 10000);
    CHECK(s.methods == std::vector<Method>{Method::U});
  }

  TEST_CASE("other presets") {
    const auto t5 = preset("table1-t5");
    CHECK(t5.e_spec == uvt::rng::NoiseSpec::scaled_t(5.0, 1.0));

    const auto skew = preset("table2-skew");
    CHECK(skew.designs.size() == 5);
    CHECK(skew.designs[0] == uvt::rng::DesignGen::balanced(10, 5));
    CHECK(skew.designs[4] == uvt::rng::DesignGen::balanced(100, 5));
    CHECK(skew.b_spec.family == uvt::rng::NoiseFamily::SkewTStd);
    CHECK(skew.e_spec == uvt::rng::NoiseSpec::skew_t(1.0, 4.1, 1.0));
    CHECK(skew.methods == std::vector<Method>{Method::F, Method::U});

    const auto geo = preset("table2-geometric");
    CHECK(geo.redraw_design_per_replicate);
    CHECK(geo.designs[2] == uvt::rng::DesignGen::geometric(30, 0.15, 2));
    CHECK(geo.b_spec.family == uvt::rng::NoiseFamily::Normal);

    const auto heavy = preset("table2-heavy");
    CHECK(heavy.designs[1] == uvt::rng::DesignGen::uniform_set(20, 5, 10));
    CHECK(heavy.e_spec == uvt::rng::NoiseSpec::scaled_t(4.1, 1.0));

    CHECK(preset_names().size() == 6);
    for (const auto& name : preset_names()) CHECK_NOTHROW(preset(name).validate());
    CHECK_THROWS_AS(preset("table3"), std::invalid_argument);
  }

  TEST_CASE("scenario validation") {
    auto s = small_scenario();
    CHECK_NOTHROW(s.validate());
    auto bad = s;
    bad.replicates = 0;
    CHECK_THROWS(bad.validate());
    bad = s;
    bad.alpha = 1.0;
    CHECK_THROWS(bad.validate());
    bad = s;
    bad.sigma_b2_grid = {0.1, -0.2};
    CHECK_THROWS(bad.validate());
    bad = s;
    bad.methods.clear();
    CHECK_THROWS(bad.validate());
    bad = s;
    bad.designs.clear();
    CHECK_THROWS(bad.validate());
    bad = s;
    bad.n_perm = 0;
    CHECK_THROWS(bad.validate());
  }

  TEST_CASE("run_scenario is reproducible and thread-count independent") {
    const auto spec = small_scenario();
    const auto one = run_scenario(spec, {1});
    const auto three = run_scenario(spec, {3});
    const auto again = run_scenario(spec, {1});
    CHECK(to_csv(one) == to_csv(three));
    CHECK(to_csv(one) == to_csv(again));
    REQUIRE(one.cells.size() == 2 * 2 * 3);
    for (const auto& c : one.cells) {
      CHECK(c.replicates == 300);
      CHECK(c.degenerate == 0);
      CHECK(c.rate() >= 0.0);
      CHECK(c.rate() <= 1.0);
    }
    auto other_seed = spec;
    other_seed.seed.master_seed = 100;
    CHECK(to_csv(run_scenario(other_seed, {1})) != to_csv(one));
  }

  TEST_CASE("simulate_dataset follows the model") {
    auto spec = small_scenario();
    spec.mu = 1000.0;
    uvt::rng::Rng gen({1, 1});
    const uvt::Design design({4, 4, 4});
    const auto data = simulate_dataset(spec, design, 0.0, gen);
    CHECK(data.design() == design);
    const auto m = uvt::group_moments(data);
    CHECK(std::fabs(m.grand_mean - 1000.0) < 10.0);
  }

  TEST_CASE("power is nondecreasing in sigma_b2, F size exact under normality") {
    auto spec = preset("table2-balanced-normal");
    spec.replicates = 4000;
    const auto table = run_scenario(spec, {});
    for (const auto& d : spec.designs) {
      for (Method m : spec.methods) {
        for (std::size_t g = 1; g < spec.sigma_b2_grid.size(); ++g) {
          const auto* lo = table.find(d.k, d.label(), spec.sigma_b2_grid[g - 1], m);
          const auto* hi = table.find(d.k, d.label(), spec.sigma_b2_grid[g], m);
          REQUIRE(lo);
          REQUIRE(hi);
          CHECK(hi->rate() >= lo->rate() - 2.0 * std::hypot(lo->se(), hi->se()));
        }
      }
      const auto* f0 = table.find(d.k, d.label(), 0.0, Method::F);
      CAPTURE(d.k);
      CHECK(std::fabs(f0->rate() - 0.05) <= 3.0 * mc_se(0.05, f0->replicates));
    }
  }

  TEST_CASE("U-test size shrinks toward alpha as k grows") {
    auto spec = preset("table1-normal");
    spec.replicates = 4000;
    spec.sigma_b2_grid = {0.0};
    const auto table = run_scenario(spec, {});
    for (std::size_t m : {2u, 4u, 5u, 10u}) {
      const std::string label = "balanced-" + std::to_string(m);
      const auto* k10 = table.find(10, label, 0.0, Method::U);
      const auto* k30 = table.find(30, label, 0.0, Method::U);
      const auto* k100 = table.find(100, label, 0.0, Method::U);
      CAPTURE(m);
      CHECK(k30->rate() <= k10->rate() + 2.0 * std::hypot(k10->se(), k30->se()));
      CHECK(k100->rate() <= k30->rate() + 2.0 * std::hypot(k30->se(), k100->se()));
      CHECK(k100->rate() >= 0.05 - 2.0 * k100->se());
    }
  }
}

TEST_SUITE("permutation") {
  TEST_CASE("exhaustive worked example matches enumeration") {
    const oracle::Groups obs = {{0, 2}, {1, 3}};
    const std::vector<double> y = {0, 2, 1, 3};
    const double j_obs = oracle::j_n(obs);
    int exceed = 0;
    int total = 0;
    for (int mask = 0; mask < 16; ++mask) {
      if (__builtin_popcount(mask) != 2) continue;
      oracle::Groups g(2);
      for (int r = 0; r < 4; ++r) g[(mask >> r) & 1 ? 0 : 1].push_back(y[r]);
      ++total;
      if (oracle::j_n(g) >= j_obs - 1e-12) ++exceed;
    }
    REQUIRE(total == 6);
    const double expected = (1.0 + exceed) / (total + 1.0);
    CHECK(exceed == 4);

    const auto r = permutation_test_exhaustive(Dataset::from_groups({{0, 2}, {1, 3}}));
    CHECK(r.method == Method::Perm);
    CHECK(r.extras.at("n_perm") == 6.0);
    CHECK(r.p_value == Approx(expected).epsilon(1e-15));
    CHECK(r.statistic == Approx(j_obs).epsilon(1e-12));
    CHECK_FALSE(r.reject);
  }

  TEST_CASE("degenerate permutations never count") {
    // {0,0}|{1,1} splits have W_n = 0; the other four tie with J_obs.
    const auto r = permutation_test_exhaustive(Dataset::from_groups({{0, 1}, {0, 1}}));
    CHECK(r.extras.at("n_perm") == 6.0);
    CHECK(r.extras.at("exceedances") == 4.0);
    CHECK(r.p_value == Approx(5.0 / 7.0).epsilon(1e-15));
  }

  TEST_CASE("errors") {
    const auto d = Dataset::from_groups({{0, 2}, {1, 3}});
    CHECK_THROWS_AS(permutation_test(d, 0, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(permutation_test(Dataset::from_groups({{2, 2}, {3, 3}}), 10, {1, 0}),
                    uvt::DegenerateWithinVariance);
    std::vector<std::vector<double>> big(6, std::vector<double>(10));
    double v = 0.0;
    for (auto& g : big) {
      for (auto& x : g) x = v++;
    }
    CHECK_THROWS_AS(permutation_test_exhaustive(Dataset::from_groups(big)),
                    std::invalid_argument);
  }

  TEST_CASE("monte carlo p-value: deterministic, bounded, close to exhaustive") {
    const auto d = Dataset::from_groups({{0.3, 1.9, 2.2}, {1.0, 3.5, 2.8}, {4.1, 3.9, 5.5}});
    const auto a = permutation_test(d, 4999, {5, 0});
    const auto b = permutation_test(d, 4999, {5, 0});
    CHECK(a.p_value == b.p_value);
    CHECK(a.p_value > 0.0);
    CHECK(a.p_value <= 1.0);
    CHECK(a.extras.at("n_perm") == 4999.0);
    const auto exact = permutation_test_exhaustive(d);
    CHECK(exact.extras.at("n_perm") == 1680.0);
    CHECK(std::fabs(a.p_value - exact.p_value) < 4.0 * std::sqrt(0.25 / 4999));
  }
}

TEST_SUITE("table_io") {
  TEST_CASE("property: CSV round trip") {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<std::size_t> reps(1, 20000);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      RejectionTable t;
      const std::size_t rows = 1 + trial % 7;
      for (std::size_t i = 0; i < rows; ++i) {
        RejectionCell c;
        c.scenario = "s" + std::to_string(trial);
        c.k = 2 + i;
        c.design = "geometric-0.15+2";
        c.sigma_b2 = unit(gen);
        c.method = static_cast<Method>(i % 3);
        c.replicates = reps(gen);
        c.rejections = static_cast<std::size_t>(unit(gen) * c.replicates);
        t.cells.push_back(c);
      }
      std::istringstream in(to_csv(t));
      const auto back = read_csv(in);
      REQUIRE(back.cells.size() == t.cells.size());
      for (std::size_t i = 0; i < rows; ++i) {
        const auto& a = t.cells[i];
        const auto& b = back.cells[i];
        CHECK(a.scenario == b.scenario);
        CHECK(a.k == b.k);
        CHECK(a.design == b.design);
        CHECK(a.sigma_b2 == b.sigma_b2);
        CHECK(a.method == b.method);
        CHECK(a.rate() == b.rate());
        CHECK(a.se() == b.se());
        CHECK(a.replicates == b.replicates);
      }
      CHECK(to_csv(back) == to_csv(t));
    }
  }

  TEST_CASE("CSV layout") {
    RejectionTable t;
    RejectionCell c;
    c.scenario = "demo";
    c.k = 10;
    c.design = "balanced-5";
    c.sigma_b2 = 0.2;
    c.method = Method::U;
    c.rejections = 54;
    c.replicates = 1000;
    t.cells.push_back(c);
    CHECK(to_csv(t) ==
          "scenario,k,design,sigma_b2,method,rate,se,replicates\n"
          "demo,10,balanced-5,0.2,U,0.054,0.007147307185227175,1000\n");
  }

  TEST_CASE("CSV reader errors") {
    std::istringstream bad_header("a,b\n");
    CHECK_THROWS_AS(read_csv(bad_header), std::runtime_error);
    std::istringstream bad_row(std::string(kTableCsvHeader) + "\nx,1,d,0,U,0.5\n");
    CHECK_THROWS_WITH_AS(read_csv(bad_row), doctest::Contains("line 2"), std::runtime_error);
    std::istringstream bad_method(std::string(kTableCsvHeader) + "\nx,1,d,0,Z,0.5,0.1,4\n");
    CHECK_THROWS_AS(read_csv(bad_method), std::runtime_error);
  }

  TEST_CASE("markdown mirrors the table layout") {
    auto spec = preset("table2-skew");
    spec.replicates = 20;
    const auto md = to_markdown(run_scenario(spec, {1}));
    std::istringstream in(md);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
      if (line.starts_with("|")) rows.push_back(line);
    }
    REQUIRE(rows.size() == 2 + 4);
    CHECK(rows[0] ==
          "| sigma_b2 | k=10 F | k=10 U | k=20 F | k=20 U | k=30 F | k=30 U | k=50 F | "
          "k=50 U | k=100 F | k=100 U |");
    CHECK(rows[2].starts_with("| 0 |"));
    CHECK(rows[5].starts_with("| 1 |"));

    auto t1 = preset("table1-normal");
    t1.replicates = 2;
    t1.sigma_b2_grid = {0.0};
    const auto md1 = to_markdown(run_scenario(t1, {1}));
    CHECK(md1.find("k=10 balanced-2 U") != std::string::npos);
    CHECK(md1.find("k=100 balanced-10 U") != std::string::npos);
  }
}

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include "doctest.h"
#include "uvartest/core/moments.hpp"
#include "uvartest/randgen/design_gen.hpp"
#include "uvartest/randgen/noise.hpp"
#include "uvartest/randgen/rng.hpp"

using doctest::Approx;
using namespace uvt::rng;

namespace {

struct Summary {
  double mean = 0.0;
  double var = 0.0;
  double m4 = 0.0;  // fourth central moment
};

Summary summarize(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  Summary s;
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  for (double v : x) {
    const double d = v - s.mean;
    s.var += d * d;
    s.m4 += d * d * d * d;
  }
  s.var /= n - 1.0;
  s.m4 /= n;
  return s;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const auto sa = summarize(a);
  const auto sb = summarize(b);
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) c += (a[i] - sa.mean) * (b[i] - sb.mean);
  c /= static_cast<double>(a.size()) - 1.0;
  return c / std::sqrt(sa.var * sb.var);
}

// Azzalini-Capitanio skew-t density with location 0 and scale 1.
double skew_t_density(double y, double skew, double df) {
  const boost::math::students_t_distribution<double> t(df);
  const boost::math::students_t_distribution<double> t1(df + 1.0);
  if (!std::isfinite(y)) return 0.0;
  const double arg = skew * std::sqrt(df + 1.0) * (y / std::hypot(std::sqrt(df), y));
  return 2.0 * boost::math::pdf(t, y) * boost::math::cdf(t1, arg);
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("determinism and stream separation") {
    Rng a({42, 0});
    Rng b({42, 0});
    Rng c({42, 1});
    Rng d({43, 0});
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 100; ++i) {
      const auto x = a();
      CHECK(x == b());
      differs_c = differs_c || x != c();
      differs_d = differs_d || x != d();
    }
    CHECK(differs_c);
    CHECK(differs_d);
  }

  TEST_CASE("derive gives distinct child streams") {
    const SeedSpec root{7, 0};
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 20; ++i) {
      for (std::uint64_t j = 0; j < 20; ++j) seen.insert(root.derive({i, j}).stream_id);
    }
    CHECK(seen.size() == 400);
    CHECK(root.derive({1, 2}) == root.derive({1, 2}));
    CHECK_FALSE(root.derive({1, 2}) == root.derive({2, 1}));
  }

  TEST_CASE("uniform stays in the open interval") {
    Rng g({1, 2});
    for (int i = 0; i < 100000; ++i) {
      const double u = g.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
    }
  }

  TEST_CASE("below is unbiased") {
    Rng g({9, 9});
    constexpr std::uint64_t kBins = 6;
    constexpr int kDraws = 600000;
    std::vector<int> counts(kBins, 0);
    for (int i = 0; i < kDraws; ++i) ++counts[g.below(kBins)];
    double chi2 = 0.0;
    const double expected = static_cast<double>(kDraws) / kBins;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 20.5);  // chi-square(5) 0.999 quantile
  }

  TEST_CASE("stream cross-correlation") {
    constexpr std::size_t kN = 1'000'000;
    const auto a = sample_noise(NoiseSpec::normal(), kN, {11, 0});
    const auto b = sample_noise(NoiseSpec::normal(), kN, {11, 1});
    const auto c = sample_noise(NoiseSpec::normal(), kN, SeedSpec{11, 0}.derive({1}));
    CHECK(std::fabs(correlation(a, b)) < 5.0 / std::sqrt(double(kN)));
    CHECK(std::fabs(correlation(a, c)) < 5.0 / std::sqrt(double(kN)));
  }

  TEST_CASE("gamma sampler moments") {
    for (double shape : {0.7, 1.5, 2.05, 9.0}) {
      Rng g({5, static_cast<std::uint64_t>(shape * 100)});
      std::vector<double> x(400000);
      for (auto& v : x) v = g.gamma(shape);
      const auto s = summarize(x);
      CAPTURE(shape);
      CHECK(std::fabs(s.mean - shape) < 5.0 * std::sqrt(shape / x.size()));
      // Var of the sample variance: (mu4 - sigma^4) / N with mu4 = 3a^2 + 6a.
      const double mu4 = 3.0 * shape * shape + 6.0 * shape;
      CHECK(std::fabs(s.var - shape) < 5.0 * std::sqrt((mu4 - shape * shape) / x.size()));
    }
  }
}

TEST_SUITE("noise") {
  TEST_CASE("scaled t scale factors") {
    CHECK(NoiseSampler(NoiseSpec::scaled_t(5.0)).scale() ==
          Approx(std::sqrt(3.0 / 5.0)).epsilon(1e-15));
    CHECK(NoiseSampler(NoiseSpec::scaled_t(4.1)).scale() ==
          Approx(std::sqrt(21.0 / 41.0)).epsilon(1e-15));
    CHECK(NoiseSampler(NoiseSpec::scaled_t(3.0, 0.2)).scale() ==
          Approx(std::sqrt(0.2 / 3.0)).epsilon(1e-15));
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(NoiseSampler(NoiseSpec::scaled_t(2.0)), std::domain_error);
    CHECK_THROWS_AS(NoiseSampler(NoiseSpec::skew_t(1.0, 1.5)), std::domain_error);
    CHECK_THROWS_AS(NoiseSampler(NoiseSpec::normal(0.0)), std::domain_error);
    CHECK_THROWS_AS(sample_noise(NoiseSpec::scaled_t(-1.0), 10, {}), std::domain_error);
  }

  TEST_CASE("sample_noise is deterministic") {
    const auto spec = NoiseSpec::skew_t(1.0, 4.1, 2.0);
    CHECK(sample_noise(spec, 1000, {3, 4}) == sample_noise(spec, 1000, {3, 4}));
    CHECK(sample_noise(spec, 1000, {3, 4}) != sample_noise(spec, 1000, {3, 5}));
  }

  TEST_CASE("moment fidelity over 10^6 draws") {
    constexpr std::size_t kN = 1'000'000;
    const std::vector<NoiseSpec> specs = {
        NoiseSpec::normal(1.0), NoiseSpec::normal(0.3), NoiseSpec::scaled_t(5.0, 1.0),
        NoiseSpec::scaled_t(4.1, 2.5), NoiseSpec::skew_t(1.0, 4.1, 1.0),
        NoiseSpec::skew_t(-3.0, 6.0, 0.5)};
    std::uint64_t stream = 0;
    for (const auto& spec : specs) {
      const auto x = sample_noise(spec, kN, {2024, stream++});
      const auto s = summarize(x);
      CAPTURE(stream);
      const double v = spec.variance;
      CHECK(std::fabs(s.mean) < 5.0 * std::sqrt(v / kN));
      // Standard error of the sample variance from the sample fourth moment.
      const double se_var = std::sqrt((s.m4 - s.var * s.var) / kN);
      CHECK(std::fabs(s.var - v) < 5.0 * se_var);
    }
  }

  TEST_CASE("normal kurtosis") {
    constexpr std::size_t kN = 1'000'000;
    const auto s = summarize(sample_noise(NoiseSpec::normal(), kN, {77, 0}));
    const double kurt = s.m4 / (s.var * s.var);
    CHECK(std::fabs(kurt - 3.0) < 5.0 * std::sqrt(24.0 / kN));
  }

  TEST_CASE("skew-t closed-form moments") {
    const auto sym = skew_t_moments(0.0, 5.0);
    CHECK(sym.mean == 0.0);
    CHECK(sym.skewness == 0.0);
    CHECK(sym.variance == Approx(5.0 / 3.0).epsilon(1e-15));

    const auto m = skew_t_moments(1.0, 4.1);
    CHECK(std::fabs(m.skewness - 1.77) < 0.01);
    CHECK(m.mean == Approx(0.703).epsilon(1e-3));
    CHECK(skew_t_moments(-1.0, 4.1).skewness == Approx(-m.skewness).epsilon(1e-14));

    CHECK_THROWS_AS(skew_t_moments(1.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(skew_t_mean_variance(1.0, 2.0), std::domain_error);
    CHECK(std::isnan(skew_t_mean_variance(1.0, 2.5).skewness));
  }

  TEST_CASE("skew-t moments against numerical integration of the density") {
    boost::math::quadrature::sinh_sinh<double> integrator;
    for (auto [skew, df] : {std::pair{1.0, 4.1}, std::pair{2.5, 7.0}, std::pair{-0.5, 3.5}}) {
      CAPTURE(skew);
      CAPTURE(df);
      const double mass = integrator.integrate(
          [&](double y) { return skew_t_density(y, skew, df); });
      const double mean = integrator.integrate(
          [&](double y) { return y * skew_t_density(y, skew, df); });
      const double second = integrator.integrate(
          [&](double y) { return y * y * skew_t_density(y, skew, df); });
      const auto m = skew_t_mean_variance(skew, df);
      CHECK(mass == Approx(1.0).epsilon(1e-8));
      CHECK(m.mean == Approx(mean).epsilon(1e-7));
      CHECK(m.variance == Approx(second - mean * mean).epsilon(1e-6));
    }
  }
}

TEST_SUITE("design_gen") {
  TEST_CASE("balanced") {
    const auto d = gen_design(DesignGen::balanced(10, 5), SeedSpec{1, 1});
    CHECK(d.k() == 10);
    CHECK(d.n() == 50);
    CHECK(d.balanced());
    CHECK(uvt::kappa(d) == 1.0);
    CHECK(DesignGen::balanced(10, 5).label() == "balanced-5");
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(DesignGen::geometric(10, 0.15, 1).validate(), std::domain_error);
    CHECK_THROWS_AS(DesignGen::uniform_set(10, 1, 6).validate(), std::domain_error);
    CHECK_THROWS_AS(DesignGen::uniform_set(10, 6, 5).validate(), std::domain_error);
    CHECK_THROWS_AS(DesignGen::balanced(1, 5).validate(), std::domain_error);
    CHECK_THROWS_AS(gen_design(DesignGen::geometric(3, 0.0, 2), SeedSpec{}),
                    std::domain_error);
  }

  TEST_CASE("geometric: support, mean and population kappa") {
    const auto gen = DesignGen::geometric(100000, 0.15, 2);
    const auto d = gen_design(gen, SeedSpec{3, 0});
    std::size_t min_size = 1000;
    for (auto s : d.sizes()) min_size = std::min(min_size, s);
    CHECK(min_size == 2);
    const double mean = static_cast<double>(d.n()) / d.k();
    const double pop_mean = 2.0 + 0.85 / 0.15;
    const double pop_sd = std::sqrt(0.85) / 0.15;
    CHECK(std::fabs(mean - pop_mean) < 5.0 * pop_sd / std::sqrt(double(d.k())));
    CHECK(std::fabs(uvt::kappa(d) - gen.population_kappa()) < 0.01);

    // Population kappa by summing the pmf directly.
    double m1 = 0.0;
    double m2 = 0.0;
    for (int g = 0; g < 2000; ++g) {
      const double pr = 0.15 * std::pow(0.85, g);
      m1 += pr * (g + 2);
      m2 += pr * (g + 2) * (g + 2);
    }
    const double kappa_enum = 1.0 / (1.0 + (m2 - m1 * m1) / (m1 * m1));
    CHECK(gen.population_kappa() == Approx(kappa_enum).epsilon(1e-12));
    CHECK(gen.population_kappa() == Approx(0.61).epsilon(0.005 / 0.61));
    CHECK(gen.label() == "geometric-0.15+2");
  }

  TEST_CASE("uniform set: support and population kappa") {
    const auto gen = DesignGen::uniform_set(60000, 5, 10);
    const auto d = gen_design(gen, SeedSpec{4, 0});
    std::vector<int> counts(11, 0);
    for (auto s : d.sizes()) {
      REQUIRE(s >= 5);
      REQUIRE(s <= 10);
      ++counts[s];
    }
    for (int v = 5; v <= 10; ++v) CHECK(std::abs(counts[v] - 10000) < 500);
    CHECK(gen.population_kappa() == Approx(1.0 / (1.0 + (35.0 / 12.0) / 56.25)).epsilon(1e-14));
    CHECK(std::fabs(gen.population_kappa() - 0.95) < 0.005);
    CHECK(std::fabs(uvt::kappa(d) - gen.population_kappa()) < 0.005);
  }

  TEST_CASE("deterministic per seed") {
    const auto gen = DesignGen::geometric(50, 0.15, 2);
    CHECK(gen_design(gen, SeedSpec{8, 1}) == gen_design(gen, SeedSpec{8, 1}));
  }
}

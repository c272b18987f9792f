#include "uvartest/randgen/design_gen.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace uvt::rng {
namespace {

std::string format_double(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace

void DesignGen::validate() const {
  if (k < 2) throw std::domain_error("design generator needs k >= 2");
  switch (kind) {
    case Kind::Balanced:
      if (m < 2) throw std::domain_error("balanced design needs m >= 2");
      break;
    case Kind::Geometric:
      if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("geometric design needs p in (0, 1]");
      }
      if (shift < 2) throw std::domain_error("geometric design needs shift >= 2");
      break;
    case Kind::UniformSet:
      if (lo < 2) throw std::domain_error("uniform design needs lo >= 2");
      if (hi < lo) throw std::domain_error("uniform design needs hi >= lo");
      break;
  }
}

std::string DesignGen::label() const {
  switch (kind) {
    case Kind::Balanced:
      return "balanced-" + std::to_string(m);
    case Kind::Geometric:
      return "geometric-" + format_double(p) + "+" + std::to_string(shift);
    case Kind::UniformSet:
      return "uniform-" + std::to_string(lo) + "-" + std::to_string(hi);
  }
  return "?";
}

double DesignGen::population_kappa() const {
  validate();
  double mean = 0.0;
  double var = 0.0;
  switch (kind) {
    case Kind::Balanced:
      return 1.0;
    case Kind::Geometric: {
      const double q = 1.0 - p;
      mean = static_cast<double>(shift) + q / p;
      var = q / (p * p);
      break;
    }
    case Kind::UniformSet: {
      const double width = static_cast<double>(hi - lo + 1);
      mean = 0.5 * static_cast<double>(lo + hi);
      var = (width * width - 1.0) / 12.0;
      break;
    }
  }
  return 1.0 / (1.0 + var / (mean * mean));
}

Design gen_design(const DesignGen& gen, Rng& rng) {
  gen.validate();
  std::vector<std::size_t> sizes(gen.k);
  switch (gen.kind) {
    case DesignGen::Kind::Balanced:
      for (auto& s : sizes) s = gen.m;
      break;
    case DesignGen::Kind::Geometric: {
      const double log_q = std::log1p(-gen.p);
      for (auto& s : sizes) {
        // Inverse transform: P(G >= g) = q^g on {0, 1, ...}.
        const double g = gen.p == 1.0 ? 0.0 : std::floor(std::log(rng.uniform()) / log_q);
        s = gen.shift + static_cast<std::size_t>(g);
      }
      break;
    }
    case DesignGen::Kind::UniformSet:
      for (auto& s : sizes) s = gen.lo + rng.below(gen.hi - gen.lo + 1);
      break;
  }
  return Design(std::move(sizes));
}

Design gen_design(const DesignGen& gen, SeedSpec seed) {
  Rng rng(seed);
  return gen_design(gen, rng);
}

}  // namespace uvt::rng

#pragma once

#include <cstddef>
#include <string>

#include "uvartest/core/design.hpp"
#include "uvartest/randgen/rng.hpp"

namespace uvt::rng {

/// Generator of group-size vectors.
struct DesignGen {
  enum class Kind { Balanced, Geometric, UniformSet };

  Kind kind = Kind::Balanced;
  std::size_t k = 2;
  std::size_t m = 2;        // Balanced
  double p = 0.5;           // Geometric success probability
  std::size_t shift = 2;    // Geometric offset added to a {0,1,...} draw
  std::size_t lo = 2;       // UniformSet
  std::size_t hi = 2;

  static DesignGen balanced(std::size_t k, std::size_t m) {
    DesignGen g;
    g.kind = Kind::Balanced;
    g.k = k;
    g.m = m;
    return g;
  }
  static DesignGen geometric(std::size_t k, double p, std::size_t shift) {
    DesignGen g;
    g.kind = Kind::Geometric;
    g.k = k;
    g.p = p;
    g.shift = shift;
    return g;
  }
  static DesignGen uniform_set(std::size_t k, std::size_t lo, std::size_t hi) {
    DesignGen g;
    g.kind = Kind::UniformSet;
    g.k = k;
    g.lo = lo;
    g.hi = hi;
    return g;
  }

  /// Throws std::domain_error when a draw could produce n_i < 2.
  void validate() const;

  /// Short label without commas, e.g. "balanced-5", "geometric-0.15+2".
  std::string label() const;

  /// kappa of the generating distribution of n_i (population values).
  double population_kappa() const;

  friend bool operator==(const DesignGen&, const DesignGen&) = default;
};

Design gen_design(const DesignGen& gen, Rng& rng);
Design gen_design(const DesignGen& gen, SeedSpec seed);

}  // namespace uvt::rng

#pragma once

#include <cstddef>

#include "uvartest/core/inference.hpp"
#include "uvartest/randgen/rng.hpp"

namespace uvt::sim {

/// Monte Carlo permutation test of J_n: observations are reassigned to
/// groups uniformly at random with the group sizes held fixed, and
/// p = (1 + #{J* >= J_obs}) / (n_perm + 1). Degenerate permutations never
/// count as exceedances.
///
/// Throws std::invalid_argument for n_perm == 0 and DegenerateWithinVariance
/// when the observed dataset is degenerate.
TestResult permutation_test(const Dataset& data, std::size_t n_perm,
                            rng::SeedSpec seed, double alpha = 0.05);

/// Same statistic over every distinct assignment of observations to the
/// labelled groups, p = (1 + #{J* >= J_obs}) / (N + 1) with N the number of
/// assignments. Throws std::invalid_argument when N exceeds max_assignments.
TestResult permutation_test_exhaustive(const Dataset& data, double alpha = 0.05,
                                       std::size_t max_assignments = 2'000'000);

}  // namespace uvt::sim

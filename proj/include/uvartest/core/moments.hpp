#pragma once

#include <vector>

#include "uvartest/core/design.hpp"

namespace uvt {

struct MomentOracle {
  double e_bn = 0.0;         // E[B_n]
  double var_bn_null = 0.0;  // Var[B_n] under sigma_b^2 = 0
  std::vector<double> var_ui;
  double lambda_n = 0.0;     // M_n / n^3
  double shift = 0.0;        // mean of J_n when sigma_b^2 = delta^2 / sqrt(n)
};

/// Closed-form moments of the decomposition for a design.
/// e4 is E[e^4] of the within-treatment errors; requires e4 >= sigma_e2^2.
MomentOracle moment_oracle(const Design& design, double sigma_b2,
                           double sigma_e2, double e4);

/// delta^2 / (2 sigma_e^2 sqrt(lambda_n)).
double local_shift(const Design& design, double delta, double sigma_e2);

/// Intraclass correlation sigma_b^2 / (sigma_b^2 + sigma_e^2).
double icc(double sigma_b2, double sigma_e2);

/// Imbalance 1 / (1 + cv^2), cv using the population standard deviation of
/// the group sizes. Equals 1 exactly for balanced designs.
double kappa(const Design& design);

}  // namespace uvt

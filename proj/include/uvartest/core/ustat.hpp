#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uvartest/core/design.hpp"

namespace uvt {

/// Per-group sufficient statistics: means and centered sums of squares,
/// plus the same pair for the pooled sample. Groups whose values are all
/// identical get an exact zero sum of squares.
struct GroupMoments {
  std::vector<double> mean;
  std::vector<double> css;
  double grand_mean = 0.0;
  double total_css = 0.0;
};

GroupMoments group_moments(const Dataset& data);

/// Same, for values laid out group-major according to design (no
/// finiteness validation; values.size() must equal design.n()).
GroupMoments group_moments(const Design& design, std::span<const double> values);

/// U_i: the pairwise-kernel variance estimate of group i, i.e. S_i^2.
double within_u(const Dataset& data, std::size_t i);

/// U_{ii'}: average of (Y_ij - Y_i'j')^2 / 2 over all cross pairs.
/// Throws std::invalid_argument when i == i2.
double between_pair_u(const Dataset& data, std::size_t i, std::size_t i2);

struct Decomposition {
  std::vector<double> u_within;  // U_i
  double u_pooled = 0.0;         // U_n^0
  double w_n = 0.0;
  double b_n = 0.0;
};

/// U_n^0 = W_n + B_n in O(n + k) from group sufficient statistics.
Decomposition decompose(const Dataset& data);
Decomposition decompose(const Design& design, const GroupMoments& moments);

/// Pair weights eta_rs of the centered quadratic form for B_n.
class EtaWeights {
 public:
  explicit EtaWeights(Design design);

  const Design& design() const noexcept { return design_; }

  /// Weight for lexicographic positions r != s (0-based, symmetric).
  double operator()(std::size_t r, std::size_t s) const;

  /// Same-treatment weight (n - n_i) / (n_i - 1).
  double within_weight(std::size_t i) const { return within_.at(i); }

  /// Sum of squared weights, accumulated per pair class.
  double m_n() const noexcept { return m_n_; }

 private:
  Design design_;
  std::vector<double> within_;
  double m_n_ = 0.0;
};

/// M_n from its closed form in n, k and the group sizes.
double m_n(const Design& design);

/// (n choose 2)^{-1} sum_{r<s} eta_rs (Y_r - c)(Y_s - c), evaluated by
/// direct O(n^2) enumeration. Independent of c because weight row sums
/// vanish; kept as a cross-check of decompose().b_n.
double b_n_centered(const Dataset& data, double center);

}  // namespace uvt

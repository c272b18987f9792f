#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uvt {

/// Group sizes (n_1, ..., n_k) of a one-way layout.
///
/// Construction enforces k >= 2 and n_i >= 2 for every group; all weight
/// and moment formulas downstream depend only on this object.
class Design {
 public:
  explicit Design(std::vector<std::size_t> group_sizes);

  std::size_t k() const noexcept { return sizes_.size(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t size(std::size_t i) const { return sizes_.at(i); }
  std::span<const std::size_t> sizes() const noexcept { return sizes_; }

  /// Index of the first observation of group i in the lexicographic
  /// (group-major) ordering Y_1, ..., Y_n.
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }

  /// Group that owns lexicographic position r (0-based).
  std::size_t group_of(std::size_t r) const;

  bool balanced() const noexcept;

  friend bool operator==(const Design& a, const Design& b) {
    return a.sizes_ == b.sizes_;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t n_ = 0;
};

/// Grouped observations stored flat in group-major order.
class Dataset {
 public:
  Dataset(Design design, std::vector<double> values);

  static Dataset from_groups(const std::vector<std::vector<double>>& groups);

  const Design& design() const noexcept { return design_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> group(std::size_t i) const;

 private:
  Design design_;
  std::vector<double> values_;
};

}  // namespace uvt

#include "uvartest/core/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uvt {

Design::Design(std::vector<std::size_t> group_sizes)
    : sizes_(std::move(group_sizes)) {
  if (sizes_.size() < 2) {
    throw std::invalid_argument("design needs at least 2 groups, got " +
                                std::to_string(sizes_.size()));
  }
  offsets_.reserve(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 2) {
      throw std::invalid_argument("group " + std::to_string(i) + " has " +
                                  std::to_string(sizes_[i]) +
                                  " observation(s); every group needs n_i >= 2");
    }
    offsets_.push_back(n_);
    n_ += sizes_[i];
  }
}

std::size_t Design::group_of(std::size_t r) const {
  if (r >= n_) throw std::out_of_range("observation index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), r);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

bool Design::balanced() const noexcept {
  return std::all_of(sizes_.begin(), sizes_.end(),
                     [&](std::size_t s) { return s == sizes_.front(); });
}

Dataset::Dataset(Design design, std::vector<double> values)
    : design_(std::move(design)), values_(std::move(values)) {
  if (values_.size() != design_.n()) {
    throw std::invalid_argument("dataset has " + std::to_string(values_.size()) +
                                " values but design expects " +
                                std::to_string(design_.n()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite observation");
  }
}

Dataset Dataset::from_groups(const std::vector<std::vector<double>>& groups) {
  std::vector<std::size_t> sizes;
  std::vector<double> flat;
  sizes.reserve(groups.size());
  for (const auto& g : groups) {
    sizes.push_back(g.size());
    flat.insert(flat.end(), g.begin(), g.end());
  }
  return Dataset(Design(std::move(sizes)), std::move(flat));
}

std::span<const double> Dataset::group(std::size_t i) const {
  return std::span<const double>(values_).subspan(design_.offset(i),
                                                  design_.size(i));
}

}  // namespace uvt

#pragma once

#include <stdexcept>
#include <string>

namespace uvt {

/// Raised when a test statistic has a zero within-treatment variance in its
/// denominator (every group internally constant).
class DegenerateWithinVariance : public std::runtime_error {
 public:
  explicit DegenerateWithinVariance(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace uvt

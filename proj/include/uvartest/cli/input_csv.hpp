#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "uvartest/core/design.hpp"

namespace uvt::cli {

/// Malformed input; line() is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct InputRecord {
  std::string treatment;
  double value = 0.0;
};

struct LabelledDataset {
  std::vector<std::string> labels;  // group order = first appearance
  Dataset data;
};

/// Long-form CSV: header `treatment,value`, one observation per row, LF or
/// CRLF line endings, no blank lines. Throws InputError.
LabelledDataset read_dataset_csv(std::istream& in);

}  // namespace uvt::cli

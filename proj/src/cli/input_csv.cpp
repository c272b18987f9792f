#include "uvartest/cli/input_csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <string_view>

namespace uvt::cli {
namespace {

constexpr std::string_view kHeader = "treatment,value";
constexpr std::string_view kBom = "\xEF\xBB\xBF";

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

InputRecord parse_row(std::string_view line, std::size_t line_no) {
  const std::size_t comma = line.find(',');
  if (comma == std::string_view::npos ||
      line.find(',', comma + 1) != std::string_view::npos) {
    throw InputError(line_no, "expected exactly two fields 'treatment,value'");
  }
  InputRecord rec;
  rec.treatment = std::string(line.substr(0, comma));
  if (rec.treatment.empty()) throw InputError(line_no, "empty treatment label");
  const std::string_view text = line.substr(comma + 1);
  const auto r = std::from_chars(text.data(), text.data() + text.size(), rec.value);
  if (text.empty() || r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
    throw InputError(line_no, "value '" + std::string(text) + "' is not a number");
  }
  if (!std::isfinite(rec.value)) {
    throw InputError(line_no, "value '" + std::string(text) + "' is not finite");
  }
  return rec;
}

}  // namespace

LabelledDataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError(0, "input is empty");
  strip_cr(line);
  std::string_view header = line;
  if (header.starts_with(kBom)) header.remove_prefix(kBom.size());
  if (header != kHeader) {
    throw InputError(1, "header must be 'treatment,value'");
  }

  std::vector<std::string> labels;
  std::vector<std::vector<double>> groups;
  std::vector<std::size_t> first_line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) throw InputError(line_no, "blank lines are not allowed");
    InputRecord rec = parse_row(line, line_no);
    std::size_t g = 0;
    while (g < labels.size() && labels[g] != rec.treatment) ++g;
    if (g == labels.size()) {
      labels.push_back(std::move(rec.treatment));
      groups.emplace_back();
      first_line.push_back(line_no);
    }
    groups[g].push_back(rec.value);
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() < 2) {
      throw InputError(first_line[g],
                       "treatment '" + labels[g] + "' has " +
                           std::to_string(groups[g].size()) +
                           " observation; every treatment needs n_i >= 2");
    }
  }
  if (groups.size() < 2) {
    throw InputError(0, "need at least 2 treatments, found " +
                            std::to_string(groups.size()));
  }
  return {std::move(labels), Dataset::from_groups(groups)};
}

}  // namespace uvt::cli

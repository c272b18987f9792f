#pragma once

#include <iosfwd>
#include <string>

#include "uvartest/simlab/scenario.hpp"

namespace uvt::sim {

/// Header line of the table CSV.
inline constexpr const char* kTableCsvHeader =
    "scenario,k,design,sigma_b2,method,rate,se,replicates";

/// CSV with one row per cell; numbers use shortest round-trip formatting.
void write_csv(std::ostream& out, const RejectionTable& table);
std::string to_csv(const RejectionTable& table);

/// Parses write_csv output. Throws std::runtime_error naming the bad line.
RejectionTable read_csv(std::istream& in);

/// Markdown grid: one row per sigma_b2, one column per (design, method),
/// rejection rates in percent.
void write_markdown(std::ostream& out, const RejectionTable& table);
std::string to_markdown(const RejectionTable& table);

}  // namespace uvt::sim

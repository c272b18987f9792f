#include "uvartest/simlab/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace uvt::sim {
namespace {

std::string shortest(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no) {
  T value{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), value);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw std::runtime_error("table CSV line " + std::to_string(line_no) +
                             ": bad number '" + std::string(s) + "'");
  }
  return value;
}

std::string percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * rate);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const RejectionTable& table) {
  out << kTableCsvHeader << '\n';
  for (const auto& c : table.cells) {
    out << c.scenario << ',' << c.k << ',' << c.design << ','
        << shortest(c.sigma_b2) << ',' << to_string(c.method) << ','
        << shortest(c.rate()) << ',' << shortest(c.se()) << ',' << c.replicates
        << '\n';
  }
}

std::string to_csv(const RejectionTable& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

RejectionTable read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw std::runtime_error("table CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTableCsvHeader) {
    throw std::runtime_error("table CSV line 1: unexpected header");
  }
  RejectionTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto f = split(line, ',');
    if (f.size() != 8) {
      throw std::runtime_error("table CSV line " + std::to_string(line_no) +
                               ": expected 8 fields");
    }
    RejectionCell c;
    c.scenario = std::string(f[0]);
    c.k = parse_number<std::size_t>(f[1], line_no);
    c.design = std::string(f[2]);
    c.sigma_b2 = parse_number<double>(f[3], line_no);
    try {
      c.method = method_from_string(f[4]);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("table CSV line " + std::to_string(line_no) + ": " +
                               e.what());
    }
    const double rate = parse_number<double>(f[5], line_no);
    c.replicates = parse_number<std::size_t>(f[7], line_no);
    c.rejections = static_cast<std::size_t>(
        std::llround(rate * static_cast<double>(c.replicates)));
    table.cells.push_back(std::move(c));
  }
  return table;
}

void write_markdown(std::ostream& out, const RejectionTable& table) {
  std::vector<std::string> scenarios;
  for (const auto& c : table.cells) {
    if (std::find(scenarios.begin(), scenarios.end(), c.scenario) == scenarios.end()) {
      scenarios.push_back(c.scenario);
    }
  }
  bool first_block = true;
  for (const auto& scenario : scenarios) {
    std::vector<std::pair<std::size_t, std::string>> designs;
    std::vector<Method> methods;
    std::vector<double> sigmas;
    for (const auto& c : table.cells) {
      if (c.scenario != scenario) continue;
      const auto key = std::make_pair(c.k, c.design);
      if (std::find(designs.begin(), designs.end(), key) == designs.end()) {
        designs.push_back(key);
      }
      if (std::find(methods.begin(), methods.end(), c.method) == methods.end()) {
        methods.push_back(c.method);
      }
      if (std::find(sigmas.begin(), sigmas.end(), c.sigma_b2) == sigmas.end()) {
        sigmas.push_back(c.sigma_b2);
      }
    }
    // Drop the design label from headers when k alone identifies a column.
    bool label_needed = false;
    for (std::size_t i = 0; i < designs.size() && !label_needed; ++i) {
      for (std::size_t j = i + 1; j < designs.size(); ++j) {
        if (designs[i].first == designs[j].first) {
          label_needed = true;
          break;
        }
      }
    }
    if (!first_block) out << '\n';
    first_block = false;
    out << "**" << scenario << "** rejection rates (%)\n\n";
    out << "| sigma_b2 |";
    for (const auto& [k, label] : designs) {
      for (Method m : methods) {
        out << " k=" << k;
        if (label_needed) out << ' ' << label;
        out << ' ' << to_string(m) << " |";
      }
    }
    out << "\n|---:|";
    for (std::size_t i = 0; i < designs.size() * methods.size(); ++i) out << "---:|";
    out << '\n';
    for (double s : sigmas) {
      out << "| " << shortest(s) << " |";
      for (const auto& [k, label] : designs) {
        for (Method m : methods) {
          const RejectionCell* c = nullptr;
          for (const auto& cell : table.cells) {
            if (cell.scenario == scenario && cell.k == k && cell.design == label &&
                cell.sigma_b2 == s && cell.method == m) {
              c = &cell;
              break;
            }
          }
          out << ' ' << (c ? percent(c->rate()) : std::string("-")) << " |";
        }
      }
      out << '\n';
    }
  }
}

std::string to_markdown(const RejectionTable& table) {
  std::ostringstream os;
  write_markdown(os, table);
  return os.str();
}

}  // namespace uvt::sim

#include "orbivol/table1.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

#include "orbivol/table1_data.hpp"

namespace orbivol {

namespace {

std::vector<GoldenRow> parse_embedded() {
  std::vector<GoldenRow> rows;
  std::istringstream in(detail::kTable1GoldenCsv);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header_seen) {
      // Skip the column-name header.
      header_seen = true;
      continue;
    }
    GoldenRow row;
    double lre = 0, lim = 0, wre = 0, wim = 0;
    std::istringstream ls(line);
    std::string field;
    auto next = [&]() -> std::string {
      if (!std::getline(ls, field, ',')) {
        throw std::runtime_error("embedded table row too short: " + line);
      }
      return field;
    };
    row.two_n = std::stoi(next());
    row.two_m = std::stoi(next());
    row.r = std::stoi(next());
    lre = std::stod(next());
    lim = std::stod(next());
    wre = std::stod(next());
    wim = std::stod(next());
    row.lambda = {lre, lim};
    row.w = {wre, wim};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

const std::vector<GoldenRow>& golden_rows() {
  static const std::vector<GoldenRow> rows = parse_embedded();
  return rows;
}

}  // namespace orbivol

#pragma once

#include <string>
#include <vector>

namespace holo::csv {

// Space-separated table: `#` comment lines (config, column names) then rows.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// %.9g, with -0 printed as 0 and non-finite values as nan / inf / -inf.
std::string format_number(double x);

std::string render(const Table& t);

// Whole file in one write; "-" or an empty path means stdout.
void write(const Table& t, const std::string& path);

}  // namespace holo::csv

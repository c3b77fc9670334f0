#pragma once

#include <string>
#include <vector>

namespace qmech::bench {

/// Numeric table written with 17 significant digits in scientific notation.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
  std::string str() const;

  static CsvTable parse(const std::string& text);
};

std::string format_number(double value);

}  // namespace qmech::bench

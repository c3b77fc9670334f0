#include "qmech/bench/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qmech/error.hpp"

namespace qmech::bench {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::InvalidArgument, "csv: row width does not match header");
  rows.push_back(std::move(row));
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
  throw Error(ErrorKind::InvalidArgument, "csv: no column named " + name);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out += ',';
      out += format_number(r[c]);
    }
    out += '\n';
  }
  return out;
}

CsvTable CsvTable::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CsvTable t;
  if (!std::getline(in, line)) throw Error(ErrorKind::Config, "csv: empty input");
  {
    std::istringstream head(line);
    std::string cell;
    while (std::getline(head, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str()) throw Error(ErrorKind::Config, "csv: bad number '" + cell + "'");
    }
    if (row.size() != t.columns.size()) throw Error(ErrorKind::Config, "csv: ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qmech::bench

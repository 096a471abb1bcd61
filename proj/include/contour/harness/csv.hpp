#pragma once

// Comma-separated numeric tables: first row is the header, '.' decimals,
// no quoting of numeric cells.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "contour/linalg.hpp"

namespace contour::harness {

struct CsvTable {
  std::vector<std::string> header;
  Matrix values;  // rows = data lines

  Eigen::Index column(const std::string& name) const;  // -1 when absent
};

/// Throws ParseError (or NonNumericCell) with 1-based data row and column.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

}  // namespace contour::harness

#include "contour/harness/csv.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "contour/errors.hpp"

namespace contour::harness {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

Eigen::Index CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return static_cast<Eigen::Index>(c);
  }
  return -1;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    if (trim(line).empty()) continue;
    for (auto& f : split_fields(line)) table.header.push_back(unquote(f));
    have_header = true;
  }
  if (!have_header) throw ParseError("CSV input is empty");
  std::set<std::string> seen;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name.empty()) throw ParseError("header column " + std::to_string(c + 1) + " is unnamed", 0, static_cast<long>(c + 1));
    if (!seen.insert(name).second) throw ParseError("header column '" + name + "' is repeated", 0, static_cast<long>(c + 1));
  }

  std::vector<std::vector<double>> rows;
  long row_no = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row_no;
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      throw ParseError("row " + std::to_string(row_no) + " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(table.header.size()),
                       row_no);
    }
    std::vector<double> values(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string& f = fields[c];
      const char* begin = f.data();
      // from_chars rejects a leading '+'.
      if (!f.empty() && f[0] == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, f.data() + f.size(), values[c]);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(values[c])) {
        throw NonNumericCell("row " + std::to_string(row_no) + ", column '" + table.header[c] +
                                 "': '" + f + "' is not a finite number",
                             row_no, static_cast<long>(c + 1));
      }
    }
    rows.push_back(std::move(values));
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open CSV file " + path.string());
  return read_csv(in);
}

}  // namespace contour::harness

#include "evosplit/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "evosplit/errors.hpp"

namespace evosplit {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return std::string(buffer);
}

std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_g17(values[i]);
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw ConfigError("cannot open output file: " + path.string());
  }
  file << content;
  if (!file) {
    throw ConfigError("failed while writing output file: " + path.string());
  }
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    throw ConfigError("cannot open CSV file: " + path.string());
  }
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.header.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      std::size_t consumed = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &consumed);
      } catch (const std::exception&) {
        throw ConfigError("non-numeric CSV cell '" + cell + "' in " + path.string());
      }
      if (consumed != cell.size()) {
        throw ConfigError("non-numeric CSV cell '" + cell + "' in " + path.string());
      }
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw ConfigError("CSV file has no header row: " + path.string());
  }
  return table;
}

}  // namespace evosplit

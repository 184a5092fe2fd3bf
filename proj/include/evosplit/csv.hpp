#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace evosplit {

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_g17(double value);

/// Join formatted numbers with commas.
std::string csv_row(const std::vector<double>& values);

/// Write the full content in one shot, LF line endings. Throws ConfigError
/// when the file cannot be opened.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Parsed numeric CSV: one header row, then rows of doubles.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Strict reader for files produced by this project. Throws ConfigError on
/// missing files or non-numeric cells.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace evosplit

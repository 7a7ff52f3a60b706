#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace varspec::app {

/// A header plus rows of cells, the first column acting as the row key.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  ///< npos when absent
  const std::vector<std::string>* find_row(const std::string& key) const;
};

/// Shortest round-trip-stable decimal text (%.10g), independent of the locale.
std::string format_number(double v);
std::optional<double> parse_number(const std::string& s);

void write_csv(std::ostream& os, const Table& t);
void write_markdown(std::ostream& os, const Table& t);
/// Reads CSV, skipping blank lines and lines starting with '#'. Quoted cells with
/// embedded commas or doubled quotes are supported.
Table read_csv(std::istream& is);
Table read_csv_file(const std::string& path);

}  // namespace varspec::app

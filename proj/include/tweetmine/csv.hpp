#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "tweetmine/error.hpp"

namespace tweetmine {

/// Fixed numeric formatting for all emitted tables; pinning the format
/// keeps re-runs byte-identical.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

using CsvRow = std::vector<std::string>;

inline void write_csv(std::ostream& out, const CsvRow& header,
                      const std::vector<CsvRow>& rows) {
  auto write_row = [&](const CsvRow& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  };
  write_row(header);
  for (const CsvRow& row : rows) write_row(row);
}

inline void write_csv_file(const std::string& path, const CsvRow& header,
                           const std::vector<CsvRow>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  write_csv(out, header, rows);
}

}  // namespace tweetmine

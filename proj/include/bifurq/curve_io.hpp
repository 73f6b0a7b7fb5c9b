#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bifurq/curves.hpp"

namespace bifurq::io {

/// Header line then one row per sample, 17 significant digits. Invalid rows
/// carry nan in the columns that failed.
void write_csv(const curves::CurveTable& table, std::ostream& out);

struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Throws DomainError on ragged rows or unparsable numbers.
CsvData read_csv(std::istream& in);

/// {"meta": {...}, "rows": [{column: value, ..., "valid": bool}, ...]}
std::string to_json(const curves::CurveTable& table, int indent = 2);

/// Self-contained SVG: axes, tick labels and one polyline of y_column
/// against x_column. Invalid rows are skipped. Log axes require positive data.
struct SvgOptions {
  std::string x_column;
  std::string y_column;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};
void write_svg(const curves::CurveTable& table, const SvgOptions& opts, std::ostream& out);

/// Writes to path, throwing DomainError when the file cannot be opened.
void write_file(const std::string& path, const std::string& content);

}  // namespace bifurq::io

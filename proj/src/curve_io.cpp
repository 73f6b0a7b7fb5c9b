#include "bifurq/curve_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bifurq/error.hpp"

namespace bifurq::io {
namespace {

std::string format17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::size_t column_index(const curves::CurveTable& table, const std::string& name) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), name);
  if (it == table.columns.end()) throw DomainError("no column named '" + name + "'");
  return static_cast<std::size_t>(it - table.columns.begin());
}

// Roughly 5 round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

std::string label(double v, bool log_axis) {
  char buf[32];
  if (log_axis) {
    std::snprintf(buf, sizeof buf, "1e%g", v);
  } else {
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  }
  return buf;
}

}  // namespace

void write_csv(const curves::CurveTable& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      out << (i ? "," : "") << format17(row.values[i]);
    }
    out << '\n';
  }
}

CsvData read_csv(std::istream& in) {
  CsvData data;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_csv: empty input");
  data.columns = split(line, ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != data.columns.size()) {
      throw DomainError("read_csv: row has " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(data.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size()) throw DomainError("read_csv: bad number '" + c + "'");
      row.push_back(v);
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

std::string to_json(const curves::CurveTable& table, int indent) {
  using nlohmann::ordered_json;
  ordered_json meta;
  meta["kind"] = curves::kind_name(table.kind);
  meta["p"] = table.p;
  if (table.q) meta["q"] = *table.q;
  meta["columns"] = table.columns;
  meta["tolerances"] = {{"rel", table.meta.tol.rel},
                        {"abs", table.meta.tol.abs},
                        {"max_subdivisions", table.meta.tol.max_subdivisions},
                        {"x_tol", table.meta.tol.x_tol},
                        {"f_tol", table.meta.tol.f_tol}};
  meta["timestamp"] = table.meta.timestamp;
  meta["version"] = table.meta.version;

  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    for (std::size_t i = 0; i < table.columns.size() && i < row.values.size(); ++i) {
      // JSON has no NaN; failed cells become null.
      if (std::isfinite(row.values[i])) {
        r[table.columns[i]] = row.values[i];
      } else {
        r[table.columns[i]] = nullptr;
      }
    }
    r["valid"] = row.valid;
    if (!row.valid) r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(indent);
}

void write_svg(const curves::CurveTable& table, const SvgOptions& opts, std::ostream& out) {
  const std::size_t xi = column_index(table, opts.x_column);
  const std::size_t yi = column_index(table, opts.y_column);
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : table.rows) {
    if (!row.valid) continue;
    double x = row.values[xi];
    double y = row.values[yi];
    if (opts.log_x) x = x > 0.0 ? std::log10(x) : NAN;
    if (opts.log_y) y = y > 0.0 ? std::log10(y) : NAN;
    if (std::isfinite(x) && std::isfinite(y)) pts.emplace_back(x, y);
  }
  if (pts.empty()) throw DomainError("write_svg: no plottable rows");

  double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }

  const double left = 70, right = 20, top = 20, bottom = 50;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  char buf[128];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
      << opts.height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<g stroke=\"black\"><line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/>",
                left, top + ph, left + pw, top + ph);
  out << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\"/></g>\n", left, top,
                left, top + ph);
  out << buf;
  for (double t : ticks(x0, x1)) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">", sx(t),
                  top + ph + 15);
    out << buf << label(t, opts.log_x) << "</text>\n";
  }
  for (double t : ticks(y0, y1)) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">", left - 5,
                  sy(t) + 4);
    out << buf << label(t, opts.log_y) << "</text>\n";
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">", left + pw / 2,
                static_cast<double>(opts.height) - 12);
  out << buf << opts.x_column << "</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"14\" y=\"%.1f\" transform=\"rotate(-90 14 %.1f)\" text-anchor=\"middle\">",
                top + ph / 2, top + ph / 2);
  out << buf << opts.y_column << "</text>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", sx(pts[i].first), sy(pts[i].second));
    out << buf;
  }
  out << "\"/>\n</svg>\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw DomainError("failed writing '" + path + "'");
}

}  // namespace bifurq::io

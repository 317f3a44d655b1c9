// Copyright 2026 The bfpfft Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bfpfft/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef BFPFFT_GIT_DESCRIBE
#define BFPFFT_GIT_DESCRIBE "unknown"
#endif

namespace bfpfft {

namespace {

// Orders cells of differing kinds by kind, then by value; NaN sorts last.
bool CellLess(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    if (std::isnan(*x) || std::isnan(y)) return !std::isnan(*x) && std::isnan(y);
    return *x < y;
  }
  return a < b;
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row has " +
                           std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

void Table::sort_rows(std::size_t key_columns) {
  const std::size_t k = std::min(key_columns, columns.size());
  std::stable_sort(rows.begin(), rows.end(),
                   [k](const std::vector<Cell>& a, const std::vector<Cell>& b) {
                     for (std::size_t i = 0; i < k; ++i) {
                       if (CellLess(a[i], b[i])) return true;
                       if (CellLess(b[i], a[i])) return false;
                     }
                     return false;
                   });
}

std::string format_cell(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  const double v = std::get<double>(cell);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string artifact_version() {
  return std::string(BFPFFT_VERSION) + "+g" + BFPFFT_GIT_DESCRIBE;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_csv(const Table& table, const Provenance& p) {
  std::ostringstream out;
  out << "# experiment=" << p.experiment << "\n"
      << "# table=" << table.name << "\n"
      << "# config_digest=" << p.config_digest << "\n"
      << "# format_table_version=" << p.format_table_version << "\n"
      << "# artifact_version=" << p.artifact_version << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_cell(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string to_json(const std::vector<Table>& tables, const Provenance& p) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["metadata"] = {{"experiment", p.experiment},
                     {"config_digest", p.config_digest},
                     {"format_table_version", p.format_table_version},
                     {"artifact_version", p.artifact_version}};
  ordered_json body = ordered_json::object();
  for (const Table& t : tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                obj[t.columns[i]] = std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
              } else {
                obj[t.columns[i]] = v;
              }
            },
            row[i]);
      }
      rows.push_back(std::move(obj));
    }
    body[t.name] = std::move(rows);
  }
  doc["tables"] = std::move(body);
  return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string bar_chart_svg(std::string_view title, const std::vector<Bar>& bars,
                          double reference, std::string_view reference_label) {
  constexpr double kLabelWidth = 230;
  constexpr double kPlotWidth = 520;
  constexpr double kRowHeight = 18;
  constexpr double kTop = 40;
  double lo = 0.0;
  double hi = std::log10(std::max(reference, 1.0)) + 1;
  for (const Bar& b : bars) {
    if (b.value > 0 && std::isfinite(b.value)) {
      hi = std::max(hi, std::ceil(std::log10(b.value)) + 0.5);
      lo = std::min(lo, std::floor(std::log10(b.value)));
    }
  }
  auto x_of = [&](double v) {
    const double d = v > 0 && std::isfinite(v) ? std::log10(v) : lo;
    return kLabelWidth + (std::clamp(d, lo, hi) - lo) / (hi - lo) * kPlotWidth;
  };
  const double height = kTop + kRowHeight * static_cast<double>(bars.size()) + 40;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(kLabelWidth + kPlotWidth + 30)
    << "\" height=\"" << Num(height) << "\" font-family=\"monospace\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"10\" y=\"20\" font-size=\"13\">" << Escape(title) << "</text>\n";
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const Bar& b = bars[i];
    const double y = kTop + kRowHeight * static_cast<double>(i);
    const bool bad = !std::isfinite(b.value);
    s << "<text x=\"" << Num(kLabelWidth - 6) << "\" y=\"" << Num(y + 12)
      << "\" text-anchor=\"end\">" << Escape(b.label) << "</text>\n";
    if (bad) {
      s << "<text x=\"" << Num(kLabelWidth + 4) << "\" y=\"" << Num(y + 12)
        << "\" fill=\"#c0392b\">" << (std::isnan(b.value) ? "NaN" : "Inf") << "</text>\n";
      continue;
    }
    s << "<rect x=\"" << Num(kLabelWidth) << "\" y=\"" << Num(y + 2) << "\" width=\""
      << Num(x_of(b.value) - kLabelWidth) << "\" height=\"" << Num(kRowHeight - 4)
      << "\" fill=\"" << (b.flagged ? "#c0392b" : "#2e6da4") << "\"/>\n";
  }
  const double xr = x_of(reference);
  const double bottom = kTop + kRowHeight * static_cast<double>(bars.size());
  s << "<line x1=\"" << Num(xr) << "\" y1=\"" << Num(kTop - 6) << "\" x2=\"" << Num(xr)
    << "\" y2=\"" << Num(bottom) << "\" stroke=\"#c0392b\" stroke-dasharray=\"4,3\"/>\n"
    << "<text x=\"" << Num(xr + 3) << "\" y=\"" << Num(kTop - 8) << "\" fill=\"#c0392b\">"
    << Escape(reference_label) << "</text>\n";
  for (double d = lo; d <= hi; d += 1.0) {
    const double x = kLabelWidth + (d - lo) / (hi - lo) * kPlotWidth;
    s << "<text x=\"" << Num(x) << "\" y=\"" << Num(bottom + 16)
      << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string heatmap_svg(std::string_view title, const ComplexMatrix& image,
                        std::size_t max_pixels, double dynamic_range_db) {
  if (image.rows == 0 || image.cols == 0 || max_pixels == 0) {
    throw std::invalid_argument("heatmap of an empty image");
  }
  const std::size_t fr = (image.rows + max_pixels - 1) / max_pixels;
  const std::size_t fc = (image.cols + max_pixels - 1) / max_pixels;
  const std::size_t h = (image.rows + fr - 1) / fr;
  const std::size_t w = (image.cols + fc - 1) / fc;
  // max-pool; NaN wins so a poisoned block stays visible
  std::vector<double> pooled(h * w, 0.0);
  double peak = 0.0;
  for (std::size_t r = 0; r < image.rows; ++r) {
    for (std::size_t c = 0; c < image.cols; ++c) {
      const double m = std::abs(image.at(r, c));
      double& cell = pooled[(r / fr) * w + c / fc];
      if (std::isnan(m) || std::isnan(cell)) {
        cell = std::numeric_limits<double>::quiet_NaN();
      } else {
        cell = std::max(cell, m);
        if (std::isfinite(m)) peak = std::max(peak, m);
      }
    }
  }
  constexpr int kScale = 4;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * kScale
    << "\" height=\"" << h * kScale + 24 << "\" font-family=\"monospace\" font-size=\"12\""
    << " shape-rendering=\"crispEdges\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"4\" y=\"16\">" << Escape(title) << "</text>\n"
    << "<g transform=\"translate(0,24)\">\n";
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double m = pooled[r * w + c];
      std::string fill;
      if (std::isnan(m)) {
        fill = "#ff0000";
      } else {
        const double db = peak > 0 && m > 0 ? 20 * std::log10(m / peak) : -dynamic_range_db;
        const double t = std::clamp(1.0 + db / dynamic_range_db, 0.0, 1.0);
        char buf[8];
        const int g = static_cast<int>(std::lround(255 * t));
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
        fill = buf;
      }
      s << "<rect x=\"" << c * kScale << "\" y=\"" << r * kScale << "\" width=\"" << kScale
        << "\" height=\"" << kScale << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace bfpfft

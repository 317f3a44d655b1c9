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

#ifndef BFPFFT_REPORT_HPP_
#define BFPFFT_REPORT_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bfpfft/matrix.hpp"

namespace bfpfft {

using Cell = std::variant<std::string, long long, double, bool>;

/// One result table. Rows are emitted in sorted order so output does not
/// depend on the order cells finished in.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Sorts rows by their first `key_columns` cells.
  void sort_rows(std::size_t key_columns);
};

/// Stable text form used in CSV: doubles as %.9g, nan, inf, -inf.
std::string format_cell(const Cell& cell);

/// Identifies what produced a table.
struct Provenance {
  std::string experiment;
  std::string config_digest;
  std::string format_table_version;
  std::string artifact_version;
};

/// "<version>+g<describe>".
std::string artifact_version();

/// 64-bit FNV-1a of `text` as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// `#`-prefixed provenance lines, one header row, one row per cell.
std::string to_csv(const Table& table, const Provenance& provenance);

/// {"metadata": {...}, "tables": {name: [{column: value}, ...]}}; NaN and
/// infinities become null.
std::string to_json(const std::vector<Table>& tables,
                    const Provenance& provenance);

/// Throws std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);

struct Bar {
  std::string label;
  double value = 0.0;
  /// Drawn in a warning colour.
  bool flagged = false;
};

/// Horizontal log10-scale bar chart with a dashed reference line.
std::string bar_chart_svg(std::string_view title, const std::vector<Bar>& bars,
                          double reference, std::string_view reference_label);

/// Grey-scale dB magnitude heatmap of a range-major image, max-pooled down to
/// at most `max_pixels` per side. NaN pixels are drawn red.
std::string heatmap_svg(std::string_view title, const ComplexMatrix& image,
                        std::size_t max_pixels = 128,
                        double dynamic_range_db = 60.0);

}  // namespace bfpfft

#endif  // BFPFFT_REPORT_HPP_

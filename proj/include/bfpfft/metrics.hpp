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

#ifndef BFPFFT_METRICS_HPP_
#define BFPFFT_METRICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bfpfft/formats.hpp"
#include "bfpfft/matrix.hpp"

namespace bfpfft {

/// Least-squares real gain a minimizing sum |ref - a * test|^2. Zero when
/// `test` is all zero.
double optimal_scale(std::span<const Complex> reference,
                     std::span<const Complex> test);

struct SqnrResult {
  /// +inf when the residual is exactly zero; NaN when `test` held NaN.
  double db = 0.0;
  /// Complex samples of `test` with a NaN component.
  std::size_t nan_count = 0;
  bool nan_flagged() const { return nan_count > 0; }
};

/// 10 log10(sum |ref|^2 / sum |ref - a test|^2), with a = optimal_scale when
/// `align` is set and a = 1 otherwise.
SqnrResult sqnr_db(std::span<const Complex> reference,
                   std::span<const Complex> test, bool align);

/// Fraction of complex samples with at least one NaN component.
double nan_fraction(std::span<const Complex> data);

enum class Axis { kRange, kAzimuth };

/// Fractional pixel position: row is the azimuth line, col the range bin, in
/// a range-major image.
struct PixelPosition {
  double row = 0.0;
  double col = 0.0;
};

/// Magnitude profile along one axis through a point response, interpolated
/// by `upsample_factor`. Sample i sits at native coordinate
/// `origin + i / upsample_factor`.
struct CutProfile {
  std::vector<double> samples;
  int upsample_factor = 1;
  /// Fractional index of the peak on the upsampled grid (parabolic fit).
  double peak_index = 0.0;
  double origin = 0.0;
  std::size_t nan_count = 0;

  double peak_position() const { return origin + peak_index / upsample_factor; }
};

inline constexpr int kDefaultUpsample = 16;
inline constexpr int kIslrHalfWindow = 32;

/// Locates the brightest pixel within `search_radius` of `target`, then
/// interpolates the line through it along `axis` by zero-padding its
/// spectrum. The profile spans +/-`half_window` native bins around the peak.
/// Throws if the peak lies on the image border or the factor is not a power
/// of two.
CutProfile extract_cut(const ComplexMatrix& image, PixelPosition target,
                       Axis axis, int upsample_factor = kDefaultUpsample,
                       int search_radius = 4,
                       int half_window = kIslrHalfWindow);

/// Highest sidelobe relative to the mainlobe peak, in dB.
double pslr_db(const CutProfile& cut);
/// Sidelobe energy inside the cut over mainlobe energy between the first
/// nulls, in dB.
double islr_db(const CutProfile& cut);
/// Width at peak / sqrt(2), in native bins.
double resolution_3db(const CutProfile& cut);

/// Half-open pixel rectangle [row0, row1) x [col0, col1).
struct Region {
  std::size_t row0 = 0;
  std::size_t row1 = 0;
  std::size_t col0 = 0;
  std::size_t col1 = 0;

  bool empty() const { return row0 >= row1 || col0 >= col1; }
  std::size_t area() const { return empty() ? 0 : (row1 - row0) * (col1 - col0); }
};

/// 20 log10(peak) - 10 log10(mean background power). The peak is the
/// brightest pixel within `exclusion_radius` of `target`; the background must
/// not overlap that box.
double target_snr_db(const ComplexMatrix& image, PixelPosition target,
                     int exclusion_radius, const Region& background);

}  // namespace bfpfft

#endif  // BFPFFT_METRICS_HPP_

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

#include "bfpfft/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bfpfft/fft.hpp"

namespace bfpfft {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool HasNaN(const Complex& z) { return std::isnan(z.real()) || std::isnan(z.imag()); }

}  // namespace

double optimal_scale(std::span<const Complex> reference,
                     std::span<const Complex> test) {
  if (reference.size() != test.size()) {
    throw std::invalid_argument("optimal_scale: length mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    num += (reference[i] * std::conj(test[i])).real();
    den += std::norm(test[i]);
  }
  return den > 0.0 ? num / den : 0.0;
}

SqnrResult sqnr_db(std::span<const Complex> reference,
                   std::span<const Complex> test, bool align) {
  if (reference.size() != test.size()) {
    throw std::invalid_argument("sqnr_db: length mismatch");
  }
  SqnrResult r;
  for (const auto& z : test) r.nan_count += HasNaN(z);
  if (r.nan_count > 0) {
    r.db = kNaN;
    return r;
  }
  const double a = align ? optimal_scale(reference, test) : 1.0;
  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    signal += std::norm(reference[i]);
    error += std::norm(reference[i] - a * test[i]);
  }
  if (error == 0.0) {
    r.db = std::numeric_limits<double>::infinity();
  } else {
    r.db = 10.0 * std::log10(signal / error);
  }
  return r;
}

double nan_fraction(std::span<const Complex> data) {
  if (data.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& z : data) count += HasNaN(z);
  return static_cast<double>(count) / static_cast<double>(data.size());
}

namespace {

struct Peak {
  std::size_t row = 0;
  std::size_t col = 0;
  double magnitude = -1.0;
};

Peak BrightestNear(const ComplexMatrix& image, PixelPosition target, int radius) {
  if (image.rows == 0 || image.cols == 0) {
    throw std::invalid_argument("empty image");
  }
  const auto r0 = static_cast<long>(std::lround(target.row));
  const auto c0 = static_cast<long>(std::lround(target.col));
  Peak best;
  bool found = false;
  for (long r = r0 - radius; r <= r0 + radius; ++r) {
    if (r < 0 || r >= static_cast<long>(image.rows)) continue;
    for (long c = c0 - radius; c <= c0 + radius; ++c) {
      if (c < 0 || c >= static_cast<long>(image.cols)) continue;
      const auto ur = static_cast<std::size_t>(r);
      const auto uc = static_cast<std::size_t>(c);
      const double m = std::abs(image.at(ur, uc));
      if (!found || m > best.magnitude) {
        best = {ur, uc, m};
        found = true;
      }
    }
  }
  if (!found) {
    throw std::invalid_argument("target lies outside the image");
  }
  return best;
}

}  // namespace

CutProfile extract_cut(const ComplexMatrix& image, PixelPosition target,
                       Axis axis, int upsample_factor, int search_radius,
                       int half_window) {
  if (upsample_factor < 1 ||
      !std::has_single_bit(static_cast<unsigned>(upsample_factor))) {
    throw std::invalid_argument("upsample factor must be a power of two, got " +
                                std::to_string(upsample_factor));
  }
  if (half_window < 1) throw std::invalid_argument("half_window must be positive");
  const Peak peak = BrightestNear(image, target, search_radius);
  if (peak.row == 0 || peak.col == 0 || peak.row + 1 == image.rows ||
      peak.col + 1 == image.cols) {
    throw std::invalid_argument("peak lies on the image border");
  }

  const bool along_range = axis == Axis::kRange;
  const std::size_t n = along_range ? image.cols : image.rows;
  const std::size_t center = along_range ? peak.col : peak.row;
  std::vector<Complex> line(n);
  for (std::size_t i = 0; i < n; ++i) {
    line[i] = along_range ? image.at(peak.row, i) : image.at(i, peak.col);
  }

  CutProfile cut;
  cut.upsample_factor = upsample_factor;
  cut.origin = static_cast<double>(center) - half_window;
  for (const auto& z : line) cut.nan_count += HasNaN(z);

  const auto u = static_cast<std::size_t>(upsample_factor);
  const auto w = static_cast<std::size_t>(half_window);
  const std::size_t count = 2 * w * u + 1;
  if (cut.nan_count > 0) {
    cut.samples.assign(count, kNaN);
    cut.peak_index = static_cast<double>(w * u);
    return cut;
  }

  std::vector<Complex> fine;
  if (u == 1) {
    fine = line;
  } else {
    const FftPlan coarse(n, 2, PrecisionMode::Exact());
    const FftPlan dense(n * u, 2, PrecisionMode::Exact());
    const std::vector<Complex> spectrum = fft_forward(coarse, line);
    std::vector<Complex> padded(n * u, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n / 2; ++k) padded[k] = spectrum[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) padded[k + n * (u - 1)] = spectrum[k];
    padded[n / 2] = 0.5 * spectrum[n / 2];
    padded[n * u - n / 2] = 0.5 * spectrum[n / 2];
    // inverse through conjugation, scaled so integer points match the line
    for (auto& z : padded) z = std::conj(z);
    fine = fft_forward(dense, padded);
    for (auto& z : fine) z = std::conj(z) / static_cast<double>(n);
  }

  const std::size_t len = n * u;
  const std::size_t start = (center * u + len - w * u) % len;
  cut.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    cut.samples[i] = std::abs(fine[(start + i) % len]);
  }

  std::size_t best = w * u;
  for (std::size_t i = w * u - u; i <= w * u + u; ++i) {
    if (cut.samples[i] > cut.samples[best]) best = i;
  }
  double offset = 0.0;
  if (best > 0 && best + 1 < count) {
    const double a = cut.samples[best - 1];
    const double b = cut.samples[best];
    const double c = cut.samples[best + 1];
    const double denom = a - 2 * b + c;
    if (denom < 0.0) offset = 0.5 * (a - c) / denom;
  }
  cut.peak_index = static_cast<double>(best) + offset;
  return cut;
}

namespace {

struct Mainlobe {
  std::size_t peak = 0;
  std::size_t left = 0;   // first local minimum left of the peak
  std::size_t right = 0;  // first local minimum right of the peak
};

Mainlobe FindMainlobe(const CutProfile& cut) {
  const auto& s = cut.samples;
  if (s.size() < 3) throw std::invalid_argument("cut too short");
  Mainlobe m;
  m.peak = std::min(s.size() - 1,
                    static_cast<std::size_t>(std::lround(std::max(0.0, cut.peak_index))));
  std::size_t i = m.peak;
  while (i > 0 && s[i - 1] <= s[i]) --i;
  if (i == 0) throw std::runtime_error("no null left of the mainlobe inside the cut");
  m.left = i;
  i = m.peak;
  while (i + 1 < s.size() && s[i + 1] <= s[i]) ++i;
  if (i + 1 == s.size()) throw std::runtime_error("no null right of the mainlobe inside the cut");
  m.right = i;
  return m;
}

}  // namespace

double pslr_db(const CutProfile& cut) {
  if (cut.nan_count > 0) return kNaN;
  const Mainlobe m = FindMainlobe(cut);
  const auto& s = cut.samples;
  double side = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i < m.left || i > m.right) side = std::max(side, s[i]);
  }
  return 20.0 * std::log10(side / s[m.peak]);
}

double islr_db(const CutProfile& cut) {
  if (cut.nan_count > 0) return kNaN;
  const Mainlobe m = FindMainlobe(cut);
  const auto& s = cut.samples;
  double main = 0.0;
  double side = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = s[i] * s[i];
    if (i < m.left || i > m.right) {
      side += e;
    } else {
      main += e;
    }
  }
  return 10.0 * std::log10(side / main);
}

double resolution_3db(const CutProfile& cut) {
  if (cut.nan_count > 0) return kNaN;
  const Mainlobe m = FindMainlobe(cut);
  const auto& s = cut.samples;
  const double level = s[m.peak] / std::sqrt(2.0);
  std::size_t i = m.peak;
  while (i > m.left && s[i - 1] >= level) --i;
  if (s[i - 1] >= level) throw std::runtime_error("mainlobe does not fall 3 dB on the left");
  const double xl = static_cast<double>(i - 1) + (level - s[i - 1]) / (s[i] - s[i - 1]);
  std::size_t j = m.peak;
  while (j < m.right && s[j + 1] >= level) ++j;
  if (s[j + 1] >= level) throw std::runtime_error("mainlobe does not fall 3 dB on the right");
  const double xr = static_cast<double>(j) + (s[j] - level) / (s[j] - s[j + 1]);
  return (xr - xl) / cut.upsample_factor;
}

double target_snr_db(const ComplexMatrix& image, PixelPosition target,
                     int exclusion_radius, const Region& background) {
  if (background.empty() || background.row1 > image.rows ||
      background.col1 > image.cols) {
    throw std::invalid_argument("background region is empty or outside the image");
  }
  const double r = static_cast<double>(exclusion_radius);
  const bool overlaps =
      target.row + r >= static_cast<double>(background.row0) &&
      target.row - r < static_cast<double>(background.row1) &&
      target.col + r >= static_cast<double>(background.col0) &&
      target.col - r < static_cast<double>(background.col1);
  if (overlaps) throw std::invalid_argument("background region overlaps the target");
  const Peak peak = BrightestNear(image, target, exclusion_radius);
  double power = 0.0;
  for (std::size_t i = background.row0; i < background.row1; ++i) {
    for (std::size_t j = background.col0; j < background.col1; ++j) {
      power += std::norm(image.at(i, j));
    }
  }
  power /= static_cast<double>(background.area());
  return 20.0 * std::log10(peak.magnitude) - 10.0 * std::log10(power);
}

}  // namespace bfpfft

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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "bfpfft/metrics.hpp"

using bfpfft::Axis;
using bfpfft::Complex;
using bfpfft::ComplexMatrix;
using bfpfft::Layout;

namespace {

constexpr double kPi = std::numbers::pi;

double Sinc(double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); }

// Continuous-sinc references, found numerically.
double SincPslrDb() {
  double best = 0.0;
  for (double x = 1.0; x <= 2.0; x += 1e-6) best = std::max(best, std::abs(Sinc(x)));
  return 20 * std::log10(best);
}

double SincHalfPowerWidth() {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (Sinc(mid) > 1 / std::sqrt(2.0) ? lo : hi) = mid;
  }
  return 2 * lo;
}

double SincIslrDb(double half_window) {
  double main = 0, side = 0;
  const double dx = 1e-4;
  for (double x = -half_window + dx / 2; x < half_window; x += dx) {
    const double e = Sinc(x) * Sinc(x) * dx;
    (std::abs(x) < 1.0 ? main : side) += e;
  }
  return 10 * std::log10(side / main);
}

// Exactly band-limited unweighted pulse: sum of the n-1 non-Nyquist
// harmonics, centred at `c` (fractional sample).
double Dirichlet(double t, std::size_t n) {
  if (std::abs(std::remainder(t, static_cast<double>(n))) < 1e-12) return 1.0;
  const double dn = static_cast<double>(n);
  return std::sin(kPi * (dn - 1) * t / dn) / (dn * std::sin(kPi * t / dn)) * dn / (dn - 1);
}

ComplexMatrix PointImage(std::size_t rows, std::size_t cols, double r0, double c0) {
  ComplexMatrix m(rows, cols, Layout::kRangeMajor);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.at(r, c) = Dirichlet(static_cast<double>(r) - r0, rows) *
                   Dirichlet(static_cast<double>(c) - c0, cols);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("sqnr by hand") {
  const std::vector<Complex> ref{{1, 0}, {0, 0}};
  const std::vector<Complex> test{{1, 0}, {0.1, 0}};
  // a = 1/1.01, residual = 0.0101/1.0201, signal 1 -> ratio 101
  CHECK(bfpfft::sqnr_db(ref, test, true).db == doctest::Approx(10 * std::log10(101.0)));
  CHECK(bfpfft::sqnr_db(ref, test, false).db == doctest::Approx(20.0));
  CHECK(bfpfft::optimal_scale(ref, test) == doctest::Approx(1 / 1.01));
}

TEST_CASE("scale alignment removes a pure gain") {
  const std::vector<Complex> ref{{1, 2}, {-3, 0.5}, {0.25, -1}};
  std::vector<Complex> test;
  for (const auto& z : ref) test.push_back(0.5 * z);
  CHECK(bfpfft::sqnr_db(ref, test, true).db == std::numeric_limits<double>::infinity());
  CHECK(bfpfft::sqnr_db(ref, test, false).db == doctest::Approx(10 * std::log10(4.0)));
  const std::vector<Complex> zero(3);
  CHECK(bfpfft::optimal_scale(ref, zero) == 0.0);
  CHECK_THROWS_AS(bfpfft::sqnr_db(ref, std::vector<Complex>(2), true), std::invalid_argument);
}

TEST_CASE("NaN is flagged, not averaged") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<Complex> ref{{1, 0}, {1, 0}, {1, 0}, {1, 0}};
  const std::vector<Complex> test{{1, 0}, {nan, 0}, {1, nan}, {1, 0}};
  const auto r = bfpfft::sqnr_db(ref, test, true);
  CHECK(r.nan_flagged());
  CHECK(r.nan_count == 2);
  CHECK(std::isnan(r.db));
  CHECK(bfpfft::nan_fraction(test) == 0.5);
  CHECK(bfpfft::nan_fraction(std::vector<Complex>{}) == 0.0);
}

TEST_CASE("analytic references") {
  CHECK(SincPslrDb() == doctest::Approx(-13.26).epsilon(1e-3));
  CHECK(SincHalfPowerWidth() == doctest::Approx(0.886).epsilon(1e-3));
}

TEST_CASE("point response metrics match the sinc") {
  const double pslr = SincPslrDb();
  const double width = SincHalfPowerWidth();
  for (double frac : {0.0, 0.3, 0.5}) {
    CAPTURE(frac);
    const auto img = PointImage(128, 256, 60 + frac, 101 - frac);
    for (Axis axis : {Axis::kRange, Axis::kAzimuth}) {
      const double n = axis == Axis::kRange ? 256.0 : 128.0;
      const auto cut = bfpfft::extract_cut(img, {60, 101}, axis, 32);
      CHECK(cut.nan_count == 0);
      CHECK(cut.peak_position() ==
            doctest::Approx(axis == Axis::kRange ? 101 - frac : 60 + frac).epsilon(1e-4));
      CHECK(bfpfft::pslr_db(cut) == doctest::Approx(pslr).epsilon(0.1 / 13.26));
      // bandwidth is (n-1)/n of the sample rate
      CHECK(bfpfft::resolution_3db(cut) == doctest::Approx(width * n / (n - 1)).epsilon(2e-3));
      CHECK(bfpfft::islr_db(cut) == doctest::Approx(SincIslrDb(32)).epsilon(0.01));
    }
  }
}

TEST_CASE("cut interpolation reproduces the samples it came from") {
  const auto img = PointImage(64, 64, 30.25, 33.5);
  const auto cut = bfpfft::extract_cut(img, {30, 33}, Axis::kRange, 8, 4, 16);
  // sample i * 8 sits on native column origin + i
  for (std::size_t i = 0; i <= 32; ++i) {
    const auto col = static_cast<std::size_t>(cut.origin) + i;
    CHECK(cut.samples[i * 8] == doctest::Approx(std::abs(img.at(30, col))).epsilon(1e-9));
  }
}

TEST_CASE("cut arguments are validated") {
  const auto img = PointImage(32, 32, 16, 16);
  CHECK_THROWS_AS(bfpfft::extract_cut(img, {16, 16}, Axis::kRange, 3), std::invalid_argument);
  const auto edge = PointImage(32, 32, 0, 16);
  CHECK_THROWS_AS(bfpfft::extract_cut(edge, {0, 16}, Axis::kRange), std::invalid_argument);
}

TEST_CASE("NaN in a cut makes its metrics NaN") {
  auto img = PointImage(64, 64, 32, 32);
  img.at(32, 5) = {std::numeric_limits<double>::quiet_NaN(), 0};
  const auto cut = bfpfft::extract_cut(img, {32, 32}, Axis::kRange, 4);
  CHECK(cut.nan_count == 1);
  CHECK(std::isnan(bfpfft::pslr_db(cut)));
  CHECK(std::isnan(bfpfft::islr_db(cut)));
  CHECK(std::isnan(bfpfft::resolution_3db(cut)));
  // the azimuth cut does not pass through the bad pixel
  const auto az = bfpfft::extract_cut(img, {32, 32}, Axis::kAzimuth, 4);
  CHECK(az.nan_count == 0);
}

TEST_CASE("a profile without sidelobe nulls is rejected") {
  bfpfft::CutProfile flat;
  flat.samples = {1, 2, 3, 4, 5, 4, 3};
  flat.peak_index = 4;
  CHECK_THROWS(bfpfft::pslr_db(flat));
}

TEST_CASE("target SNR over a known background") {
  ComplexMatrix m(64, 64, Layout::kRangeMajor);
  for (auto& z : m.data) z = {0.1, 0.0};
  m.at(40, 40) = {10.0, 0.0};
  const bfpfft::Region bg{0, 16, 0, 16};
  CHECK(bg.area() == 256);
  CHECK(bfpfft::target_snr_db(m, {40.4, 39.6}, 3, bg) == doctest::Approx(40.0));
  CHECK_THROWS_AS(bfpfft::target_snr_db(m, {14, 14}, 3, bg), std::invalid_argument);
  CHECK_THROWS_AS(bfpfft::target_snr_db(m, {40, 40}, 3, bfpfft::Region{0, 0, 0, 16}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bfpfft::target_snr_db(m, {40, 40}, 3, bfpfft::Region{0, 65, 0, 16}),
                  std::invalid_argument);
}

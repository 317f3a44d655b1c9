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
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "bfpfft/sar.hpp"

using bfpfft::Complex;
using bfpfft::ComplexMatrix;
using bfpfft::Layout;
using bfpfft::PrecisionMode;
using bfpfft::SarSceneConfig;

namespace {

SarSceneConfig SingleTarget(std::size_t n) {
  SarSceneConfig c = bfpfft::default_scene(n);
  c.targets = {{0.0, 0.0, 1.0}};
  c.noise_snr_db = std::numeric_limits<double>::infinity();
  return c;
}

double MaxAbs(const ComplexMatrix& m) {
  double v = 0;
  for (const auto& z : m.data) v = std::max(v, std::abs(z));
  return v;
}

}  // namespace

TEST_CASE("chirp shape") {
  const auto c = bfpfft::default_scene(1024);
  const auto s = bfpfft::make_chirp(c);
  REQUIRE(s.size() == 1024);
  CHECK(s[0] == Complex(1.0, 0.0));
  const std::size_t pulse = c.pulse_samples();
  CHECK(pulse == 128);
  std::size_t nonzero = 0;
  for (const auto& z : s) {
    if (z != Complex(0.0, 0.0)) {
      ++nonzero;
      CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  CHECK(nonzero == pulse);
  // circular centring: s[-m] mirrors s[m]
  CHECK(s[5] == s[1024 - 5]);

  SarSceneConfig bad = c;
  bad.pulse_duration = 2000 / c.range_sample_rate;
  CHECK_THROWS_AS(bfpfft::make_chirp(bad), std::invalid_argument);
}

TEST_CASE("chirp spectrum is flat inside the band") {
  const auto c = bfpfft::default_scene(1024);
  const auto spec = bfpfft::dft_oracle(bfpfft::make_chirp(c));
  const double n = 1024;
  // stationary phase: |X| = fs / sqrt(chirp rate) across the band
  const double rate = c.bandwidth / (static_cast<double>(c.pulse_samples()) / c.range_sample_rate);
  const double level = c.range_sample_rate / std::sqrt(rate);
  double worst = 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double f = (k < 512 ? k : k - n) * c.range_sample_rate / n;
    if (std::abs(f) < 0.8 * c.bandwidth / 2) {
      worst = std::max(worst, std::abs(20 * std::log10(std::abs(spec[k]) / level)));
    }
  }
  CHECK(worst < 3.0);
  const auto h = bfpfft::range_filter(c, true);
  double peak = 0;
  for (const auto& z : h) peak = std::max(peak, std::abs(z));
  CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("default scene geometry") {
  for (std::size_t n : {256u, 1024u, 4096u}) {
    CAPTURE(n);
    const auto c = bfpfft::default_scene(n);
    CHECK_NOTHROW(bfpfft::validate_scene(c));
    CHECK(c.targets.size() == 5);
    CHECK(c.prf >= 1.2 * c.doppler_bandwidth());
    const auto t0 = bfpfft::target_pixel(c, 0);
    CHECK(t0.row == n / 2);
    CHECK(t0.col == n / 2);
    const auto t4 = bfpfft::target_pixel(c, 4);
    CHECK(t4.row == doctest::Approx(static_cast<double>(3 * n / 4)));
    CHECK(t4.col == doctest::Approx(static_cast<double>(3 * n / 4)));
    // synthetic aperture at the centre range spans a quarter of the lines
    const double lines = c.wavelength() * c.closest_range / c.antenna_length /
                         c.azimuth_spacing();
    CHECK(lines == doctest::Approx(n / 4.0));
  }
  CHECK(bfpfft::default_scene(1024).pulse_duration == doctest::Approx(128 / 1.2e8));
  CHECK(bfpfft::default_scene(4096).pulse_duration == doctest::Approx(10e-6));
}

TEST_CASE("scene validation names the problem") {
  auto c = bfpfft::default_scene(256);
  c.targets.push_back({1e4, 0.0, 1.0});
  try {
    bfpfft::validate_scene(c);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("target 5") != std::string::npos);
  }
  auto d = bfpfft::default_scene(256);
  d.n_range = 300;
  CHECK_THROWS_AS(bfpfft::validate_scene(d), std::invalid_argument);
  auto e = bfpfft::default_scene(256);
  e.prf = e.doppler_bandwidth();
  CHECK_THROWS_AS(bfpfft::validate_scene(e), std::invalid_argument);
  auto f = bfpfft::default_scene(256);
  f.range_sample_rate = f.bandwidth;
  CHECK_THROWS_AS(bfpfft::validate_scene(f), std::invalid_argument);
}

TEST_CASE("simulation without targets or noise is zero") {
  auto c = bfpfft::default_scene(64);
  c.targets.clear();
  c.noise_snr_db = std::numeric_limits<double>::infinity();
  const auto raw = bfpfft::simulate_scene(c, 1);
  CHECK(MaxAbs(raw.samples) == 0.0);
  CHECK(raw.scale == 1.0);
}

TEST_CASE("single target echo is a delayed chirp") {
  const auto c = SingleTarget(256);
  const auto raw = bfpfft::simulate_scene(c, 1);
  CHECK(MaxAbs(raw.samples) == doctest::Approx(1.0));
  // at zero Doppler the echo starts pulse/2 before the centre range bin
  const auto line = raw.samples.row(128);
  const std::size_t pulse = c.pulse_samples();
  for (std::size_t j = 0; j < 256; ++j) {
    const bool inside = j + pulse / 2 >= 128 && j < 128 + pulse / 2;
    CHECK(std::abs(line[j]) == doctest::Approx(inside ? 1.0 : 0.0).epsilon(1e-12));
  }
  // lines outside the illumination time are empty
  for (const auto& z : raw.samples.row(10)) CHECK(z == Complex(0.0, 0.0));
}

TEST_CASE("noise power relative to the echo") {
  auto c = bfpfft::default_scene(256);
  c.targets = {{0.0, 0.0, 1.0}};
  const auto raw = bfpfft::simulate_scene(c, 42);
  double power = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < 64; ++i) {  // no echo on these lines
    for (const auto& z : raw.samples.row(i)) {
      power += std::norm(z);
      ++count;
    }
  }
  power /= static_cast<double>(count);
  const double echo = raw.scale * raw.scale;
  CHECK(power / echo == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("simulation is deterministic in the seed") {
  const auto c = bfpfft::default_scene(64);
  const auto a = bfpfft::simulate_scene(c, 5);
  const auto b = bfpfft::simulate_scene(c, 5);
  const auto d = bfpfft::simulate_scene(c, 6);
  CHECK(a.samples.data == b.samples.data);
  CHECK(a.samples.data != d.samples.data);
  const auto s = bfpfft::simulate_scene(c, 5);
  for (std::size_t i = 0; i < s.samples.data.size(); ++i) {
    REQUIRE(s.samples.data[i] == a.samples.data[i]);
  }
}

TEST_CASE("migration follows the hyperbolic range equation") {
  const auto c = bfpfft::default_scene(1024);
  CHECK(bfpfft::migration_bins(c, 100, 0) == 0.0);
  const std::size_t k = 300;
  const double f = static_cast<double>(k) * c.prf / 1024;
  const double d = std::sqrt(1 - std::pow(c.wavelength() * f / (2 * c.platform_velocity), 2));
  const double r = c.near_range() + 100 * c.range_spacing();
  CHECK(bfpfft::migration_bins(c, 100, k) ==
        doctest::Approx(r * (1 / d - 1) / c.range_spacing()).epsilon(1e-9));
  // negative Doppler bins mirror positive ones
  CHECK(bfpfft::migration_bins(c, 100, 1024 - k) ==
        doctest::Approx(bfpfft::migration_bins(c, 100, k)).epsilon(1e-12));
  auto still = c;
  still.platform_velocity = 0.0;
  CHECK(bfpfft::migration_bins(still, 100, k) == 0.0);
}

TEST_CASE("rcmc without platform motion is the identity") {
  auto c = bfpfft::default_scene(64);
  c.platform_velocity = 0.0;
  ComplexMatrix m(64, 64, Layout::kAzimuthMajor);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    m.data[i] = {std::sin(0.1 * static_cast<double>(i)), std::cos(0.3 * static_cast<double>(i))};
  }
  const auto out = bfpfft::rcmc(m, c);
  double err = 0;
  for (std::size_t i = 0; i < m.data.size(); ++i) err = std::max(err, std::abs(out.data[i] - m.data[i]));
  CHECK(err <= 1e-9);
}

TEST_CASE("stages reject the wrong layout") {
  const auto c = bfpfft::default_scene(64);
  ComplexMatrix az(64, 64, Layout::kAzimuthMajor);
  ComplexMatrix rg(64, 64, Layout::kRangeMajor);
  CHECK_THROWS_AS(bfpfft::range_compress(az, c, PrecisionMode::Fp32Mode(), true, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(bfpfft::azimuth_fft(rg), std::invalid_argument);
  CHECK_THROWS_AS(bfpfft::rcmc(rg, c), std::invalid_argument);
  CHECK_THROWS_AS(bfpfft::azimuth_compress(rg, c, PrecisionMode::Fp32Mode(), true),
                  std::invalid_argument);
}

TEST_CASE("range compression of one target") {
  const auto c = SingleTarget(1024);
  const auto raw = bfpfft::simulate_scene(c, 1);
  const auto ref = bfpfft::range_compress(raw.samples, c, PrecisionMode::Fp32Mode(), true, true);
  const auto cut = bfpfft::extract_cut(ref, {512, 512}, bfpfft::Axis::kRange);
  CHECK(cut.peak_position() == doctest::Approx(512.0).epsilon(1e-4));
  CHECK(bfpfft::pslr_db(cut) == doctest::Approx(-13.3).epsilon(0.3 / 13.3));

  const auto h = bfpfft::range_compress(raw.samples, c, PrecisionMode::PureFp16(), true, true);
  CHECK(MaxAbs(h) <= 16.0);
  CHECK(bfpfft::sqnr_db(ref.data, h.data, true).db >= 50.0);
}

TEST_CASE("fp32 pipeline focuses every target where the geometry puts it") {
  const auto c = bfpfft::default_scene(1024);
  const auto raw = bfpfft::simulate_scene(c, 3);
  const auto a = bfpfft::focus(raw, c, PrecisionMode::Fp32Mode(), true);
  const auto b = bfpfft::focus(raw, c, PrecisionMode::Fp32Mode(), false);
  CHECK(a.data == b.data);
  CHECK(a.layout == Layout::kRangeMajor);
  const auto report = bfpfft::assess(a, a, c, PrecisionMode::Fp32Mode(), true);
  REQUIRE(report.per_target.has_value());
  for (const auto& t : *report.per_target) {
    CAPTURE(t.index);
    const auto want = bfpfft::target_pixel(c, t.index);
    CHECK(std::abs(t.peak.row - want.row) <= 2.0);
    CHECK(std::abs(t.peak.col - want.col) <= 2.0);
    CHECK(t.pslr_range_db < -10.0);
    CHECK(t.pslr_azimuth_db < -10.0);
    CHECK(t.snr_db > 30.0);
  }
  CHECK(report.end_to_end_sqnr_db == std::numeric_limits<double>::infinity());
}

TEST_CASE("azimuth spectrum of bfp range-compressed data loads into fp16") {
  const auto c = bfpfft::default_scene(1024);
  const auto raw = bfpfft::simulate_scene(c, 3);
  const auto rc = bfpfft::range_compress(raw.samples, c, PrecisionMode::PureFp16(), true, true);
  const auto az = bfpfft::azimuth_fft(bfpfft::transpose(rc));
  CHECK(MaxAbs(az) <= 1024.0);
}

TEST_CASE("pipeline runs are bit-reproducible") {
  const auto c = bfpfft::default_scene(128);
  const auto a = bfpfft::rda_pipeline(c, PrecisionMode::PureFp16(), true, 9);
  const auto b = bfpfft::rda_pipeline(c, PrecisionMode::PureFp16(), true, 9);
  CHECK(a.image.data == b.image.data);
  CHECK(a.report.mode == "pure_fp16");
}

TEST_CASE("quality metrics are withheld for a poisoned image") {
  const auto c = bfpfft::default_scene(64);
  ComplexMatrix img(64, 64, Layout::kRangeMajor);
  for (auto& z : img.data) z = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  const auto r = bfpfft::assess(img, img, c, PrecisionMode::PureFp16(), false);
  CHECK(r.nan_fraction == 1.0);
  CHECK_FALSE(r.per_target.has_value());
  CHECK(std::isnan(r.end_to_end_sqnr_db));
}

TEST_CASE("image export round trip") {
  const auto c = bfpfft::default_scene(64);
  ComplexMatrix img(8, 16, Layout::kRangeMajor);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    img.data[i] = {1.0 / (1.0 + static_cast<double>(i)), -std::ldexp(1.0, -1060)};
  }
  const auto dir = std::filesystem::temp_directory_path() / "bfpfft_export_test";
  std::filesystem::create_directories(dir);
  bfpfft::export_image(img, c, dir / "img");
  CHECK(std::filesystem::file_size(dir / "img.bin") == 8 * 16 * 16);
  const auto back = bfpfft::import_image(dir / "img");
  CHECK(back.rows == 8);
  CHECK(back.cols == 16);
  CHECK(back.data == img.data);
  std::ifstream desc(dir / "img.txt");
  const std::string text((std::istreambuf_iterator<char>(desc)), {});
  CHECK(text.find("config_digest " + bfpfft::config_digest(c)) != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config digest tracks every field") {
  const auto c = bfpfft::default_scene(256);
  auto d = c;
  CHECK(bfpfft::config_digest(c) == bfpfft::config_digest(d));
  d.noise_snr_db = 21;
  CHECK(bfpfft::config_digest(c) != bfpfft::config_digest(d));
  d = c;
  d.targets[3].amplitude = 0.5;
  CHECK(bfpfft::config_digest(c) != bfpfft::config_digest(d));
}

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

#include "bfpfft/sar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bfpfft/bfp.hpp"
#include "bfpfft/report.hpp"

namespace bfpfft {

namespace {

constexpr double kPi = std::numbers::pi;

// Fraction of the PRF occupied by the Doppler bandwidth.
constexpr double kDopplerFill = 0.8;

double SignedBin(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<double>(k)
                   : static_cast<double>(k) - static_cast<double>(n);
}

// (lambda f / 2v)^2 for Doppler bin k.
double DopplerTerm(const SarSceneConfig& c, std::size_t k) {
  if (c.platform_velocity == 0.0) return 0.0;
  const double f = SignedBin(k, c.n_azimuth) * c.prf /
                   static_cast<double>(c.n_azimuth);
  const double u = c.wavelength() * f / (2 * c.platform_velocity);
  return u * u;
}

// D(f) - 1 without cancellation.
double MigrationFactorMinusOne(double u2) {
  return -u2 / (1.0 + std::sqrt(1.0 - u2));
}

}  // namespace

std::size_t SarSceneConfig::pulse_samples() const {
  return static_cast<std::size_t>(std::llround(pulse_duration * range_sample_rate));
}

SarSceneConfig default_scene(std::size_t n) {
  SarSceneConfig c;
  c.n_range = n;
  c.n_azimuth = n;
  // 10 us whenever it fits in half the range window, else an eighth of it
  if (std::llround(c.pulse_duration * c.range_sample_rate) >
      static_cast<long long>(n / 2)) {
    c.pulse_duration = static_cast<double>(n / 8) / c.range_sample_rate;
  }
  const double lambda = c.wavelength();
  const double v = c.platform_velocity;
  const double azimuth_fm_rate = 2 * v * v / (lambda * c.closest_range);
  const double aperture_samples = static_cast<double>(n) / 4;
  const double doppler_bw =
      std::sqrt(azimuth_fm_rate * aperture_samples * kDopplerFill);
  c.prf = doppler_bw / kDopplerFill;
  c.antenna_length = 2 * v / doppler_bw;

  const double dr = static_cast<double>(n / 4) * c.range_spacing();
  const double da = static_cast<double>(n / 4) * c.azimuth_spacing();
  c.targets = {{0.0, 0.0, 1.0},
               {-dr, -da, 1.0},
               {-dr, da, 1.0},
               {dr, -da, 1.0},
               {dr, da, 1.0}};
  return c;
}

void validate_scene(const SarSceneConfig& c) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("invalid scene: " + what);
  };
  for (auto [n, name] : {std::pair{c.n_range, "n_range"},
                         std::pair{c.n_azimuth, "n_azimuth"}}) {
    if (n < 8 || !std::has_single_bit(n) || n > FftPlan::kMaxSize) {
      fail(std::string(name) + " must be a power of two in [8, 2^22], got " +
           std::to_string(n));
    }
  }
  if (!(c.bandwidth > 0.0)) fail("bandwidth must be positive");
  if (c.range_sample_rate < 1.2 * c.bandwidth) {
    fail("range_sample_rate must be at least 1.2 x bandwidth");
  }
  const std::size_t pulse = c.pulse_samples();
  if (pulse < 2) fail("pulse shorter than two samples");
  if (pulse > c.n_range / 2) {
    fail("pulse of " + std::to_string(pulse) + " samples exceeds n_range/2 = " +
         std::to_string(c.n_range / 2));
  }
  if (!(c.carrier_frequency > 0.0)) fail("carrier_frequency must be positive");
  if (!(c.closest_range > 0.0)) fail("closest_range must be positive");
  if (!(c.prf > 0.0)) fail("prf must be positive");
  if (c.platform_velocity < 0.0) fail("platform_velocity must be non-negative");
  if (c.platform_velocity > 0.0) {
    if (!(c.antenna_length > 0.0)) fail("antenna_length must be positive");
    if (c.prf < 1.2 * c.doppler_bandwidth()) {
      fail("prf must be at least 1.2 x the Doppler bandwidth");
    }
  }
  if (c.near_range() <= 0.0) fail("scene extends to non-positive range");
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    const PixelPosition p = target_pixel(c, i);
    if (p.col < 0.0 || p.col >= static_cast<double>(c.n_range) ||
        p.row < 0.0 || p.row >= static_cast<double>(c.n_azimuth)) {
      fail("target " + std::to_string(i) + " lies outside the scene extent");
    }
  }
}

PixelPosition target_pixel(const SarSceneConfig& c, std::size_t index) {
  const PointTarget& t = c.targets.at(index);
  PixelPosition p;
  p.col = static_cast<double>(c.n_range / 2) + t.range_offset_m / c.range_spacing();
  p.row = static_cast<double>(c.n_azimuth / 2) +
          (c.platform_velocity > 0.0 ? t.azimuth_offset_m / c.azimuth_spacing()
                                     : 0.0);
  return p;
}

std::vector<Complex> make_chirp(const SarSceneConfig& c) {
  const std::size_t pulse = c.pulse_samples();
  if (pulse > c.n_range) {
    throw std::invalid_argument("chirp of " + std::to_string(pulse) +
                                " samples does not fit n_range = " +
                                std::to_string(c.n_range));
  }
  if (pulse == 0) throw std::invalid_argument("chirp has zero samples");
  const double rate = c.bandwidth / c.pulse_duration;
  std::vector<Complex> s(c.n_range, Complex(0.0, 0.0));
  const auto half = static_cast<std::ptrdiff_t>(pulse / 2);
  const auto n = static_cast<std::ptrdiff_t>(c.n_range);
  for (std::ptrdiff_t m = -half; m < static_cast<std::ptrdiff_t>(pulse) - half; ++m) {
    const double t = static_cast<double>(m) / c.range_sample_rate;
    const double phase = kPi * rate * t * t;
    s[static_cast<std::size_t>((m + n) % n)] = {std::cos(phase), std::sin(phase)};
  }
  return s;
}

std::vector<Complex> range_filter(const SarSceneConfig& c, bool normalize) {
  const FftPlan plan(c.n_range, 2, PrecisionMode::Exact());
  std::vector<Complex> h = fft_forward(plan, make_chirp(c));
  double peak = 0.0;
  for (auto& v : h) {
    v = std::conj(v);
    peak = std::max(peak, std::abs(v));
  }
  if (normalize && peak > 0.0) {
    for (auto& v : h) v /= peak;
  }
  return h;
}

RawData simulate_scene(const SarSceneConfig& c, std::uint64_t seed) {
  validate_scene(c);
  RawData raw;
  raw.samples = ComplexMatrix(c.n_azimuth, c.n_range, Layout::kRangeMajor);
  const double lambda = c.wavelength();
  const double dr = c.range_spacing();
  const double r_near = c.near_range();
  const double rate = c.bandwidth / c.pulse_duration;
  const double pulse = static_cast<double>(c.pulse_samples());
  const bool noisy = std::isfinite(c.noise_snr_db);
  const double noise_sigma =
      noisy ? std::sqrt(std::pow(10.0, -c.noise_snr_db / 10.0) / 2.0) : 0.0;

  for_each_row(
      raw.samples, 0,
      [&](std::size_t i, std::span<Complex> line, std::span<Complex>) {
        const double eta = (static_cast<double>(i) -
                            static_cast<double>(c.n_azimuth / 2)) / c.prf;
        const double platform = c.platform_velocity * eta;
        for (const PointTarget& t : c.targets) {
          const double r0 = c.closest_range + t.range_offset_m;
          const double along = platform - t.azimuth_offset_m;
          if (c.platform_velocity > 0.0) {
            const double footprint = lambda * r0 / c.antenna_length;
            if (std::abs(along) > footprint / 2) continue;
          }
          const double range = std::sqrt(r0 * r0 + along * along);
          const double delay = (range - r_near) / dr;
          const double carrier = -4 * kPi * range / lambda;
          const auto first = static_cast<std::ptrdiff_t>(std::ceil(delay - pulse / 2));
          for (std::ptrdiff_t m = std::max<std::ptrdiff_t>(first, 0);
               m < static_cast<std::ptrdiff_t>(c.n_range); ++m) {
            const double offset = static_cast<double>(m) - delay;
            if (offset >= pulse / 2) break;
            const double tr = offset / c.range_sample_rate;
            const double phase = kPi * rate * tr * tr + carrier;
            line[static_cast<std::size_t>(m)] +=
                t.amplitude * Complex(std::cos(phase), std::sin(phase));
          }
        }
        if (noisy) {
          std::seed_seq seq{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32),
                            static_cast<std::uint32_t>(i)};
          std::mt19937_64 rng(seq);
          std::normal_distribution<double> gauss(0.0, noise_sigma);
          for (auto& z : line) z += Complex(gauss(rng), gauss(rng));
        }
      });

  double peak = 0.0;
  for (const auto& z : raw.samples.data) peak = std::max(peak, std::abs(z));
  if (peak > 0.0) {
    raw.scale = 1.0 / peak;
    for (auto& z : raw.samples.data) z *= raw.scale;
  }
  return raw;
}

ComplexMatrix range_compress(ComplexMatrix m, const SarSceneConfig& c,
                             const PrecisionMode& mode, bool bfp,
                             bool normalize_filter, Execution exec) {
  if (m.layout != Layout::kRangeMajor || m.cols != c.n_range) {
    throw std::invalid_argument("range_compress needs range-major rows of n_range samples");
  }
  const FftPlan plan(c.n_range, 2, mode);
  std::vector<Complex> filter = range_filter(c, normalize_filter);
  quantize_in_place(mode.compute, filter);
  for_each_row(
      m, c.n_range,
      [&](std::size_t, std::span<Complex> row, std::span<Complex> scratch) {
        plan.execute(row, scratch);
        filter_and_invert(plan, row, filter, bfp, scratch);
      },
      exec);
  return m;
}

ComplexMatrix azimuth_fft(ComplexMatrix m, Execution exec) {
  if (m.layout != Layout::kAzimuthMajor) {
    throw std::invalid_argument("azimuth_fft needs azimuth-major input");
  }
  const FftPlan plan(m.cols, 2, PrecisionMode::Fp32Mode());
  fft_rows(plan, m, exec);
  return m;
}

double migration_bins(const SarSceneConfig& c, std::size_t range_bin,
                      std::size_t doppler_bin) {
  const double u2 = DopplerTerm(c, doppler_bin);
  if (u2 == 0.0) return 0.0;
  const double d_minus_1 = MigrationFactorMinusOne(u2);
  const double range = c.near_range() + static_cast<double>(range_bin) * c.range_spacing();
  // R / D - R = -R (D - 1) / D
  return -range * d_minus_1 / (1.0 + d_minus_1) / c.range_spacing();
}

namespace {

double TaperedSinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px * 0.5 * (1.0 + std::cos(px / 4));
}

}  // namespace

ComplexMatrix rcmc(ComplexMatrix m, const SarSceneConfig& c, Execution exec) {
  if (m.layout != Layout::kAzimuthMajor || m.rows != c.n_range ||
      m.cols != c.n_azimuth) {
    throw std::invalid_argument("rcmc needs an azimuth-major n_range x n_azimuth matrix");
  }
  const ComplexMatrix in = m;
  const auto rows = static_cast<std::ptrdiff_t>(m.rows);
  for_each_row(
      m, 0,
      [&](std::size_t j, std::span<Complex> out, std::span<Complex>) {
        for (std::size_t k = 0; k < m.cols; ++k) {
          const double pos = static_cast<double>(j) + migration_bins(c, j, k);
          const double base = std::floor(pos);
          const double frac = pos - base;
          const auto i0 = static_cast<std::ptrdiff_t>(base);
          if (frac == 0.0) {
            out[k] = (i0 >= 0 && i0 < rows) ? in.at(static_cast<std::size_t>(i0), k)
                                            : Complex(0.0, 0.0);
            continue;
          }
          Complex acc(0.0, 0.0);
          double weight_sum = 0.0;
          for (std::ptrdiff_t i = i0 - 3; i <= i0 + 4; ++i) {
            const double w = TaperedSinc(pos - static_cast<double>(i));
            weight_sum += w;
            if (i >= 0 && i < rows) acc += w * in.at(static_cast<std::size_t>(i), k);
          }
          out[k] = acc / weight_sum;
        }
      },
      exec);
  return m;
}

ComplexMatrix azimuth_compress(ComplexMatrix m, const SarSceneConfig& c,
                               const PrecisionMode& mode, bool bfp,
                               Execution exec) {
  if (m.layout != Layout::kAzimuthMajor || m.cols != c.n_azimuth) {
    throw std::invalid_argument("azimuth_compress needs azimuth-major rows of n_azimuth samples");
  }
  const FftPlan plan(c.n_azimuth, 2, mode);
  std::vector<double> d_minus_1(c.n_azimuth);
  for (std::size_t k = 0; k < c.n_azimuth; ++k) {
    d_minus_1[k] = MigrationFactorMinusOne(DopplerTerm(c, k));
  }
  const double lambda = c.wavelength();
  for_each_row(
      m, 2 * c.n_azimuth,
      [&](std::size_t j, std::span<Complex> row, std::span<Complex> scratch) {
        const double range = c.near_range() + static_cast<double>(j) * c.range_spacing();
        auto filter = scratch.subspan(0, c.n_azimuth);
        auto work = scratch.subspan(c.n_azimuth);
        // The constant exp(+i 4 pi R / lambda) per range bin is left out so
        // the focused image keeps the range-compressed carrier phase.
        for (std::size_t k = 0; k < c.n_azimuth; ++k) {
          const double phase = 4 * kPi * range * d_minus_1[k] / lambda;
          filter[k] = mode.compute.quantize(Complex(std::cos(phase), std::sin(phase)));
        }
        quantize_in_place(mode.storage, row);
        filter_and_invert(plan, row, filter, bfp, work);
      },
      exec);
  return m;
}

ComplexMatrix focus(const RawData& raw, const SarSceneConfig& c,
                    const PrecisionMode& mode, bool bfp, bool normalize_filter,
                    Execution exec) {
  ComplexMatrix m =
      range_compress(raw.samples, c, mode, bfp, normalize_filter, exec);
  m = azimuth_fft(transpose(m), exec);
  m = rcmc(std::move(m), c, exec);
  m = azimuth_compress(std::move(m), c, mode, bfp, exec);
  return transpose(m);
}

Region background_region(const SarSceneConfig& c) {
  return Region{0, c.n_azimuth / 8, 0, c.n_range / 8};
}

QualityReport assess(const ComplexMatrix& image, const ComplexMatrix& reference,
                     const SarSceneConfig& c, const PrecisionMode& mode,
                     bool bfp) {
  QualityReport r;
  r.mode = mode.name();
  r.bfp_active = bfp;
  r.nan_fraction = nan_fraction(image.data);
  r.end_to_end_sqnr_db = sqnr_db(reference.data, image.data, true).db;
  r.background = background_region(c);
  if (r.nan_fraction >= 0.01) return r;

  constexpr int kExclusion = 4;
  std::vector<TargetQuality> per_target;
  for (std::size_t i = 0; i < c.targets.size(); ++i) {
    const PixelPosition p = target_pixel(c, i);
    TargetQuality q;
    q.index = i;
    const CutProfile range_cut = extract_cut(image, p, Axis::kRange);
    const CutProfile azimuth_cut = extract_cut(image, p, Axis::kAzimuth);
    q.peak = {azimuth_cut.peak_position(), range_cut.peak_position()};
    q.pslr_range_db = pslr_db(range_cut);
    q.pslr_azimuth_db = pslr_db(azimuth_cut);
    q.islr_range_db = islr_db(range_cut);
    q.islr_azimuth_db = islr_db(azimuth_cut);
    q.range_res_bins = resolution_3db(range_cut);
    q.azimuth_res_bins = resolution_3db(azimuth_cut);
    q.snr_db = target_snr_db(image, p, kExclusion, r.background);
    per_target.push_back(q);
  }
  r.per_target = std::move(per_target);
  return r;
}

PipelineResult rda_pipeline(const SarSceneConfig& c, const PrecisionMode& mode,
                            bool bfp, std::uint64_t seed,
                            bool normalize_filter) {
  const RawData raw = simulate_scene(c, seed);
  const ComplexMatrix reference =
      focus(raw, c, PrecisionMode::Fp32Mode(), true, normalize_filter);
  PipelineResult result;
  result.image = focus(raw, c, mode, bfp, normalize_filter);
  result.report = assess(result.image, reference, c, mode, bfp);
  return result;
}

std::string config_digest(const SarSceneConfig& c) {
  std::ostringstream s;
  s.precision(17);
  s << c.carrier_frequency << ' ' << c.bandwidth << ' ' << c.pulse_duration
    << ' ' << c.range_sample_rate << ' ' << c.platform_velocity << ' '
    << c.closest_range << ' ' << c.prf << ' ' << c.antenna_length << ' '
    << c.n_range << ' ' << c.n_azimuth << ' ' << c.noise_snr_db;
  for (const auto& t : c.targets) {
    s << ' ' << t.range_offset_m << ' ' << t.azimuth_offset_m << ' ' << t.amplitude;
  }
  return fnv1a_hex(s.str());
}

namespace {

void WriteLittleEndian(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>(bits & 0xff);
    bits >>= 8;
  }
  out.write(bytes, 8);
}

double ReadLittleEndian(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

void export_image(const ComplexMatrix& image, const SarSceneConfig& c,
                  const std::filesystem::path& stem) {
  std::filesystem::path bin = stem;
  bin += ".bin";
  std::filesystem::path txt = stem;
  txt += ".txt";
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + bin.string());
  for (const Complex& z : image.data) {
    WriteLittleEndian(out, z.real());
    WriteLittleEndian(out, z.imag());
  }
  std::ofstream desc(txt);
  if (!desc) throw std::runtime_error("cannot write " + txt.string());
  desc << "format bfpfft-image-v1\n"
       << "rows " << image.rows << "\n"
       << "cols " << image.cols << "\n"
       << "layout " << layout_name(image.layout) << "\n"
       << "element complex128-le\n"
       << "config_digest " << config_digest(c) << "\n";
}

ComplexMatrix import_image(const std::filesystem::path& stem) {
  std::filesystem::path bin = stem;
  bin += ".bin";
  std::filesystem::path txt = stem;
  txt += ".txt";
  std::ifstream desc(txt);
  if (!desc) throw std::runtime_error("cannot read " + txt.string());
  std::size_t rows = 0;
  std::size_t cols = 0;
  Layout layout = Layout::kRangeMajor;
  std::string key;
  std::string value;
  while (desc >> key >> value) {
    if (key == "rows") rows = std::stoul(value);
    if (key == "cols") cols = std::stoul(value);
    if (key == "layout") {
      layout = value == "azimuth-major" ? Layout::kAzimuthMajor : Layout::kRangeMajor;
    }
  }
  ComplexMatrix m(rows, cols, layout);
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + bin.string());
  for (auto& z : m.data) {
    const double re = ReadLittleEndian(in);
    const double im = ReadLittleEndian(in);
    z = {re, im};
  }
  if (!in) throw std::runtime_error(bin.string() + " is shorter than its descriptor says");
  return m;
}

}  // namespace bfpfft

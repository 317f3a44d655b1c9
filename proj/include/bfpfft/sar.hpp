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

#ifndef BFPFFT_SAR_HPP_
#define BFPFFT_SAR_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bfpfft/batch.hpp"
#include "bfpfft/fft.hpp"
#include "bfpfft/matrix.hpp"
#include "bfpfft/metrics.hpp"

namespace bfpfft {

inline constexpr double kSpeedOfLight = 299792458.0;

struct PointTarget {
  double range_offset_m = 0.0;    // from the scene-center closest range
  double azimuth_offset_m = 0.0;  // along track, from the scene center
  double amplitude = 1.0;
};

/// Stripmap, zero-squint, point-target scene. Range bin j sits at slant range
/// closest_range + (j - n_range/2) * c / (2 fs); azimuth line i is sampled at
/// slow time (i - n_azimuth/2) / prf.
struct SarSceneConfig {
  double carrier_frequency = 9.6e9;
  double bandwidth = 1.0e8;
  double pulse_duration = 10e-6;
  double range_sample_rate = 1.2e8;
  double platform_velocity = 100.0;
  double closest_range = 2.0e4;
  double prf = 0.0;
  /// Real-aperture antenna length; sets the Doppler bandwidth 2 v / L and
  /// the illumination time of every target.
  double antenna_length = 0.0;
  std::size_t n_range = 1024;
  std::size_t n_azimuth = 1024;
  /// Echo-to-noise power ratio per raw sample; +inf disables noise.
  double noise_snr_db = 20.0;
  std::vector<PointTarget> targets;

  double wavelength() const { return kSpeedOfLight / carrier_frequency; }
  double range_spacing() const { return kSpeedOfLight / (2 * range_sample_rate); }
  double azimuth_spacing() const { return platform_velocity / prf; }
  double doppler_bandwidth() const { return 2 * platform_velocity / antenna_length; }
  double near_range() const {
    return closest_range - static_cast<double>(n_range / 2) * range_spacing();
  }
  std::size_t pulse_samples() const;
};

/// The default five-target scene at n x n: one target at the center and four
/// at +/- a quarter of the scene extent in both range and azimuth. The PRF
/// and antenna length are derived so each synthetic aperture spans a quarter
/// of the azimuth lines and the Doppler bandwidth fills 80% of the PRF. The
/// pulse is 10 us when that fits in n/2 range samples, otherwise n/8 samples.
SarSceneConfig default_scene(std::size_t n = 1024);

/// Throws std::invalid_argument naming the violated constraint.
void validate_scene(const SarSceneConfig& config);

/// Expected (azimuth row, range column) of target `index` in the focused
/// range-major image.
PixelPosition target_pixel(const SarSceneConfig& config, std::size_t index);

/// Unit-amplitude baseband LFM pulse exp(i pi K t^2), K = B / T, sampled at
/// fs and centered circularly on sample 0, zero-padded to n_range.
std::vector<Complex> make_chirp(const SarSceneConfig& config);

/// conj(FFT(chirp)) in binary64, optionally scaled so max |H| = 1.
std::vector<Complex> range_filter(const SarSceneConfig& config,
                                  bool normalize);

struct RawData {
  ComplexMatrix samples;  // range-major
  /// Gain applied so that max |sample| <= 1.
  double scale = 1.0;
};

/// Superposed hyperbolic point-target echoes plus complex white Gaussian
/// noise; deterministic for a given seed.
RawData simulate_scene(const SarSceneConfig& config, std::uint64_t seed);

/// Per range line: forward FFT, multiply by the range filter, optional
/// block shift, inverse via conjugation. Requires range-major input.
ComplexMatrix range_compress(ComplexMatrix matrix,
                             const SarSceneConfig& config,
                             const PrecisionMode& mode, bool bfp,
                             bool normalize_filter,
                             Execution exec = Execution::kParallel);

/// Forward FFT of every azimuth line at fp32 precision. Requires
/// azimuth-major input.
ComplexMatrix azimuth_fft(ComplexMatrix matrix,
                          Execution exec = Execution::kParallel);

/// Range-cell-migration shift, in range bins, of range bin `range_bin` at
/// Doppler bin `doppler_bin`.
double migration_bins(const SarSceneConfig& config, std::size_t range_bin,
                      std::size_t doppler_bin);

/// Straightens the range-Doppler trajectories with an 8-tap Hann-tapered
/// sinc interpolator. Requires azimuth-major input.
ComplexMatrix rcmc(ComplexMatrix matrix, const SarSceneConfig& config,
                   Execution exec = Execution::kParallel);

/// Multiplies each range bin by exp(+i 4 pi R D(f) / lambda) and returns to
/// the time domain through the mode's inverse transform. Requires
/// azimuth-major input.
ComplexMatrix azimuth_compress(ComplexMatrix matrix,
                               const SarSceneConfig& config,
                               const PrecisionMode& mode, bool bfp,
                               Execution exec = Execution::kParallel);

/// Runs the Range-Doppler chain on raw data and returns the complex,
/// range-major focused image.
ComplexMatrix focus(const RawData& raw, const SarSceneConfig& config,
                    const PrecisionMode& mode, bool bfp,
                    bool normalize_filter = true,
                    Execution exec = Execution::kParallel);

struct TargetQuality {
  std::size_t index = 0;
  PixelPosition peak;
  double pslr_range_db = 0.0;
  double pslr_azimuth_db = 0.0;
  double islr_range_db = 0.0;
  double islr_azimuth_db = 0.0;
  double snr_db = 0.0;
  double range_res_bins = 0.0;
  double azimuth_res_bins = 0.0;
};

struct QualityReport {
  std::string mode;
  bool bfp_active = false;
  double nan_fraction = 0.0;
  /// Scale-aligned SQNR against the fp32 image; NaN when NaN-flagged.
  double end_to_end_sqnr_db = 0.0;
  /// Absent when nan_fraction >= 0.01.
  std::optional<std::vector<TargetQuality>> per_target;
  Region background;
};

/// Target-free corner block used as the SNR background.
Region background_region(const SarSceneConfig& config);

/// Point-target metrics of `image`, plus its SQNR against `reference`.
QualityReport assess(const ComplexMatrix& image,
                     const ComplexMatrix& reference,
                     const SarSceneConfig& config, const PrecisionMode& mode,
                     bool bfp);

struct PipelineResult {
  ComplexMatrix image;
  QualityReport report;
};

/// simulate -> range_compress -> transpose -> azimuth_fft -> rcmc ->
/// azimuth_compress -> transpose, scored against an fp32 run on the same
/// raw data.
PipelineResult rda_pipeline(const SarSceneConfig& config,
                            const PrecisionMode& mode, bool bfp,
                            std::uint64_t seed, bool normalize_filter = true);

/// Stable hex digest of every config field.
std::string config_digest(const SarSceneConfig& config);

/// Writes `<stem>.bin` (row-major interleaved re/im binary64, little endian)
/// and `<stem>.txt` (dimensions, layout, digest).
void export_image(const ComplexMatrix& image, const SarSceneConfig& config,
                  const std::filesystem::path& stem);

/// Reads back a pair written by export_image.
ComplexMatrix import_image(const std::filesystem::path& stem);

}  // namespace bfpfft

#endif  // BFPFFT_SAR_HPP_

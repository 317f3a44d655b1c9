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

#ifndef BFPFFT_HARNESS_HPP_
#define BFPFFT_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bfpfft/fft.hpp"
#include "bfpfft/report.hpp"

namespace bfpfft {

enum class Experiment { kFftSqnr, kFftTrace, kSar, kFormatSweep, kBench };

std::string_view experiment_name(Experiment e);
/// Accepts fft-sqnr, fft-trace, sar, format-sweep, bench.
Experiment parse_experiment(std::string_view name);

enum class Toggle { kOn, kOff, kBoth };

/// on | off | both
Toggle parse_toggle(std::string_view text);
/// {true}, {false} or {true, false}.
std::vector<bool> toggle_values(Toggle t);

struct EmitSet {
  bool csv = true;
  bool json = true;
  bool svg = false;
};

/// Comma-separated subset of csv, json, svg.
EmitSet parse_emit(std::string_view text);

struct ExperimentConfig {
  Experiment experiment = Experiment::kFftSqnr;
  std::vector<std::size_t> sizes;
  std::vector<PrecisionMode> modes;
  int trials = 200;
  std::uint64_t seed = 1;
  /// Block shift in the matched filters (trace and sar).
  Toggle bfp = Toggle::kBoth;
  Toggle normalize_filter = Toggle::kOn;
  std::filesystem::path output_dir = "results";
  EmitSet emit;
  /// Evaluate the acceptance bounds of the experiment.
  bool check = false;
  /// SAR scene size override; 0 keeps `sizes`.
  std::size_t full_scale = 0;
  int radix = 2;
  /// Rows per batched transform (bench).
  std::size_t batch = 64;
  /// Timed repetitions per cell (bench).
  int bench_runs = 30;
};

/// Defaults for one experiment: FFT experiments at n in {1024, 4096}, SAR at
/// 1024, the four pipeline modes (trace: pure_fp16 and fp32; format sweep:
/// storage-only fp16, bf16, e4m3, e5m2).
ExperimentConfig default_config(Experiment e);

/// Throws std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& config);

/// Digest of every field that affects results (not output_dir or emit).
std::string experiment_digest(const ExperimentConfig& config);

/// Uniform [-1, 1] real and imaginary parts; deterministic in (seed, n,
/// trial).
std::vector<Complex> random_input(std::size_t n, std::uint64_t seed,
                                  std::size_t trial);

struct SqnrStats {
  double mean_db = 0.0;  // NaN if any trial was NaN
  double median_db = 0.0;
  double min_db = 0.0;
  double max_db = 0.0;
  std::size_t trials = 0;
  std::size_t nan_trials = 0;
};

SqnrStats summarize_sqnr(std::vector<double> per_trial_db);

/// SQNR of each mode's FFT of random_input against the binary64 oracle of
/// the same unquantized input, aggregated over `trials`. Result i belongs to
/// modes[i].
std::vector<SqnrStats> fft_sqnr_cells(std::size_t n,
                                      std::span<const PrecisionMode> modes,
                                      int trials, std::uint64_t seed,
                                      int radix = 2);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunResult {
  std::string config_digest;
  std::vector<Table> tables;
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> written;

  bool checks_passed() const;
};

RunResult run_fft_sqnr(const ExperimentConfig& config);
RunResult run_fft_trace(const ExperimentConfig& config);
RunResult run_sar(const ExperimentConfig& config);
RunResult run_format_sweep(const ExperimentConfig& config);
RunResult run_bench(const ExperimentConfig& config);

/// Validates, runs the configured experiment and writes its outputs.
RunResult run_experiment(const ExperimentConfig& config);

}  // namespace bfpfft

#endif  // BFPFFT_HARNESS_HPP_

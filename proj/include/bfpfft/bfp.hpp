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

#ifndef BFPFFT_BFP_HPP_
#define BFPFFT_BFP_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bfpfft/fft.hpp"

namespace bfpfft {

/// conj(z) / n for every sample, rounded to `storage`. With n a power of two
/// the scale is exact in every binary format.
std::vector<Complex> block_shift_conjugate(std::span<const Complex> data,
                                           std::size_t n,
                                           const NumericFormat& storage);

/// spectrum <- conj(FFT(conj(spectrum * filter) [/ n])) [/ n]: the filter
/// multiply and inverse transform of a fused matched filter. `filter` must
/// already be rounded to the plan's compute format. With `block_shift` the
/// 1/n is folded into the conjugate pass; otherwise it is applied to the
/// output.
void filter_and_invert(const FftPlan& plan, std::span<Complex> spectrum,
                       std::span<const Complex> filter, bool block_shift,
                       std::span<Complex> scratch);

/// Magnitude statistics of one pipeline step.
struct StageTrace {
  std::string stage_label;
  /// Largest |z| among stored samples with finite components.
  double max_abs = 0.0;
  /// Largest |z| the same step produces in exact binary64 arithmetic.
  double unquantized_max_abs = 0.0;
  /// Components stored as +/-inf.
  std::size_t overflow_count = 0;
  /// Components stored as NaN.
  std::size_t nan_count = 0;
  /// Worst-case magnitude for a unit-scale input at this step.
  double theoretical_bound = 0.0;
};

struct TraceOptions {
  /// Add one StageTrace per Stockham pass inside each transform.
  bool verbose = false;
  /// Time-bandwidth product of the full-frame chirp used as input. Small
  /// values concentrate the spectrum so the forward bins reach O(n).
  double time_bandwidth = 8.0;
};

struct MatchedFilterTrace {
  std::vector<StageTrace> stages;
  std::vector<Complex> output;
  std::vector<Complex> exact_output;
  double nan_fraction = 0.0;
  double filter_peak = 0.0;  // max |H| of the filter actually applied
};

/// Runs forward FFT -> filter multiply -> (block shift) -> inverse on a
/// unit-amplitude chirp in `mode`, next to an exact binary64 shadow run, and
/// records a StageTrace after every step.
MatchedFilterTrace trace_matched_filter(std::size_t n,
                                        const PrecisionMode& mode,
                                        bool with_shift,
                                        bool normalize_filter,
                                        const TraceOptions& options = {});

}  // namespace bfpfft

#endif  // BFPFFT_BFP_HPP_

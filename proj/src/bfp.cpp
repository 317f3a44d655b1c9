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

#include "bfpfft/bfp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bfpfft/metrics.hpp"
#include "bfpfft/sar.hpp"

namespace bfpfft {

std::vector<Complex> block_shift_conjugate(std::span<const Complex> data,
                                           std::size_t n,
                                           const NumericFormat& storage) {
  if (n == 0) throw std::invalid_argument("block shift length must be positive");
  const double scale = static_cast<double>(n);
  std::vector<Complex> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Complex z = data[i];
    out[i] = storage.quantize(Complex(z.real() / scale, -z.imag() / scale));
  }
  return out;
}

void filter_and_invert(const FftPlan& plan, std::span<Complex> spectrum,
                       std::span<const Complex> filter, bool block_shift,
                       std::span<Complex> scratch) {
  const ModeArithmetic ar(plan.mode());
  const double n = static_cast<double>(plan.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const Complex p = ar.store(ar.mul(spectrum[k], filter[k]));
    spectrum[k] = block_shift ? ar.store(Complex(p.real() / n, -p.imag() / n))
                              : std::conj(p);
  }
  plan.execute(spectrum, scratch);
  for (auto& v : spectrum) {
    v = block_shift ? std::conj(v)
                    : ar.store(Complex(v.real() / n, -v.imag() / n));
  }
}

namespace {

StageTrace Measure(std::string label, std::span<const Complex> stored,
                   std::span<const Complex> exact, double bound) {
  StageTrace t;
  t.stage_label = std::move(label);
  t.theoretical_bound = bound;
  for (const Complex& z : stored) {
    for (double c : {z.real(), z.imag()}) {
      if (std::isnan(c)) {
        ++t.nan_count;
      } else if (std::isinf(c)) {
        ++t.overflow_count;
      }
    }
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) {
      t.max_abs = std::max(t.max_abs, std::abs(z));
    }
  }
  for (const Complex& z : exact) {
    t.unquantized_max_abs = std::max(t.unquantized_max_abs, std::abs(z));
  }
  return t;
}

double MaxAbs(std::span<const Complex> v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

// Runs a transform on both paths, optionally recording each pass.
void TracedTransform(const FftPlan& plan, const FftPlan& exact_plan,
                     std::vector<Complex>& data,
                     std::vector<Complex>& exact_data, const char* label,
                     double input_bound, bool verbose,
                     std::vector<StageTrace>& stages) {
  std::vector<std::vector<Complex>> passes;
  std::vector<std::vector<Complex>> exact_passes;
  const PassObserver keep = [&passes](int, std::span<const Complex> v) {
    passes.emplace_back(v.begin(), v.end());
  };
  const PassObserver keep_exact = [&exact_passes](int,
                                                  std::span<const Complex> v) {
    exact_passes.emplace_back(v.begin(), v.end());
  };
  std::vector<Complex> scratch(plan.size());
  plan.execute(data, scratch, verbose ? &keep : nullptr);
  exact_plan.execute(exact_data, scratch, verbose ? &keep_exact : nullptr);
  if (verbose) {
    double bound = input_bound;
    for (std::size_t p = 0; p < passes.size(); ++p) {
      bound *= plan.pass_radices()[p];
      stages.push_back(Measure(std::string(label) + "/pass" + std::to_string(p),
                               passes[p], exact_passes[p], bound));
    }
  }
}

}  // namespace

MatchedFilterTrace trace_matched_filter(std::size_t n,
                                        const PrecisionMode& mode,
                                        bool with_shift, bool normalize_filter,
                                        const TraceOptions& options) {
  if (!(options.time_bandwidth > 0.0)) {
    throw std::invalid_argument("trace chirp time-bandwidth product must be positive");
  }
  SarSceneConfig chirp_config;
  chirp_config.n_range = n;
  chirp_config.range_sample_rate =
      chirp_config.bandwidth * static_cast<double>(n) / options.time_bandwidth;
  chirp_config.pulse_duration =
      static_cast<double>(n) / chirp_config.range_sample_rate;

  const FftPlan plan(n, 2, mode);
  const FftPlan exact_plan(n, 2, PrecisionMode::Exact());
  const ModeArithmetic ar(mode);
  const ModeArithmetic exact_ar(PrecisionMode::Exact());
  const double dn = static_cast<double>(n);

  const std::vector<Complex> chirp = make_chirp(chirp_config);
  const std::vector<Complex> filter64 = range_filter(chirp_config, normalize_filter);
  std::vector<Complex> filter(filter64.size());
  for (std::size_t k = 0; k < n; ++k) filter[k] = mode.compute.quantize(filter64[k]);

  MatchedFilterTrace trace;
  trace.filter_peak = MaxAbs(filter);
  const double hmax = trace.filter_peak;
  auto& stages = trace.stages;

  std::vector<Complex> x = chirp;
  quantize_in_place(mode.storage, x);
  std::vector<Complex> xe = chirp;
  stages.push_back(Measure("input", x, xe, 1.0));

  TracedTransform(plan, exact_plan, x, xe, "forward_fft", 1.0, options.verbose,
                  stages);
  stages.push_back(Measure("forward_fft", x, xe, dn));

  for (std::size_t k = 0; k < n; ++k) {
    x[k] = ar.store(ar.mul(x[k], filter[k]));
    xe[k] = exact_ar.mul(xe[k], filter64[k]);
  }
  stages.push_back(Measure("filter_product", x, xe, dn * hmax));

  double inverse_in_bound;
  if (with_shift) {
    x = block_shift_conjugate(x, n, mode.storage);
    xe = block_shift_conjugate(xe, n, Fp64());
    inverse_in_bound = hmax;
    stages.push_back(Measure("block_shift", x, xe, inverse_in_bound));
  } else {
    for (auto& v : x) v = std::conj(v);
    for (auto& v : xe) v = std::conj(v);
    inverse_in_bound = dn * hmax;
    stages.push_back(Measure("conjugate", x, xe, inverse_in_bound));
  }

  TracedTransform(plan, exact_plan, x, xe, "inverse_fft", inverse_in_bound,
                  options.verbose, stages);
  stages.push_back(Measure("inverse_fft", x, xe, inverse_in_bound * dn));

  for (std::size_t k = 0; k < n; ++k) {
    if (with_shift) {
      x[k] = std::conj(x[k]);
      xe[k] = std::conj(xe[k]);
    } else {
      x[k] = ar.store(Complex(x[k].real() / dn, -x[k].imag() / dn));
      xe[k] = Complex(xe[k].real() / dn, -xe[k].imag() / dn);
    }
  }
  stages.push_back(Measure("output", x, xe, dn * hmax));

  trace.nan_fraction = nan_fraction(x);
  trace.output = std::move(x);
  trace.exact_output = std::move(xe);
  return trace;
}

}  // namespace bfpfft

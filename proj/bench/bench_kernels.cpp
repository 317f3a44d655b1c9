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

// Serial reference loop against the OpenMP path for the row kernels.
// Arguments: transform length, execution (0 serial, 1 parallel).

#include <benchmark/benchmark.h>

#include <cmath>

#include "bfpfft/batch.hpp"
#include "bfpfft/harness.hpp"
#include "bfpfft/sar.hpp"

namespace {

using bfpfft::Execution;
using bfpfft::PrecisionMode;

Execution Exec(const benchmark::State& state) {
  return state.range(1) ? Execution::kParallel : Execution::kSerial;
}

bfpfft::ComplexMatrix Rows(std::size_t rows, std::size_t n) {
  bfpfft::ComplexMatrix m(rows, n, bfpfft::Layout::kRangeMajor);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto x = bfpfft::random_input(n, 1, r);
    std::copy(x.begin(), x.end(), m.row(r).begin());
  }
  return m;
}

template <int kMode>
void BM_FftRows(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrecisionMode mode = kMode ? PrecisionMode::PureFp16() : PrecisionMode::Fp32Mode();
  const bfpfft::FftPlan plan(n, 2, mode);
  const auto input = Rows(64, n);
  for (auto _ : state) {
    auto m = input;
    bfpfft::fft_rows(plan, m, Exec(state));
    benchmark::DoNotOptimize(m.data.data());
  }
  const double flops = 5.0 * n * std::log2(static_cast<double>(n)) * 64;
  state.counters["GFLOPS"] =
      benchmark::Counter(flops * 1e-9, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_FftRows<0>)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FftRows<1>)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RangeCompress(benchmark::State& state) {
  const auto c = bfpfft::default_scene(static_cast<std::size_t>(state.range(0)));
  const auto raw = bfpfft::simulate_scene(c, 1);
  for (auto _ : state) {
    auto out = bfpfft::range_compress(raw.samples, c, PrecisionMode::PureFp16(), true, true,
                                      Exec(state));
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_RangeCompress)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Rcmc(benchmark::State& state) {
  const auto c = bfpfft::default_scene(static_cast<std::size_t>(state.range(0)));
  const auto rd = bfpfft::azimuth_fft(bfpfft::transpose(Rows(c.n_azimuth, c.n_range)));
  for (auto _ : state) {
    auto out = bfpfft::rcmc(rd, c, Exec(state));
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_Rcmc)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Focus(benchmark::State& state) {
  const auto c = bfpfft::default_scene(static_cast<std::size_t>(state.range(0)));
  const auto raw = bfpfft::simulate_scene(c, 1);
  for (auto _ : state) {
    auto img = bfpfft::focus(raw, c, PrecisionMode::PureFp16(), true, true, Exec(state));
    benchmark::DoNotOptimize(img.data.data());
  }
}
BENCHMARK(BM_Focus)->ArgsProduct({{256}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  bfpfft::configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

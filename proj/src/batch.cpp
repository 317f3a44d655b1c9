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

#include "bfpfft/batch.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfpfft {

const char* layout_name(Layout layout) {
  return layout == Layout::kRangeMajor ? "range-major" : "azimuth-major";
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix t(m.cols, m.rows,
                  m.layout == Layout::kRangeMajor ? Layout::kAzimuthMajor
                                                  : Layout::kRangeMajor);
  constexpr std::size_t kBlock = 32;
  const auto rows = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t rb = 0; rb < rows; rb += kBlock) {
    const std::size_t r0 = static_cast<std::size_t>(rb);
    const std::size_t r1 = std::min(m.rows, r0 + kBlock);
    for (std::size_t c0 = 0; c0 < m.cols; c0 += kBlock) {
      const std::size_t c1 = std::min(m.cols, c0 + kBlock);
      for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) t.at(c, r) = m.at(r, c);
      }
    }
  }
  return t;
}

void for_each_row(ComplexMatrix& m, std::size_t scratch_len,
                  const RowKernel& fn, Execution exec) {
  if (exec == Execution::kSerial) {
    std::vector<Complex> scratch(scratch_len);
    for (std::size_t r = 0; r < m.rows; ++r) fn(r, m.row(r), scratch);
    return;
  }
  const auto rows = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel
  {
    std::vector<Complex> scratch(scratch_len);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      const auto row = static_cast<std::size_t>(r);
      fn(row, m.row(row), scratch);
    }
  }
}

void fft_rows(const FftPlan& plan, ComplexMatrix& m, Execution exec) {
  if (m.cols != plan.size()) {
    throw std::invalid_argument("fft_rows: row length " +
                                std::to_string(m.cols) + " does not match plan " +
                                std::to_string(plan.size()));
  }
  for_each_row(
      m, plan.size(),
      [&plan](std::size_t, std::span<Complex> row, std::span<Complex> scratch) {
        plan.execute(row, scratch);
      },
      exec);
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("BFPFFT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0 && cap < omp_get_max_threads()) {
      omp_set_num_threads(static_cast<int>(cap));
    }
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace bfpfft

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

#ifndef BFPFFT_BATCH_HPP_
#define BFPFFT_BATCH_HPP_

#include <cstddef>
#include <functional>
#include <span>

#include "bfpfft/fft.hpp"
#include "bfpfft/matrix.hpp"

namespace bfpfft {

/// Row kernels run either as a plain loop (the reference) or as an OpenMP
/// worksharing loop. Every row is processed by the same function with its own
/// scratch buffer, so both paths produce bit-identical results.
enum class Execution { kSerial, kParallel };

/// fn(row_index, row, scratch); scratch has `scratch_len` elements and is
/// private to the calling thread.
using RowKernel =
    std::function<void(std::size_t, std::span<Complex>, std::span<Complex>)>;

void for_each_row(ComplexMatrix& m, std::size_t scratch_len,
                  const RowKernel& fn, Execution exec = Execution::kParallel);

/// Forward transform of every row.
void fft_rows(const FftPlan& plan, ComplexMatrix& m,
              Execution exec = Execution::kParallel);

/// Applies the BFPFFT_THREADS cap (if set) to the OpenMP runtime. Returns the
/// resulting maximum worker count.
int configure_threads_from_env();

int max_threads();

}  // namespace bfpfft

#endif  // BFPFFT_BATCH_HPP_

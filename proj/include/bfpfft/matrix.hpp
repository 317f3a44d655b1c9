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

#ifndef BFPFFT_MATRIX_HPP_
#define BFPFFT_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bfpfft/formats.hpp"

namespace bfpfft {

/// Which axis runs along a row.
///   kRangeMajor   - rows are azimuth lines, columns are range bins
///   kAzimuthMajor - rows are range bins, columns are azimuth lines
enum class Layout { kRangeMajor, kAzimuthMajor };

const char* layout_name(Layout layout);

/// Dense row-major complex matrix.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Layout layout = Layout::kRangeMajor;
  std::vector<Complex> data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c, Layout l)
      : rows(r), cols(c), layout(l), data(r * c) {}

  std::span<Complex> row(std::size_t i) {
    return {data.data() + i * cols, cols};
  }
  std::span<const Complex> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  Complex& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
};

/// Transposes and flips the layout tag.
ComplexMatrix transpose(const ComplexMatrix& m);

}  // namespace bfpfft

#endif  // BFPFFT_MATRIX_HPP_

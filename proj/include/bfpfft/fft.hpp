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

#ifndef BFPFFT_FFT_HPP_
#define BFPFFT_FFT_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bfpfft/formats.hpp"

namespace bfpfft {

enum class ModeTag {
  kFp32,
  kPureFp16,
  kFp16Storage,     // fp16 storage, fp32 compute and accumulate
  kFp16MulFp32Acc,  // fp16 operands and products, fp32 accumulation
  kStorageOnly,     // arbitrary storage format, binary64 compute
};

/// Which format each class of arithmetic result is rounded to.
///
///   storage    - every value written back to a buffer between passes
///   compute    - products (and the twiddle / filter tables)
///   accumulate - sums and differences
struct PrecisionMode {
  ModeTag tag = ModeTag::kFp32;
  NumericFormat storage = Fp32();
  NumericFormat compute = Fp32();
  NumericFormat accumulate = Fp32();

  static PrecisionMode Fp32Mode();
  static PrecisionMode PureFp16();
  static PrecisionMode Fp16Storage();
  static PrecisionMode Fp16MulFp32Acc();
  /// Storage-only quantization with binary64 compute and twiddles.
  static PrecisionMode StorageOnly(const NumericFormat& storage);
  /// Exact binary64 everywhere; used for shadow runs and interpolation.
  static PrecisionMode Exact();

  std::string name() const;
  bool is_fp16_family() const {
    return tag == ModeTag::kPureFp16 || tag == ModeTag::kFp16Storage ||
           tag == ModeTag::kFp16MulFp32Acc;
  }
};

/// Parses "fp32", "pure_fp16", "fp16_storage", "fp16_mul_fp32_acc" or
/// "storage:<format>".
PrecisionMode parse_mode(std::string_view name);

/// The four pipeline modes in ladder order.
std::vector<PrecisionMode> pipeline_modes();

/// Rounded complex arithmetic for one precision mode. Products go to the
/// compute format, sums to the accumulate format, buffer writes to storage.
/// A complex multiply is the direct form: four products, two sums.
class ModeArithmetic {
 public:
  explicit ModeArithmetic(const PrecisionMode& mode)
      : storage_(&mode.storage),
        compute_(&mode.compute),
        accumulate_(&mode.accumulate) {}

  Complex add(Complex a, Complex b) const {
    return {acc(a.real() + b.real()), acc(a.imag() + b.imag())};
  }
  Complex sub(Complex a, Complex b) const {
    return {acc(a.real() - b.real()), acc(a.imag() - b.imag())};
  }
  Complex mul(Complex a, Complex w) const {
    const double rr = prod(a.real() * w.real());
    const double ii = prod(a.imag() * w.imag());
    const double ri = prod(a.real() * w.imag());
    const double ir = prod(a.imag() * w.real());
    return {acc(rr - ii), acc(ri + ir)};
  }
  // Multiplication by -i is a swap and a sign flip in every format.
  static Complex mul_neg_i(Complex a) { return {a.imag(), -a.real()}; }
  Complex store(Complex a) const { return storage_->quantize(a); }
  double store(double a) const { return storage_->quantize(a); }

 private:
  double acc(double x) const { return accumulate_->quantize(x); }
  double prod(double x) const { return compute_->quantize(x); }

  const NumericFormat* storage_;
  const NumericFormat* compute_;
  const NumericFormat* accumulate_;
};

/// Called after each Stockham pass with the pass index and the buffer the
/// pass just wrote.
using PassObserver = std::function<void(int, std::span<const Complex>)>;

/// Immutable description of one power-of-two transform. Radix-8 plans finish
/// with a single radix-2 or radix-4 pass when log2(n) is not a multiple of 3.
class FftPlan {
 public:
  static constexpr std::size_t kMaxSize = std::size_t{1} << 22;

  FftPlan(std::size_t n, int radix, PrecisionMode mode);

  std::size_t size() const { return n_; }
  int radix() const { return radix_; }
  /// Number of Stockham passes.
  int stages() const { return static_cast<int>(pass_radices_.size()); }
  const std::vector<int>& pass_radices() const { return pass_radices_; }
  std::span<const Complex> twiddles() const { return twiddles_; }
  const PrecisionMode& mode() const { return mode_; }

  /// Forward transform of `data` in place. `scratch` must have the same
  /// length; its contents are clobbered. Input is re-quantized to the
  /// storage format first.
  void execute(std::span<Complex> data, std::span<Complex> scratch,
               const PassObserver* observer = nullptr) const;

 private:
  std::size_t n_;
  int radix_;
  PrecisionMode mode_;
  std::vector<int> pass_radices_;
  std::vector<Complex> twiddles_;
  Complex w8_;  // exp(-i*pi/4) rounded to the compute format
};

FftPlan make_plan(std::size_t n, int radix, const PrecisionMode& mode);

/// e^{-2*pi*i*k/n} from binary64 trigonometry with octant reduction, so the
/// quarter-period points are exact.
Complex unit_root(std::size_t k, std::size_t n);

/// Unnormalized forward DFT through the plan's Stockham passes.
std::vector<Complex> fft_forward(const FftPlan& plan,
                                 std::span<const Complex> data,
                                 const PassObserver* observer = nullptr);

/// Inverse DFT realized as conj(FFT(conj(z))).
///
/// With the block shift, the 1/n scale is folded into the leading conjugate
/// pass, so the forward passes see a unit-scale spectrum. Without it the
/// division happens after the last pass, which is where the unscaled
/// intermediates grow to O(n^2).
std::vector<Complex> ifft_via_conj(const FftPlan& plan,
                                   std::span<const Complex> data,
                                   bool apply_block_shift,
                                   const PassObserver* observer = nullptr);

/// Direct O(n^2) binary64 DFT.
std::vector<Complex> dft_oracle(std::span<const Complex> data);

/// dft_oracle with the root table built once, for repeated use at one length.
class DftOracle {
 public:
  explicit DftOracle(std::size_t n);
  std::size_t size() const { return n_; }
  std::vector<Complex> operator()(std::span<const Complex> data) const;

 private:
  std::size_t n_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace bfpfft

#endif  // BFPFFT_FFT_HPP_

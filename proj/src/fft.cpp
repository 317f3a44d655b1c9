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

#include "bfpfft/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bfpfft/bfp.hpp"

namespace bfpfft {

PrecisionMode PrecisionMode::Fp32Mode() {
  return {ModeTag::kFp32, Fp32(), Fp32(), Fp32()};
}
PrecisionMode PrecisionMode::PureFp16() {
  return {ModeTag::kPureFp16, Fp16(), Fp16(), Fp16()};
}
PrecisionMode PrecisionMode::Fp16Storage() {
  return {ModeTag::kFp16Storage, Fp16(), Fp32(), Fp32()};
}
PrecisionMode PrecisionMode::Fp16MulFp32Acc() {
  return {ModeTag::kFp16MulFp32Acc, Fp16(), Fp16(), Fp32()};
}
PrecisionMode PrecisionMode::StorageOnly(const NumericFormat& storage) {
  return {ModeTag::kStorageOnly, storage, Fp64(), Fp64()};
}
PrecisionMode PrecisionMode::Exact() {
  return {ModeTag::kStorageOnly, Fp64(), Fp64(), Fp64()};
}

std::string PrecisionMode::name() const {
  switch (tag) {
    case ModeTag::kFp32:
      return "fp32";
    case ModeTag::kPureFp16:
      return "pure_fp16";
    case ModeTag::kFp16Storage:
      return "fp16_storage";
    case ModeTag::kFp16MulFp32Acc:
      return "fp16_mul_fp32_acc";
    case ModeTag::kStorageOnly:
      return "storage:" + storage.name();
  }
  return "unknown";
}

PrecisionMode parse_mode(std::string_view name) {
  if (name == "fp32") return PrecisionMode::Fp32Mode();
  if (name == "pure_fp16") return PrecisionMode::PureFp16();
  if (name == "fp16_storage") return PrecisionMode::Fp16Storage();
  if (name == "fp16_mul_fp32_acc") return PrecisionMode::Fp16MulFp32Acc();
  constexpr std::string_view kStorage = "storage:";
  if (name.starts_with(kStorage)) {
    return PrecisionMode::StorageOnly(
        lookup_format(name.substr(kStorage.size())));
  }
  throw std::invalid_argument(
      "unknown precision mode '" + std::string(name) +
      "' (expected fp32, pure_fp16, fp16_storage, fp16_mul_fp32_acc or "
      "storage:<format>)");
}

std::vector<PrecisionMode> pipeline_modes() {
  return {PrecisionMode::Fp32Mode(), PrecisionMode::PureFp16(),
          PrecisionMode::Fp16Storage(), PrecisionMode::Fp16MulFp32Acc()};
}

Complex unit_root(std::size_t k, std::size_t n) {
  k %= n;
  // Split 2*pi*k/n into whole quarter turns plus a remainder in [0, pi/2),
  // and evaluate the remainder from whichever end of the quarter is closer.
  const std::size_t quarter = (4 * k) / n;
  const std::size_t rem = 4 * k - quarter * n;
  double c;
  double s;
  if (2 * rem == n) {
    c = s = std::numbers::sqrt2 / 2;
  } else if (2 * rem < n) {
    const double theta = std::numbers::pi / 2 * static_cast<double>(rem) /
                         static_cast<double>(n);
    c = std::cos(theta);
    s = std::sin(theta);
  } else {
    const double theta = std::numbers::pi / 2 * static_cast<double>(n - rem) /
                         static_cast<double>(n);
    c = std::sin(theta);
    s = std::cos(theta);
  }
  double cos_phi = c;
  double sin_phi = s;
  switch (quarter) {
    case 1:
      cos_phi = -s;
      sin_phi = c;
      break;
    case 2:
      cos_phi = -c;
      sin_phi = -s;
      break;
    case 3:
      cos_phi = s;
      sin_phi = -c;
      break;
    default:
      break;
  }
  return {cos_phi, -sin_phi};
}

FftPlan::FftPlan(std::size_t n, int radix, PrecisionMode mode)
    : n_(n), radix_(radix), mode_(std::move(mode)) {
  if (radix != 2 && radix != 8) {
    throw std::invalid_argument("radix must be 2 or 8, got " +
                                std::to_string(radix));
  }
  if (!std::has_single_bit(n)) {
    throw std::invalid_argument("transform length " + std::to_string(n) +
                                " is not a power of two");
  }
  if (n < static_cast<std::size_t>(radix)) {
    throw std::invalid_argument("transform length " + std::to_string(n) +
                                " is smaller than the radix " +
                                std::to_string(radix));
  }
  if (n > kMaxSize) {
    throw std::invalid_argument("transform length " + std::to_string(n) +
                                " exceeds the 2^22 limit");
  }
  const int log2n = std::countr_zero(n);
  if (radix == 2) {
    pass_radices_.assign(log2n, 2);
  } else {
    pass_radices_.assign(log2n / 3, 8);
    if (log2n % 3 == 1) pass_radices_.push_back(2);
    if (log2n % 3 == 2) pass_radices_.push_back(4);
  }
  twiddles_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    twiddles_[k] = mode_.compute.quantize(unit_root(k, n));
  }
  w8_ = mode_.compute.quantize(unit_root(1, 8));
}

FftPlan make_plan(std::size_t n, int radix, const PrecisionMode& mode) {
  return FftPlan(n, radix, mode);
}

namespace {

template <int R>
struct SmallDft;

template <>
struct SmallDft<2> {
  static void Run(Complex* a, const ModeArithmetic& ar, Complex) {
    const Complex s = ar.add(a[0], a[1]);
    a[1] = ar.sub(a[0], a[1]);
    a[0] = s;
  }
};

template <>
struct SmallDft<4> {
  static void Run(Complex* a, const ModeArithmetic& ar, Complex) {
    const Complex t0 = ar.add(a[0], a[2]);
    const Complex t1 = ar.sub(a[0], a[2]);
    const Complex t2 = ar.add(a[1], a[3]);
    const Complex t3 = ModeArithmetic::mul_neg_i(ar.sub(a[1], a[3]));
    a[0] = ar.add(t0, t2);
    a[2] = ar.sub(t0, t2);
    a[1] = ar.add(t1, t3);
    a[3] = ar.sub(t1, t3);
  }
};

template <>
struct SmallDft<8> {
  static void Run(Complex* a, const ModeArithmetic& ar, Complex w8) {
    Complex even[4] = {a[0], a[2], a[4], a[6]};
    Complex odd[4] = {a[1], a[3], a[5], a[7]};
    SmallDft<4>::Run(even, ar, w8);
    SmallDft<4>::Run(odd, ar, w8);
    odd[1] = ar.mul(odd[1], w8);
    odd[2] = ModeArithmetic::mul_neg_i(odd[2]);
    odd[3] = ar.mul(odd[3], Complex(-w8.real(), w8.imag()));
    for (int k = 0; k < 4; ++k) {
      a[k] = ar.add(even[k], odd[k]);
      a[k + 4] = ar.sub(even[k], odd[k]);
    }
  }
};

// One decimation-in-frequency Stockham pass over a sub-transform of length
// `len` at stride `stride`: gather R inputs spaced len/R apart, take their
// R-point DFT, twiddle, and write them R-contiguous in the other buffer.
template <int R>
void StockhamPass(std::size_t len, std::size_t stride, const Complex* x,
                  Complex* y, const Complex* tw, const ModeArithmetic& ar,
                  Complex w8) {
  const std::size_t m = len / R;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < stride; ++q) {
      Complex a[R];
      for (int j = 0; j < R; ++j) a[j] = x[q + stride * (p + j * m)];
      SmallDft<R>::Run(a, ar, w8);
      Complex* out = y + q + stride * (R * p);
      out[0] = ar.store(a[0]);
      for (int k = 1; k < R; ++k) {
        out[stride * k] = ar.store(ar.mul(a[k], tw[p * k * stride]));
      }
    }
  }
}

}  // namespace

void FftPlan::execute(std::span<Complex> data, std::span<Complex> scratch,
                      const PassObserver* observer) const {
  if (data.size() != n_ || scratch.size() != n_) {
    throw std::invalid_argument("transform expects " + std::to_string(n_) +
                                " samples, got " + std::to_string(data.size()));
  }
  const ModeArithmetic ar(mode_);
  quantize_in_place(mode_.storage, data);

  Complex* x = data.data();
  Complex* y = scratch.data();
  std::size_t len = n_;
  std::size_t stride = 1;
  int pass = 0;
  for (int r : pass_radices_) {
    switch (r) {
      case 2:
        StockhamPass<2>(len, stride, x, y, twiddles_.data(), ar, w8_);
        break;
      case 4:
        StockhamPass<4>(len, stride, x, y, twiddles_.data(), ar, w8_);
        break;
      default:
        StockhamPass<8>(len, stride, x, y, twiddles_.data(), ar, w8_);
        break;
    }
    std::swap(x, y);
    len /= r;
    stride *= r;
    if (observer) (*observer)(pass, std::span<const Complex>(x, n_));
    ++pass;
  }
  if (x != data.data()) std::copy(x, x + n_, data.data());
}

std::vector<Complex> fft_forward(const FftPlan& plan,
                                 std::span<const Complex> data,
                                 const PassObserver* observer) {
  if (data.size() != plan.size()) {
    throw std::invalid_argument("fft_forward: expected " +
                                std::to_string(plan.size()) +
                                " samples, got " + std::to_string(data.size()));
  }
  std::vector<Complex> out(data.begin(), data.end());
  std::vector<Complex> scratch(plan.size());
  plan.execute(out, scratch, observer);
  return out;
}

std::vector<Complex> ifft_via_conj(const FftPlan& plan,
                                   std::span<const Complex> data,
                                   bool apply_block_shift,
                                   const PassObserver* observer) {
  const std::size_t n = plan.size();
  if (data.size() != n) {
    throw std::invalid_argument("ifft_via_conj: expected " + std::to_string(n) +
                                " samples, got " + std::to_string(data.size()));
  }
  const NumericFormat& storage = plan.mode().storage;
  std::vector<Complex> z;
  if (apply_block_shift) {
    z = block_shift_conjugate(data, n, storage);
  } else {
    z.resize(n);
    std::transform(data.begin(), data.end(), z.begin(),
                   [](Complex v) { return std::conj(v); });
  }
  std::vector<Complex> scratch(n);
  plan.execute(z, scratch, observer);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : z) {
    v = std::conj(v);
    if (!apply_block_shift) v = storage.quantize(v * inv_n);
  }
  return z;
}

DftOracle::DftOracle(std::size_t n) : n_(n), cos_(n), sin_(n) {
  if (n == 0) throw std::invalid_argument("dft_oracle: empty input");
  for (std::size_t k = 0; k < n; ++k) {
    const Complex w = unit_root(k, n);
    cos_[k] = w.real();
    sin_[k] = w.imag();
  }
}

std::vector<Complex> DftOracle::operator()(std::span<const Complex> data) const {
  if (data.size() != n_) {
    throw std::invalid_argument("dft_oracle: expected " + std::to_string(n_) +
                                " samples, got " + std::to_string(data.size()));
  }
  std::vector<double> xr(n_);
  std::vector<double> xi(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    xr[j] = data[j].real();
    xi[j] = data[j].imag();
  }
  std::vector<Complex> out(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    double re = 0.0;
    double im = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      re += xr[j] * cos_[idx] - xi[j] * sin_[idx];
      im += xr[j] * sin_[idx] + xi[j] * cos_[idx];
      idx += k;
      if (idx >= n_) idx -= n_;
    }
    out[k] = {re, im};
  }
  return out;
}

std::vector<Complex> dft_oracle(std::span<const Complex> data) {
  return DftOracle(data.size())(data);
}

}  // namespace bfpfft

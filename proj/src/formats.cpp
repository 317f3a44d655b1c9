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

#include "bfpfft/formats.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace bfpfft {

void NumericFormat::Finalize(double max_finite) {
  const int bias = (1 << (exponent_bits_ - 1)) - 1;
  const int emin = 1 - bias;
  max_finite_ = max_finite;
  min_normal_ = std::ldexp(1.0, emin);
  sub_quantum_ = std::ldexp(1.0, emin - mantissa_bits_);
  sub_magic_ = std::ldexp(1.0, emin - mantissa_bits_ + 52);
  drop_bits_ = 52 - mantissa_bits_;
  ulp_ = std::uint64_t{1} << drop_bits_;
  max_bits_ = std::bit_cast<std::uint64_t>(max_finite_);
  min_normal_bits_ = std::bit_cast<std::uint64_t>(min_normal_);
}

NumericFormat NumericFormat::Ieee(std::string name, int exponent_bits,
                                  int mantissa_bits) {
  if (exponent_bits < 2 || exponent_bits > 10 || mantissa_bits < 1 ||
      mantissa_bits > 51) {
    throw std::invalid_argument("unsupported format geometry for " + name);
  }
  NumericFormat f;
  f.name_ = std::move(name);
  f.exponent_bits_ = exponent_bits;
  f.mantissa_bits_ = mantissa_bits;
  f.overflow_ = OverflowPolicy::kInfinity;
  const int bias = (1 << (exponent_bits - 1)) - 1;
  const int emax = (1 << exponent_bits) - 2 - bias;
  f.Finalize(std::ldexp(2.0 - std::ldexp(1.0, -mantissa_bits), emax));
  return f;
}

NumericFormat NumericFormat::ExtendedRange(std::string name, int exponent_bits,
                                           int mantissa_bits) {
  NumericFormat f = Ieee(std::move(name), exponent_bits, mantissa_bits);
  const int bias = (1 << (exponent_bits - 1)) - 1;
  const int emax = (1 << exponent_bits) - 1 - bias;
  // Largest mantissa pattern in the top binade is reserved for NaN.
  f.overflow_ = OverflowPolicy::kNaN;
  f.Finalize(std::ldexp(2.0 - std::ldexp(1.0, 1 - mantissa_bits), emax));
  return f;
}

NumericFormat NumericFormat::Identity(std::string name, int exponent_bits,
                                      int mantissa_bits) {
  NumericFormat f;
  f.name_ = std::move(name);
  f.exponent_bits_ = exponent_bits;
  f.mantissa_bits_ = mantissa_bits;
  f.identity_ = true;
  const int bias = (1 << (exponent_bits - 1)) - 1;
  f.max_finite_ = exponent_bits == 8 ? std::numeric_limits<float>::max()
                                     : std::numeric_limits<double>::max();
  f.min_normal_ = std::ldexp(1.0, 1 - bias);
  f.sub_quantum_ = std::ldexp(1.0, 1 - bias - mantissa_bits);
  return f;
}

NumericFormat NumericFormat::Saturating() const {
  NumericFormat f = *this;
  if (!identity_) {
    f.overflow_ = OverflowPolicy::kSaturate;
    f.name_ += "-sat";
  }
  return f;
}

bool NumericFormat::representable(double x) const noexcept {
  const double q = quantize(x);
  if (std::isnan(x)) return std::isnan(q);
  return q == x;
}

const NumericFormat& Fp16() {
  static const NumericFormat f = NumericFormat::Ieee("fp16", 5, 10);
  return f;
}
const NumericFormat& Bf16() {
  static const NumericFormat f = NumericFormat::Ieee("bf16", 8, 7);
  return f;
}
const NumericFormat& E4m3() {
  static const NumericFormat f = NumericFormat::ExtendedRange("e4m3", 4, 3);
  return f;
}
const NumericFormat& E5m2() {
  static const NumericFormat f = NumericFormat::Ieee("e5m2", 5, 2);
  return f;
}
const NumericFormat& Fp32() {
  static const NumericFormat f = NumericFormat::Identity("fp32", 8, 23);
  return f;
}
const NumericFormat& Fp64() {
  static const NumericFormat f = NumericFormat::Identity("fp64", 11, 52);
  return f;
}

std::span<const NumericFormat> format_table() {
  static const std::array<NumericFormat, 6> table = {Fp16(), Bf16(), E4m3(),
                                                     E5m2(), Fp32(), Fp64()};
  return table;
}

const NumericFormat& lookup_format(std::string_view name) {
  for (const auto& f : format_table()) {
    if (f.name() == name) return f;
  }
  throw std::invalid_argument("unknown numeric format '" + std::string(name) +
                              "' (expected fp16, bf16, e4m3, e5m2, fp32 or fp64)");
}

void quantize_in_place(const NumericFormat& format, std::span<Complex> data) {
  if (format.is_identity()) return;
  for (auto& z : data) z = format.quantize(z);
}

}  // namespace bfpfft

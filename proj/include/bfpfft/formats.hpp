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

#ifndef BFPFFT_FORMATS_HPP_
#define BFPFFT_FORMATS_HPP_

#include <bit>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bfpfft {

using Complex = std::complex<double>;

/// What a value that rounds past the largest finite magnitude becomes.
enum class OverflowPolicy {
  kInfinity,  // IEEE formats: +/-inf
  kNaN,       // OCP E4M3 non-saturating conversion
  kSaturate,  // clamp to +/-max_finite
};

/// A binary floating-point storage format emulated as a rounding lattice on
/// binary64. Every value the library manipulates is a double; membership in a
/// narrower format is enforced by `quantize`, which rounds to nearest with
/// ties to even, keeps subnormals and signed zero, and applies the format's
/// overflow policy.
///
/// The identity formats (fp32 and fp64) leave working-precision values
/// untouched.
class NumericFormat {
 public:
  /// IEEE-style layout: all-ones exponent reserved for inf/NaN.
  static NumericFormat Ieee(std::string name, int exponent_bits,
                            int mantissa_bits);
  /// OCP FP8 E4M3-style layout: all-ones exponent holds finite values except
  /// for the all-ones mantissa, which is NaN. No infinities.
  static NumericFormat ExtendedRange(std::string name, int exponent_bits,
                                     int mantissa_bits);
  /// Working-precision pass-through with nominal field widths.
  static NumericFormat Identity(std::string name, int exponent_bits,
                                int mantissa_bits);

  /// Same lattice, overflow clamps to +/-max_finite (and inf maps to max).
  NumericFormat Saturating() const;

  const std::string& name() const { return name_; }
  int exponent_bits() const { return exponent_bits_; }
  int mantissa_bits() const { return mantissa_bits_; }
  double max_finite() const { return max_finite_; }
  double min_normal() const { return min_normal_; }
  double min_subnormal() const { return sub_quantum_; }
  bool has_infinity() const { return overflow_ == OverflowPolicy::kInfinity; }
  bool supports_subnormals() const { return true; }
  bool is_identity() const { return identity_; }
  OverflowPolicy overflow_policy() const { return overflow_; }

  double quantize(double x) const noexcept {
    if (identity_) return x;
    const auto bits = std::bit_cast<std::uint64_t>(x);
    const std::uint64_t sign = bits & kSignMask;
    std::uint64_t mag = bits & ~kSignMask;
    if (mag >= kExponentMask) {  // inf or NaN
      if (mag > kExponentMask || overflow_ == OverflowPolicy::kInfinity) {
        return x;
      }
      return overflow_ == OverflowPolicy::kNaN
                 ? std::numeric_limits<double>::quiet_NaN()
                 : std::bit_cast<double>(sign | max_bits_);
    }
    if (mag < min_normal_bits_) {
      // Below the normal range the spacing is fixed; adding and removing a
      // magic constant whose ulp equals that spacing rounds ties-to-even.
      const double a = std::bit_cast<double>(mag);
      mag = std::bit_cast<std::uint64_t>((a + sub_magic_) - sub_magic_);
    } else {
      const std::uint64_t half_minus_one = (ulp_ >> 1) - 1;
      const std::uint64_t odd = (mag >> drop_bits_) & 1u;
      mag = (mag + half_minus_one + odd) & ~(ulp_ - 1);
    }
    if (mag > max_bits_) {
      switch (overflow_) {
        case OverflowPolicy::kInfinity:
          mag = kExponentMask;
          break;
        case OverflowPolicy::kNaN:
          return std::numeric_limits<double>::quiet_NaN();
        case OverflowPolicy::kSaturate:
          mag = max_bits_;
          break;
      }
    }
    return std::bit_cast<double>(sign | mag);
  }

  Complex quantize(Complex z) const noexcept {
    return {quantize(z.real()), quantize(z.imag())};
  }

  /// True when `x` already lies on the lattice (or is a special this format
  /// can hold).
  bool representable(double x) const noexcept;

 private:
  static constexpr std::uint64_t kSignMask = 0x8000000000000000ull;
  static constexpr std::uint64_t kExponentMask = 0x7ff0000000000000ull;

  NumericFormat() = default;
  void Finalize(double max_finite);

  std::string name_;
  int exponent_bits_ = 0;
  int mantissa_bits_ = 0;
  bool identity_ = false;
  OverflowPolicy overflow_ = OverflowPolicy::kInfinity;
  double max_finite_ = 0.0;
  double min_normal_ = 0.0;
  double sub_quantum_ = 0.0;
  double sub_magic_ = 0.0;
  int drop_bits_ = 0;
  std::uint64_t ulp_ = 0;
  std::uint64_t max_bits_ = 0;
  std::uint64_t min_normal_bits_ = 0;
};

const NumericFormat& Fp16();
const NumericFormat& Bf16();
const NumericFormat& E4m3();
const NumericFormat& E5m2();
const NumericFormat& Fp32();
const NumericFormat& Fp64();

/// fp16, bf16, e4m3, e5m2, fp32, fp64 in that order.
std::span<const NumericFormat> format_table();

/// Looks a format up by name ("fp16", "bf16", "e4m3", "e5m2", "fp32",
/// "fp64"). Throws std::invalid_argument for anything else.
const NumericFormat& lookup_format(std::string_view name);

/// Bumped whenever a lattice definition changes; embedded in reports.
inline constexpr std::string_view kFormatTableVersion = "formats-v1";

inline double quantize(const NumericFormat& format, double x) {
  return format.quantize(x);
}

inline Complex quantize_complex(const NumericFormat& format, Complex z) {
  return format.quantize(z);
}

void quantize_in_place(const NumericFormat& format, std::span<Complex> data);

}  // namespace bfpfft

#endif  // BFPFFT_FORMATS_HPP_

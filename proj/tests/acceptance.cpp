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

// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is nonzero when any line fails.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bfpfft/batch.hpp"
#include "bfpfft/bfp.hpp"
#include "bfpfft/fft.hpp"
#include "bfpfft/formats.hpp"
#include "bfpfft/harness.hpp"
#include "bfpfft/metrics.hpp"
#include "bfpfft/sar.hpp"

namespace {

using bfpfft::Complex;
using bfpfft::PrecisionMode;
using LComplex = std::complex<long double>;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Long-double DFT, kept separate from the library oracle.
std::vector<Complex> SlowDft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<LComplex> w(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long double a = -2.0L * std::numbers::pi_v<long double> * m / n;
    w[m] = {std::cos(a), std::sin(a)};
  }
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    LComplex acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += LComplex(x[j]) * w[(j * k) % n];
    out[k] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

double RelRms(const std::vector<Complex>& ref, const std::vector<Complex>& test) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += std::norm(ref[i] - test[i]);
    den += std::norm(ref[i]);
  }
  return std::sqrt(num / den);
}

Verdict OracleEquivalence() {
  double worst_fwd = 0, worst_rt = 0;
  for (std::size_t n : {8u, 64u, 1024u, 4096u}) {
    const auto x = bfpfft::random_input(n, 1, 0);
    const auto ref = SlowDft(x);
    for (int radix : {2, 8}) {
      const auto plan = bfpfft::make_plan(n, radix, PrecisionMode::Fp32Mode());
      const auto y = bfpfft::fft_forward(plan, x);
      worst_fwd = std::max(worst_fwd, RelRms(ref, y));
      for (bool shift : {true, false}) {
        worst_rt = std::max(worst_rt, RelRms(x, bfpfft::ifft_via_conj(plan, y, shift)));
      }
    }
  }
  return {worst_fwd <= 1e-6 && worst_rt <= 1e-6,
          "max rel rms " + Num(worst_fwd) + ", round trip " + Num(worst_rt)};
}

Verdict SqnrWindow(const PrecisionMode& mode, int trials, double lo, double hi) {
  std::string detail;
  bool pass = true;
  const std::vector<PrecisionMode> modes{mode};
  for (std::size_t n : {1024u, 4096u}) {
    const auto s = bfpfft::fft_sqnr_cells(n, modes, trials, 1)[0];
    pass = pass && s.mean_db >= lo && s.mean_db <= hi;
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " " +
              Num(s.mean_db) + " dB";
  }
  return {pass, detail + " (window " + Num(lo) + ".." + Num(hi) + ")"};
}

Verdict OverflowCertificate() {
  const auto tr = bfpfft::trace_matched_filter(4096, PrecisionMode::PureFp16(), false, false);
  double product = 0, inverse = 0;
  for (const auto& s : tr.stages) {
    if (s.stage_label == "filter_product") product = s.unquantized_max_abs;
    if (s.stage_label.rfind("inverse_fft", 0) == 0) {
      inverse = std::max(inverse, s.unquantized_max_abs);
    }
  }
  return {product >= 1e6 && inverse >= 1e7 && tr.nan_fraction > 0.99,
          "product " + Num(product) + ", inverse " + Num(inverse) + ", nan fraction " +
              Num(tr.nan_fraction)};
}

Verdict BfpBoundedness() {
  const auto tr = bfpfft::trace_matched_filter(4096, PrecisionMode::PureFp16(), true, true);
  std::size_t overflow = 0, nans = 0;
  double peak = 0;
  for (const auto& s : tr.stages) {
    overflow += s.overflow_count;
    nans += s.nan_count;
    peak = std::max(peak, s.max_abs);
  }
  const double bound = 4096 * (1 + std::ldexp(1.0, -9));
  const auto a = bfpfft::trace_matched_filter(4096, PrecisionMode::Fp32Mode(), true, true);
  const auto b = bfpfft::trace_matched_filter(4096, PrecisionMode::Fp32Mode(), false, true);
  const double diff = RelRms(b.output, a.output);
  return {overflow == 0 && nans == 0 && peak <= bound && diff <= 1e-6,
          "overflows " + std::to_string(overflow) + ", nan " + std::to_string(nans) +
              ", stage max " + Num(peak) + ", fp32 commutation " + Num(diff)};
}

struct SarRun {
  bfpfft::SarSceneConfig scene;
  bfpfft::RawData raw;
  bfpfft::ComplexMatrix reference;
  bfpfft::QualityReport base;
};

SarRun Reference(std::size_t n) {
  SarRun r;
  r.scene = bfpfft::default_scene(n);
  r.raw = bfpfft::simulate_scene(r.scene, 1);
  r.reference = bfpfft::focus(r.raw, r.scene, PrecisionMode::Fp32Mode(), true);
  r.base = bfpfft::assess(r.reference, r.reference, r.scene, PrecisionMode::Fp32Mode(), true);
  return r;
}

Verdict Parity(const SarRun& run) {
  bool pass = true;
  std::string detail;
  for (const auto& mode : {PrecisionMode::PureFp16(), PrecisionMode::Fp16Storage(),
                           PrecisionMode::Fp16MulFp32Acc()}) {
    const auto img = bfpfft::focus(run.raw, run.scene, mode, true);
    const auto q = bfpfft::assess(img, run.reference, run.scene, mode, true);
    if (!q.per_target || !run.base.per_target) {
      pass = false;
      detail += mode.name() + " no metrics; ";
      continue;
    }
    double p = 0, i = 0, s = 0, w = 0;
    auto upd = [](double& acc, double d) { acc = std::isnan(d) ? d : std::max(acc, std::abs(d)); };
    for (std::size_t k = 0; k < q.per_target->size(); ++k) {
      const auto& t = (*q.per_target)[k];
      const auto& b = (*run.base.per_target)[k];
      upd(p, t.pslr_range_db - b.pslr_range_db);
      upd(p, t.pslr_azimuth_db - b.pslr_azimuth_db);
      upd(i, t.islr_range_db - b.islr_range_db);
      upd(i, t.islr_azimuth_db - b.islr_azimuth_db);
      upd(s, t.snr_db - b.snr_db);
      upd(w, t.range_res_bins - b.range_res_bins);
      upd(w, t.azimuth_res_bins - b.azimuth_res_bins);
    }
    pass = pass && p <= 0.1 && i <= 0.2 && s <= 0.1 && w <= 0.02;
    detail += mode.name() + " dPSLR " + Num(p) + " dISLR " + Num(i) + " dSNR " + Num(s) +
              " dres " + Num(w) + "; ";
  }
  return {pass, detail};
}

double EndToEnd(const SarRun& run) {
  const auto img = bfpfft::focus(run.raw, run.scene, PrecisionMode::PureFp16(), true);
  return bfpfft::assess(img, run.reference, run.scene, PrecisionMode::PureFp16(), true)
      .end_to_end_sqnr_db;
}

Verdict EndToEndSqnr(const SarRun& small) {
  const double a = EndToEnd(small);
  if (a >= 40 && a <= 45) return {true, "1024^2 " + Num(a) + " dB"};
  const double b = EndToEnd(Reference(4096));
  return {b >= 40 && b <= 45,
          "1024^2 " + Num(a) + " dB, 4096^2 " + Num(b) + " dB (window 40..45)"};
}

Verdict StorageSweep() {
  struct Row {
    const char* format;
    double lo, hi;
  };
  bool pass = true;
  std::string detail;
  for (const Row& r : {Row{"fp16", 60, 65}, Row{"e4m3", 17, 22}, Row{"e5m2", 11, 16}}) {
    const auto v = SqnrWindow(PrecisionMode::StorageOnly(bfpfft::lookup_format(r.format)), 200,
                              r.lo, r.hi);
    pass = pass && v.pass;
    detail += std::string(r.format) + " " + v.detail + "; ";
  }
  return {pass, detail};
}

Verdict MetricCalibration() {
  // Unweighted pulse sampled at its bandwidth: sinc through the sum of the
  // n-1 non-Nyquist harmonics, off-grid in both axes.
  const std::size_t n = 512;
  const double r0 = 256.3, c0 = 255.5;
  auto pulse = [&](double t) {
    const double dn = n;
    if (std::abs(std::remainder(t, dn)) < 1e-12) return 1.0;
    return std::sin(std::numbers::pi * (dn - 1) * t / dn) /
           ((dn - 1) * std::sin(std::numbers::pi * t / dn));
  };
  bfpfft::ComplexMatrix img(n, n, bfpfft::Layout::kRangeMajor);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) img.at(r, c) = pulse(r - r0) * pulse(c - c0);
  }
  bool pass = true;
  std::string detail;
  for (auto axis : {bfpfft::Axis::kRange, bfpfft::Axis::kAzimuth}) {
    const auto cut = bfpfft::extract_cut(img, {r0, c0}, axis, 32);
    const double p = bfpfft::pslr_db(cut);
    const double w = bfpfft::resolution_3db(cut);
    pass = pass && std::abs(p + 13.26) <= 0.1 && std::abs(w - 0.886) <= 0.01;
    detail += std::string(axis == bfpfft::Axis::kRange ? "range" : "azimuth") + " PSLR " +
              Num(p) + " dB width " + Num(w) + "; ";
  }
  return {pass, detail};
}

Verdict BenchRuns() {
  auto c = bfpfft::default_config(bfpfft::Experiment::kBench);
  c.sizes = {1024};
  c.batch = 16;
  c.bench_runs = 5;
  c.emit = {false, false, false};
  const auto r = bfpfft::run_bench(c);
  const auto& rows = r.tables.at(0).rows;
  return {rows.size() == c.modes.size(),
          std::to_string(rows.size()) + " timing rows, informational only (no bound)"};
}

}  // namespace

int main() {
  bfpfft::configure_threads_from_env();
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  SarRun sar;
  bool have_sar = false;
  auto sar_ref = [&]() -> const SarRun& {
    if (!have_sar) {
      sar = Reference(1024);
      have_sar = true;
    }
    return sar;
  };
  const std::vector<Criterion> criteria = {
      {1, "fft oracle equivalence", OracleEquivalence},
      {2, "pure_fp16 fft sqnr", [] { return SqnrWindow(PrecisionMode::PureFp16(), 200, 56, 64); }},
      {3, "overflow without shift", OverflowCertificate},
      {4, "block shift boundedness", BfpBoundedness},
      {5, "sar fp16 parity", [&] { return Parity(sar_ref()); }},
      {6, "sar end-to-end sqnr", [&] { return EndToEndSqnr(sar_ref()); }},
      {7, "storage-only format sweep", StorageSweep},
      {8, "metric self-calibration", MetricCalibration},
      {9, "cpu bench (no bound)", BenchRuns},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures ? 1 : 0;
}

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

#include "bfpfft/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bfpfft/batch.hpp"
#include "bfpfft/bfp.hpp"
#include "bfpfft/metrics.hpp"
#include "bfpfft/sar.hpp"

namespace bfpfft {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Cells = std::vector<Cell>;

Cell I(std::size_t v) { return static_cast<long long>(v); }
Cell D(double v) { return v; }
Cell S(std::string v) { return v; }
Cell B(bool v) { return v; }

std::string Fmt(double v) { return format_cell(v); }

struct Svg {
  std::string filename;
  std::string content;
};

CheckResult Within(std::string name, double value, double lo, double hi) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = value >= lo && value <= hi;
  c.detail = Fmt(value) + " in [" + Fmt(lo) + ", " + Fmt(hi) + "]";
  return c;
}

CheckResult AtLeast(std::string name, double value, double lo) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = value >= lo;
  c.detail = Fmt(value) + " >= " + Fmt(lo);
  return c;
}

CheckResult AtMost(std::string name, double value, double hi) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = value <= hi;
  c.detail = Fmt(value) + " <= " + Fmt(hi);
  return c;
}

std::string OnOff(bool b) { return b ? "on" : "off"; }

double Median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void Emit(const ExperimentConfig& config, RunResult& result,
          const std::vector<Svg>& svgs) {
  const auto& dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             (ec ? ": " + ec.message() : ""));
  }
  const std::string exp(experiment_name(config.experiment));
  std::vector<Table> tables = result.tables;
  if (config.check) {
    Table t{"checks", {"check", "passed", "detail"}, {}};
    for (const auto& c : result.checks) t.add_row({S(c.name), B(c.passed), S(c.detail)});
    tables.push_back(std::move(t));
  }
  const Provenance p{exp, result.config_digest, std::string(kFormatTableVersion),
                     artifact_version()};
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = dir / name;
    write_text_file(path, text);
    result.written.push_back(path);
  };
  if (config.emit.csv) {
    for (const Table& t : tables) write(exp + "_" + t.name + ".csv", to_csv(t, p));
  }
  if (config.emit.json) write(exp + ".json", to_json(tables, p));
  if (config.emit.svg) {
    for (const Svg& s : svgs) write(s.filename, s.content);
  }
}

bool IsPure(const PrecisionMode& m) { return m.tag == ModeTag::kPureFp16; }
bool IsFp32(const PrecisionMode& m) { return m.tag == ModeTag::kFp32; }

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kFftSqnr: return "fft-sqnr";
    case Experiment::kFftTrace: return "fft-trace";
    case Experiment::kSar: return "sar";
    case Experiment::kFormatSweep: return "format-sweep";
    case Experiment::kBench: return "bench";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::kFftSqnr, Experiment::kFftTrace, Experiment::kSar,
                       Experiment::kFormatSweep, Experiment::kBench}) {
    if (experiment_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown experiment '" + std::string(name) +
                              "' (expected fft-sqnr, fft-trace, sar, format-sweep, bench)");
}

Toggle parse_toggle(std::string_view text) {
  if (text == "on") return Toggle::kOn;
  if (text == "off") return Toggle::kOff;
  if (text == "both") return Toggle::kBoth;
  throw std::invalid_argument("expected on, off or both, got '" + std::string(text) + "'");
}

std::vector<bool> toggle_values(Toggle t) {
  switch (t) {
    case Toggle::kOn: return {true};
    case Toggle::kOff: return {false};
    case Toggle::kBoth: return {true, false};
  }
  return {};
}

EmitSet parse_emit(std::string_view text) {
  EmitSet e{false, false, false};
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "csv") {
      e.csv = true;
    } else if (item == "json") {
      e.json = true;
    } else if (item == "svg") {
      e.svg = true;
    } else {
      throw std::invalid_argument("unknown output kind '" + item + "' (expected csv, json, svg)");
    }
  }
  return e;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  c.sizes = {1024, 4096};
  c.modes = pipeline_modes();
  switch (e) {
    case Experiment::kFftSqnr:
      break;
    case Experiment::kFftTrace:
      c.modes = {PrecisionMode::PureFp16(), PrecisionMode::Fp32Mode()};
      c.normalize_filter = Toggle::kBoth;
      break;
    case Experiment::kSar:
      c.sizes = {1024};
      break;
    case Experiment::kFormatSweep:
      c.modes = {PrecisionMode::StorageOnly(Fp16()), PrecisionMode::StorageOnly(Bf16()),
                 PrecisionMode::StorageOnly(E4m3()), PrecisionMode::StorageOnly(E5m2())};
      break;
    case Experiment::kBench:
      break;
  }
  return c;
}

void validate_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (c.trials < 1) fail("trials must be at least 1");
  if (c.sizes.empty() && c.full_scale == 0) fail("no sizes given");
  for (std::size_t n : c.sizes) {
    if (n < 2 || !std::has_single_bit(n) || n > FftPlan::kMaxSize) {
      fail("size " + std::to_string(n) + " is not a power of two in [2, 2^22]");
    }
  }
  if (c.full_scale != 0 && !std::has_single_bit(c.full_scale)) {
    fail("full-scale size must be a power of two");
  }
  if (c.modes.empty()) fail("no modes given");
  if (c.radix != 2 && c.radix != 8) fail("radix must be 2 or 8");
  if (c.batch < 1) fail("batch must be at least 1");
  if (c.bench_runs < 1) fail("bench runs must be at least 1");
}

std::string experiment_digest(const ExperimentConfig& c) {
  std::ostringstream s;
  s << experiment_name(c.experiment) << "|sizes";
  for (std::size_t n : c.sizes) s << ' ' << n;
  s << "|modes";
  for (const auto& m : c.modes) s << ' ' << m.name();
  s << "|trials " << c.trials << "|seed " << c.seed << "|bfp " << static_cast<int>(c.bfp)
    << "|normalize " << static_cast<int>(c.normalize_filter) << "|full_scale "
    << c.full_scale << "|radix " << c.radix << "|batch " << c.batch << "|runs "
    << c.bench_runs << "|" << kFormatTableVersion;
  return fnv1a_hex(s.str());
}

std::vector<Complex> random_input(std::size_t n, std::uint64_t seed,
                                  std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> x(n);
  for (auto& z : x) {
    const double re = u(rng);
    z = {re, u(rng)};
  }
  return x;
}

SqnrStats summarize_sqnr(std::vector<double> per_trial) {
  SqnrStats s;
  s.trials = per_trial.size();
  std::vector<double> clean;
  double sum = 0.0;
  for (double v : per_trial) {
    if (std::isnan(v)) {
      ++s.nan_trials;
    } else {
      clean.push_back(v);
      sum += v;
    }
  }
  if (clean.empty()) {
    s.mean_db = s.median_db = s.min_db = s.max_db = kNaN;
    return s;
  }
  s.mean_db = s.nan_trials ? kNaN : sum / static_cast<double>(clean.size());
  s.median_db = Median(clean);
  s.min_db = *std::min_element(clean.begin(), clean.end());
  s.max_db = *std::max_element(clean.begin(), clean.end());
  return s;
}

std::vector<SqnrStats> fft_sqnr_cells(std::size_t n,
                                      std::span<const PrecisionMode> modes,
                                      int trials, std::uint64_t seed, int radix) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::vector<FftPlan> plans;
  for (const auto& m : modes) plans.emplace_back(n, radix, m);
  const DftOracle oracle(n);
  const auto t_count = static_cast<std::size_t>(trials);
  std::vector<std::vector<double>> db(modes.size(), std::vector<double>(t_count));
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < static_cast<long>(t_count); ++t) {
    const auto trial = static_cast<std::size_t>(t);
    const std::vector<Complex> x = random_input(n, seed, trial);
    const std::vector<Complex> ref = oracle(x);
    std::vector<Complex> y(n);
    std::vector<Complex> scratch(n);
    for (std::size_t m = 0; m < plans.size(); ++m) {
      std::copy(x.begin(), x.end(), y.begin());
      plans[m].execute(y, scratch);
      db[m][trial] = sqnr_db(ref, y, true).db;
    }
  }
  std::vector<SqnrStats> out;
  for (auto& v : db) out.push_back(summarize_sqnr(std::move(v)));
  return out;
}

bool RunResult::checks_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

RunResult run_fft_sqnr(const ExperimentConfig& config) {
  validate_config(config);
  RunResult r;
  r.config_digest = experiment_digest(config);
  Table t{"sqnr",
          {"n", "mode", "radix", "trials", "mean_db", "median_db", "min_db", "max_db",
           "nan_trials"},
          {}};
  for (std::size_t n : config.sizes) {
    const auto stats = fft_sqnr_cells(n, config.modes, config.trials, config.seed, config.radix);
    for (std::size_t m = 0; m < config.modes.size(); ++m) {
      const auto& mode = config.modes[m];
      const auto& s = stats[m];
      t.add_row({I(n), S(mode.name()), I(static_cast<std::size_t>(config.radix)),
                 I(s.trials), D(s.mean_db), D(s.median_db), D(s.min_db), D(s.max_db),
                 I(s.nan_trials)});
      const std::string where = " n=" + std::to_string(n);
      if (IsPure(mode) && config.radix == 2 && (n == 1024 || n == 4096)) {
        r.checks.push_back(Within("pure_fp16 mean SQNR" + where, s.mean_db, 56.0, 64.0));
      }
      if (IsFp32(mode)) {
        r.checks.push_back(AtLeast("fp32 mean SQNR" + where, s.mean_db, 120.0));
      }
    }
  }
  t.sort_rows(2);
  r.tables.push_back(std::move(t));
  Emit(config, r, {});
  return r;
}

namespace {

double RelativeRms(std::span<const Complex> ref, std::span<const Complex> test) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    num += std::norm(ref[i] - test[i]);
    den += std::norm(ref[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

RunResult run_fft_trace(const ExperimentConfig& config) {
  validate_config(config);
  RunResult r;
  r.config_digest = experiment_digest(config);
  Table stages{"stages",
               {"n", "mode", "with_shift", "normalize_filter", "step", "stage", "max_abs",
                "unquantized_max_abs", "overflow_count", "nan_count", "theoretical_bound"},
               {}};
  Table summary{"summary",
                {"n", "mode", "with_shift", "normalize_filter", "filter_peak",
                 "output_max_abs", "nan_fraction", "overflow_total", "nan_total"},
                {}};
  Table commute{"commutation",
                {"n", "mode", "normalize_filter", "relative_rms_shift_vs_divide"},
                {}};
  std::vector<Svg> svgs;
  TraceOptions options;
  options.verbose = true;
  const double fp16_max = Fp16().max_finite();

  for (std::size_t n : config.sizes) {
    for (const auto& mode : config.modes) {
      for (bool norm : toggle_values(config.normalize_filter)) {
        std::vector<Complex> shifted_out;
        std::vector<Complex> divided_out;
        for (bool shift : toggle_values(config.bfp)) {
          const MatchedFilterTrace tr = trace_matched_filter(n, mode, shift, norm, options);
          std::size_t overflow = 0;
          std::size_t nans = 0;
          double post_max = 0.0;
          double product_unq = 0.0;
          double inverse_unq = 0.0;
          std::vector<Bar> bars;
          for (std::size_t i = 0; i < tr.stages.size(); ++i) {
            const StageTrace& s = tr.stages[i];
            stages.add_row({I(n), S(mode.name()), B(shift), B(norm), I(i), S(s.stage_label),
                            D(s.max_abs), D(s.unquantized_max_abs), I(s.overflow_count),
                            I(s.nan_count), D(s.theoretical_bound)});
            overflow += s.overflow_count;
            nans += s.nan_count;
            post_max = std::max(post_max, s.max_abs);
            if (s.stage_label == "filter_product") product_unq = s.unquantized_max_abs;
            if (s.stage_label.rfind("inverse_fft", 0) == 0) {
              inverse_unq = std::max(inverse_unq, s.unquantized_max_abs);
            }
            const bool bad = s.overflow_count > 0 || s.nan_count > 0;
            bars.push_back({s.stage_label, bad ? kNaN : s.max_abs, bad});
            bars.push_back({s.stage_label + " exact", s.unquantized_max_abs,
                            s.unquantized_max_abs > fp16_max});
          }
          double out_max = 0.0;
          for (const auto& z : tr.output) {
            if (std::isfinite(z.real()) && std::isfinite(z.imag())) {
              out_max = std::max(out_max, std::abs(z));
            }
          }
          summary.add_row({I(n), S(mode.name()), B(shift), B(norm), D(tr.filter_peak),
                           D(out_max), D(tr.nan_fraction), I(overflow), I(nans)});
          (shift ? shifted_out : divided_out) = tr.output;

          const std::string tag = "n=" + std::to_string(n) + " shift=" + OnOff(shift) +
                                  " normalized=" + OnOff(norm);
          if (IsPure(mode) && !shift && !norm) {
            r.checks.push_back(AtLeast("pure_fp16 unshifted filter product exact max " + tag,
                                       product_unq, 1e6));
            r.checks.push_back(AtLeast("pure_fp16 unshifted inverse exact max " + tag,
                                       inverse_unq, 1e7));
            r.checks.push_back(AtLeast("pure_fp16 unshifted output NaN fraction " + tag,
                                       tr.nan_fraction, 0.99 + 1e-12));
          }
          if (IsPure(mode) && shift && norm) {
            r.checks.push_back(AtMost("pure_fp16 shifted overflow count " + tag,
                                      static_cast<double>(overflow), 0));
            r.checks.push_back(AtMost("pure_fp16 shifted NaN count " + tag,
                                      static_cast<double>(nans), 0));
            r.checks.push_back(AtMost("pure_fp16 shifted stage max " + tag, post_max,
                                      static_cast<double>(n) * (1.0 + std::ldexp(1.0, -9))));
          }
          std::ostringstream name;
          name << "trace_n" << n << "_" << mode.name() << "_shift_" << OnOff(shift)
               << "_norm_" << OnOff(norm) << ".svg";
          std::string file = name.str();
          std::replace(file.begin(), file.end(), ':', '-');
          svgs.push_back({file, bar_chart_svg(mode.name() + " matched filter, " + tag, bars,
                                              fp16_max, "fp16 max 65504")});
        }
        if (!shifted_out.empty() && !divided_out.empty()) {
          const double diff = RelativeRms(divided_out, shifted_out);
          commute.add_row({I(n), S(mode.name()), B(norm), D(diff)});
          if (IsFp32(mode)) {
            r.checks.push_back(AtMost("fp32 shift-before vs divide-after n=" +
                                          std::to_string(n) + " normalized=" + OnOff(norm),
                                      diff, 1e-6));
          }
        }
      }
    }
  }
  stages.sort_rows(5);
  summary.sort_rows(4);
  commute.sort_rows(3);
  r.tables = {std::move(stages), std::move(summary), std::move(commute)};
  Emit(config, r, svgs);
  return r;
}

RunResult run_sar(const ExperimentConfig& config) {
  validate_config(config);
  RunResult r;
  r.config_digest = experiment_digest(config);
  Table summary{"summary",
                {"n", "mode", "bfp", "normalize_filter", "nan_fraction", "end_to_end_sqnr_db",
                 "metrics_reported"},
                {}};
  Table targets{"targets",
                {"n", "mode", "bfp", "normalize_filter", "target", "peak_row", "peak_col",
                 "pslr_range_db", "pslr_azimuth_db", "islr_range_db", "islr_azimuth_db",
                 "snr_db", "range_res_bins", "azimuth_res_bins"},
                {}};
  Table delta{"delta_vs_fp32",
              {"n", "mode", "bfp", "normalize_filter", "target", "d_pslr_range_db",
               "d_pslr_azimuth_db", "d_islr_range_db", "d_islr_azimuth_db", "d_snr_db",
               "d_range_res_bins", "d_azimuth_res_bins"},
              {}};
  std::vector<Svg> svgs;
  const std::vector<std::size_t> sizes =
      config.full_scale ? std::vector<std::size_t>{config.full_scale} : config.sizes;

  for (std::size_t n : sizes) {
    const SarSceneConfig scene = default_scene(n);
    const RawData raw = simulate_scene(scene, config.seed);
    for (bool norm : toggle_values(config.normalize_filter)) {
      const auto fp32 = PrecisionMode::Fp32Mode();
      const ComplexMatrix reference = focus(raw, scene, fp32, true, norm);
      const QualityReport base = assess(reference, reference, scene, fp32, true);
      std::vector<QualityReport> fp32_reports;
      for (const auto& mode : config.modes) {
        for (bool bfp : toggle_values(config.bfp)) {
          const ComplexMatrix image = focus(raw, scene, mode, bfp, norm);
          const QualityReport q = assess(image, reference, scene, mode, bfp);
          summary.add_row({I(n), S(mode.name()), B(bfp), B(norm), D(q.nan_fraction),
                           D(q.end_to_end_sqnr_db), B(q.per_target.has_value())});
          const std::string tag = " n=" + std::to_string(n) + " bfp=" + OnOff(bfp) +
                                  " normalized=" + OnOff(norm);
          double worst_pslr = 0, worst_islr = 0, worst_snr = 0, worst_res = 0;
          if (q.per_target) {
            for (std::size_t i = 0; i < q.per_target->size(); ++i) {
              const TargetQuality& t = (*q.per_target)[i];
              const TargetQuality& b = (*base.per_target)[i];
              targets.add_row({I(n), S(mode.name()), B(bfp), B(norm), I(t.index),
                               D(t.peak.row), D(t.peak.col), D(t.pslr_range_db),
                               D(t.pslr_azimuth_db), D(t.islr_range_db), D(t.islr_azimuth_db),
                               D(t.snr_db), D(t.range_res_bins), D(t.azimuth_res_bins)});
              const double d[7] = {t.pslr_range_db - b.pslr_range_db,
                                   t.pslr_azimuth_db - b.pslr_azimuth_db,
                                   t.islr_range_db - b.islr_range_db,
                                   t.islr_azimuth_db - b.islr_azimuth_db,
                                   t.snr_db - b.snr_db,
                                   t.range_res_bins - b.range_res_bins,
                                   t.azimuth_res_bins - b.azimuth_res_bins};
              delta.add_row({I(n), S(mode.name()), B(bfp), B(norm), I(t.index), D(d[0]),
                             D(d[1]), D(d[2]), D(d[3]), D(d[4]), D(d[5]), D(d[6])});
              // NaN propagates through std::max only from the left
              auto worst = [](double w, double x) { return std::isnan(x) ? x : std::max(w, std::abs(x)); };
              worst_pslr = worst(worst(worst_pslr, d[0]), d[1]);
              worst_islr = worst(worst(worst_islr, d[2]), d[3]);
              worst_snr = worst(worst_snr, d[4]);
              worst_res = worst(worst(worst_res, d[5]), d[6]);
            }
          }
          if (mode.is_fp16_family() && bfp) {
            if (!q.per_target) {
              r.checks.push_back({mode.name() + " metrics reported" + tag, false,
                                  "nan_fraction " + Fmt(q.nan_fraction)});
            } else {
              r.checks.push_back(AtMost(mode.name() + " max |dPSLR| dB" + tag, worst_pslr, 0.1));
              r.checks.push_back(AtMost(mode.name() + " max |dISLR| dB" + tag, worst_islr, 0.2));
              r.checks.push_back(AtMost(mode.name() + " max |dSNR| dB" + tag, worst_snr, 0.1));
              r.checks.push_back(
                  AtMost(mode.name() + " max |dresolution| bins" + tag, worst_res, 0.02));
            }
          }
          if (IsPure(mode) && bfp) {
            r.checks.push_back(
                Within("pure_fp16 end-to-end SQNR dB" + tag, q.end_to_end_sqnr_db, 40.0, 45.0));
          }
          if (IsPure(mode) && !bfp) {
            r.checks.push_back(
                AtLeast("pure_fp16 NaN fraction" + tag, q.nan_fraction, 0.99 + 1e-12));
            r.checks.push_back({"pure_fp16 metrics suppressed" + tag, !q.per_target.has_value(),
                                q.per_target ? "metrics present" : "metrics absent"});
          }
          if (IsFp32(mode)) fp32_reports.push_back(q);

          std::ostringstream name;
          name << "sar_n" << n << "_" << mode.name() << "_bfp_" << OnOff(bfp);
          if (!norm) name << "_norm_off";
          name << ".svg";
          std::string file = name.str();
          std::replace(file.begin(), file.end(), ':', '-');
          svgs.push_back({file, heatmap_svg(mode.name() + tag, image)});
        }
      }
      if (fp32_reports.size() == 2) {
        const auto& a = fp32_reports[0];
        const auto& b = fp32_reports[1];
        bool same = a.nan_fraction == b.nan_fraction &&
                    a.per_target.has_value() == b.per_target.has_value();
        if (same && a.per_target) {
          for (std::size_t i = 0; i < a.per_target->size(); ++i) {
            const auto& x = (*a.per_target)[i];
            const auto& y = (*b.per_target)[i];
            same = same && x.pslr_range_db == y.pslr_range_db &&
                   x.pslr_azimuth_db == y.pslr_azimuth_db &&
                   x.islr_range_db == y.islr_range_db &&
                   x.islr_azimuth_db == y.islr_azimuth_db && x.snr_db == y.snr_db &&
                   x.range_res_bins == y.range_res_bins &&
                   x.azimuth_res_bins == y.azimuth_res_bins;
          }
        }
        r.checks.push_back({"fp32 metrics identical with and without bfp n=" +
                                std::to_string(n) + " normalized=" + OnOff(norm),
                            same, same ? "identical" : "differ"});
      }
    }
  }
  summary.sort_rows(4);
  targets.sort_rows(5);
  delta.sort_rows(5);
  r.tables = {std::move(summary), std::move(targets), std::move(delta)};
  Emit(config, r, svgs);
  return r;
}

RunResult run_format_sweep(const ExperimentConfig& config) {
  validate_config(config);
  RunResult r;
  r.config_digest = experiment_digest(config);
  Table t{"sweep",
          {"n", "format", "trials", "mean_db", "median_db", "min_db", "max_db", "nan_trials"},
          {}};
  std::vector<PrecisionMode> modes;
  for (const auto& m : config.modes) {
    modes.push_back(m.tag == ModeTag::kStorageOnly ? m : PrecisionMode::StorageOnly(m.storage));
  }
  for (std::size_t n : config.sizes) {
    const auto stats = fft_sqnr_cells(n, modes, config.trials, config.seed, config.radix);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto& s = stats[m];
      const std::string fmt(modes[m].storage.name());
      t.add_row({I(n), S(fmt), I(s.trials), D(s.mean_db), D(s.median_db), D(s.min_db),
                 D(s.max_db), I(s.nan_trials)});
      if (n != 1024 && n != 4096) continue;
      const std::string name = fmt + " storage-only mean SQNR n=" + std::to_string(n);
      if (fmt == "fp16") r.checks.push_back(Within(name, s.mean_db, 60.0, 65.0));
      if (fmt == "e4m3") r.checks.push_back(Within(name, s.mean_db, 17.0, 22.0));
      if (fmt == "e5m2") r.checks.push_back(Within(name, s.mean_db, 11.0, 16.0));
    }
  }
  t.sort_rows(2);
  r.tables.push_back(std::move(t));
  Emit(config, r, {});
  return r;
}

RunResult run_bench(const ExperimentConfig& config) {
  validate_config(config);
  RunResult r;
  r.config_digest = experiment_digest(config);
  Table t{"bench",
          {"n", "mode", "radix", "batch", "runs", "threads", "median_parallel_s",
           "median_serial_s", "gflops_parallel", "gflops_serial", "time_vs_fp32", "note"},
          {}};
  using Clock = std::chrono::steady_clock;
  for (std::size_t n : config.sizes) {
    ComplexMatrix input(config.batch, n, Layout::kRangeMajor);
    for (std::size_t b = 0; b < config.batch; ++b) {
      const auto x = random_input(n, config.seed, b);
      std::copy(x.begin(), x.end(), input.row(b).begin());
    }
    const double flops = 5.0 * static_cast<double>(n) * std::log2(static_cast<double>(n)) *
                         static_cast<double>(config.batch);
    double fp32_time = kNaN;
    std::vector<std::pair<PrecisionMode, std::pair<double, double>>> cells;
    for (const auto& mode : config.modes) {
      const FftPlan plan(n, config.radix, mode);
      auto time_it = [&](Execution exec) {
        std::vector<double> seconds;
        for (int run = 0; run < config.bench_runs; ++run) {
          ComplexMatrix m = input;
          const auto t0 = Clock::now();
          fft_rows(plan, m, exec);
          seconds.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
        }
        return Median(seconds);
      };
      const double par = time_it(Execution::kParallel);
      const double ser = time_it(Execution::kSerial);
      if (IsFp32(mode)) fp32_time = par;
      cells.push_back({mode, {par, ser}});
    }
    for (const auto& [mode, times] : cells) {
      const auto [par, ser] = times;
      t.add_row({I(n), S(mode.name()), I(static_cast<std::size_t>(config.radix)),
                 I(config.batch), I(static_cast<std::size_t>(config.bench_runs)),
                 I(static_cast<std::size_t>(max_threads())), D(par), D(ser),
                 D(flops / par * 1e-9), D(flops / ser * 1e-9), D(par / fp32_time),
                 S("host CPU software emulation; not comparable to GPU throughput")});
    }
  }
  t.sort_rows(2);
  r.tables.push_back(std::move(t));
  Emit(config, r, {});
  return r;
}

RunResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::kFftSqnr: return run_fft_sqnr(config);
    case Experiment::kFftTrace: return run_fft_trace(config);
    case Experiment::kSar: return run_sar(config);
    case Experiment::kFormatSweep: return run_format_sweep(config);
    case Experiment::kBench: return run_bench(config);
  }
  throw std::logic_error("unhandled experiment");
}

}  // namespace bfpfft

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

// bfpfft <experiment> [options]: runs one experiment and writes its tables.

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfpfft/batch.hpp"
#include "bfpfft/harness.hpp"

namespace {

std::vector<std::string> SplitList(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream in(item);
    std::string part;
    while (std::getline(in, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-precision FFT and SAR experiments"};
  app.set_version_flag("--version", bfpfft::artifact_version());

  std::string experiment;
  std::vector<std::string> sizes;
  std::vector<std::string> modes;
  int trials = 0;
  std::uint64_t seed = 1;
  std::string bfp;
  std::string normalize;
  std::string emit = "csv,json";
  std::string out = "results";
  bool check = false;
  std::size_t full_scale = 0;
  int radix = 2;
  std::size_t batch = 0;
  int runs = 0;

  app.add_option("experiment", experiment, "fft-sqnr | fft-trace | sar | format-sweep | bench")
      ->required();
  app.add_option("--sizes", sizes, "transform / scene sizes, comma or space separated");
  app.add_option("--modes", modes,
                 "fp32, pure_fp16, fp16_storage, fp16_mul_fp32_acc or storage:<format>");
  app.add_option("--trials", trials, "random inputs per cell")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "base seed");
  app.add_option("--bfp", bfp, "block shift: on | off | both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  app.add_option("--normalize-filter", normalize, "unit-peak matched filters: on | off | both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  app.add_option("--emit", emit, "comma-separated subset of csv,json,svg");
  app.add_option("--out", out, "output directory");
  app.add_flag("--check", check, "evaluate acceptance bounds; nonzero exit on a miss");
  app.add_option("--full-scale", full_scale, "SAR scene size override, e.g. 4096");
  app.add_option("--radix", radix, "Stockham radix: 2 or 8");
  app.add_option("--batch", batch, "rows per batched transform (bench)");
  app.add_option("--runs", runs, "timed repetitions per cell (bench)");

  CLI11_PARSE(app, argc, argv);

  try {
    bfpfft::configure_threads_from_env();
    bfpfft::ExperimentConfig config =
        bfpfft::default_config(bfpfft::parse_experiment(experiment));
    if (!sizes.empty()) {
      config.sizes.clear();
      for (const auto& s : SplitList(sizes)) config.sizes.push_back(std::stoull(s));
    }
    if (!modes.empty()) {
      config.modes.clear();
      for (const auto& m : SplitList(modes)) config.modes.push_back(bfpfft::parse_mode(m));
    }
    if (trials > 0) config.trials = trials;
    config.seed = seed;
    if (!bfp.empty()) config.bfp = bfpfft::parse_toggle(bfp);
    if (!normalize.empty()) config.normalize_filter = bfpfft::parse_toggle(normalize);
    config.emit = bfpfft::parse_emit(emit);
    config.output_dir = out;
    config.check = check;
    config.full_scale = full_scale;
    config.radix = radix;
    if (batch > 0) config.batch = batch;
    if (runs > 0) config.bench_runs = runs;

    const bfpfft::RunResult result = bfpfft::run_experiment(config);
    for (const auto& path : result.written) std::cout << "wrote " << path.string() << "\n";
    if (check) {
      for (const auto& c : result.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      }
      if (result.checks.empty()) std::cout << "no acceptance bounds apply to this run\n";
      return result.checks_passed() ? 0 : 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "bfpfft: " << e.what() << "\n";
    return 2;
  }
}

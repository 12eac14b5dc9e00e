// Copyright 2026 The PPRL-CBF Authors
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

#ifndef PPRL_EXPERIMENT_CONFIG_H_
#define PPRL_EXPERIMENT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pprl/datagen/corruption.h"
#include "pprl/protocol/config.h"

namespace pprl {

// Synthetic input used when no dataset files are given.
struct DatagenSpec {
  std::size_t parties = 3;
  std::size_t records = 1000;
  double overlap = 0.5;
  CorruptionSpec corruption;
  std::uint64_t seed = 1;
  // Base population size; 0 means exactly what `generate` needs.
  std::size_t population = 0;
};

struct ExperimentConfig {
  // One CSV file per party, in party order. Empty: use `datagen`.
  std::vector<std::string> datasets;
  DatagenSpec datagen;
  LinkageConfig linkage;
  // Run the BF and CBF frequency attacks and report disclosure risk.
  bool privacy = false;
  // Optional rule files replacing the built-in corruption tables.
  std::string ocr_table;
  std::string phonetic_table;
  std::string output;
};

// Applies one `key = value` setting. Throws ConfigError for unknown keys or
// malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Reads `key = value` lines; '#' starts a comment. Errors carry the line.
ExperimentConfig parse_experiment_config(std::istream& in,
                                         ExperimentConfig base = ExperimentConfig{});

// Applies `key=value` overrides in order.
void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides);

// Every setting with its resolved value, each key exactly once, in a fixed
// order. Feeding the list back through apply_setting reproduces the config.
std::vector<std::pair<std::string, std::string>> resolved_settings(
    const ExperimentConfig& config);

// Loads the configured OCR/phonetic rule files over the built-in tables.
CorruptionTables corruption_tables(const ExperimentConfig& config);

// Grid over the experiment axes. Empty axes keep the base value.
struct SweepAxes {
  std::vector<std::size_t> parties;
  std::vector<std::size_t> records;
  std::vector<Pattern> patterns;
  std::vector<Scheme> schemes;
  std::vector<double> corruption_rates;
};

// Expands the grid into independent runs. Runs sharing (p, n, corruption
// rate) share a generated dataset, so pattern and scheme comparisons see the
// same records; datagen seeds are derived from the base seed and those axes.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& base,
                                           const SweepAxes& axes);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace pprl

#endif  // PPRL_EXPERIMENT_CONFIG_H_

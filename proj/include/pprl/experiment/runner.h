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

#ifndef PPRL_EXPERIMENT_RUNNER_H_
#define PPRL_EXPERIMENT_RUNNER_H_

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "pprl/common/error.h"
#include "pprl/datagen/generator.h"
#include "pprl/experiment/config.h"
#include "pprl/experiment/report.h"
#include "pprl/protocol/linkage.h"

namespace pprl {

// A failure inside one stage of an experiment ("ingest", "datagen",
// "linkage", "evaluation", "privacy").
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct IngestResult {
  std::vector<Record> records;
  // Source line of each record.
  std::vector<std::size_t> lines;
  // One message per repeated entity id within the file.
  std::vector<std::string> duplicates;
};

// Reads a party CSV; QID values are normalized as the encoder would.
// Throws ParseError (with line) on missing columns or malformed rows.
IngestResult ingest_csv(std::istream& in, const std::string& name);
IngestResult ingest_csv(const std::string& path);

MultiPartyDataset generate_dataset(const ExperimentConfig& config);

struct ExperimentInput {
  std::vector<PartyDatabase> parties;
  std::vector<std::string> warnings;
};

// Loads the configured CSV files, or generates data when none are given.
ExperimentInput load_input(const ExperimentConfig& config);

// Blocking, encoding, the configured pattern, then quality and (when
// enabled) privacy evaluation. Errors are rethrown as StageError.
// `outcome`, when given, receives the raw protocol outcome.
LinkageReport run_experiment(const ExperimentConfig& config,
                             LinkageOutcome* outcome = nullptr);
LinkageReport run_experiment(const ExperimentConfig& config, const ExperimentInput& input,
                             LinkageOutcome* outcome = nullptr);

// Rebuilds the configuration embedded in a report.
ExperimentConfig config_from_report(const LinkageReport& report);

}  // namespace pprl

#endif  // PPRL_EXPERIMENT_RUNNER_H_

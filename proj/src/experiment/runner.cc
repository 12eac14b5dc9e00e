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

#include "pprl/experiment/runner.h"

#include <chrono>
#include <fstream>
#include <map>
#include <set>

#include "pprl/blocking/blocks.h"
#include "pprl/datagen/csv.h"
#include "pprl/datagen/population.h"
#include "pprl/encoding/clk.h"
#include "pprl/encoding/text.h"
#include "pprl/evaluation/attack.h"
#include "pprl/evaluation/quality.h"
#include "pprl/protocol/complexity.h"

namespace pprl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
auto in_stage(const std::string& stage, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

// Closed-form count when every common block holds the same number of records
// at every party.
void fill_closed_form(LinkageReport& report, std::span<const PartyDatabase> parties,
                      const LinkageConfig& config) {
  std::vector<BlockMap> maps;
  for (const auto& db : parties) maps.push_back(build_blocks(db.records, config.blocking_attrs));
  if (maps.size() < 2) {
    report.closed_form_note = "fewer than two parties";
    return;
  }
  const auto common = intersect_blocks(maps);
  if (common.empty()) {
    report.closed_form_note = "no common blocks";
    return;
  }
  const std::size_t m = maps[0].records(common[0]).size();
  for (const auto& key : common) {
    for (const auto& map : maps) {
      if (map.records(key).size() != m) {
        report.closed_form_note = "blocks are not uniform; formula needs n/b records per block";
        return;
      }
    }
  }
  const std::uint64_t b = common.size();
  const std::uint64_t p = parties.size();
  const std::uint64_t r = config.min_ring_size;
  try {
    report.closed_form = count_candidates(config.pattern, b * m, b, p, r);
    report.closed_form_note =
        "uniform blocks b=" + std::to_string(b) + ", m=" + std::to_string(m) +
        (config.pattern == Pattern::kNai
             ? "; compare with observed_classified"
             : "; compare with observed_partial_sets (worst case, nothing pruned)");
  } catch (const InvalidArgument& e) {
    report.closed_form_note = e.what();
  }
}

std::set<std::string> entities_at_all_parties(std::span<const PartyDatabase> parties) {
  std::set<std::string> common;
  bool first = true;
  for (const auto& db : parties) {
    std::set<std::string> ids;
    for (const auto& r : db.records) ids.insert(r.entity_id);
    if (first) {
      common = std::move(ids);
      first = false;
    } else {
      std::set<std::string> keep;
      for (const auto& id : common) {
        if (ids.count(id)) keep.insert(id);
      }
      common = std::move(keep);
    }
  }
  return common;
}

}  // namespace

IngestResult ingest_csv(std::istream& in, const std::string& name) {
  IngestResult out;
  std::map<std::string, std::size_t> first_line;
  for (auto& row : read_records_csv(in)) {
    for (auto& value : row.record.qid_values) value = normalize_value(value);
    const auto [it, fresh] = first_line.emplace(row.record.entity_id, row.line);
    if (!fresh) {
      out.duplicates.push_back(name + ": duplicate entity_id '" + row.record.entity_id +
                               "' at lines " + std::to_string(it->second) + " and " +
                               std::to_string(row.line));
    }
    out.lines.push_back(row.line);
    out.records.push_back(std::move(row.record));
  }
  return out;
}

IngestResult ingest_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return ingest_csv(in, path);
}

MultiPartyDataset generate_dataset(const ExperimentConfig& config) {
  const DatagenSpec& g = config.datagen;
  std::size_t population = g.population;
  if (population == 0) population = required_population(g.parties, g.records, g.overlap);
  const auto base = sample_population(population, g.seed);
  return generate(base, g.parties, g.records, g.overlap, g.corruption, g.seed,
                  corruption_tables(config));
}

ExperimentInput load_input(const ExperimentConfig& config) {
  ExperimentInput input;
  if (config.datasets.empty()) {
    const auto ds = in_stage("datagen", [&] { return generate_dataset(config); });
    for (std::size_t j = 0; j < ds.parties.size(); ++j) {
      input.parties.push_back({static_cast<PartyId>(j + 1), ds.parties[j]});
    }
    return input;
  }
  in_stage("ingest", [&] {
    for (std::size_t j = 0; j < config.datasets.size(); ++j) {
      auto result = ingest_csv(config.datasets[j]);
      input.parties.push_back({static_cast<PartyId>(j + 1), std::move(result.records)});
      for (auto& d : result.duplicates) input.warnings.push_back(std::move(d));
    }
    return 0;
  });
  return input;
}

LinkageReport run_experiment(const ExperimentConfig& config, LinkageOutcome* outcome) {
  const auto start = Clock::now();
  const ExperimentInput input = load_input(config);
  const double load_seconds = seconds_since(start);
  LinkageReport report = run_experiment(config, input, outcome);
  report.timings[config.datasets.empty() ? "datagen" : "ingest"] = load_seconds;
  return report;
}

LinkageReport run_experiment(const ExperimentConfig& config, const ExperimentInput& input,
                             LinkageOutcome* outcome_out) {
  LinkageReport report;
  report.config = resolved_settings(config);
  report.warnings = input.warnings;
  const auto& parties = input.parties;
  for (const auto& db : parties) report.party_sizes.push_back(db.records.size());

  LinkageConfig linkage = config.linkage;
  linkage.capture_lu_view = linkage.capture_lu_view || config.privacy;
  LinkageOutcome outcome =
      in_stage("linkage", [&] { return run_linkage(parties, linkage); });

  report.common_blocks = outcome.common_blocks;
  report.rings = outcome.plan.rings;
  report.observed_partial_sets = outcome.counts.partial_sets;
  report.observed_classified = outcome.counts.classified;
  report.stages = outcome.counts.stages;
  report.timings = outcome.timings;

  const auto& ledger = outcome.traffic;
  report.traffic.push_back({"total", ledger.total()});
  for (const auto& [kind, c] : ledger.by_kind()) {
    report.traffic.push_back({"kind:" + std::string(message_kind_name(kind)), c});
  }
  for (const auto& [step, c] : ledger.by_step()) report.traffic.push_back({"step:" + step, c});
  for (const auto& [key, c] : ledger.by_channel()) {
    report.traffic.push_back({"channel:" + party_name(key.from) + "->" + party_name(key.to), c});
  }

  const auto eval_start = Clock::now();
  in_stage("evaluation", [&] {
    fill_closed_form(report, parties, linkage);
    std::vector<std::vector<std::string>> classified;
    for (const auto& m : outcome.matches) {
      ReportMatch rm{m.members, {}, m.similarity};
      for (const auto& ref : m.members) {
        rm.entity_ids.push_back(parties[ref.party - 1].records[ref.record].entity_id);
      }
      classified.push_back(rm.entity_ids);
      report.matches.push_back(std::move(rm));
    }
    const ConfusionCounts counts = evaluate_matches(classified, entities_at_all_parties(parties));
    if (counts.true_positives + counts.false_positives + counts.false_negatives > 0) {
      report.quality = counts;
    }
    return 0;
  });
  report.timings["evaluation"] = seconds_since(eval_start);

  if (config.privacy) {
    const auto privacy_start = Clock::now();
    in_stage("privacy", [&] {
      std::vector<BloomFilter> d;
      for (const auto& db : parties) {
        for (const auto& r : db.records) d.push_back(encode_clk(r, linkage.qid_attrs, linkage.params));
      }
      std::vector<CountingBloomFilter> observed;
      for (const auto& o : outcome.lu_view) observed.push_back(o.cbf);
      const AttackResult bf = bf_attack(d, d);
      const AttackResult cbf = cbf_attack(observed, d);
      report.privacy = PrivacyMetrics{bf.dr_mean,         bf.dr_marketer,
                                      bf.probabilities.size(), bf.unmatched.size(),
                                      cbf.dr_mean,        cbf.dr_marketer,
                                      cbf.probabilities.size(), cbf.unmatched.size()};
      return 0;
    });
    report.timings["privacy"] = seconds_since(privacy_start);
  }
  if (outcome_out) *outcome_out = std::move(outcome);
  return report;
}

ExperimentConfig config_from_report(const LinkageReport& report) {
  ExperimentConfig config;
  for (const auto& [key, value] : report.config) apply_setting(config, key, value);
  return config;
}

}  // namespace pprl

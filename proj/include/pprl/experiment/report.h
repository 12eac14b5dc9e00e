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

#ifndef PPRL_EXPERIMENT_REPORT_H_
#define PPRL_EXPERIMENT_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pprl/common/types.h"
#include "pprl/evaluation/quality.h"
#include "pprl/protocol/linkage.h"
#include "pprl/simnet/network.h"

namespace pprl {

inline constexpr const char* kReportSchema = "pprl-cbf/1";

struct ReportMatch {
  std::vector<RecordRef> members;
  std::vector<std::string> entity_ids;
  double similarity = 0.0;

  friend bool operator==(const ReportMatch&, const ReportMatch&) = default;
};

struct ReportTraffic {
  // "total", "kind:<name>", "step:<name>" or "channel:<from>-><to>".
  std::string scope;
  TrafficCounters counters;

  friend bool operator==(const ReportTraffic&, const ReportTraffic&) = default;
};

struct PrivacyMetrics {
  double bf_dr_mean = 0.0;
  double bf_dr_marketer = 0.0;
  std::uint64_t bf_items = 0;
  std::uint64_t bf_unmatched = 0;
  double cbf_dr_mean = 0.0;
  double cbf_dr_marketer = 0.0;
  std::uint64_t cbf_items = 0;
  std::uint64_t cbf_unmatched = 0;

  friend bool operator==(const PrivacyMetrics&, const PrivacyMetrics&) = default;
};

struct LinkageReport {
  std::string schema = kReportSchema;
  std::vector<std::pair<std::string, std::string>> config;

  std::vector<std::size_t> party_sizes;
  std::size_t common_blocks = 0;
  std::vector<std::vector<PartyId>> rings;

  // Closed-form worst-case count next to the observed counts. Absent when
  // the blocks are not uniform enough for the formula; `closed_form_note`
  // says why.
  std::optional<std::uint64_t> closed_form;
  std::string closed_form_note;
  std::uint64_t observed_partial_sets = 0;
  std::uint64_t observed_classified = 0;
  std::vector<StageCounts> stages;

  std::vector<ReportTraffic> traffic;
  // Seconds; not reproducible between runs.
  std::map<std::string, double> timings;

  std::optional<ConfusionCounts> quality;
  std::optional<PrivacyMetrics> privacy;
  std::vector<std::string> warnings;
  std::vector<ReportMatch> matches;
};

// Everything except timings.
bool same_reproducible_content(const LinkageReport& a, const LinkageReport& b);

// Sectioned `key = value` text with tab-separated table rows.
void write_report(std::ostream& out, const LinkageReport& report);
// Throws ParseError on malformed input or an unknown schema.
LinkageReport read_report(std::istream& in);

// File wrappers. Throw Error on I/O failure.
void emit_report(const LinkageReport& report, const std::string& path);
LinkageReport parse_report(const std::string& path);

}  // namespace pprl

#endif  // PPRL_EXPERIMENT_REPORT_H_

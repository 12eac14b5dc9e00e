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

#ifndef PPRL_PROTOCOL_LINKAGE_H_
#define PPRL_PROTOCOL_LINKAGE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pprl/common/types.h"
#include "pprl/encoding/bloom_filter.h"
#include "pprl/protocol/config.h"
#include "pprl/protocol/rings.h"
#include "pprl/simnet/network.h"

namespace pprl {

// One database owner. Ids must be distinct and non-zero (0 is the LU).
struct PartyDatabase {
  PartyId id = 0;
  std::vector<Record> records;
};

struct MatchResult {
  // One record per party, ordered by party id.
  std::vector<RecordRef> members;
  double similarity = 0.0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct StageCounts {
  std::string stage;
  // Distinct partial record sets formed while extending candidates.
  std::uint64_t partial_sets = 0;
  // Sets whose CBF was unmasked and classified.
  std::uint64_t classified = 0;
  std::uint64_t matches = 0;

  friend bool operator==(const StageCounts&, const StageCounts&) = default;
};

struct CandidateCounts {
  std::uint64_t partial_sets = 0;
  std::uint64_t classified = 0;
  std::vector<StageCounts> stages;

  friend bool operator==(const CandidateCounts&, const CandidateCounts&) = default;
};

// A CBF as seen by the party that unmasked it.
struct ObservedCbf {
  PartyId observer = 0;
  std::string stage;
  std::vector<RecordRef> members;
  CountingBloomFilter cbf;
};

struct LinkageOutcome {
  std::vector<MatchResult> matches;
  CandidateCounts counts;
  RingPlan plan;
  std::size_t common_blocks = 0;
  TrafficLedger traffic;
  // Seconds per phase; not reproducible.
  std::map<std::string, double> timings;
  std::vector<ObservedCbf> lu_view;
  std::vector<TraceEntry> trace;
  std::map<PartyId, std::vector<CandidateBatch>> party_views;
};

// Runs blocking, encoding and the configured communication pattern over the
// simulated network.
LinkageOutcome run_linkage(std::span<const PartyDatabase> parties,
                           const LinkageConfig& config);

std::vector<MatchResult> run_nai(std::span<const PartyDatabase> parties,
                                 LinkageConfig config);
std::vector<MatchResult> run_seq(std::span<const PartyDatabase> parties,
                                 LinkageConfig config);
std::vector<MatchResult> run_rbr(std::span<const PartyDatabase> parties,
                                 LinkageConfig config);

// Seed from which `owner` derives the masks of the rounds it starts.
std::uint64_t mask_seed_for(std::uint64_t run_seed, PartyId owner);
// Salt key of `party` for a run (never zero).
std::uint64_t salt_key_for(std::uint64_t run_seed, PartyId party);
// Phase-1 encoding of ring `ring` when per-ring encoding is on.
BfParams ring_params(const BfParams& base, std::uint64_t run_seed,
                     std::size_t ring);

}  // namespace pprl

#endif  // PPRL_PROTOCOL_LINKAGE_H_

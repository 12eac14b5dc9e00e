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

#ifndef PPRL_PROTOCOL_CONFIG_H_
#define PPRL_PROTOCOL_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "pprl/encoding/bloom_filter.h"
#include "pprl/securesum/masked_vector.h"
#include "pprl/simnet/scheduler.h"
#include "pprl/simnet/wire.h"

namespace pprl {

enum class Pattern { kNai, kSeq, kRbr };

std::string_view pattern_name(Pattern pattern);
Pattern parse_pattern(std::string_view name);

// Which contributor count goes into the Dice numerator during SEQ rings.
enum class SeqDiceDenominator { kAccumulated, kGlobalP };

std::string_view seq_dice_denominator_name(SeqDiceDenominator d);
SeqDiceDenominator parse_seq_dice_denominator(std::string_view name);

struct LinkageConfig {
  BfParams params;
  double threshold = 0.8;
  Pattern pattern = Pattern::kSeq;
  Scheme scheme = Scheme::kSss;
  std::size_t min_ring_size = 2;
  std::vector<std::size_t> blocking_attrs = {0, 1};
  std::vector<std::size_t> qid_attrs = {0, 1, 2, 3};
  std::uint64_t seed = 1;
  SeqDiceDenominator seq_dice_denominator = SeqDiceDenominator::kAccumulated;
  // RBR only: each ring encodes its phase-1 filters with its own hash seeds.
  bool per_ring_encoding = false;
  std::size_t paillier_bits = 512;
  WireFormat wire;
  SchedulePolicy schedule;
  // Keep every CBF the unmasking party sees, for the disclosure-risk attack.
  bool capture_lu_view = false;
  // Record the masked batches each party receives.
  bool capture_party_views = false;
  bool trace = false;

  // Throws ConfigError on invalid combinations.
  void validate() const;
};

}  // namespace pprl

#endif  // PPRL_PROTOCOL_CONFIG_H_

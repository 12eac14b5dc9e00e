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

#include "pprl/protocol/config.h"

#include <string>

#include "pprl/common/error.h"

namespace pprl {

std::string_view pattern_name(Pattern pattern) {
  switch (pattern) {
    case Pattern::kNai: return "NAI";
    case Pattern::kSeq: return "SEQ";
    case Pattern::kRbr: return "RBR";
  }
  return "unknown";
}

Pattern parse_pattern(std::string_view name) {
  if (name == "NAI" || name == "nai") return Pattern::kNai;
  if (name == "SEQ" || name == "seq") return Pattern::kSeq;
  if (name == "RBR" || name == "rbr") return Pattern::kRbr;
  throw ConfigError("unknown pattern: " + std::string(name));
}

std::string_view seq_dice_denominator_name(SeqDiceDenominator d) {
  return d == SeqDiceDenominator::kAccumulated ? "accumulated" : "global_p";
}

SeqDiceDenominator parse_seq_dice_denominator(std::string_view name) {
  if (name == "accumulated") return SeqDiceDenominator::kAccumulated;
  if (name == "global_p") return SeqDiceDenominator::kGlobalP;
  throw ConfigError("unknown seq_dice_denominator: " + std::string(name));
}

void LinkageConfig::validate() const {
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  if (qid_attrs.empty()) throw ConfigError("at least one QID attribute is required");
  if (pattern == Pattern::kSeq && min_ring_size < 2) {
    throw ConfigError("SEQ needs a minimum ring size of at least 2");
  }
  if (pattern == Pattern::kRbr && min_ring_size < 3) {
    throw ConfigError("RBR needs a minimum ring size of at least 3");
  }
  if (per_ring_encoding && pattern != Pattern::kRbr) {
    throw ConfigError("per-ring encoding is only defined for RBR");
  }
  if (scheme == Scheme::kHss && paillier_bits < 16) {
    throw ConfigError("Paillier modulus must have at least 16 bits");
  }
}

}  // namespace pprl

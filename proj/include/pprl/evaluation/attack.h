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

#ifndef PPRL_EVALUATION_ATTACK_H_
#define PPRL_EVALUATION_ATTACK_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pprl/encoding/bloom_filter.h"

namespace pprl {

struct AttackResult {
  // Probability of suspicion per attacked item, in input order.
  std::vector<double> probabilities;
  // Number of consistent global filters per item.
  std::vector<std::size_t> candidates;
  // Items with no consistent global filter; their probability is 0.
  std::vector<std::size_t> unmatched;
  double dr_mean = 0.0;
  double dr_marketer = 0.0;
};

// Frequency attack on exchanged Bloom filters: n_g counts the global
// filters with an identical bit pattern and Pr = 1 / n_g. Throws
// IncompatibleEncoding on differing lengths.
AttackResult bf_attack(std::span<const BloomFilter> masked_db,
                       std::span<const BloomFilter> global_db);

// Attack on unmasked counting Bloom filters seen by the linkage unit. A global
// filter g is consistent with c when g is 0 wherever c is 0 and 1 wherever c
// equals its contributor count x. Pr = 1 / max(n_g, x). Throws
// InvalidArgument for a count outside [0, x] (still masked) and
// IncompatibleEncoding on differing lengths.
AttackResult cbf_attack(std::span<const CountingBloomFilter> observed,
                        std::span<const BloomFilter> global_db);

// dr_mean is the average probability; dr_marketer the fraction equal to 1.
void summarize(AttackResult& result);

}  // namespace pprl

#endif  // PPRL_EVALUATION_ATTACK_H_

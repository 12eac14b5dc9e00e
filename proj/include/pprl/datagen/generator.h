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

#ifndef PPRL_DATAGEN_GENERATOR_H_
#define PPRL_DATAGEN_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "pprl/datagen/corruption.h"
#include "pprl/encoding/bloom_filter.h"

namespace pprl {

struct CorruptedCopy {
  std::string entity_id;
  std::size_t party = 0;
  std::size_t modifications = 0;
};

struct MultiPartyDataset {
  std::vector<std::vector<Record>> parties;
  // Entities held by every party.
  std::set<std::string> ground_truth;
  // Overlap entities selected for corruption.
  std::set<std::string> corrupted_entities;
  // One entry per party copy that received modifications.
  std::vector<CorruptedCopy> corrupted_copies;
};

// Builds `p` parties of `n` records each. round(overlap * n) base records go
// to every party; the rest of each party is drawn from disjoint slices of the
// base population. Each overlap entity is selected for corruption with
// probability spec.rate; a selected entity has its copies at a uniformly
// random nonempty proper subset of parties corrupted (every party when p = 1).
// Party record order is shuffled. Throws InvalidArgument if `base` is too
// small or the arguments are out of range.
MultiPartyDataset generate(const std::vector<Record>& base, std::size_t p, std::size_t n,
                           double overlap, const CorruptionSpec& spec, std::uint64_t seed,
                           const CorruptionTables& tables = CorruptionTables::builtin());

// Number of base records `generate` needs.
std::size_t required_population(std::size_t p, std::size_t n, double overlap);

}  // namespace pprl

#endif  // PPRL_DATAGEN_GENERATOR_H_

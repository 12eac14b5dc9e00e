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

#ifndef PPRL_PROTOCOL_RINGS_H_
#define PPRL_PROTOCOL_RINGS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pprl/common/types.h"

namespace pprl {

struct RingPlan {
  std::vector<std::vector<PartyId>> rings;
  std::size_t min_ring_size = 0;

  std::size_t party_count() const;
  // Index of the ring holding `party`, if any.
  std::optional<std::size_t> ring_of(PartyId party) const;
  std::vector<std::size_t> ring_sizes() const;
};

// Sorts parties by dataset size (ties by id) and cuts them into floor(p/r_m)
// consecutive rings of r_m parties; the last ring absorbs the remainder.
RingPlan group_rings(std::span<const std::pair<PartyId, std::size_t>> party_sizes,
                     std::size_t min_ring_size);

}  // namespace pprl

#endif  // PPRL_PROTOCOL_RINGS_H_

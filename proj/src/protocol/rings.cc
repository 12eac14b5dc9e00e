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

#include "pprl/protocol/rings.h"

#include <algorithm>
#include <set>
#include <string>

#include "pprl/common/error.h"

namespace pprl {

std::size_t RingPlan::party_count() const {
  std::size_t n = 0;
  for (const auto& ring : rings) n += ring.size();
  return n;
}

std::optional<std::size_t> RingPlan::ring_of(PartyId party) const {
  for (std::size_t i = 0; i < rings.size(); ++i) {
    if (std::find(rings[i].begin(), rings[i].end(), party) != rings[i].end()) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> RingPlan::ring_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& ring : rings) sizes.push_back(ring.size());
  return sizes;
}

RingPlan group_rings(std::span<const std::pair<PartyId, std::size_t>> party_sizes,
                     std::size_t min_ring_size) {
  if (min_ring_size == 0) throw InvalidArgument("minimum ring size must be positive");
  const std::size_t p = party_sizes.size();
  if (p < min_ring_size) {
    throw InvalidArgument("cannot form a ring of " + std::to_string(min_ring_size) +
                          " from " + std::to_string(p) + " parties");
  }
  std::set<PartyId> seen;
  for (const auto& [id, size] : party_sizes) {
    if (!seen.insert(id).second) throw InvalidArgument("duplicate party id");
  }

  std::vector<std::pair<PartyId, std::size_t>> order(party_sizes.begin(),
                                                     party_sizes.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });

  RingPlan plan;
  plan.min_ring_size = min_ring_size;
  const std::size_t count = p / min_ring_size;
  plan.rings.resize(count);
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t ring = std::min(i / min_ring_size, count - 1);
    plan.rings[ring].push_back(order[i].first);
  }
  return plan;
}

}  // namespace pprl

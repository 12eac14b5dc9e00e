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

#ifndef PPRL_PROTOCOL_COMPLEXITY_H_
#define PPRL_PROTOCOL_COMPLEXITY_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "pprl/protocol/config.h"
#include "pprl/protocol/rings.h"

namespace pprl {

// Worst-case candidate counts for b equal blocks of m = n/b records per party
// and p/r equal rings. NAI counts the b*m^p full record sets; SEQ and RBR
// count every partial set formed while extending, assuming each stage carries
// one match per record (b*m sets) forward:
//   SEQ: sum_{i=1..r} b m^i + (p/r - 1) sum_{i=1..r+1} b m^i
//   RBR: (p/r) sum_{i=1..r} b m^i + sum_{i=1..p/r} b m^i
// Throws InvalidArgument unless b divides n and, for SEQ/RBR, 2 <= r, r | p.
std::uint64_t count_candidates(Pattern pattern, std::uint64_t n, std::uint64_t b,
                               std::uint64_t p, std::uint64_t r);

// How many candidate sets survive each classification stage.
enum class SurvivalModel {
  kOneToOne,  // m sets per block (each record matches exactly one set)
  kAll,       // nothing is pruned
};

// Partial sets formed per the simulator's bookkeeping, for arbitrary ring
// sizes: each extension step counts the sets it produces, and a stage seeded
// with carried sets counts those seeds. For NAI `ring_sizes` is ignored and p
// parties are extended in turn.
std::uint64_t expected_partial_sets(Pattern pattern,
                                    std::span<const std::size_t> ring_sizes,
                                    std::uint64_t p, std::uint64_t m,
                                    std::uint64_t b, SurvivalModel survival);

// NAI: p(p-1). Rings: sum over rings of r(r-1), with the rings formed as in
// group_rings (the last ring takes the remainder).
std::uint64_t collusion_combinations(Pattern pattern, std::uint64_t p,
                                     std::uint64_t r);
std::uint64_t collusion_combinations(const RingPlan& plan);

}  // namespace pprl

#endif  // PPRL_PROTOCOL_COMPLEXITY_H_

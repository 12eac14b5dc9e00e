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

#ifndef PPRL_ENCODING_SIMILARITY_H_
#define PPRL_ENCODING_SIMILARITY_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "pprl/encoding/bloom_filter.h"

namespace pprl {

// Multi-party Dice coefficient  p * z / sum_i x_i  where z counts the
// positions set in every filter and x_i is the popcount of filter i.
// Returns 0 when every filter is empty. Requires at least two filters.
double dice_bf(std::span<const BloomFilter> filters);

// The same coefficient computed from a counting filter alone:
// x * |{b : c[b] = x}| / sum_b c[b] with x = contributors. For any filter set
// S, dice_cbf(sum_to_cbf(S)) == dice_bf(S) bit for bit, since both reduce to
// one division of identical integers.
// Throws ProtocolViolation if a count lies outside [0, x].
double dice_cbf(const CountingBloomFilter& cbf);

// Evaluates the counting-filter formula with an explicit party count `x`
// (which may differ from the number of summed filters). Counts outside
// [0, x] are rejected as in dice_cbf.
double dice_from_counts(std::span<const std::int32_t> counts, std::size_t x);

}  // namespace pprl

#endif  // PPRL_ENCODING_SIMILARITY_H_

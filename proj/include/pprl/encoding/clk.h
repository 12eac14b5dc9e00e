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

#ifndef PPRL_ENCODING_CLK_H_
#define PPRL_ENCODING_CLK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pprl/encoding/bloom_filter.h"

namespace pprl {

// SipHash-2-4 of `data` under a 128-bit key expanded from `seed` as
// little-endian(seed) || little-endian(~seed). Portable and keyed, so
// encodings are reproducible across platforms and unguessable without the
// agreed seeds.
std::uint64_t keyed_hash64(std::string_view data, std::uint64_t seed);

// The k bit positions of one gram: (h_a + i * h_b) mod l for i = 1..k,
// evaluated exactly (no 64-bit wrap-around).
std::vector<std::size_t> gram_positions(std::string_view gram,
                                        const BfParams& params);

// Cryptographic long-term key: the grams of all values, after
// normalization, hashed into one compound filter.
BloomFilter encode_values(std::span<const std::string> values,
                          const BfParams& params);

// Encodes `record.qid_values`; the entity id is never read.
BloomFilter encode_clk(const Record& record, const BfParams& params);

// Same, restricted to the QID attributes at `attrs`.
BloomFilter encode_clk(const Record& record, std::span<const std::size_t> attrs,
                       const BfParams& params);

// Number of distinct grams the encoder would insert for `values`.
std::size_t distinct_gram_count(std::span<const std::string> values,
                                const BfParams& params);

}  // namespace pprl

#endif  // PPRL_ENCODING_CLK_H_

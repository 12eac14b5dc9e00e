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

#include "pprl/encoding/bloom_filter.h"

#include <bit>
#include <utility>

#include "pprl/common/error.h"

namespace pprl {

void BfParams::validate() const {
  if (length == 0) throw InvalidArgument("Bloom filter length l must be >= 1");
  if (num_hashes == 0) throw InvalidArgument("hash count k must be >= 1");
  if (gram_length == 0) throw InvalidArgument("gram length q must be >= 1");
}

BloomFilter::BloomFilter(std::size_t length)
    : length_(length), words_((length + 63) / 64, 0) {}

BloomFilter BloomFilter::from_string(std::string_view bits) {
  BloomFilter bf(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      bf.set(i);
    } else if (bits[i] != '0') {
      throw InvalidArgument("bit string may only contain '0' and '1'");
    }
  }
  return bf;
}

std::size_t BloomFilter::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::string BloomFilter::to_string() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

CountingBloomFilter::CountingBloomFilter(std::vector<std::int32_t> counts,
                                         std::size_t contributors)
    : counts_(std::move(counts)), contributors_(contributors) {}

bool CountingBloomFilter::in_range() const {
  const auto max = static_cast<std::int64_t>(contributors_);
  for (std::int32_t c : counts_) {
    if (c < 0 || c > max) return false;
  }
  return true;
}

CountingBloomFilter sum_to_cbf(std::span<const BloomFilter> filters) {
  if (filters.empty()) {
    throw InvalidArgument("sum_to_cbf needs at least one Bloom filter");
  }
  const std::size_t l = filters.front().size();
  std::vector<std::int32_t> counts(l, 0);
  for (const BloomFilter& bf : filters) {
    if (bf.size() != l) {
      throw IncompatibleEncoding("Bloom filters differ in length");
    }
    const auto words = bf.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        counts[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))] += 1;
        bits &= bits - 1;
      }
    }
  }
  return CountingBloomFilter(std::move(counts), filters.size());
}

}  // namespace pprl

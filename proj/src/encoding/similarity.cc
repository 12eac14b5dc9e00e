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

#include "pprl/encoding/similarity.h"

#include <bit>
#include <string>

#include "pprl/common/error.h"

namespace pprl {

namespace {

double ratio(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) return 0.0;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace

double dice_bf(std::span<const BloomFilter> filters) {
  if (filters.size() < 2) {
    throw InvalidArgument("Dice similarity needs at least two Bloom filters");
  }
  const std::size_t l = filters.front().size();
  for (const BloomFilter& bf : filters) {
    if (bf.size() != l) {
      throw IncompatibleEncoding("Bloom filters differ in length");
    }
  }
  const std::size_t words = filters.front().words().size();
  std::uint64_t common = 0;
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t all = ~std::uint64_t{0};
    for (const BloomFilter& bf : filters) {
      const std::uint64_t word = bf.words()[w];
      all &= word;
      total += static_cast<std::uint64_t>(std::popcount(word));
    }
    common += static_cast<std::uint64_t>(std::popcount(all));
  }
  return ratio(filters.size() * common, total);
}

double dice_from_counts(std::span<const std::int32_t> counts, std::size_t x) {
  const auto max = static_cast<std::int64_t>(x);
  std::uint64_t full = 0;
  std::uint64_t total = 0;
  for (std::int32_t c : counts) {
    if (c < 0 || c > max) {
      throw ProtocolViolation("count " + std::to_string(c) +
                              " outside [0, " + std::to_string(x) +
                              "]: masked or corrupted counting filter");
    }
    if (c == max) ++full;
    total += static_cast<std::uint64_t>(c);
  }
  return ratio(x * full, total);
}

double dice_cbf(const CountingBloomFilter& cbf) {
  if (cbf.contributors() < 2) {
    throw InvalidArgument("Dice similarity needs at least two contributors");
  }
  return dice_from_counts(cbf.counts(), cbf.contributors());
}

}  // namespace pprl

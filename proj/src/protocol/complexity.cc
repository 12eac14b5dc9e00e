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

#include "pprl/protocol/complexity.h"

#include <vector>

#include "pprl/common/error.h"

namespace pprl {

namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw InvalidArgument("candidate count overflows 64 bits");
  }
  return out;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw InvalidArgument("candidate count overflows 64 bits");
  }
  return out;
}

std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) out = mul(out, base);
  return out;
}

// sum_{i=1..k} b m^i
std::uint64_t geometric(std::uint64_t b, std::uint64_t m, std::uint64_t k) {
  std::uint64_t sum = 0;
  for (std::uint64_t i = 1; i <= k; ++i) sum = add(sum, mul(b, power(m, i)));
  return sum;
}

}  // namespace

std::uint64_t count_candidates(Pattern pattern, std::uint64_t n, std::uint64_t b,
                               std::uint64_t p, std::uint64_t r) {
  if (b == 0 || n % b != 0) {
    throw InvalidArgument("block count must divide the record count");
  }
  if (p < 2) throw InvalidArgument("need at least two parties");
  const std::uint64_t m = n / b;
  if (pattern == Pattern::kNai) return mul(b, power(m, p));
  if (r < 2 || r > p || p % r != 0) {
    throw InvalidArgument("ring size must be at least 2 and divide the party count");
  }
  const std::uint64_t rings = p / r;
  if (pattern == Pattern::kSeq) {
    return add(geometric(b, m, r), mul(rings - 1, geometric(b, m, r + 1)));
  }
  return add(mul(rings, geometric(b, m, r)), geometric(b, m, rings));
}

std::uint64_t expected_partial_sets(Pattern pattern,
                                    std::span<const std::size_t> ring_sizes,
                                    std::uint64_t p, std::uint64_t m,
                                    std::uint64_t b, SurvivalModel survival) {
  std::uint64_t per_block = 0;
  if (pattern == Pattern::kNai) {
    per_block = geometric(1, m, p);
    return mul(b, per_block);
  }
  if (ring_sizes.empty()) throw InvalidArgument("no rings");
  const bool all = survival == SurvivalModel::kAll;

  if (pattern == Pattern::kSeq) {
    std::uint64_t carried = 0;
    std::uint64_t contributed = 0;
    for (std::size_t j = 0; j < ring_sizes.size(); ++j) {
      const std::uint64_t r = ring_sizes[j];
      std::uint64_t sets = 1;
      if (j > 0) {
        per_block = add(per_block, carried);
        sets = carried;
      }
      for (std::uint64_t i = 1; i <= r; ++i) {
        sets = mul(sets, m);
        per_block = add(per_block, sets);
      }
      contributed += r;
      carried = all ? power(m, contributed) : m;
    }
    return mul(b, per_block);
  }

  std::vector<std::uint64_t> ring_matches;
  for (std::size_t r : ring_sizes) {
    per_block = add(per_block, geometric(1, m, r));
    ring_matches.push_back(all ? power(m, r) : m);
  }
  std::uint64_t sets = 1;
  for (std::uint64_t matches : ring_matches) {
    sets = mul(sets, matches);
    per_block = add(per_block, sets);
  }
  return mul(b, per_block);
}

std::uint64_t collusion_combinations(Pattern pattern, std::uint64_t p,
                                     std::uint64_t r) {
  if (pattern == Pattern::kNai || r >= p) return p * (p - 1);
  if (r < 2) throw InvalidArgument("ring size must be at least 2");
  const std::uint64_t rings = p / r;
  const std::uint64_t last = r + p % r;
  return (rings - 1) * r * (r - 1) + last * (last - 1);
}

std::uint64_t collusion_combinations(const RingPlan& plan) {
  std::uint64_t sum = 0;
  for (const auto& ring : plan.rings) sum += ring.size() * (ring.size() - 1);
  return sum;
}

}  // namespace pprl

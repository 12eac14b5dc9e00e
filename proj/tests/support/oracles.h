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

#ifndef PPRL_TESTS_SUPPORT_ORACLES_H_
#define PPRL_TESTS_SUPPORT_ORACLES_H_

// Independent plaintext reference implementations used to check the library.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pprl/blocking/blocks.h"
#include "pprl/encoding/bloom_filter.h"
#include "pprl/encoding/clk.h"
#include "pprl/protocol/linkage.h"

namespace pprl::oracle {

inline std::uint64_t rotl(std::uint64_t x, int b) { return (x << b) | (x >> (64 - b)); }

// Straight transcription of SipHash-2-4 over a 16-byte key.
inline std::uint64_t siphash24(const std::array<std::uint8_t, 16>& key,
                               std::string_view msg) {
  auto load = [](const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
  };
  const std::uint64_t k0 = load(key.data());
  const std::uint64_t k1 = load(key.data() + 8);
  std::uint64_t v0 = 0x736f6d6570736575ULL ^ k0;
  std::uint64_t v1 = 0x646f72616e646f6dULL ^ k1;
  std::uint64_t v2 = 0x6c7967656e657261ULL ^ k0;
  std::uint64_t v3 = 0x7465646279746573ULL ^ k1;
  auto round = [&] {
    v0 += v1; v1 = rotl(v1, 13); v1 ^= v0; v0 = rotl(v0, 32);
    v2 += v3; v3 = rotl(v3, 16); v3 ^= v2;
    v0 += v3; v3 = rotl(v3, 21); v3 ^= v0;
    v2 += v1; v1 = rotl(v1, 17); v1 ^= v2; v2 = rotl(v2, 32);
  };
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(msg.data());
  const std::size_t full = msg.size() / 8 * 8;
  for (std::size_t i = 0; i < full; i += 8) {
    const std::uint64_t m = load(bytes + i);
    v3 ^= m;
    round();
    round();
    v0 ^= m;
  }
  std::uint64_t last = static_cast<std::uint64_t>(msg.size() & 0xFF) << 56;
  for (std::size_t i = full; i < msg.size(); ++i) {
    last |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i - full));
  }
  v3 ^= last;
  round();
  round();
  v0 ^= last;
  v2 ^= 0xFF;
  for (int i = 0; i < 4; ++i) round();
  return v0 ^ v1 ^ v2 ^ v3;
}

inline std::array<std::uint8_t, 16> seed_key(std::uint64_t seed) {
  std::array<std::uint8_t, 16> key{};
  for (int i = 0; i < 8; ++i) {
    key[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    key[8 + i] = static_cast<std::uint8_t>(~seed >> (8 * i));
  }
  return key;
}

// Dice over a set of filters by counting bits one position at a time.
inline double dice(std::span<const BloomFilter> filters) {
  const std::size_t l = filters.front().size();
  std::size_t common = 0;
  std::size_t total = 0;
  for (std::size_t pos = 0; pos < l; ++pos) {
    bool all = true;
    for (const auto& f : filters) {
      if (f.test(pos)) {
        ++total;
      } else {
        all = false;
      }
    }
    if (all) ++common;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(filters.size() * common) / static_cast<double>(total);
}

inline BloomFilter random_filter(std::size_t l, double density, std::mt19937_64& rng) {
  BloomFilter bf(l);
  std::bernoulli_distribution bit(density);
  for (std::size_t i = 0; i < l; ++i) {
    if (bit(rng)) bf.set(i);
  }
  return bf;
}

// All-to-all plaintext linkage: every tuple with one record per party inside
// each block common to all parties, classified by Dice >= threshold.
inline std::vector<MatchResult> brute_force_links(std::span<const PartyDatabase> parties,
                                                  const LinkageConfig& config) {
  std::vector<std::map<BlockKey, std::vector<std::uint32_t>>> blocks(parties.size());
  std::vector<std::vector<BloomFilter>> bfs(parties.size());
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const auto& recs = parties[i].records;
    for (std::uint32_t r = 0; r < recs.size(); ++r) {
      blocks[i][block_key(recs[r], config.blocking_attrs)].push_back(r);
      bfs[i].push_back(encode_clk(recs[r], config.qid_attrs, config.params));
    }
  }
  std::vector<MatchResult> out;
  for (const auto& [key, first] : blocks[0]) {
    bool common = true;
    for (const auto& b : blocks) common = common && b.contains(key);
    if (!common) continue;
    std::vector<std::size_t> idx(parties.size(), 0);
    while (true) {
      std::vector<BloomFilter> filters;
      MatchResult m;
      for (std::size_t i = 0; i < parties.size(); ++i) {
        const std::uint32_t r = blocks[i].at(key)[idx[i]];
        filters.push_back(bfs[i][r]);
        m.members.push_back({parties[i].id, r});
      }
      m.similarity = dice(filters);
      if (m.similarity >= config.threshold) {
        std::sort(m.members.begin(), m.members.end());
        out.push_back(m);
      }
      std::size_t i = 0;
      while (i < parties.size() && ++idx[i] == blocks[i].at(key).size()) idx[i++] = 0;
      if (i == parties.size()) break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MatchResult& a, const MatchResult& b) { return a.members < b.members; });
  return out;
}

}  // namespace pprl::oracle

#endif  // PPRL_TESTS_SUPPORT_ORACLES_H_

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

#include "pprl/evaluation/attack.h"

#include <algorithm>
#include <map>

#include "pprl/common/error.h"

namespace pprl {

namespace {

void check_lengths(std::size_t length, std::span<const BloomFilter> global_db) {
  for (const auto& g : global_db) {
    if (g.size() != length) {
      throw IncompatibleEncoding("attack inputs have different filter lengths");
    }
  }
}

double suspicion(std::size_t consistent, std::size_t floor) {
  if (consistent == 0) return 0.0;
  return 1.0 / static_cast<double>(std::max(consistent, floor));
}

}  // namespace

void summarize(AttackResult& result) {
  const auto& pr = result.probabilities;
  if (pr.empty()) {
    result.dr_mean = result.dr_marketer = 0.0;
    return;
  }
  double sum = 0.0;
  std::size_t certain = 0;
  for (double v : pr) {
    sum += v;
    certain += v == 1.0;
  }
  result.dr_mean = sum / static_cast<double>(pr.size());
  result.dr_marketer = static_cast<double>(certain) / static_cast<double>(pr.size());
}

AttackResult bf_attack(std::span<const BloomFilter> masked_db,
                       std::span<const BloomFilter> global_db) {
  AttackResult out;
  if (masked_db.empty()) return out;
  check_lengths(masked_db[0].size(), masked_db);
  check_lengths(masked_db[0].size(), global_db);
  std::map<std::vector<std::uint64_t>, std::size_t> frequency;
  for (const auto& g : global_db) {
    ++frequency[{g.words().begin(), g.words().end()}];
  }
  for (std::size_t i = 0; i < masked_db.size(); ++i) {
    const auto& words = masked_db[i].words();
    auto it = frequency.find({words.begin(), words.end()});
    const std::size_t n_g = it == frequency.end() ? 0 : it->second;
    if (n_g == 0) out.unmatched.push_back(i);
    out.candidates.push_back(n_g);
    out.probabilities.push_back(suspicion(n_g, 1));
  }
  summarize(out);
  return out;
}

AttackResult cbf_attack(std::span<const CountingBloomFilter> observed,
                        std::span<const BloomFilter> global_db) {
  AttackResult out;
  if (observed.empty()) return out;
  const std::size_t length = observed[0].size();
  check_lengths(length, global_db);

  // Distinct global patterns with multiplicities.
  std::map<std::vector<std::uint64_t>, std::size_t> frequency;
  for (const auto& g : global_db) ++frequency[{g.words().begin(), g.words().end()}];

  const std::size_t word_count = (length + 63) / 64;
  std::vector<std::uint64_t> zeros(word_count);
  std::vector<std::uint64_t> ones(word_count);
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const CountingBloomFilter& c = observed[i];
    if (c.size() != length) throw IncompatibleEncoding("observed CBFs differ in length");
    if (!c.in_range()) throw InvalidArgument("cbf_attack needs unmasked counting filters");
    std::fill(zeros.begin(), zeros.end(), 0);
    std::fill(ones.begin(), ones.end(), 0);
    const auto x = static_cast<std::int32_t>(c.contributors());
    for (std::size_t pos = 0; pos < length; ++pos) {
      const std::uint64_t bit = std::uint64_t{1} << (pos % 64);
      if (c[pos] == 0) zeros[pos / 64] |= bit;
      if (c[pos] == x) ones[pos / 64] |= bit;
    }
    std::size_t n_g = 0;
    for (const auto& [words, count] : frequency) {
      bool consistent = true;
      for (std::size_t w = 0; w < word_count && consistent; ++w) {
        consistent = (words[w] & zeros[w]) == 0 && (ones[w] & ~words[w]) == 0;
      }
      if (consistent) n_g += count;
    }
    if (n_g == 0) out.unmatched.push_back(i);
    out.candidates.push_back(n_g);
    out.probabilities.push_back(suspicion(n_g, c.contributors()));
  }
  summarize(out);
  return out;
}

}  // namespace pprl

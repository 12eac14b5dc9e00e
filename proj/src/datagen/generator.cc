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

#include "pprl/datagen/generator.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "pprl/common/error.h"

namespace pprl {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::size_t overlap_count(std::size_t n, double overlap) {
  return static_cast<std::size_t>(std::llround(overlap * static_cast<double>(n)));
}

// Applies `count` modifications to randomly chosen attributes. An operation
// that cannot apply (no matching OCR site, say) is redrawn.
std::size_t corrupt_record(Record& record, std::size_t count, const CorruptionSpec& spec,
                           const CorruptionTables& tables, std::mt19937_64& rng) {
  std::vector<CorruptionOp> ops;
  std::vector<double> weights;
  for (const auto& [op, w] : spec.weights) {
    ops.push_back(op);
    weights.push_back(w);
  }
  std::discrete_distribution<std::size_t> pick_op(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> pick_attr(0, record.qid_values.size() - 1);
  std::size_t applied = 0;
  for (std::size_t done = 0; done < count; ++done) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      std::string& value = record.qid_values[pick_attr(rng)];
      const Corruption c = corrupt_value(value, ops[pick_op(rng)], rng(), tables);
      if (c.applied) {
        value = c.value;
        ++applied;
        break;
      }
    }
  }
  return applied;
}

}  // namespace

std::size_t required_population(std::size_t p, std::size_t n, double overlap) {
  const std::size_t shared = overlap_count(n, overlap);
  return shared + p * (n - shared);
}

MultiPartyDataset generate(const std::vector<Record>& base, std::size_t p, std::size_t n,
                           double overlap, const CorruptionSpec& spec, std::uint64_t seed,
                           const CorruptionTables& tables) {
  if (p == 0) throw InvalidArgument("generate needs at least one party");
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw InvalidArgument("overlap must lie in [0, 1]");
  }
  spec.validate();
  const std::size_t need = required_population(p, n, overlap);
  if (base.size() < need) {
    throw InvalidArgument("base population has " + std::to_string(base.size()) +
                          " records, generate needs " + std::to_string(need));
  }
  const std::size_t shared = overlap_count(n, overlap);

  // Pick which base records play which role.
  std::vector<std::size_t> order(base.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(mix(seed, 0, 0));
  std::shuffle(order.begin(), order.end(), rng);

  MultiPartyDataset out;
  out.parties.assign(p, {});
  for (auto& party : out.parties) party.reserve(n);

  std::mt19937_64 corrupt_rng(mix(seed ^ spec.seed, 1, 0));
  std::bernoulli_distribution selected(spec.rate);
  for (std::size_t i = 0; i < shared; ++i) {
    const Record& record = base[order[i]];
    out.ground_truth.insert(record.entity_id);
    std::vector<bool> corrupt_at_party(p, false);
    if (selected(corrupt_rng)) {
      out.corrupted_entities.insert(record.entity_id);
      if (p == 1) {
        corrupt_at_party[0] = true;
      } else {
        // Uniform over the 2^p - 2 nonempty proper subsets.
        std::size_t chosen = 0;
        do {
          chosen = 0;
          for (std::size_t j = 0; j < p; ++j) {
            corrupt_at_party[j] = (corrupt_rng() & 1) != 0;
            chosen += corrupt_at_party[j];
          }
        } while (chosen == 0 || chosen == p);
      }
    }
    for (std::size_t j = 0; j < p; ++j) {
      Record copy = record;
      if (corrupt_at_party[j]) {
        const std::size_t applied =
            corrupt_record(copy, spec.modifications_per_record, spec, tables, corrupt_rng);
        out.corrupted_copies.push_back({record.entity_id, j, applied});
      }
      out.parties[j].push_back(std::move(copy));
    }
  }

  std::size_t next = shared;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = shared; i < n; ++i) out.parties[j].push_back(base[order[next++]]);
    std::mt19937_64 party_rng(mix(seed, 2, j));
    std::shuffle(out.parties[j].begin(), out.parties[j].end(), party_rng);
  }
  return out;
}

}  // namespace pprl

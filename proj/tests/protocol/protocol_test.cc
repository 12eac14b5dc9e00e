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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pprl/common/error.h"
#include "pprl/encoding/similarity.h"
#include "pprl/protocol/complexity.h"
#include "pprl/protocol/linkage.h"
#include "pprl/protocol/rings.h"
#include "pprl/securesum/summation.h"
#include "support/instances.h"
#include "support/oracles.h"

namespace pprl {
namespace {

using testing_support::random_instance;
using testing_support::random_word;

LinkageConfig small_config(Pattern pattern, Scheme scheme) {
  LinkageConfig c;
  c.pattern = pattern;
  c.scheme = scheme;
  c.params.length = 100;
  c.params.num_hashes = 5;
  c.qid_attrs = {0, 1};
  c.blocking_attrs = {0};
  c.min_ring_size = pattern == Pattern::kRbr ? 3 : 2;
  c.paillier_bits = 64;
  return c;
}

std::vector<PartyDatabase> replicate(std::size_t p, const std::vector<Record>& records) {
  std::vector<PartyDatabase> dbs;
  for (std::size_t i = 0; i < p; ++i) dbs.push_back({static_cast<PartyId>(i + 1), records});
  return dbs;
}

TEST(GroupRingsTest, RemainderGoesToLastRing) {
  auto plan_for = [](std::size_t p, std::size_t r) {
    std::vector<std::pair<PartyId, std::size_t>> sizes;
    for (std::size_t i = 0; i < p; ++i) sizes.emplace_back(i + 1, 100);
    return group_rings(sizes, r).ring_sizes();
  };
  EXPECT_EQ(plan_for(8, 2), (std::vector<std::size_t>{2, 2, 2, 2}));
  EXPECT_EQ(plan_for(10, 2), (std::vector<std::size_t>{2, 2, 2, 2, 2}));
  EXPECT_EQ(plan_for(10, 3), (std::vector<std::size_t>{3, 3, 4}));
  EXPECT_EQ(plan_for(10, 4), (std::vector<std::size_t>{4, 6}));
  EXPECT_EQ(plan_for(10, 5), (std::vector<std::size_t>{5, 5}));
  EXPECT_THROW(plan_for(2, 3), InvalidArgument);
}

TEST(GroupRingsTest, SortsBySizeThenId) {
  std::vector<std::pair<PartyId, std::size_t>> sizes = {
      {1, 50}, {2, 10}, {3, 30}, {4, 10}, {5, 20}, {6, 40}};
  const auto plan = group_rings(sizes, 3);
  ASSERT_EQ(plan.rings.size(), 2u);
  EXPECT_EQ(plan.rings[0], (std::vector<PartyId>{2, 4, 5}));
  EXPECT_EQ(plan.rings[1], (std::vector<PartyId>{3, 6, 1}));
  EXPECT_EQ(plan.ring_of(6), 1u);
  EXPECT_FALSE(plan.ring_of(9).has_value());
}

TEST(ComplexityTest, ClosedForms) {
  EXPECT_EQ(count_candidates(Pattern::kNai, 4, 2, 3, 0), 16u);
  EXPECT_EQ(count_candidates(Pattern::kSeq, 4, 2, 4, 2), 40u);
  // (4/2)(2*2 + 2*4) + (2*2 + 2*4)
  EXPECT_EQ(count_candidates(Pattern::kRbr, 4, 2, 4, 2), 36u);
  EXPECT_THROW(count_candidates(Pattern::kNai, 5, 2, 3, 0), InvalidArgument);
  EXPECT_THROW(count_candidates(Pattern::kSeq, 4, 2, 3, 2), InvalidArgument);
  EXPECT_THROW(count_candidates(Pattern::kNai, 1ULL << 40, 1, 10, 0), InvalidArgument);
}

TEST(ComplexityTest, PartialSetModelsAgreeWithClosedFormUnderOneToOne) {
  for (std::uint64_t m : {1, 2, 5}) {
    for (std::uint64_t p : {2, 4, 6}) {
      for (std::uint64_t r : {2, 3}) {
        if (p % r != 0) continue;
        std::vector<std::size_t> rings(p / r, r);
        for (Pattern pat : {Pattern::kSeq, Pattern::kRbr}) {
          EXPECT_EQ(expected_partial_sets(pat, rings, p, m, 3, SurvivalModel::kOneToOne),
                    count_candidates(pat, 3 * m, 3, p, r));
        }
      }
    }
  }
}

TEST(ComplexityTest, Collusion) {
  EXPECT_EQ(collusion_combinations(Pattern::kNai, 9, 0), 72u);
  EXPECT_EQ(collusion_combinations(Pattern::kRbr, 9, 3), 18u);
  EXPECT_EQ(collusion_combinations(Pattern::kSeq, 9, 3), 18u);
  EXPECT_EQ(collusion_combinations(Pattern::kSeq, 5, 5), collusion_combinations(Pattern::kNai, 5, 0));
  // Rings [3, 3, 4].
  EXPECT_EQ(collusion_combinations(Pattern::kSeq, 10, 3), 6u + 6u + 12u);
}

TEST(ConfigTest, RejectsInvalidCombinations) {
  auto c = small_config(Pattern::kRbr, Scheme::kBss);
  c.min_ring_size = 2;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(Pattern::kSeq, Scheme::kBss);
  c.per_ring_encoding = true;
  EXPECT_THROW(c.validate(), ConfigError);
  c = small_config(Pattern::kNai, Scheme::kBss);
  c.threshold = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(parse_pattern("rbr"), Pattern::kRbr);
  EXPECT_THROW(parse_pattern("ring"), ConfigError);
}

TEST(LinkageTest, SinglePartyIsRejected) {
  auto dbs = replicate(1, {{"e", {"anna", "smith"}}});
  EXPECT_THROW(run_linkage(dbs, small_config(Pattern::kNai, Scheme::kBss)), InvalidArgument);
}

class AllSchemesTest : public ::testing::TestWithParam<Scheme> {};

TEST_P(AllSchemesTest, IdenticalRecordLinksUnderEveryPattern) {
  const Record r{"e1", {"anna", "smith"}};
  for (auto [pattern, p] : {std::pair{Pattern::kNai, 3}, std::pair{Pattern::kNai, 2},
                            std::pair{Pattern::kSeq, 4}, std::pair{Pattern::kRbr, 9}}) {
    auto dbs = replicate(p, {r});
    const auto out = run_linkage(dbs, small_config(pattern, GetParam()));
    ASSERT_EQ(out.matches.size(), 1u) << pattern_name(pattern);
    EXPECT_EQ(out.matches[0].similarity, 1.0);
    EXPECT_EQ(out.matches[0].members.size(), static_cast<std::size_t>(p));
  }
}

TEST_P(AllSchemesTest, DisjointRecordsDoNotLink) {
  std::vector<PartyDatabase> dbs = {{1, {{"a", {"anna", "smith"}}}},
                                    {2, {{"b", {"anne", "quoxley"}}}},
                                    {3, {{"c", {"anya", "brvtzk"}}}}};
  EXPECT_TRUE(run_nai(dbs, small_config(Pattern::kNai, GetParam())).empty());
}

INSTANTIATE_TEST_SUITE_P(Schemes, AllSchemesTest,
                         ::testing::Values(Scheme::kBss, Scheme::kSss, Scheme::kHss),
                         [](const auto& info) { return std::string(scheme_name(info.param)); });

TEST(LinkageTest, NaiEqualsBruteForceOracle) {
  std::mt19937_64 rng(99);
  std::size_t total = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = 2 + trial % 3;
    auto dbs = random_instance(rng, p, 3);
    auto config = small_config(Pattern::kNai, trial % 2 ? Scheme::kSss : Scheme::kBss);
    config.threshold = 0.6;
    config.seed = trial;
    const auto expected = oracle::brute_force_links(dbs, config);
    EXPECT_EQ(run_nai(dbs, config), expected) << trial;
    total += expected.size();
  }
  EXPECT_GT(total, 30u);
}

TEST(LinkageTest, SeqAndRbrAreSoundAndContained) {
  std::mt19937_64 rng(5);
  std::size_t reported = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t p = trial % 2 ? 4 : 3;
    auto dbs = random_instance(rng, p, 3);
    auto config = small_config(Pattern::kNai, Scheme::kBss);
    config.threshold = 0.6;
    const auto nai = run_nai(dbs, config);
    config.min_ring_size = 2;
    const auto seq = run_seq(dbs, config);
    config.min_ring_size = 3;
    const auto rbr = run_rbr(dbs, config);
    for (const auto* result : {&seq, &rbr}) {
      for (const auto& m : *result) {
        EXPECT_NE(std::find(nai.begin(), nai.end(), m), nai.end());
        EXPECT_GE(m.similarity, config.threshold);
      }
      reported += result->size();
    }
  }
  EXPECT_GT(reported, 0u);
}

TEST(LinkageTest, SchemeIndependence) {
  std::mt19937_64 rng(17);
  auto dbs = random_instance(rng, 4, 3);
  for (Pattern pattern : {Pattern::kNai, Pattern::kSeq, Pattern::kRbr}) {
    std::vector<std::vector<MatchResult>> results;
    for (Scheme s : {Scheme::kBss, Scheme::kSss, Scheme::kHss}) {
      auto config = small_config(pattern, s);
      config.threshold = 0.5;
      results.push_back(run_linkage(dbs, config).matches);
    }
    EXPECT_EQ(results[0], results[1]);
    EXPECT_EQ(results[0], results[2]);
  }
}

TEST(LinkageTest, SeqPrunesOnRingSimilarity) {
  // P1's record is a gram superset of the others, so the ring-1 pair falls
  // below the threshold while the four-party set would pass.
  auto config = small_config(Pattern::kSeq, Scheme::kBss);
  config.params.length = 1000;
  config.params.num_hashes = 2;
  config.qid_attrs = {0};
  config.blocking_attrs = {};
  const Record x{"e", {"abcdefghij"}};
  const Record y{"e", {"abcdef"}};
  std::vector<PartyDatabase> dbs = {{1, {x}}, {2, {y}}, {3, {y}}, {4, {y}}};
  std::vector<BloomFilter> full, pair;
  for (const auto& db : dbs) full.push_back(encode_clk(db.records[0], config.qid_attrs, config.params));
  pair = {full[0], full[1]};
  ASSERT_LT(dice_bf(pair), 0.8);
  ASSERT_GE(dice_bf(full), 0.8);
  config.threshold = 0.8;
  EXPECT_TRUE(run_seq(dbs, config).empty());
  EXPECT_EQ(run_nai(dbs, config).size(), 1u);
}

TEST(LinkageTest, SeqCountsPerRing) {
  auto config = small_config(Pattern::kSeq, Scheme::kSss);
  config.blocking_attrs = {};
  auto dbs = replicate(4, {{"e", {"anna", "smith"}}, {"f", {"bob", "quoxley"}}});
  const auto out = run_linkage(dbs, config);
  ASSERT_EQ(out.counts.stages.size(), 2u);
  EXPECT_EQ(out.counts.stages[0].classified, 4u);  // (n/b)^2
  EXPECT_EQ(out.counts.stages[0].matches, 2u);
  EXPECT_EQ(out.counts.stages[1].classified, 4u * 2u);  // (n/b)^2 |M|
  EXPECT_EQ(out.matches.size(), 2u);
}

TEST(LinkageTest, ObservedCountsMatchModels) {
  // b blocks of m records per party; record j of a block is the same at every
  // party and dissimilar to the others, so each stage keeps one set per record.
  std::mt19937_64 rng(3);
  const std::vector<std::string> firsts = {"anna", "bruno", "carla"};
  const std::size_t m = 3;
  std::vector<Record> records;
  for (const auto& f : firsts) {
    for (std::size_t j = 0; j < m; ++j) records.push_back({f, {f, random_word(rng, 12)}});
  }
  for (std::size_t p : {4u, 6u}) {
    auto dbs = replicate(p, records);
    for (Pattern pattern : {Pattern::kNai, Pattern::kSeq, Pattern::kRbr}) {
      for (double threshold : {0.0, 0.8}) {
        auto config = small_config(pattern, Scheme::kBss);
        config.params.length = 200;
        config.threshold = threshold;
        const auto out = run_linkage(dbs, config);
        const auto model = threshold == 0.0 ? SurvivalModel::kAll : SurvivalModel::kOneToOne;
        EXPECT_EQ(out.counts.partial_sets,
                  expected_partial_sets(pattern, out.plan.ring_sizes(), p, m, 3, model))
            << pattern_name(pattern) << " p=" << p << " s_t=" << threshold;
        EXPECT_EQ(out.matches.size(), threshold == 0.0 ? out.counts.stages.back().classified : 9u);
        if (pattern == Pattern::kNai) {
          EXPECT_EQ(out.counts.classified, count_candidates(Pattern::kNai, 9, 3, p, 0));
        } else if (threshold > 0.0) {
          const std::size_t r = config.min_ring_size;
          if (p % r == 0) {
            EXPECT_EQ(out.counts.partial_sets, count_candidates(pattern, 9, 3, p, r));
          }
        }
      }
    }
  }
}

TEST(LinkageTest, NaiMessageCountPerBatch) {
  auto config = small_config(Pattern::kNai, Scheme::kBss);
  config.trace = true;
  auto dbs = replicate(3, {{"e", {"anna", "smith"}}});
  const auto out = run_linkage(dbs, config);
  EXPECT_EQ(out.traffic.messages_of(MessageKind::kMaskedBatch), 3u + 1u);
  EXPECT_EQ(out.traffic.messages_of(MessageKind::kMatchList), 3u);
  std::uint64_t sum = 0;
  for (const auto& e : out.trace) sum += e.bytes;
  EXPECT_EQ(sum, out.traffic.total().bytes());
}

TEST(LinkageTest, RbrInterleavingsGiveIdenticalResults) {
  std::mt19937_64 rng(23);
  auto dbs = random_instance(rng, 9, 2);
  auto config = small_config(Pattern::kRbr, Scheme::kSss);
  config.threshold = 0.5;
  const auto reference = run_linkage(dbs, config);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    config.schedule = {seed % 2 ? Interleaving::kSeededRandom : Interleaving::kRoundRobin, seed};
    const auto out = run_linkage(dbs, config);
    EXPECT_EQ(out.matches, reference.matches);
    EXPECT_EQ(out.counts, reference.counts);
    EXPECT_EQ(out.traffic.total().bytes(), reference.traffic.total().bytes());
    EXPECT_EQ(out.traffic.by_step().size(), reference.traffic.by_step().size());
  }
}

TEST(LinkageTest, RbrPhaseTwoDrawsFromRingMatches) {
  std::mt19937_64 rng(31);
  auto dbs = random_instance(rng, 6, 2);
  auto config = small_config(Pattern::kRbr, Scheme::kBss);
  config.threshold = 0.5;
  config.capture_lu_view = true;
  const auto out = run_linkage(dbs, config);
  std::set<std::vector<RecordRef>> ring_matches;
  for (const auto& v : out.lu_view) {
    if (v.stage != "final" && dice_cbf(v.cbf) >= config.threshold) ring_matches.insert(v.members);
  }
  for (const auto& m : out.matches) {
    std::vector<RecordRef> first(m.members.begin(), m.members.end());
    const auto& rings = out.plan.rings;
    for (const auto& ring : rings) {
      std::vector<RecordRef> part;
      for (const auto& ref : m.members) {
        if (std::find(ring.begin(), ring.end(), ref.party) != ring.end()) part.push_back(ref);
      }
      EXPECT_TRUE(ring_matches.contains(part));
    }
  }
}

TEST(LinkageTest, PerRingEncodingChangesPhaseOneOnly) {
  auto dbs = replicate(6, {{"e", {"anna", "smith"}}});
  auto config = small_config(Pattern::kRbr, Scheme::kBss);
  config.per_ring_encoding = true;
  const auto out = run_linkage(dbs, config);
  ASSERT_EQ(out.matches.size(), 1u);
  EXPECT_EQ(out.matches[0].similarity, 1.0);
  EXPECT_NE(ring_params(config.params, config.seed, 0).hash_seed_a,
            ring_params(config.params, config.seed, 1).hash_seed_a);
}

TEST(LinkageTest, OwnersOnlySeeMaskedSums) {
  std::mt19937_64 rng(41);
  auto dbs = random_instance(rng, 3, 2);
  for (Scheme scheme : {Scheme::kBss, Scheme::kSss}) {
    auto config = small_config(Pattern::kNai, scheme);
    config.capture_party_views = true;
    const auto out = run_linkage(dbs, config);
    std::map<PartyId, std::vector<BloomFilter>> bfs;
    for (const auto& db : dbs) {
      for (const auto& r : db.records) bfs[db.id].push_back(encode_clk(r, config.qid_attrs, config.params));
    }
    std::size_t checked = 0;
    for (const auto& [party, batches] : out.party_views) {
      for (const auto& batch : batches) {
        for (const auto& set : batch.sets) {
          // Rebuild the plain partial sum of the contributions made so far.
          std::vector<std::int32_t> plain(config.params.length, 0);
          for (std::size_t i = 0; i < set.partial.hop_count(); ++i) {
            const auto& ref = set.members[i];
            const auto& bf = bfs.at(ref.party)[ref.record];
            for (std::size_t pos = 0; pos < bf.size(); ++pos) plain[pos] += bf.test(pos);
            if (scheme == Scheme::kSss) {
              const auto salt = salt_vector({ref.party, salt_key_for(config.seed, ref.party), 0},
                                            ref.record, plain.size());
              for (std::size_t pos = 0; pos < plain.size(); ++pos) plain[pos] += salt[pos];
            }
          }
          const auto mask = RandomMaskVector::derive(mask_seed_for(config.seed, kLinkageUnit),
                                                     set.set_id, plain.size(), kLinkageUnit);
          std::size_t differing = 0;
          for (std::size_t pos = 0; pos < plain.size(); ++pos) {
            ASSERT_EQ(set.partial.plain()[pos], plain[pos] + mask.values[pos]);
            differing += mask.values[pos] != 0;
          }
          EXPECT_GT(differing, plain.size() / 2);
          ++checked;
        }
      }
    }
    EXPECT_GT(checked, 0u);
  }
}

TEST(LinkageTest, FixedSeedsAreDeterministic) {
  std::mt19937_64 rng(8);
  auto dbs = random_instance(rng, 4, 3);
  auto config = small_config(Pattern::kSeq, Scheme::kHss);
  config.threshold = 0.5;
  const auto a = run_linkage(dbs, config);
  const auto b = run_linkage(dbs, config);
  EXPECT_EQ(a.matches, b.matches);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.traffic.total().bytes(), b.traffic.total().bytes());
}

TEST(LinkageTest, EmptyIntersectionGivesNoMatches) {
  std::vector<PartyDatabase> dbs = {{1, {{"a", {"anna", "x"}}}}, {2, {{"b", {"zoe", "x"}}}}};
  const auto out = run_linkage(dbs, small_config(Pattern::kNai, Scheme::kBss));
  EXPECT_TRUE(out.matches.empty());
  EXPECT_EQ(out.common_blocks, 0u);
}

}  // namespace
}  // namespace pprl

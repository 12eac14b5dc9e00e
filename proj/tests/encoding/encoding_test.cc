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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "pprl/common/error.h"
#include "pprl/encoding/analysis.h"
#include "pprl/encoding/bloom_filter.h"
#include "pprl/encoding/clk.h"
#include "pprl/encoding/similarity.h"
#include "pprl/encoding/text.h"
#include "support/oracles.h"

namespace pprl {
namespace {

using ::testing::ElementsAre;

TEST(TextTest, NormalizeTrimsAndLowercases) {
  EXPECT_EQ(normalize_value("  Peter\t"), "peter");
  EXPECT_EQ(normalize_value("ÉMILE"), "émile");
  EXPECT_EQ(normalize_value("ΣΩ"), "σω");
  EXPECT_EQ(normalize_value("   "), "");
}

TEST(TextTest, MalformedUtf8BecomesReplacement) {
  EXPECT_EQ(decode_utf8("a\xC3"), (std::u32string{U'a', 0xFFFD}));
  EXPECT_EQ(decode_utf8("\xC0\x80"), (std::u32string{0xFFFD, 0xFFFD}));
  EXPECT_EQ(encode_utf8(decode_utf8("zoë€𝄞")), "zoë€𝄞");
}

TEST(QgramTest, Bigrams) {
  EXPECT_THAT(extract_qgrams("peter", 2, false), ElementsAre("pe", "et", "te", "er"));
  EXPECT_THAT(extract_qgrams("peter", 2, true),
              ElementsAre("#p", "pe", "et", "te", "er", "r$"));
  EXPECT_THAT(extract_qgrams("ab", 3, false), ElementsAre());
  EXPECT_THAT(extract_qgrams("", 2, true), ElementsAre());
  EXPECT_THAT(extract_qgrams("zoë", 2, false), ElementsAre("zo", "oë"));
  EXPECT_THROW(extract_qgrams("x", 0, false), InvalidArgument);
}

TEST(KeyedHashTest, SipHashReferenceVector) {
  std::array<std::uint8_t, 16> key{};
  for (int i = 0; i < 16; ++i) key[i] = static_cast<std::uint8_t>(i);
  std::string msg;
  for (int i = 0; i < 15; ++i) msg.push_back(static_cast<char>(i));
  // Published SipHash-2-4 test vector, output read little-endian.
  EXPECT_EQ(oracle::siphash24(key, msg), 0xa129ca6149be45e5ULL);
}

TEST(KeyedHashTest, MatchesOracleForSeeds) {
  for (std::uint64_t seed : {0ULL, 1ULL, 0x5eed0001ULL, ~0ULL}) {
    for (std::string_view s : {"", "a", "pe", "abcdefgh", "a longer gram value"}) {
      EXPECT_EQ(keyed_hash64(s, seed), oracle::siphash24(oracle::seed_key(seed), s));
    }
  }
}

TEST(ClkTest, PositionsFollowDoubleHashing) {
  BfParams params;
  params.length = 37;
  params.num_hashes = 50;
  const std::string gram = "er";
  const std::uint64_t a = oracle::siphash24(oracle::seed_key(params.hash_seed_a), gram);
  const std::uint64_t b = oracle::siphash24(oracle::seed_key(params.hash_seed_b), gram);
  const auto pos = gram_positions(gram, params);
  ASSERT_EQ(pos.size(), 50u);
  for (std::uint64_t i = 1; i <= 50; ++i) {
    const unsigned __int128 exact =
        static_cast<unsigned __int128>(a) + static_cast<unsigned __int128>(i) * b;
    EXPECT_EQ(pos[i - 1], static_cast<std::size_t>(exact % 37)) << i;
  }
}

TEST(ClkTest, EncodingIsDeterministicAndNormalized) {
  BfParams params;
  Record a{"1", {"Peter", "Christen"}};
  Record b{"2", {" peter ", "CHRISTEN"}};
  EXPECT_EQ(encode_clk(a, params), encode_clk(b, params));
  EXPECT_LE(encode_clk(a, params).popcount(),
            params.num_hashes * distinct_gram_count(a.qid_values, params));
  const std::vector<std::size_t> first = {0};
  EXPECT_NE(encode_clk(a, first, params), encode_clk(a, params));
  const std::vector<std::size_t> bad = {5};
  EXPECT_THROW(encode_clk(a, bad, params), InvalidArgument);
}

TEST(ClkTest, DifferentSeedsGiveDifferentEncodings) {
  BfParams params;
  BfParams other = params;
  other.hash_seed_a = 99;
  Record r{"1", {"vasiliki", "vidanage"}};
  EXPECT_NE(encode_clk(r, params), encode_clk(r, other));
}

TEST(BloomFilterTest, StringRoundTrip) {
  auto bf = BloomFilter::from_string("0110001");
  EXPECT_EQ(bf.size(), 7u);
  EXPECT_EQ(bf.popcount(), 3u);
  EXPECT_TRUE(bf.test(1));
  EXPECT_FALSE(bf.test(0));
  EXPECT_EQ(bf.to_string(), "0110001");
  EXPECT_THROW(BloomFilter::from_string("01x"), InvalidArgument);
}

TEST(SimilarityTest, DiceOfExamples) {
  std::vector<BloomFilter> s = {BloomFilter::from_string("1101"),
                                BloomFilter::from_string("1100"),
                                BloomFilter::from_string("1110")};
  // Positions 0 and 1 are set everywhere: 3 * 2 / (3 + 2 + 3).
  EXPECT_DOUBLE_EQ(dice_bf(s), 6.0 / 8.0);
  const auto cbf = sum_to_cbf(s);
  EXPECT_THAT(std::vector<int>(cbf.counts().begin(), cbf.counts().end()),
              ElementsAre(3, 3, 1, 1));
  EXPECT_EQ(dice_cbf(cbf), dice_bf(s));
}

TEST(SimilarityTest, EdgeCases) {
  std::vector<BloomFilter> zeros(3, BloomFilter(8));
  EXPECT_EQ(dice_bf(zeros), 0.0);
  std::vector<BloomFilter> one = {BloomFilter(8)};
  EXPECT_THROW(dice_bf(one), InvalidArgument);
  std::vector<BloomFilter> mixed = {BloomFilter(8), BloomFilter(9)};
  EXPECT_THROW(dice_bf(mixed), IncompatibleEncoding);
  const std::vector<std::int32_t> bad = {0, 4};
  EXPECT_THROW(dice_from_counts(bad, 3), ProtocolViolation);
}

TEST(SimilarityTest, CountingFilterEqualsPlainDiceOnRandomSets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t p = 2 + trial % 5;
    const std::size_t l = trial % 2 ? 14 : 129;
    std::vector<BloomFilter> s;
    for (std::size_t i = 0; i < p; ++i) s.push_back(oracle::random_filter(l, 0.4, rng));
    const double expected = oracle::dice(s);
    EXPECT_EQ(dice_bf(s), expected);
    EXPECT_EQ(dice_cbf(sum_to_cbf(s)), expected);
  }
}

TEST(SimilarityTest, SumRejectsLengthMismatch) {
  std::vector<BloomFilter> s = {BloomFilter(4), BloomFilter(5)};
  EXPECT_THROW(sum_to_cbf(s), IncompatibleEncoding);
}

TEST(AnalysisTest, OptimalK) {
  EXPECT_EQ(optimal_k(500, 17), 20u);
  EXPECT_EQ(optimal_k(1000, 50), 14u);
  EXPECT_EQ(optimal_k(10, 100), 1u);
  EXPECT_THROW(optimal_k(0, 1), InvalidArgument);
}

TEST(AnalysisTest, FalsePositiveRate) {
  EXPECT_NEAR(false_positive_rate(100, 100), 0.6185, 1e-4);
  EXPECT_NEAR(false_positive_rate(500, 50), 0.00819, 1e-4);
}

TEST(AnalysisTest, MemoryBits) {
  EXPECT_EQ(memory_bits(1000, 5), (MemoryBits{3000, 5000}));
  EXPECT_EQ(memory_bits(1000, 10), (MemoryBits{4000, 10000}));
  EXPECT_EQ(memory_bits(10, 1), (MemoryBits{10, 10}));
}

}  // namespace
}  // namespace pprl

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

#include <vector>

#include "gtest/gtest.h"
#include "pprl/blocking/blocks.h"
#include "pprl/blocking/soundex.h"
#include "pprl/common/error.h"

namespace pprl {
namespace {

TEST(SoundexTest, ReferenceCodes) {
  EXPECT_EQ(soundex("Robert"), "R163");
  EXPECT_EQ(soundex("Rupert"), "R163");
  EXPECT_EQ(soundex("Rubin"), "R150");
  EXPECT_EQ(soundex("Ashcraft"), "A261");
  EXPECT_EQ(soundex("Tymczak"), "T522");
  EXPECT_EQ(soundex("Pfister"), "P236");
  EXPECT_EQ(soundex("Honeyman"), "H555");
  EXPECT_EQ(soundex("peter"), "P360");
  EXPECT_EQ(soundex("pete"), "P300");
}

TEST(SoundexTest, DegenerateInputs) {
  EXPECT_EQ(soundex(""), kDegenerateSoundex);
  EXPECT_EQ(soundex("123"), kDegenerateSoundex);
  EXPECT_EQ(soundex("o'brien"), soundex("obrien"));
}

TEST(BlockingTest, KeysConcatenateAttributeCodes) {
  Record r{"1", {"Peter", "Christen", "Canberra"}};
  const std::vector<std::size_t> attrs = {0, 1};
  EXPECT_EQ(block_key(r, attrs), "P360C623");
  const std::vector<std::size_t> none;
  EXPECT_EQ(block_key(r, none), "");
  const std::vector<std::size_t> bad = {3};
  EXPECT_THROW(block_key(r, bad), InvalidArgument);
}

TEST(BlockingTest, BuildAndIntersect) {
  const std::vector<std::size_t> attrs = {0};
  std::vector<Record> a = {{"1", {"peter"}}, {"2", {"pete"}}, {"3", {"piter"}}};
  std::vector<Record> b = {{"4", {"peter"}}, {"5", {"anna"}}};
  std::vector<BlockMap> maps = {build_blocks(a, attrs), build_blocks(b, attrs)};
  EXPECT_EQ(maps[0].records("P360").size(), 2u);
  EXPECT_EQ(maps[0].record_count(), 3u);
  EXPECT_TRUE(maps[0].records("XXXX").empty());
  EXPECT_EQ(intersect_blocks(maps), (std::vector<BlockKey>{"P360"}));
  std::vector<BlockMap> single = {maps[0]};
  EXPECT_THROW(intersect_blocks(single), InvalidArgument);
}

}  // namespace
}  // namespace pprl

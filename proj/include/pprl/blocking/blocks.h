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

#ifndef PPRL_BLOCKING_BLOCKS_H_
#define PPRL_BLOCKING_BLOCKS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pprl/encoding/bloom_filter.h"

namespace pprl {

// Concatenated Soundex codes of the blocking attributes.
using BlockKey = std::string;

// Block key -> indices of the party's records in that block (ascending).
// Every record sits in exactly one block.
class BlockMap {
 public:
  void add(const BlockKey& key, std::uint32_t record) {
    blocks_[key].push_back(record);
  }

  const std::map<BlockKey, std::vector<std::uint32_t>>& blocks() const {
    return blocks_;
  }
  bool contains(const BlockKey& key) const { return blocks_.contains(key); }
  // Records of `key`; empty when the party has no such block.
  std::span<const std::uint32_t> records(const BlockKey& key) const;
  std::size_t record_count() const;
  bool empty() const { return blocks_.empty(); }

 private:
  std::map<BlockKey, std::vector<std::uint32_t>> blocks_;
};

BlockKey block_key(const Record& record,
                   std::span<const std::size_t> blocking_attrs);

// Throws InvalidArgument if an attribute index exceeds a record's schema.
BlockMap build_blocks(std::span<const Record> records,
                      std::span<const std::size_t> blocking_attrs);

// Keys present in every map, sorted. Requires at least two maps.
std::vector<BlockKey> intersect_blocks(std::span<const BlockMap> maps);

}  // namespace pprl

#endif  // PPRL_BLOCKING_BLOCKS_H_

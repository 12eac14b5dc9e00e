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

#include "pprl/blocking/blocks.h"

#include "pprl/blocking/soundex.h"
#include "pprl/common/error.h"
#include "pprl/encoding/text.h"

namespace pprl {

std::span<const std::uint32_t> BlockMap::records(const BlockKey& key) const {
  auto it = blocks_.find(key);
  if (it == blocks_.end()) return {};
  return it->second;
}

std::size_t BlockMap::record_count() const {
  std::size_t n = 0;
  for (const auto& [key, recs] : blocks_) n += recs.size();
  return n;
}

BlockKey block_key(const Record& record,
                   std::span<const std::size_t> blocking_attrs) {
  BlockKey key;
  for (std::size_t attr : blocking_attrs) {
    if (attr >= record.qid_values.size()) {
      throw InvalidArgument("blocking attribute " + std::to_string(attr) +
                            " out of range");
    }
    key += soundex(normalize_value(record.qid_values[attr]));
  }
  return key;
}

BlockMap build_blocks(std::span<const Record> records,
                      std::span<const std::size_t> blocking_attrs) {
  BlockMap map;
  for (std::size_t i = 0; i < records.size(); ++i) {
    map.add(block_key(records[i], blocking_attrs),
            static_cast<std::uint32_t>(i));
  }
  return map;
}

std::vector<BlockKey> intersect_blocks(std::span<const BlockMap> maps) {
  if (maps.size() < 2) {
    throw InvalidArgument("block intersection needs at least two parties");
  }
  std::vector<BlockKey> common;
  for (const auto& [key, recs] : maps.front().blocks()) {
    bool everywhere = true;
    for (std::size_t i = 1; i < maps.size() && everywhere; ++i) {
      everywhere = maps[i].contains(key);
    }
    if (everywhere) common.push_back(key);
  }
  return common;
}

}  // namespace pprl

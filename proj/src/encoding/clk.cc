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

#include "pprl/encoding/clk.h"

#include <sodium.h>

#include <array>
#include <mutex>
#include <set>

#include "pprl/common/error.h"
#include "pprl/encoding/text.h"

namespace pprl {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  });
}

void store_le64(std::uint64_t v, unsigned char* out) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

template <typename Fn>
void for_each_gram(std::span<const std::string> values, const BfParams& params,
                   Fn&& fn) {
  for (const std::string& raw : values) {
    for (const std::string& gram :
         extract_qgrams(normalize_value(raw), params.gram_length,
                        params.pad_grams)) {
      fn(gram);
    }
  }
}

}  // namespace

std::uint64_t keyed_hash64(std::string_view data, std::uint64_t seed) {
  static_assert(crypto_shorthash_BYTES == 8 && crypto_shorthash_KEYBYTES == 16);
  ensure_sodium();
  std::array<unsigned char, crypto_shorthash_KEYBYTES> key{};
  store_le64(seed, key.data());
  store_le64(~seed, key.data() + 8);
  std::array<unsigned char, crypto_shorthash_BYTES> out{};
  crypto_shorthash(out.data(),
                   reinterpret_cast<const unsigned char*>(data.data()),
                   data.size(), key.data());
  std::uint64_t h = 0;
  for (int i = 7; i >= 0; --i) h = (h << 8) | out[static_cast<std::size_t>(i)];
  return h;
}

std::vector<std::size_t> gram_positions(std::string_view gram,
                                        const BfParams& params) {
  const std::uint64_t l = params.length;
  const std::uint64_t a = keyed_hash64(gram, params.hash_seed_a) % l;
  const std::uint64_t b = keyed_hash64(gram, params.hash_seed_b) % l;
  std::vector<std::size_t> positions;
  positions.reserve(params.num_hashes);
  for (std::uint64_t i = 1; i <= params.num_hashes; ++i) {
    positions.push_back(static_cast<std::size_t>((a + (i % l) * b) % l));
  }
  return positions;
}

BloomFilter encode_values(std::span<const std::string> values,
                          const BfParams& params) {
  params.validate();
  BloomFilter bf(params.length);
  for_each_gram(values, params, [&](const std::string& gram) {
    for (std::size_t pos : gram_positions(gram, params)) bf.set(pos);
  });
  return bf;
}

BloomFilter encode_clk(const Record& record, const BfParams& params) {
  return encode_values(record.qid_values, params);
}

BloomFilter encode_clk(const Record& record, std::span<const std::size_t> attrs,
                       const BfParams& params) {
  std::vector<std::string> values;
  values.reserve(attrs.size());
  for (std::size_t a : attrs) {
    if (a >= record.qid_values.size()) {
      throw InvalidArgument("QID attribute index " + std::to_string(a) +
                            " out of range for record with " +
                            std::to_string(record.qid_values.size()) +
                            " values");
    }
    values.push_back(record.qid_values[a]);
  }
  return encode_values(values, params);
}

std::size_t distinct_gram_count(std::span<const std::string> values,
                                const BfParams& params) {
  std::set<std::string> grams;
  for_each_gram(values, params,
                [&](const std::string& gram) { grams.insert(gram); });
  return grams.size();
}

}  // namespace pprl

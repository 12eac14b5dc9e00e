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

#ifndef PPRL_ENCODING_BLOOM_FILTER_H_
#define PPRL_ENCODING_BLOOM_FILTER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pprl {

// Parameters every party agrees on before encoding. Equal parameters give
// bit-identical encodings for equal inputs.
struct BfParams {
  std::size_t length = 500;      // l
  std::size_t num_hashes = 20;   // k
  std::size_t gram_length = 2;   // q
  std::uint64_t hash_seed_a = 0x5eed0001;
  std::uint64_t hash_seed_b = 0x5eed0002;
  bool pad_grams = false;

  // Throws InvalidArgument unless l, k, q >= 1.
  void validate() const;

  friend bool operator==(const BfParams&, const BfParams&) = default;
};

// A party-local row. `entity_id` is ground truth for evaluation only and
// never reaches the encoder.
struct Record {
  std::string entity_id;
  std::vector<std::string> qid_values;

  friend bool operator==(const Record&, const Record&) = default;
};

// Fixed-length bit vector, packed into 64-bit words. Bits past `size()` in
// the last word are always zero.
class BloomFilter {
 public:
  BloomFilter() = default;
  explicit BloomFilter(std::size_t length);

  // Parses a string of '0'/'1' characters, position 0 first.
  static BloomFilter from_string(std::string_view bits);

  std::size_t size() const { return length_; }
  bool test(std::size_t pos) const {
    return (words_[pos / 64] >> (pos % 64)) & 1u;
  }
  void set(std::size_t pos) { words_[pos / 64] |= std::uint64_t{1} << (pos % 64); }

  std::size_t popcount() const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::string to_string() const;

  friend bool operator==(const BloomFilter&, const BloomFilter&) = default;

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

// Position-wise sum of `contributors` Bloom filters. Once masks or salts are
// removed every count lies in [0, contributors].
class CountingBloomFilter {
 public:
  CountingBloomFilter() = default;
  CountingBloomFilter(std::vector<std::int32_t> counts,
                      std::size_t contributors);

  std::size_t size() const { return counts_.size(); }
  std::size_t contributors() const { return contributors_; }
  std::span<const std::int32_t> counts() const { return counts_; }
  std::int32_t operator[](std::size_t pos) const { return counts_[pos]; }

  // True when every count lies in [0, contributors].
  bool in_range() const;

  friend bool operator==(const CountingBloomFilter&,
                         const CountingBloomFilter&) = default;

 private:
  std::vector<std::int32_t> counts_;
  std::size_t contributors_ = 0;
};

// c = sum_i b_i. Throws InvalidArgument on an empty list and
// IncompatibleEncoding on a length mismatch.
CountingBloomFilter sum_to_cbf(std::span<const BloomFilter> filters);

}  // namespace pprl

#endif  // PPRL_ENCODING_BLOOM_FILTER_H_

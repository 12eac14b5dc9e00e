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

#include "pprl/securesum/summation.h"

#include <bit>
#include <string>
#include <utility>

#include "pprl/common/error.h"

namespace pprl {

namespace {

void require_scheme(const MaskedVector& v, Scheme scheme) {
  if (v.scheme() != scheme) {
    throw InvalidArgument(std::string("expected a ") +
                          std::string(scheme_name(scheme)) + " vector, got " +
                          std::string(scheme_name(v.scheme())));
  }
}

void require_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw IncompatibleEncoding("vector lengths differ (" + std::to_string(a) +
                               " vs " + std::to_string(b) + ")");
  }
}

void add_bits(std::span<std::int32_t> acc, const BloomFilter& bf) {
  const auto words = bf.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      acc[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))] += 1;
      bits &= bits - 1;
    }
  }
}

CountingBloomFilter checked_cbf(std::vector<std::int32_t> counts,
                                std::size_t contributors) {
  CountingBloomFilter cbf(std::move(counts), contributors);
  if (!cbf.in_range()) {
    throw ProtocolViolation(
        "unmasked count outside [0, " + std::to_string(contributors) +
        "]: wrong mask, missing salt, or protocol violation");
  }
  return cbf;
}

}  // namespace

MaskedVector bss_add(MaskedVector acc, const BloomFilter& bf) {
  require_scheme(acc, Scheme::kBss);
  require_length(acc.size(), bf.size());
  add_bits(acc.mutable_plain(), bf);
  acc.bump_hop();
  return acc;
}

CountingBloomFilter bss_unmask(const MaskedVector& final_sum,
                               const RandomMaskVector& mask,
                               std::size_t contributors) {
  if (final_sum.scheme() == Scheme::kHss) {
    throw InvalidArgument("HSS vectors are unmasked by decryption");
  }
  require_length(final_sum.size(), mask.values.size());
  std::vector<std::int32_t> counts(final_sum.plain().begin(),
                                   final_sum.plain().end());
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] -= mask.values[i];
  return checked_cbf(std::move(counts), contributors);
}

MaskedVector sss_add(MaskedVector acc, const BloomFilter& bf,
                     const SaltKey& salt, std::uint64_t record_tag) {
  require_scheme(acc, Scheme::kSss);
  require_length(acc.size(), bf.size());
  auto values = acc.mutable_plain();
  add_bits(values, bf);
  const std::vector<std::int32_t> s = salt_vector(salt, record_tag, bf.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += s[i];
  acc.bump_hop();
  return acc;
}

CountingBloomFilter sss_unmask(const MaskedVector& final_sum,
                               const RandomMaskVector& mask,
                               std::span<const SaltShare> salts,
                               std::size_t contributors) {
  require_scheme(final_sum, Scheme::kSss);
  require_length(final_sum.size(), mask.values.size());
  std::vector<std::int32_t> counts(final_sum.plain().begin(),
                                   final_sum.plain().end());
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] -= mask.values[i];
  for (const SaltShare& share : salts) {
    const std::vector<std::int32_t> s =
        salt_vector(share.salt, share.record_tag, counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] -= s[i];
  }
  return checked_cbf(std::move(counts), contributors);
}

EncryptedBloomFilter encrypt_bloom_filter(const BloomFilter& bf,
                                          const PaillierPublicKey& key,
                                          BigRandom& rng) {
  EncryptedBloomFilter out;
  out.values.reserve(bf.size());
  const mpz_class zero(0);
  const mpz_class one(1);
  for (std::size_t i = 0; i < bf.size(); ++i) {
    out.values.push_back(key.encrypt(bf.test(i) ? one : zero, rng));
  }
  return out;
}

MaskedVector hss_add(MaskedVector acc, const EncryptedBloomFilter& bf,
                     const PaillierPublicKey& key) {
  require_scheme(acc, Scheme::kHss);
  require_length(acc.size(), bf.values.size());
  auto values = acc.mutable_cipher();
  for (std::size_t i = 0; i < values.size(); ++i) {
    key.check_range(values[i]);
    values[i] *= bf.values[i];
    values[i] %= key.n_squared();
  }
  acc.bump_hop();
  return acc;
}

MaskedVector hss_add(MaskedVector acc, const BloomFilter& bf,
                     const PaillierPublicKey& key, BigRandom& rng) {
  require_scheme(acc, Scheme::kHss);
  require_length(acc.size(), bf.size());
  return hss_add(std::move(acc), encrypt_bloom_filter(bf, key, rng), key);
}

CountingBloomFilter hss_unmask(const MaskedVector& final_sum,
                               const PaillierKeypair& keypair,
                               std::size_t contributors) {
  require_scheme(final_sum, Scheme::kHss);
  std::vector<std::int32_t> counts(final_sum.size());
  const auto cipher = final_sum.cipher();
  for (std::size_t i = 0; i < cipher.size(); ++i) {
    keypair.public_key.check_ciphertext(cipher[i]);
    const mpz_class m = keypair.private_key.decrypt(cipher[i]);
    if (m > static_cast<long>(contributors)) {
      throw ProtocolViolation("decrypted count " + m.get_str() +
                              " exceeds contributor count " +
                              std::to_string(contributors));
    }
    counts[i] = static_cast<std::int32_t>(m.get_si());
  }
  return checked_cbf(std::move(counts), contributors);
}

}  // namespace pprl

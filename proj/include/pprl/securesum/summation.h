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

#ifndef PPRL_SECURESUM_SUMMATION_H_
#define PPRL_SECURESUM_SUMMATION_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pprl/encoding/bloom_filter.h"
#include "pprl/securesum/masked_vector.h"
#include "pprl/securesum/paillier.h"

namespace pprl {

// Basic secure summation: acc + bf, one more hop.
MaskedVector bss_add(MaskedVector acc, const BloomFilter& bf);

// final - mask. Throws ProtocolViolation if any count leaves
// [0, contributors] (wrong mask or tampered vector).
CountingBloomFilter bss_unmask(const MaskedVector& final_sum,
                               const RandomMaskVector& mask,
                               std::size_t contributors);

// Salted summation: acc + bf + salt_vector(salt, record_tag).
MaskedVector sss_add(MaskedVector acc, const BloomFilter& bf,
                     const SaltKey& salt, std::uint64_t record_tag);

// One salt the unmasking party must remove: which key, for which record.
struct SaltShare {
  SaltKey salt;
  std::uint64_t record_tag = 0;
};

// final - mask - sum of the contributors' salt vectors, range-checked as in
// bss_unmask. A withheld salt leaves its (2^16-wide) vector in place and
// fails the range check.
CountingBloomFilter sss_unmask(const MaskedVector& final_sum,
                               const RandomMaskVector& mask,
                               std::span<const SaltShare> salts,
                               std::size_t contributors);

// A party's filter encrypted position by position, reusable across every
// candidate set its record joins.
struct EncryptedBloomFilter {
  std::vector<mpz_class> values;
};

EncryptedBloomFilter encrypt_bloom_filter(const BloomFilter& bf,
                                          const PaillierPublicKey& key,
                                          BigRandom& rng);

// Homomorphic summation: position-wise acc * Enc(bf) mod n^2.
MaskedVector hss_add(MaskedVector acc, const BloomFilter& bf,
                     const PaillierPublicKey& key, BigRandom& rng);
MaskedVector hss_add(MaskedVector acc, const EncryptedBloomFilter& bf,
                     const PaillierPublicKey& key);

// Decrypts every position; range-checked as in bss_unmask. Only the holder
// of the private key can call this.
CountingBloomFilter hss_unmask(const MaskedVector& final_sum,
                               const PaillierKeypair& keypair,
                               std::size_t contributors);

}  // namespace pprl

#endif  // PPRL_SECURESUM_SUMMATION_H_

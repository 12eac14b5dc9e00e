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

#ifndef PPRL_SECURESUM_MASKED_VECTOR_H_
#define PPRL_SECURESUM_MASKED_VECTOR_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pprl/common/types.h"

namespace pprl {

// Secure-summation variants: basic random-vector masking, Paillier
// homomorphic addition, and random-vector masking plus per-party salts.
enum class Scheme { kBss, kHss, kSss };

std::string_view scheme_name(Scheme scheme);
// Accepts "BSS", "HSS", "SSS" in any case. Throws ConfigError otherwise.
Scheme parse_scheme(std::string_view name);

// Masks are drawn uniformly from [0, 2^16) per position.
inline constexpr std::int32_t kMaskRange = 1 << 16;

// R'[cs]: the random vector the mask owner injects at the start of a
// summation round. Regenerable from (owner seed, set id); never sent to
// anyone but the first contributor.
struct RandomMaskVector {
  PartyId owner = kLinkageUnit;
  std::uint64_t set_id = 0;
  std::vector<std::int32_t> values;

  static RandomMaskVector derive(std::uint64_t owner_seed, std::uint64_t set_id,
                                 std::size_t length, PartyId owner);
  static RandomMaskVector zero(std::size_t length, PartyId owner);
};

// A party's salting key, registered only with the unmasking party.
struct SaltKey {
  PartyId party = 0;
  std::uint64_t key = 0;
  PartyId registered_with = kLinkageUnit;
};

// The salt a party adds alongside one of its records. Derived from the key
// and the record's tag so that equal records in different candidate sets get
// equal salts and different records get independent ones. Key 0 yields the
// all-zero vector.
std::vector<std::int32_t> salt_vector(const SaltKey& salt,
                                      std::uint64_t record_tag,
                                      std::size_t length);

// A partial sum in transit. Under BSS/SSS `plain()` holds integers; under
// HSS `cipher()` holds ciphertexts modulo n^2.
class MaskedVector {
 public:
  MaskedVector() = default;

  // Round start for BSS/SSS: the mask itself, zero hops.
  static MaskedVector from_mask(const RandomMaskVector& mask, Scheme scheme);
  // Round start carrying an already unmasked partial count (re-masked).
  static MaskedVector from_masked_counts(std::span<const std::int32_t> counts,
                                         const RandomMaskVector& mask,
                                         Scheme scheme);
  // HSS round start: trivial encryptions of zero (ciphertext 1).
  static MaskedVector hss_identity(std::size_t length);
  // HSS round start from ciphertexts (e.g. an encrypted carried count).
  static MaskedVector hss_from_ciphertexts(std::vector<mpz_class> values);
  // Plain vector with an explicit hop count; used when decoding.
  static MaskedVector plain_values(Scheme scheme, std::vector<std::int32_t> values,
                                   std::size_t hop_count);

  Scheme scheme() const { return scheme_; }
  std::size_t hop_count() const { return hop_count_; }
  std::size_t size() const {
    return scheme_ == Scheme::kHss ? cipher_.size() : plain_.size();
  }
  std::span<const std::int32_t> plain() const { return plain_; }
  std::span<const mpz_class> cipher() const { return cipher_; }

  std::span<std::int32_t> mutable_plain() { return plain_; }
  std::span<mpz_class> mutable_cipher() { return cipher_; }
  void bump_hop() { ++hop_count_; }

  friend bool operator==(const MaskedVector&, const MaskedVector&) = default;

 private:
  Scheme scheme_ = Scheme::kBss;
  std::size_t hop_count_ = 0;
  std::vector<std::int32_t> plain_;
  std::vector<mpz_class> cipher_;
};

}  // namespace pprl

#endif  // PPRL_SECURESUM_MASKED_VECTOR_H_

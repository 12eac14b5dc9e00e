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

#include "pprl/securesum/masked_vector.h"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "pprl/common/error.h"
#include "pprl/securesum/prf.h"

namespace pprl {

namespace {

void fill_uniform16(KeyedStream& stream, std::vector<std::int32_t>& out) {
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i % 4 == 0) word = stream.next();
    out[i] = static_cast<std::int32_t>((word >> (16 * (i % 4))) & 0xFFFF);
  }
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kBss:
      return "BSS";
    case Scheme::kHss:
      return "HSS";
    case Scheme::kSss:
      return "SSS";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "BSS") return Scheme::kBss;
  if (upper == "HSS") return Scheme::kHss;
  if (upper == "SSS") return Scheme::kSss;
  throw ConfigError("unknown secure-summation scheme '" + std::string(name) +
                    "'");
}

RandomMaskVector RandomMaskVector::derive(std::uint64_t owner_seed,
                                          std::uint64_t set_id,
                                          std::size_t length, PartyId owner) {
  RandomMaskVector mask{owner, set_id, std::vector<std::int32_t>(length)};
  KeyedStream stream(owner_seed, set_id);
  fill_uniform16(stream, mask.values);
  return mask;
}

RandomMaskVector RandomMaskVector::zero(std::size_t length, PartyId owner) {
  return {owner, 0, std::vector<std::int32_t>(length, 0)};
}

std::vector<std::int32_t> salt_vector(const SaltKey& salt,
                                      std::uint64_t record_tag,
                                      std::size_t length) {
  std::vector<std::int32_t> out(length, 0);
  if (salt.key == 0) return out;
  KeyedStream stream(salt.key, record_tag);
  fill_uniform16(stream, out);
  return out;
}

MaskedVector MaskedVector::from_mask(const RandomMaskVector& mask,
                                     Scheme scheme) {
  if (scheme == Scheme::kHss) {
    throw InvalidArgument("HSS rounds start from encryptions, not masks");
  }
  MaskedVector v;
  v.scheme_ = scheme;
  v.plain_ = mask.values;
  return v;
}

MaskedVector MaskedVector::from_masked_counts(
    std::span<const std::int32_t> counts, const RandomMaskVector& mask,
    Scheme scheme) {
  if (counts.size() != mask.values.size()) {
    throw IncompatibleEncoding("carried counts and mask differ in length");
  }
  MaskedVector v = from_mask(mask, scheme);
  for (std::size_t i = 0; i < counts.size(); ++i) v.plain_[i] += counts[i];
  return v;
}

MaskedVector MaskedVector::hss_identity(std::size_t length) {
  MaskedVector v;
  v.scheme_ = Scheme::kHss;
  v.cipher_.assign(length, mpz_class(1));
  return v;
}

MaskedVector MaskedVector::hss_from_ciphertexts(std::vector<mpz_class> values) {
  MaskedVector v;
  v.scheme_ = Scheme::kHss;
  v.cipher_ = std::move(values);
  return v;
}

MaskedVector MaskedVector::plain_values(Scheme scheme,
                                        std::vector<std::int32_t> values,
                                        std::size_t hop_count) {
  if (scheme == Scheme::kHss) {
    throw InvalidArgument("HSS vectors carry ciphertexts");
  }
  MaskedVector v;
  v.scheme_ = scheme;
  v.plain_ = std::move(values);
  v.hop_count_ = hop_count;
  return v;
}

}  // namespace pprl

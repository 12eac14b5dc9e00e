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

#ifndef PPRL_SIMNET_WIRE_H_
#define PPRL_SIMNET_WIRE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pprl/common/types.h"
#include "pprl/securesum/masked_vector.h"
#include "pprl/securesum/paillier.h"

namespace pprl {

// How message sizes are charged to the traffic ledger. kFixed charges 2 bytes
// per position for plain vectors and 4 for ciphertexts and ignores framing
// metadata; kActual charges the true serialized widths.
enum class AccountingMode { kFixed, kActual };

std::string_view accounting_mode_name(AccountingMode mode);
AccountingMode parse_accounting_mode(std::string_view name);

inline constexpr std::size_t kFixedPlainWidth = 2;
inline constexpr std::size_t kFixedCipherWidth = 4;

struct WireFormat {
  AccountingMode mode = AccountingMode::kFixed;
  std::size_t header_bytes = 16;
  // Width of one HSS ciphertext in kActual mode.
  std::size_t ciphertext_bytes = 0;
};

// A tuple of records (one per contributing party, in route order) and its
// partial sum in transit. The first `carried` members were folded into the
// round's starting vector by the unmasking party; the rest contribute hops.
struct CandidateSet {
  std::vector<RecordRef> members;
  std::uint64_t set_id = 0;
  std::uint32_t carried = 0;
  MaskedVector partial;

  std::size_t contributors() const { return members.size(); }
};

struct CandidateBatch {
  std::uint64_t block = 0;
  std::string stage;
  std::vector<CandidateSet> sets;
};

struct BkvAnnouncement {
  PartyId party = 0;
  // Sorted block keys, each with the opaque ids of the party's records in it.
  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> keys;
};

struct BlockIntersection {
  std::vector<std::string> keys;
};

struct PublicKeyAnnouncement {
  PartyId holder = 0;
  PaillierPublicKey key;
};

struct SaltRegistration {
  PartyId party = 0;
  std::uint64_t run_id = 0;
  std::uint64_t salt_key = 0;
};

struct MatchEntry {
  std::vector<RecordRef> members;
  double similarity = 0.0;
};

struct MatchList {
  std::uint64_t block = 0;
  std::string stage;
  std::vector<MatchEntry> matches;
};

using Payload = std::variant<BkvAnnouncement, BlockIntersection,
                             PublicKeyAnnouncement, SaltRegistration,
                             CandidateBatch, MatchList>;

enum class MessageKind {
  kBkvAnnouncement,
  kBlockIntersection,
  kPublicKey,
  kSaltRegistration,
  kMaskedBatch,
  kMatchList,
};

std::string_view message_kind_name(MessageKind kind);

struct Message {
  PartyId from = 0;
  PartyId to = 0;
  std::string step;
  Payload payload;

  MessageKind kind() const { return static_cast<MessageKind>(payload.index()); }
};

// Bytes charged for one message, split by what they carry.
struct WireSize {
  std::size_t header = 0;
  std::size_t vector_values = 0;  // masked-vector positions only
  std::size_t other = 0;          // ids, keys, metadata

  std::size_t total() const { return header + vector_values + other; }
};

WireSize wire_size(const Payload& payload, const WireFormat& format);

// Byte-level encodings of the externally visible messages, in the kActual
// widths: little-endian integers; ciphertexts big-endian, zero-padded to
// `ciphertext_bytes`.
//
//   MaskedVector:     u8 scheme | u32 hop_count | u32 length | values
//   SaltRegistration: u32 party | u64 run_id | u64 salt_key
//   BkvAnnouncement:  u32 party | u32 count |
//                     (u16 len | key bytes | u32 n | u32 id * n)*
std::string serialize_masked_vector(const MaskedVector& v,
                                    std::size_t ciphertext_bytes);
MaskedVector deserialize_masked_vector(std::string_view bytes,
                                       std::size_t ciphertext_bytes);
std::string serialize_salt_registration(const SaltRegistration& reg);
SaltRegistration deserialize_salt_registration(std::string_view bytes);
std::string serialize_bkv_announcement(const BkvAnnouncement& bkv);
BkvAnnouncement deserialize_bkv_announcement(std::string_view bytes);

}  // namespace pprl

#endif  // PPRL_SIMNET_WIRE_H_

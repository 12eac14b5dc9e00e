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

#include "pprl/simnet/wire.h"

#include <type_traits>

#include "pprl/common/error.h"

namespace pprl {

namespace {

constexpr std::size_t kRecordRefBytes = 8;
constexpr std::size_t kVectorFrameBytes = 1 + 4 + 4;

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void put_le(std::string& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t le(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string_view take(std::size_t n) {
    need(n);
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  void finish() const {
    if (pos_ != bytes_.size()) throw InvalidArgument("trailing bytes in message");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw InvalidArgument("truncated message");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::size_t vector_value_bytes(const MaskedVector& v, const WireFormat& f) {
  const bool hss = v.scheme() == Scheme::kHss;
  std::size_t width;
  if (f.mode == AccountingMode::kFixed) {
    width = hss ? kFixedCipherWidth : kFixedPlainWidth;
  } else {
    width = hss ? f.ciphertext_bytes : sizeof(std::int32_t);
  }
  return width * v.size();
}

}  // namespace

std::string_view accounting_mode_name(AccountingMode mode) {
  return mode == AccountingMode::kFixed ? "fixed" : "actual";
}

AccountingMode parse_accounting_mode(std::string_view name) {
  if (name == "fixed") return AccountingMode::kFixed;
  if (name == "actual") return AccountingMode::kActual;
  throw InvalidArgument("unknown accounting mode: " + std::string(name));
}

std::string_view message_kind_name(MessageKind kind) {
  switch (kind) {
    case MessageKind::kBkvAnnouncement: return "bkv";
    case MessageKind::kBlockIntersection: return "intersection";
    case MessageKind::kPublicKey: return "public-key";
    case MessageKind::kSaltRegistration: return "salt";
    case MessageKind::kMaskedBatch: return "masked-batch";
    case MessageKind::kMatchList: return "matches";
  }
  return "unknown";
}

WireSize wire_size(const Payload& payload, const WireFormat& format) {
  const bool actual = format.mode == AccountingMode::kActual;
  WireSize size;
  size.header = format.header_bytes;
  std::visit(
      Overloaded{
          [&](const BkvAnnouncement& m) {
            size.other = 8;
            for (const auto& [key, ids] : m.keys) {
              size.other += 2 + key.size() + 4 + 4 * ids.size();
            }
          },
          [&](const BlockIntersection& m) {
            size.other = 4;
            for (const auto& key : m.keys) size.other += 2 + key.size();
          },
          [&](const PublicKeyAnnouncement& m) {
            size.other = 4 + (mpz_sizeinbase(m.key.n().get_mpz_t(), 2) + 7) / 8;
          },
          [&](const SaltRegistration&) { size.other = 20; },
          [&](const CandidateBatch& m) {
            for (const auto& set : m.sets) {
              size.vector_values += vector_value_bytes(set.partial, format);
              if (actual) {
                size.other += kVectorFrameBytes + 8 + 4 +
                              kRecordRefBytes * set.members.size();
              }
            }
            if (actual) size.other += 8 + 4 + m.stage.size() + 4;
          },
          [&](const MatchList& m) {
            size.other = 8 + 4;
            for (const auto& e : m.matches) {
              size.other += 4 + kRecordRefBytes * e.members.size() + 8;
            }
          },
      },
      payload);
  return size;
}

std::string serialize_masked_vector(const MaskedVector& v,
                                    std::size_t ciphertext_bytes) {
  std::string out;
  put_le(out, static_cast<std::uint64_t>(v.scheme()), 1);
  put_le(out, v.hop_count(), 4);
  put_le(out, v.size(), 4);
  if (v.scheme() != Scheme::kHss) {
    for (std::int32_t x : v.plain()) put_le(out, static_cast<std::uint32_t>(x), 4);
    return out;
  }
  for (const mpz_class& c : v.cipher()) {
    const std::size_t len = (mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8;
    if (len > ciphertext_bytes) {
      throw InvalidArgument("ciphertext wider than the declared width");
    }
    std::string buf(ciphertext_bytes, '\0');
    std::size_t written = 0;
    mpz_export(buf.data() + (ciphertext_bytes - len), &written, 1, 1, 1, 0,
               c.get_mpz_t());
    out += buf;
  }
  return out;
}

MaskedVector deserialize_masked_vector(std::string_view bytes,
                                       std::size_t ciphertext_bytes) {
  Reader r(bytes);
  const auto tag = r.le(1);
  if (tag > static_cast<std::uint64_t>(Scheme::kSss)) {
    throw InvalidArgument("unknown scheme tag");
  }
  const auto scheme = static_cast<Scheme>(tag);
  const auto hops = r.le(4);
  const auto length = r.le(4);
  if (scheme != Scheme::kHss) {
    std::vector<std::int32_t> values(length);
    for (auto& x : values) x = static_cast<std::int32_t>(static_cast<std::uint32_t>(r.le(4)));
    r.finish();
    return MaskedVector::plain_values(scheme, std::move(values), hops);
  }
  if (ciphertext_bytes == 0) throw InvalidArgument("ciphertext width is zero");
  std::vector<mpz_class> values(length);
  for (auto& c : values) {
    std::string_view raw = r.take(ciphertext_bytes);
    mpz_import(c.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  }
  r.finish();
  MaskedVector v = MaskedVector::hss_from_ciphertexts(std::move(values));
  for (std::uint64_t i = 0; i < hops; ++i) v.bump_hop();
  return v;
}

std::string serialize_salt_registration(const SaltRegistration& reg) {
  std::string out;
  put_le(out, reg.party, 4);
  put_le(out, reg.run_id, 8);
  put_le(out, reg.salt_key, 8);
  return out;
}

SaltRegistration deserialize_salt_registration(std::string_view bytes) {
  Reader r(bytes);
  SaltRegistration reg;
  reg.party = static_cast<PartyId>(r.le(4));
  reg.run_id = r.le(8);
  reg.salt_key = r.le(8);
  r.finish();
  return reg;
}

std::string serialize_bkv_announcement(const BkvAnnouncement& bkv) {
  std::string out;
  put_le(out, bkv.party, 4);
  put_le(out, bkv.keys.size(), 4);
  for (const auto& [key, ids] : bkv.keys) {
    if (key.size() > 0xFFFF) throw InvalidArgument("block key too long");
    put_le(out, key.size(), 2);
    out += key;
    put_le(out, ids.size(), 4);
    for (std::uint32_t id : ids) put_le(out, id, 4);
  }
  return out;
}

BkvAnnouncement deserialize_bkv_announcement(std::string_view bytes) {
  Reader r(bytes);
  BkvAnnouncement bkv;
  bkv.party = static_cast<PartyId>(r.le(4));
  const auto n = r.le(4);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto len = r.le(2);
    std::string key(r.take(len));
    const auto count = r.le(4);
    std::vector<std::uint32_t> ids;
    for (std::uint64_t j = 0; j < count; ++j) {
      ids.push_back(static_cast<std::uint32_t>(r.le(4)));
    }
    bkv.keys.emplace_back(std::move(key), std::move(ids));
  }
  r.finish();
  return bkv;
}

}  // namespace pprl

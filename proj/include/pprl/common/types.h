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

#ifndef PPRL_COMMON_TYPES_H_
#define PPRL_COMMON_TYPES_H_

#include <compare>
#include <cstdint>
#include <string>

namespace pprl {

// Parties are numbered 1..p; 0 is reserved for the linkage unit.
using PartyId = std::uint32_t;
inline constexpr PartyId kLinkageUnit = 0;

inline std::string party_name(PartyId id) {
  return id == kLinkageUnit ? std::string("LU") : "P" + std::to_string(id);
}

// Identifies one record of one party (index into that party's database).
struct RecordRef {
  PartyId party = 0;
  std::uint32_t record = 0;

  friend auto operator<=>(const RecordRef&, const RecordRef&) = default;
};

}  // namespace pprl

#endif  // PPRL_COMMON_TYPES_H_

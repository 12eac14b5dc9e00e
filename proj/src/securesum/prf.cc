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

#include "pprl/securesum/prf.h"

#include <array>
#include <string>

#include "pprl/encoding/clk.h"

namespace pprl {

namespace {

std::string_view pack(std::array<char, 16>& buf, std::uint64_t a,
                      std::uint64_t b) {
  for (int i = 0; i < 8; ++i) {
    buf[static_cast<std::size_t>(i)] = static_cast<char>(a >> (8 * i));
    buf[static_cast<std::size_t>(8 + i)] = static_cast<char>(b >> (8 * i));
  }
  return {buf.data(), buf.size()};
}

}  // namespace

std::uint64_t KeyedStream::next() {
  std::array<char, 16> buf{};
  return keyed_hash64(pack(buf, stream_, counter_++), seed_);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return keyed_hash64(label, seed);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b) {
  std::array<char, 16> buf{};
  return keyed_hash64(pack(buf, a, b), seed ^ 0xA5A5A5A5A5A5A5A5ULL);
}

}  // namespace pprl

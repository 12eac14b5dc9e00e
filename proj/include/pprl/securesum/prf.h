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

#ifndef PPRL_SECURESUM_PRF_H_
#define PPRL_SECURESUM_PRF_H_

#include <cstdint>
#include <string_view>

namespace pprl {

// Keyed pseudo-random stream: word j is SipHash(seed; stream || j). Any word
// of any stream can be recomputed from (seed, stream) alone, which is what
// lets a mask owner regenerate R'[cs] at unmasking time.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

// Derives an independent sub-seed for a labelled purpose.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace pprl

#endif  // PPRL_SECURESUM_PRF_H_

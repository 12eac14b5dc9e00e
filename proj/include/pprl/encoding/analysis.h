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

#ifndef PPRL_ENCODING_ANALYSIS_H_
#define PPRL_ENCODING_ANALYSIS_H_

#include <cstddef>

namespace pprl {

// Hash count minimising the false-positive rate for g grams in l bits,
// round(l/g * ln 2) rounded half away from zero and clamped to >= 1.
std::size_t optimal_k(std::size_t l, std::size_t g);

// (2^-ln2)^(l/g): collision probability at the optimal hash count.
double false_positive_rate(std::size_t l, std::size_t g);

struct MemoryBits {
  std::size_t cbf_bits = 0;
  std::size_t bf_bits = 0;

  friend bool operator==(const MemoryBits&, const MemoryBits&) = default;
};

// Storage for one counting filter over p parties, l * ceil(log2 p) bits
// (l when p = 1), against l * p bits for the p separate filters.
MemoryBits memory_bits(std::size_t l, std::size_t p);

}  // namespace pprl

#endif  // PPRL_ENCODING_ANALYSIS_H_

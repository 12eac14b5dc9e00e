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

#include "pprl/encoding/analysis.h"

#include <cmath>
#include <numbers>

#include "pprl/common/error.h"

namespace pprl {

std::size_t optimal_k(std::size_t l, std::size_t g) {
  if (l == 0 || g == 0) throw InvalidArgument("optimal_k needs l, g >= 1");
  const double k = static_cast<double>(l) / static_cast<double>(g) *
                   std::numbers::ln2;
  const double rounded = std::round(k);  // half away from zero
  return rounded < 1.0 ? 1 : static_cast<std::size_t>(rounded);
}

double false_positive_rate(std::size_t l, std::size_t g) {
  if (l == 0 || g == 0) {
    throw InvalidArgument("false_positive_rate needs l, g >= 1");
  }
  return std::pow(std::pow(2.0, -std::numbers::ln2),
                  static_cast<double>(l) / static_cast<double>(g));
}

MemoryBits memory_bits(std::size_t l, std::size_t p) {
  if (p == 0) throw InvalidArgument("memory_bits needs p >= 1");
  std::size_t bits_per_position = 0;
  while ((std::size_t{1} << bits_per_position) < p) ++bits_per_position;
  if (bits_per_position == 0) bits_per_position = 1;
  return {l * bits_per_position, l * p};
}

}  // namespace pprl

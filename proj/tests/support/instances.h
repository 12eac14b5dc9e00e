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

#ifndef PPRL_TESTS_SUPPORT_INSTANCES_H_
#define PPRL_TESTS_SUPPORT_INSTANCES_H_

#include <random>
#include <string>
#include <vector>

#include "pprl/protocol/linkage.h"

namespace pprl::testing_support {

inline std::string random_word(std::mt19937_64& rng, std::size_t len) {
  std::string s;
  std::uniform_int_distribution<int> letter('a', 'z');
  for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<char>(letter(rng)));
  return s;
}

// Random instance: a few first names shared across parties so blocks
// intersect; last names are either shared (with a random edit) or fresh.
inline std::vector<PartyDatabase> random_instance(std::mt19937_64& rng, std::size_t p,
                                           std::size_t max_per_block) {
  const std::vector<std::string> firsts = {"anna", "bruno", "carla"};
  std::vector<std::string> lasts;
  for (int i = 0; i < 4; ++i) lasts.push_back(random_word(rng, 7));
  std::vector<PartyDatabase> dbs;
  for (std::size_t i = 0; i < p; ++i) {
    PartyDatabase db{static_cast<PartyId>(i + 1), {}};
    for (const auto& first : firsts) {
      const std::size_t n = 1 + rng() % max_per_block;
      for (std::size_t j = 0; j < n; ++j) {
        std::string last = lasts[rng() % lasts.size()];
        if (rng() % 3 == 0) last[rng() % last.size()] = static_cast<char>('a' + rng() % 26);
        if (rng() % 5 == 0) last = random_word(rng, 6);
        db.records.push_back({first + "-" + std::to_string(j), {first, last}});
      }
    }
    dbs.push_back(std::move(db));
  }
  return dbs;
}

}  // namespace pprl::testing_support

#endif  // PPRL_TESTS_SUPPORT_INSTANCES_H_

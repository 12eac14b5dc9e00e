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

#ifndef PPRL_DATAGEN_POPULATION_H_
#define PPRL_DATAGEN_POPULATION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pprl/encoding/bloom_filter.h"

namespace pprl {

// Attribute order of generated records and CSV files.
inline constexpr std::size_t kFirstName = 0;
inline constexpr std::size_t kLastName = 1;
inline constexpr std::size_t kCity = 2;
inline constexpr std::size_t kZipcode = 3;

// Value lists sampled with Zipf-like weights: entry i has weight
// 1 / (i + 1)^exponent.
struct PopulationTables {
  std::vector<std::string> first_names;
  std::vector<std::string> last_names;
  std::vector<std::string> cities;
  double exponent = 0.5;

  static const PopulationTables& builtin();
};

// Samples `count` distinct people. Entity ids are "E" followed by a zero-padded
// index; no two entities share the same first name, last name and city.
// Throws InvalidArgument when the tables cannot supply that many.
std::vector<Record> sample_population(std::size_t count, std::uint64_t seed,
                                      const PopulationTables& tables =
                                          PopulationTables::builtin());

}  // namespace pprl

#endif  // PPRL_DATAGEN_POPULATION_H_

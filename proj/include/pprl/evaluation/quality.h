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

#ifndef PPRL_EVALUATION_QUALITY_H_
#define PPRL_EVALUATION_QUALITY_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pprl {

struct ConfusionCounts {
  std::uint64_t true_positives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Both throw InvalidArgument when the denominator is zero.
double precision(const ConfusionCounts& counts);
double recall(const ConfusionCounts& counts);

// Harmonic mean of precision and recall; 0 when both are 0. Throws
// InvalidArgument when all three counts are zero.
double f_measure(const ConfusionCounts& counts);

// `classified` holds the entity ids of each classified record set. A set is
// a true positive iff all its ids are equal; every true entity in
// `true_entities` not found by some true positive is a false negative.
ConfusionCounts evaluate_matches(std::span<const std::vector<std::string>> classified,
                                 const std::set<std::string>& true_entities);

}  // namespace pprl

#endif  // PPRL_EVALUATION_QUALITY_H_

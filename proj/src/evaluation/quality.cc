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

#include "pprl/evaluation/quality.h"

#include <algorithm>

#include "pprl/common/error.h"

namespace pprl {

double precision(const ConfusionCounts& c) {
  const auto denom = c.true_positives + c.false_positives;
  if (denom == 0) throw InvalidArgument("precision undefined: nothing classified");
  return static_cast<double>(c.true_positives) / static_cast<double>(denom);
}

double recall(const ConfusionCounts& c) {
  const auto denom = c.true_positives + c.false_negatives;
  if (denom == 0) throw InvalidArgument("recall undefined: no true matches");
  return static_cast<double>(c.true_positives) / static_cast<double>(denom);
}

double f_measure(const ConfusionCounts& c) {
  if (c.true_positives + c.false_positives + c.false_negatives == 0) {
    throw InvalidArgument("f-measure undefined for all-zero counts");
  }
  // tp = 0 gives precision + recall = 0 (or an undefined side), scored as 0.
  if (c.true_positives == 0) return 0.0;
  const double p = precision(c);
  const double r = recall(c);
  return 2.0 * p * r / (p + r);
}

ConfusionCounts evaluate_matches(std::span<const std::vector<std::string>> classified,
                                 const std::set<std::string>& true_entities) {
  ConfusionCounts out;
  std::set<std::string> found;
  for (const auto& ids : classified) {
    const bool same = !ids.empty() && std::all_of(ids.begin(), ids.end(),
                                                   [&](const auto& id) { return id == ids[0]; });
    if (same) {
      ++out.true_positives;
      found.insert(ids[0]);
    } else {
      ++out.false_positives;
    }
  }
  for (const auto& id : true_entities) {
    if (!found.count(id)) ++out.false_negatives;
  }
  return out;
}

}  // namespace pprl

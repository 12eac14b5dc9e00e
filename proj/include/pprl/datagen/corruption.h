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

#ifndef PPRL_DATAGEN_CORRUPTION_H_
#define PPRL_DATAGEN_CORRUPTION_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pprl {

enum class CorruptionOp { kInsert, kDelete, kSubstitute, kTranspose, kOcr, kPhonetic };

std::string_view corruption_op_name(CorruptionOp op);
CorruptionOp parse_corruption_op(std::string_view name);

struct SubstitutionRule {
  std::string from;
  std::string to;
};

// Lookup tables for the OCR and phonetic operations.
struct CorruptionTables {
  std::vector<SubstitutionRule> ocr;
  std::vector<SubstitutionRule> phonetic;

  static const CorruptionTables& builtin();
};

// Reads one rule per line as `from<TAB>to` or `from,to`; blank lines and
// lines starting with '#' are skipped. Throws ParseError on malformed lines.
std::vector<SubstitutionRule> read_substitution_rules(std::istream& in);

struct Corruption {
  std::string value;
  // False when the operation could not apply (e.g. deleting from ""), in
  // which case `value` is the input unchanged.
  bool applied = false;
};

// One modification of kind `op` at a position drawn from `seed`. Positions
// are 0-based character indices.
Corruption corrupt_value(std::string_view value, CorruptionOp op, std::uint64_t seed,
                         const CorruptionTables& tables = CorruptionTables::builtin());

// The same edits at an explicit position. For insert and substitute `letter`
// is the new character. For the table-driven operations `position` indexes
// the list of (offset, rule) sites where a rule matches, in offset order.
Corruption corrupt_at(std::string_view value, CorruptionOp op, std::size_t position,
                      char32_t letter = U'x',
                      const CorruptionTables& tables = CorruptionTables::builtin());

struct CorruptionSpec {
  double rate = 0.0;
  std::map<CorruptionOp, double> weights = {
      {CorruptionOp::kInsert, 1.0 / 6}, {CorruptionOp::kDelete, 1.0 / 6},
      {CorruptionOp::kSubstitute, 1.0 / 6}, {CorruptionOp::kTranspose, 1.0 / 6},
      {CorruptionOp::kOcr, 1.0 / 6}, {CorruptionOp::kPhonetic, 1.0 / 6}};
  std::size_t modifications_per_record = 1;
  std::uint64_t seed = 0;

  // Throws InvalidArgument unless rate is in [0, 1], weights are
  // non-negative and sum to 1.
  void validate() const;
};

}  // namespace pprl

#endif  // PPRL_DATAGEN_CORRUPTION_H_

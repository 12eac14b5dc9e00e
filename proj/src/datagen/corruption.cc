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

#include "pprl/datagen/corruption.h"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "pprl/common/error.h"
#include "pprl/encoding/text.h"

namespace pprl {

namespace {

struct Site {
  std::size_t offset;
  const SubstitutionRule* rule;
};

std::vector<Site> rule_sites(const std::u32string& text,
                             const std::vector<SubstitutionRule>& rules) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (const auto& rule : rules) {
      const std::u32string from = decode_utf8(rule.from);
      if (!from.empty() && text.compare(i, from.size(), from) == 0) {
        sites.push_back({i, &rule});
      }
    }
  }
  return sites;
}

bool all_digits(const std::u32string& text) {
  if (text.empty()) return false;
  for (char32_t c : text) {
    if (c < U'0' || c > U'9') return false;
  }
  return true;
}

char32_t random_letter(std::mt19937_64& rng, bool digits, char32_t avoid) {
  const int span = digits ? 10 : 26;
  const char32_t base = digits ? U'0' : U'a';
  std::uniform_int_distribution<int> pick(0, span - 2);
  auto c = static_cast<char32_t>(base + pick(rng));
  if (c >= avoid && avoid >= base && avoid < base + span) ++c;
  return c;
}

std::vector<SubstitutionRule> make_rules(
    std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<SubstitutionRule> out;
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

std::string_view corruption_op_name(CorruptionOp op) {
  switch (op) {
    case CorruptionOp::kInsert: return "insert";
    case CorruptionOp::kDelete: return "delete";
    case CorruptionOp::kSubstitute: return "substitute";
    case CorruptionOp::kTranspose: return "transpose";
    case CorruptionOp::kOcr: return "ocr";
    case CorruptionOp::kPhonetic: return "phonetic";
  }
  return "unknown";
}

CorruptionOp parse_corruption_op(std::string_view name) {
  for (auto op : {CorruptionOp::kInsert, CorruptionOp::kDelete, CorruptionOp::kSubstitute,
                  CorruptionOp::kTranspose, CorruptionOp::kOcr, CorruptionOp::kPhonetic}) {
    if (corruption_op_name(op) == name) return op;
  }
  throw InvalidArgument("unknown corruption operation: " + std::string(name));
}

const CorruptionTables& CorruptionTables::builtin() {
  static const CorruptionTables tables{
      make_rules({{"m", "rn"}, {"rn", "m"}, {"w", "vv"}, {"vv", "w"}, {"d", "cl"},
                  {"cl", "d"}, {"l", "1"}, {"1", "l"}, {"o", "0"}, {"0", "o"},
                  {"s", "5"}, {"5", "s"}, {"b", "8"}, {"8", "b"}, {"g", "9"},
                  {"9", "g"}, {"i", "l"}, {"u", "v"}, {"h", "b"}, {"e", "c"},
                  {"z", "2"}, {"2", "z"}}),
      make_rules({{"ph", "f"}, {"f", "ph"}, {"ck", "k"}, {"k", "ck"}, {"c", "k"},
                  {"ei", "ie"}, {"ie", "ei"}, {"y", "i"}, {"i", "y"}, {"z", "s"},
                  {"s", "z"}, {"th", "t"}, {"ou", "ow"}, {"ow", "ou"}, {"mb", "m"},
                  {"gh", "g"}, {"dt", "t"}, {"ae", "e"}, {"x", "ks"}, {"q", "k"},
                  {"w", "v"}, {"ee", "ea"}, {"ea", "ee"}, {"er", "ar"}}),
  };
  return tables;
}

std::vector<SubstitutionRule> read_substitution_rules(std::istream& in) {
  std::vector<SubstitutionRule> rules;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::size_t sep = line.find('\t');
    if (sep == std::string::npos) sep = line.find(',');
    if (sep == std::string::npos || sep == 0) {
      throw ParseError("expected 'from<TAB>to' or 'from,to'", number);
    }
    rules.push_back({line.substr(0, sep), line.substr(sep + 1)});
  }
  return rules;
}

Corruption corrupt_at(std::string_view value, CorruptionOp op, std::size_t position,
                      char32_t letter, const CorruptionTables& tables) {
  std::u32string text = decode_utf8(value);
  const Corruption unchanged{std::string(value), false};
  switch (op) {
    case CorruptionOp::kInsert:
      if (position > text.size()) return unchanged;
      text.insert(text.begin() + position, letter);
      break;
    case CorruptionOp::kDelete:
      if (position >= text.size()) return unchanged;
      text.erase(position, 1);
      break;
    case CorruptionOp::kSubstitute:
      if (position >= text.size() || text[position] == letter) return unchanged;
      text[position] = letter;
      break;
    case CorruptionOp::kTranspose:
      if (position + 1 >= text.size() || text[position] == text[position + 1]) {
        return unchanged;
      }
      std::swap(text[position], text[position + 1]);
      break;
    case CorruptionOp::kOcr:
    case CorruptionOp::kPhonetic: {
      const auto& rules = op == CorruptionOp::kOcr ? tables.ocr : tables.phonetic;
      const auto sites = rule_sites(text, rules);
      if (position >= sites.size()) return unchanged;
      const Site& site = sites[position];
      text.replace(site.offset, decode_utf8(site.rule->from).size(),
                   decode_utf8(site.rule->to));
      break;
    }
  }
  return {encode_utf8(text), true};
}

Corruption corrupt_value(std::string_view value, CorruptionOp op, std::uint64_t seed,
                         const CorruptionTables& tables) {
  std::mt19937_64 rng(seed);
  const std::u32string text = decode_utf8(value);
  const bool digits = all_digits(text);
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  switch (op) {
    case CorruptionOp::kInsert: {
      const std::size_t pos = pick(text.size() + 1);
      return corrupt_at(value, op, pos, random_letter(rng, digits, 0), tables);
    }
    case CorruptionOp::kDelete:
      if (text.empty()) return {std::string(value), false};
      return corrupt_at(value, op, pick(text.size()), 0, tables);
    case CorruptionOp::kSubstitute: {
      if (text.empty()) return {std::string(value), false};
      const std::size_t pos = pick(text.size());
      return corrupt_at(value, op, pos, random_letter(rng, digits, text[pos]), tables);
    }
    case CorruptionOp::kTranspose: {
      // Only pairs of distinct neighbours give a visible change.
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] != text[i + 1]) candidates.push_back(i);
      }
      if (candidates.empty()) return {std::string(value), false};
      return corrupt_at(value, op, candidates[pick(candidates.size())], 0, tables);
    }
    case CorruptionOp::kOcr:
    case CorruptionOp::kPhonetic: {
      const auto sites =
          rule_sites(text, op == CorruptionOp::kOcr ? tables.ocr : tables.phonetic);
      if (sites.empty()) return {std::string(value), false};
      return corrupt_at(value, op, pick(sites.size()), 0, tables);
    }
  }
  return {std::string(value), false};
}

void CorruptionSpec::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidArgument("corruption rate must lie in [0, 1]");
  double sum = 0.0;
  for (const auto& [op, w] : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("corruption weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("corruption weights must sum to 1");
}

}  // namespace pprl

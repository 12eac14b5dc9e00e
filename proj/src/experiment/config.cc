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

#include "pprl/experiment/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "pprl/common/error.h"
#include "pprl/datagen/csv.h"

namespace pprl {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  if (trim(value).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = value.find(',', start);
    out.push_back(trim(value.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += items[i];
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string value = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError("invalid value '" + value + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string value = trim(text);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("invalid boolean '" + value + "' for " + std::string(key));
}

std::vector<std::size_t> parse_attrs(std::string_view key, std::string_view value) {
  const auto names = default_qid_columns();
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value)) {
    std::size_t index = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == item) index = i;
    }
    if (index == names.size()) index = parse_number<std::size_t>(key, item);
    if (index >= names.size()) {
      throw ConfigError("attribute '" + item + "' out of range for " + std::string(key));
    }
    out.push_back(index);
  }
  return out;
}

std::string format_attrs(const std::vector<std::size_t>& attrs) {
  const auto names = default_qid_columns();
  std::vector<std::string> out;
  for (std::size_t a : attrs) out.push_back(a < names.size() ? names[a] : std::to_string(a));
  return join(out);
}

std::map<CorruptionOp, double> parse_weights(std::string_view value) {
  std::map<CorruptionOp, double> out;
  for (const auto& item : split_list(value)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("corruption_weights entries look like op:weight, got '" + item + "'");
    }
    try {
      out[parse_corruption_op(trim(item.substr(0, colon)))] =
          parse_number<double>("corruption_weights", item.substr(colon + 1));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

std::string format_weights(const std::map<CorruptionOp, double>& weights) {
  std::vector<std::string> out;
  for (const auto& [op, w] : weights) {
    out.push_back(std::string(corruption_op_name(op)) + ":" + format_double(w));
  }
  return join(out);
}

std::vector<SubstitutionRule> load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rule file " + path);
  return read_substitution_rules(in);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void apply_setting(ExperimentConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  DatagenSpec& g = c.datagen;
  LinkageConfig& l = c.linkage;
  try {
    if (key == "datasets") {
      c.datasets = split_list(value);
    } else if (key == "parties") {
      g.parties = parse_number<std::size_t>(key, value);
    } else if (key == "records") {
      g.records = parse_number<std::size_t>(key, value);
    } else if (key == "overlap") {
      g.overlap = parse_number<double>(key, value);
    } else if (key == "corruption_rate") {
      g.corruption.rate = parse_number<double>(key, value);
    } else if (key == "corruption_modifications") {
      g.corruption.modifications_per_record = parse_number<std::size_t>(key, value);
    } else if (key == "corruption_weights") {
      g.corruption.weights = parse_weights(value);
    } else if (key == "corruption_seed") {
      g.corruption.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "datagen_seed") {
      g.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "population") {
      g.population = parse_number<std::size_t>(key, value);
    } else if (key == "ocr_table") {
      c.ocr_table = value;
    } else if (key == "phonetic_table") {
      c.phonetic_table = value;
    } else if (key == "l") {
      l.params.length = parse_number<std::size_t>(key, value);
    } else if (key == "k") {
      l.params.num_hashes = parse_number<std::size_t>(key, value);
    } else if (key == "q") {
      l.params.gram_length = parse_number<std::size_t>(key, value);
    } else if (key == "pad_grams") {
      l.params.pad_grams = parse_bool(key, value);
    } else if (key == "hash_seed_a") {
      l.params.hash_seed_a = parse_number<std::uint64_t>(key, value);
    } else if (key == "hash_seed_b") {
      l.params.hash_seed_b = parse_number<std::uint64_t>(key, value);
    } else if (key == "threshold" || key == "s_t") {
      l.threshold = parse_number<double>(key, value);
    } else if (key == "pattern") {
      l.pattern = parse_pattern(value);
    } else if (key == "scheme") {
      l.scheme = parse_scheme(value);
    } else if (key == "min_ring_size" || key == "r_m") {
      l.min_ring_size = parse_number<std::size_t>(key, value);
    } else if (key == "blocking_attrs") {
      l.blocking_attrs = parse_attrs(key, value);
    } else if (key == "qid_attrs") {
      l.qid_attrs = parse_attrs(key, value);
    } else if (key == "seed") {
      l.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "seq_dice_denominator") {
      l.seq_dice_denominator = parse_seq_dice_denominator(value);
    } else if (key == "per_ring_encoding") {
      l.per_ring_encoding = parse_bool(key, value);
    } else if (key == "paillier_bits") {
      l.paillier_bits = parse_number<std::size_t>(key, value);
    } else if (key == "accounting") {
      l.wire.mode = parse_accounting_mode(value);
    } else if (key == "header_bytes") {
      l.wire.header_bytes = parse_number<std::size_t>(key, value);
    } else if (key == "interleaving") {
      l.schedule.interleaving = parse_interleaving(value);
    } else if (key == "schedule_seed") {
      l.schedule.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "privacy") {
      c.privacy = parse_bool(key, value);
    } else if (key == "output") {
      c.output = value;
    } else {
      throw ConfigError("unknown setting '" + key + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(e.what()) + " (setting " + key + ")");
  }
}

ExperimentConfig parse_experiment_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", number);
    try {
      apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), number);
    }
  }
  return base;
}

void apply_overrides(ExperimentConfig& config, const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + item + "' lacks '='");
    apply_setting(config, item.substr(0, eq), item.substr(eq + 1));
  }
}

std::vector<std::pair<std::string, std::string>> resolved_settings(const ExperimentConfig& c) {
  const DatagenSpec& g = c.datagen;
  const LinkageConfig& l = c.linkage;
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"datasets", join(c.datasets)},
      {"parties", std::to_string(g.parties)},
      {"records", std::to_string(g.records)},
      {"overlap", format_double(g.overlap)},
      {"corruption_rate", format_double(g.corruption.rate)},
      {"corruption_modifications", std::to_string(g.corruption.modifications_per_record)},
      {"corruption_weights", format_weights(g.corruption.weights)},
      {"corruption_seed", std::to_string(g.corruption.seed)},
      {"datagen_seed", std::to_string(g.seed)},
      {"population", std::to_string(g.population)},
      {"ocr_table", c.ocr_table},
      {"phonetic_table", c.phonetic_table},
      {"l", std::to_string(l.params.length)},
      {"k", std::to_string(l.params.num_hashes)},
      {"q", std::to_string(l.params.gram_length)},
      {"pad_grams", b(l.params.pad_grams)},
      {"hash_seed_a", std::to_string(l.params.hash_seed_a)},
      {"hash_seed_b", std::to_string(l.params.hash_seed_b)},
      {"threshold", format_double(l.threshold)},
      {"pattern", std::string(pattern_name(l.pattern))},
      {"scheme", std::string(scheme_name(l.scheme))},
      {"min_ring_size", std::to_string(l.min_ring_size)},
      {"blocking_attrs", format_attrs(l.blocking_attrs)},
      {"qid_attrs", format_attrs(l.qid_attrs)},
      {"seed", std::to_string(l.seed)},
      {"seq_dice_denominator", std::string(seq_dice_denominator_name(l.seq_dice_denominator))},
      {"per_ring_encoding", b(l.per_ring_encoding)},
      {"paillier_bits", std::to_string(l.paillier_bits)},
      {"accounting", std::string(accounting_mode_name(l.wire.mode))},
      {"header_bytes", std::to_string(l.wire.header_bytes)},
      {"interleaving", std::string(interleaving_name(l.schedule.interleaving))},
      {"schedule_seed", std::to_string(l.schedule.seed)},
      {"privacy", b(c.privacy)},
      {"output", c.output},
  };
}

CorruptionTables corruption_tables(const ExperimentConfig& config) {
  CorruptionTables tables = CorruptionTables::builtin();
  if (!config.ocr_table.empty()) tables.ocr = load_rules(config.ocr_table);
  if (!config.phonetic_table.empty()) tables.phonetic = load_rules(config.phonetic_table);
  return tables;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& base, const SweepAxes& axes) {
  auto or_base = [](const auto& axis, auto value) {
    using T = decltype(value);
    return axis.empty() ? std::vector<T>{value} : std::vector<T>(axis.begin(), axis.end());
  };
  const auto ps = or_base(axes.parties, base.datagen.parties);
  const auto ns = or_base(axes.records, base.datagen.records);
  const auto patterns = or_base(axes.patterns, base.linkage.pattern);
  const auto schemes = or_base(axes.schemes, base.linkage.scheme);
  const auto rates = or_base(axes.corruption_rates, base.datagen.corruption.rate);
  std::vector<ExperimentConfig> out;
  for (std::size_t p : ps) {
    for (std::size_t n : ns) {
      for (double rate : rates) {
        const auto rate_bits = static_cast<std::uint64_t>(std::llround(rate * 1e6));
        const std::uint64_t data_seed = derive(base.datagen.seed, p, n, rate_bits);
        for (Pattern pattern : patterns) {
          for (Scheme scheme : schemes) {
            ExperimentConfig c = base;
            c.datagen.parties = p;
            c.datagen.records = n;
            c.datagen.corruption.rate = rate;
            c.datagen.seed = data_seed;
            c.linkage.pattern = pattern;
            c.linkage.scheme = scheme;
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace pprl

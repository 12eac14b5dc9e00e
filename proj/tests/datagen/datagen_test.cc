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

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "pprl/common/error.h"
#include "pprl/datagen/corruption.h"
#include "pprl/datagen/csv.h"
#include "pprl/datagen/generator.h"
#include "pprl/datagen/population.h"
#include "pprl/encoding/text.h"

namespace pprl {
namespace {

using ::testing::ElementsAre;

// Character-level Levenshtein distance with adjacent transpositions.
std::size_t osa_distance(const std::string& a8, const std::string& b8) {
  const std::u32string a = decode_utf8(a8);
  const std::u32string b = decode_utf8(b8);
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
      }
    }
  }
  return d[a.size()][b.size()];
}

TEST(CorruptAt, PositionArithmetic) {
  EXPECT_EQ(corrupt_at("peter", CorruptionOp::kDelete, 1).value, "pter");
  EXPECT_EQ(corrupt_at("peter", CorruptionOp::kTranspose, 0).value, "epter");
  EXPECT_EQ(corrupt_at("peter", CorruptionOp::kInsert, 5, U's').value, "peters");
  EXPECT_EQ(corrupt_at("peter", CorruptionOp::kSubstitute, 0, U'm').value, "meter");
  EXPECT_EQ(corrupt_at("müller", CorruptionOp::kDelete, 1).value, "mller");
}

TEST(CorruptAt, TableRules) {
  // Sites of "mary" under the OCR table: m->rn at offset 0 only.
  EXPECT_EQ(corrupt_at("mary", CorruptionOp::kOcr, 0).value, "rnary");
  EXPECT_EQ(corrupt_at("philip", CorruptionOp::kPhonetic, 0).value, "filip");
  EXPECT_FALSE(corrupt_at("aaa", CorruptionOp::kPhonetic, 0).applied);
}

TEST(CorruptValue, EmptyInputs) {
  const Corruption ins = corrupt_value("", CorruptionOp::kInsert, 7);
  EXPECT_TRUE(ins.applied);
  EXPECT_EQ(decode_utf8(ins.value).size(), 1u);
  for (auto op : {CorruptionOp::kDelete, CorruptionOp::kSubstitute, CorruptionOp::kTranspose,
                  CorruptionOp::kOcr, CorruptionOp::kPhonetic}) {
    const Corruption c = corrupt_value("", op, 7);
    EXPECT_FALSE(c.applied) << corruption_op_name(op);
    EXPECT_EQ(c.value, "");
  }
  EXPECT_FALSE(corrupt_value("aa", CorruptionOp::kTranspose, 1).applied);
}

TEST(CorruptValue, FrozenSeeds) {
  EXPECT_EQ(corrupt_value("peter", CorruptionOp::kDelete, 3).value,
            corrupt_value("peter", CorruptionOp::kDelete, 3).value);
  // Frozen from a fixed-seed run.
  EXPECT_EQ(corrupt_value("peter", CorruptionOp::kDelete, 16).value, "pter");
  EXPECT_EQ(corrupt_value("peter", CorruptionOp::kTranspose, 0).value,
            "epter");
}

TEST(CorruptValue, ExactlyOneEdit) {
  const std::vector<std::string> words = {"peter", "christine", "raleigh", "27601", "o"};
  for (const auto& w : words) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      for (auto op : {CorruptionOp::kInsert, CorruptionOp::kDelete, CorruptionOp::kSubstitute,
                      CorruptionOp::kTranspose}) {
        const Corruption c = corrupt_value(w, op, seed);
        if (!c.applied) continue;
        EXPECT_EQ(osa_distance(w, c.value), 1u) << w << " " << corruption_op_name(op);
      }
    }
  }
}

TEST(CorruptValue, DigitsStayDigits) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string v = corrupt_value("27601", CorruptionOp::kSubstitute, seed).value;
    EXPECT_EQ(v.find_first_not_of("0123456789"), std::string::npos) << v;
  }
}

TEST(Corruption, RuleFiles) {
  std::istringstream in("# comment\nm\trn\n\nph,f\n");
  const auto rules = read_substitution_rules(in);
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].from, "m");
  EXPECT_EQ(rules[0].to, "rn");
  EXPECT_EQ(rules[1].to, "f");
  std::istringstream bad("ok,fine\nbroken\n");
  try {
    read_substitution_rules(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(CorruptionSpec, Validation) {
  CorruptionSpec spec;
  EXPECT_NO_THROW(spec.validate());
  spec.rate = 1.5;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.rate = 0.2;
  spec.weights = {{CorruptionOp::kInsert, 0.5}};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.weights = {{CorruptionOp::kInsert, 1.5}, {CorruptionOp::kDelete, -0.5}};
  EXPECT_THROW(spec.validate(), InvalidArgument);
}

TEST(Population, DistinctAndDeterministic) {
  const auto a = sample_population(2000, 11);
  const auto b = sample_population(2000, 11);
  EXPECT_EQ(a, b);
  std::set<std::string> ids;
  std::set<std::vector<std::string>> people;
  for (const auto& r : a) {
    ids.insert(r.entity_id);
    people.insert({r.qid_values[kFirstName], r.qid_values[kLastName], r.qid_values[kCity]});
    ASSERT_EQ(r.qid_values.size(), 4u);
    EXPECT_EQ(r.qid_values[kZipcode].size(), 5u);
  }
  EXPECT_EQ(ids.size(), 2000u);
  EXPECT_EQ(people.size(), 2000u);
  EXPECT_EQ(a.front().entity_id, "E0000000");
  PopulationTables tiny{{"a"}, {"b"}, {"c"}, 0.5};
  EXPECT_THROW(sample_population(2, 1, tiny), InvalidArgument);
}

TEST(Generate, ZeroCorruptionKeepsOverlapIdentical) {
  const auto base = sample_population(500, 3);
  const auto ds = generate(base, 3, 100, 0.5, CorruptionSpec{}, 9);
  ASSERT_EQ(ds.parties.size(), 3u);
  EXPECT_EQ(ds.ground_truth.size(), 50u);
  std::map<std::string, Record> original;
  for (const auto& r : base) original[r.entity_id] = r;
  for (const auto& party : ds.parties) {
    EXPECT_EQ(party.size(), 100u);
    for (const auto& r : party) {
      if (ds.ground_truth.count(r.entity_id)) {
        EXPECT_EQ(r, original[r.entity_id]);
      }
    }
  }
  EXPECT_TRUE(ds.corrupted_copies.empty());
}

TEST(Generate, FullOverlapSingleRecord) {
  const auto base = sample_population(1, 3);
  const auto ds = generate(base, 2, 1, 1.0, CorruptionSpec{}, 1);
  EXPECT_THAT(ds.parties[0], ElementsAre(base[0]));
  EXPECT_THAT(ds.parties[1], ElementsAre(base[0]));
}

TEST(Generate, InsufficientBase) {
  const auto base = sample_population(100, 3);
  EXPECT_EQ(required_population(3, 60, 0.5), 120u);
  EXPECT_THROW(generate(base, 3, 60, 0.5, CorruptionSpec{}, 1), InvalidArgument);
  EXPECT_THROW(generate(base, 3, 10, 1.5, CorruptionSpec{}, 1), InvalidArgument);
}

TEST(Generate, GroundTruthConservation) {
  const auto base = sample_population(3000, 5);
  CorruptionSpec spec;
  spec.rate = 0.4;
  spec.modifications_per_record = 2;
  for (std::size_t p : {2u, 3u, 5u}) {
    const auto ds = generate(base, p, 400, 0.5, spec, 77 + p);
    std::map<std::string, std::size_t> holders;
    for (const auto& party : ds.parties) {
      ASSERT_EQ(party.size(), 400u);
      std::set<std::string> local;
      for (const auto& r : party) {
        EXPECT_TRUE(local.insert(r.entity_id).second);
        ++holders[r.entity_id];
      }
    }
    EXPECT_EQ(ds.ground_truth.size(), 200u);
    for (const auto& [id, count] : holders) {
      EXPECT_EQ(count, ds.ground_truth.count(id) ? p : 1u) << id;
    }
    // Corrupted entities: a nonempty proper subset of copies differs.
    std::map<std::string, Record> original;
    for (const auto& r : base) original[r.entity_id] = r;
    std::map<std::string, std::size_t> changed;
    for (const auto& party : ds.parties) {
      for (const auto& r : party) {
        EXPECT_EQ(r.entity_id, original[r.entity_id].entity_id);
        if (!(r == original[r.entity_id])) ++changed[r.entity_id];
      }
    }
    for (const auto& [id, n] : changed) {
      EXPECT_TRUE(ds.corrupted_entities.count(id)) << id;
      EXPECT_GE(n, 1u);
      EXPECT_LT(n, p);
    }
    for (const auto& c : ds.corrupted_copies) EXPECT_EQ(c.modifications, 2u);
  }
}

TEST(Generate, Deterministic) {
  const auto base = sample_population(1000, 5);
  CorruptionSpec spec;
  spec.rate = 0.3;
  const auto a = generate(base, 4, 200, 0.5, spec, 13);
  const auto b = generate(base, 4, 200, 0.5, spec, 13);
  EXPECT_EQ(a.parties, b.parties);
  EXPECT_EQ(a.corrupted_entities, b.corrupted_entities);
  const auto c = generate(base, 4, 200, 0.5, spec, 14);
  EXPECT_NE(a.parties, c.parties);
}

TEST(Generate, CorruptionRateChiSquare) {
  const auto base = sample_population(4000, 8);
  for (double rate : {0.2, 0.4}) {
    CorruptionSpec spec;
    spec.rate = rate;
    const auto ds = generate(base, 2, 4000, 1.0, spec, 21);
    const double n = 4000;
    const double observed = static_cast<double>(ds.corrupted_entities.size());
    const double expected = rate * n;
    const double chi2 = (observed - expected) * (observed - expected) / expected +
                        (observed - expected) * (observed - expected) / (n - expected);
    // 1 degree of freedom, p = 0.001.
    EXPECT_LT(chi2, 10.828) << rate;
  }
}

TEST(Csv, RoundTripWithQuoting) {
  std::vector<Record> records = {{"E1", {"anne", "o'brien", "winston salem", "27101"}},
                                 {"E2", {"jo, jr", "say \"hi\"", "multi\nline", "27000"}}};
  std::ostringstream out;
  write_records_csv(out, records);
  EXPECT_TRUE(out.str().starts_with("entity_id,first_name,last_name,city,zipcode\n"));
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
  std::istringstream in(out.str());
  const auto rows = read_records_csv(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].record, records[0]);
  EXPECT_EQ(rows[1].record, records[1]);
  EXPECT_EQ(rows[0].line, 2u);
  EXPECT_EQ(rows[1].line, 3u);
}

TEST(Csv, ColumnMappingAndErrors) {
  std::istringstream reordered("zipcode,city,entity_id,last_name,first_name,extra\r\n"
                               "27601,raleigh,E9,smith,john,x\r\n");
  const auto rows = read_records_csv(reordered);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_THAT(rows[0].record.qid_values, ElementsAre("john", "smith", "raleigh", "27601"));

  std::istringstream missing("first_name,last_name,city,zipcode\na,b,c,d\n");
  EXPECT_THROW(read_records_csv(missing), ParseError);

  std::istringstream ragged(std::string(kCsvHeader) + "\nE1,a,b,c,d\nE2,a,b\n");
  try {
    read_records_csv(ragged);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream open_quote(std::string(kCsvHeader) + "\nE1,\"a,b,c,d\n");
  EXPECT_THROW(read_records_csv(open_quote), ParseError);
}

}  // namespace
}  // namespace pprl

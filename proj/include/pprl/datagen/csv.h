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

#ifndef PPRL_DATAGEN_CSV_H_
#define PPRL_DATAGEN_CSV_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pprl/encoding/bloom_filter.h"

namespace pprl {

// Header of party files: entity id followed by the QID columns.
inline constexpr const char* kCsvHeader = "entity_id,first_name,last_name,city,zipcode";
std::vector<std::string> default_qid_columns();

// RFC 4180 reader. Quoted fields may contain commas, doubled quotes and line
// breaks; CRLF and LF are both accepted.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next row into `fields`; false at end of input. Throws
  // ParseError on an unterminated quote or stray characters after one.
  bool next(std::vector<std::string>& fields);

  // Line on which the last returned row started (1-based).
  std::size_t line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t row_line_ = 0;
};

// Writes one row, quoting fields that contain ',', '"', CR or LF. Rows end
// with LF.
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Writes the header and one row per record.
void write_records_csv(std::ostream& out, std::span<const Record> records);

struct CsvRecord {
  Record record;
  std::size_t line = 0;
};

// Reads records whose QID values come from `qid_columns`, in that order.
// Extra columns are ignored. Missing columns, wrong field counts and blank
// entity ids raise ParseError with the offending line. Values are returned
// as written.
std::vector<CsvRecord> read_records_csv(std::istream& in,
                                        const std::vector<std::string>& qid_columns =
                                            default_qid_columns());

}  // namespace pprl

#endif  // PPRL_DATAGEN_CSV_H_

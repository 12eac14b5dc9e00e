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

#include "pprl/datagen/csv.h"

#include <algorithm>

#include "pprl/common/error.h"

namespace pprl {

std::vector<std::string> default_qid_columns() {
  return {"first_name", "last_name", "city", "zipcode"};
}

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  int c = in_.get();
  if (c == std::char_traits<char>::eof()) return false;
  row_line_ = line_;
  std::string field;
  bool quoted = false;
  bool after_quote = false;
  while (true) {
    if (c == std::char_traits<char>::eof()) {
      if (quoted) throw ParseError("unterminated quoted field", row_line_);
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in_.peek() == '\n') in_.get();
      ++line_;
      fields.push_back(std::move(field));
      return true;
    } else if (after_quote) {
      throw ParseError("unexpected character after closing quote", line_);
    } else if (ch == '"') {
      if (!field.empty()) throw ParseError("quote inside unquoted field", line_);
      quoted = true;
    } else {
      field.push_back(ch);
    }
    c = in_.get();
  }
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char ch : f) {
      if (ch == '"') out << '"';
      out << ch;
    }
    out << '"';
  }
  out << '\n';
}

void write_records_csv(std::ostream& out, std::span<const Record> records) {
  out << kCsvHeader << '\n';
  std::vector<std::string> row;
  for (const Record& r : records) {
    row.clear();
    row.push_back(r.entity_id);
    row.insert(row.end(), r.qid_values.begin(), r.qid_values.end());
    write_csv_row(out, row);
  }
}

std::vector<CsvRecord> read_records_csv(std::istream& in,
                                        const std::vector<std::string>& qid_columns) {
  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw ParseError("empty file, expected a header row", 1);
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);
  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("missing column '" + name + "'", reader.line());
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_col = column("entity_id");
  std::vector<std::size_t> qid_cols;
  for (const auto& name : qid_columns) qid_cols.push_back(column(name));

  std::vector<CsvRecord> out;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       reader.line());
    }
    if (fields[id_col].empty()) throw ParseError("empty entity_id", reader.line());
    CsvRecord row;
    row.line = reader.line();
    row.record.entity_id = fields[id_col];
    for (std::size_t c : qid_cols) row.record.qid_values.push_back(fields[c]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace pprl

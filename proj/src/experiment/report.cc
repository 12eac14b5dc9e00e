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

#include "pprl/experiment/report.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pprl/common/error.h"
#include "pprl/experiment/config.h"

namespace pprl {

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view s, std::size_t line) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw ParseError("dangling escape", line);
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 't': out += '\t'; break;
      default: throw ParseError("unknown escape", line);
    }
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    out.emplace_back(s.substr(start, at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

template <typename T>
T number(std::string_view text, std::size_t line) {
  T out{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("invalid number '" + std::string(text) + "'", line);
  }
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F format) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += format(items[i]);
  }
  return out;
}

std::string ratio_or_na(double (*f)(const ConfusionCounts&), const ConfusionCounts& c) {
  try {
    return format_double(f(c));
  } catch (const InvalidArgument&) {
    return "n/a";
  }
}

}  // namespace

bool same_reproducible_content(const LinkageReport& a, const LinkageReport& b) {
  return a.schema == b.schema && a.config == b.config && a.party_sizes == b.party_sizes &&
         a.common_blocks == b.common_blocks && a.rings == b.rings &&
         a.closed_form == b.closed_form && a.closed_form_note == b.closed_form_note &&
         a.observed_partial_sets == b.observed_partial_sets &&
         a.observed_classified == b.observed_classified && a.stages == b.stages &&
         a.traffic == b.traffic && a.quality == b.quality && a.privacy == b.privacy &&
         a.warnings == b.warnings && a.matches == b.matches;
}

void write_report(std::ostream& out, const LinkageReport& r) {
  out << "# linkage report; timings are wall-clock and not reproducible\n";
  out << "schema = " << r.schema << "\n\n[config]\n";
  for (const auto& [key, value] : r.config) out << key << " = " << escape(value) << '\n';

  out << "\n[summary]\n";
  out << "party_sizes = " << join(r.party_sizes, [](auto v) { return std::to_string(v); })
      << '\n';
  out << "common_blocks = " << r.common_blocks << '\n';
  for (const auto& ring : r.rings) {
    out << "ring = " << join(ring, [](auto v) { return std::to_string(v); }) << '\n';
  }
  out << "matches = " << r.matches.size() << '\n';

  out << "\n[counts]\n";
  out << "closed_form = " << (r.closed_form ? std::to_string(*r.closed_form) : "n/a") << '\n';
  out << "closed_form_note = " << escape(r.closed_form_note) << '\n';
  out << "observed_partial_sets = " << r.observed_partial_sets << '\n';
  out << "observed_classified = " << r.observed_classified << '\n';
  out << "# stage\tname\tpartial_sets\tclassified\tmatches\n";
  for (const auto& s : r.stages) {
    out << "stage\t" << escape(s.stage) << '\t' << s.partial_sets << '\t' << s.classified
        << '\t' << s.matches << '\n';
  }

  out << "\n[traffic]\n";
  out << "# traffic\tscope\tmessages\theader_bytes\tvector_bytes\tother_bytes\ttotal_bytes\n";
  for (const auto& t : r.traffic) {
    const auto& c = t.counters;
    out << "traffic\t" << escape(t.scope) << '\t' << c.messages << '\t' << c.header_bytes
        << '\t' << c.vector_bytes << '\t' << c.other_bytes << '\t' << c.bytes() << '\n';
  }

  out << "\n[timings]\nnon_reproducible = true\n";
  for (const auto& [step, seconds] : r.timings) {
    out << escape(step) << " = " << format_double(seconds) << '\n';
  }

  if (r.quality) {
    const auto& q = *r.quality;
    out << "\n[quality]\n";
    out << "true_positives = " << q.true_positives << '\n';
    out << "false_positives = " << q.false_positives << '\n';
    out << "false_negatives = " << q.false_negatives << '\n';
    out << "precision = " << ratio_or_na(precision, q) << '\n';
    out << "recall = " << ratio_or_na(recall, q) << '\n';
    out << "f_measure = " << ratio_or_na(f_measure, q) << '\n';
  }

  if (r.privacy) {
    const auto& p = *r.privacy;
    out << "\n[privacy]\n";
    out << "bf.dr_mean = " << format_double(p.bf_dr_mean) << '\n';
    out << "bf.dr_marketer = " << format_double(p.bf_dr_marketer) << '\n';
    out << "bf.items = " << p.bf_items << '\n';
    out << "bf.unmatched = " << p.bf_unmatched << '\n';
    out << "cbf.dr_mean = " << format_double(p.cbf_dr_mean) << '\n';
    out << "cbf.dr_marketer = " << format_double(p.cbf_dr_marketer) << '\n';
    out << "cbf.items = " << p.cbf_items << '\n';
    out << "cbf.unmatched = " << p.cbf_unmatched << '\n';
  }

  out << "\n[warnings]\n";
  for (const auto& w : r.warnings) out << "warning = " << escape(w) << '\n';

  out << "\n[matches]\n# match\tsimilarity\tmembers\tentity_ids...\n";
  for (const auto& m : r.matches) {
    out << "match\t" << format_double(m.similarity) << '\t'
        << join(m.members, [](const RecordRef& ref) {
             return std::to_string(ref.party) + ":" + std::to_string(ref.record);
           });
    for (const auto& id : m.entity_ids) out << '\t' << escape(id);
    out << '\n';
  }
}

LinkageReport read_report(std::istream& in) {
  LinkageReport r;
  r.schema.clear();
  std::string section;
  std::string line;
  std::size_t n = 0;
  bool seen_schema = false;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("bad section header", n);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    if (line.find('\t') != std::string::npos) {
      const auto cols = split(line, '\t');
      if (cols[0] == "stage" && section == "counts" && cols.size() == 5) {
        r.stages.push_back({unescape(cols[1], n), number<std::uint64_t>(cols[2], n),
                            number<std::uint64_t>(cols[3], n),
                            number<std::uint64_t>(cols[4], n)});
      } else if (cols[0] == "traffic" && section == "traffic" && cols.size() == 7) {
        ReportTraffic t;
        t.scope = unescape(cols[1], n);
        t.counters.messages = number<std::uint64_t>(cols[2], n);
        t.counters.header_bytes = number<std::uint64_t>(cols[3], n);
        t.counters.vector_bytes = number<std::uint64_t>(cols[4], n);
        t.counters.other_bytes = number<std::uint64_t>(cols[5], n);
        if (t.counters.bytes() != number<std::uint64_t>(cols[6], n)) {
          throw ParseError("traffic total does not match its parts", n);
        }
        r.traffic.push_back(std::move(t));
      } else if (cols[0] == "match" && section == "matches" && cols.size() >= 3) {
        ReportMatch m;
        m.similarity = number<double>(cols[1], n);
        if (!cols[2].empty()) {
          for (const auto& item : split(cols[2], ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ParseError("bad match member", n);
            m.members.push_back({number<PartyId>(std::string_view(item).substr(0, colon), n),
                                 number<std::uint32_t>(
                                     std::string_view(item).substr(colon + 1), n)});
          }
        }
        for (std::size_t i = 3; i < cols.size(); ++i) m.entity_ids.push_back(unescape(cols[i], n));
        r.matches.push_back(std::move(m));
      } else {
        throw ParseError("unexpected table row in [" + section + "]", n);
      }
      continue;
    }
    const auto eq = line.find(" =");
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", n);
    const std::string key = line.substr(0, eq);
    std::string_view raw = std::string_view(line).substr(eq + 2);
    if (!raw.empty() && raw.front() == ' ') raw.remove_prefix(1);
    const std::string value = unescape(raw, n);

    if (section.empty()) {
      if (key != "schema") throw ParseError("unknown key '" + key + "'", n);
      if (value != kReportSchema) throw ParseError("unsupported schema '" + value + "'", n);
      r.schema = value;
      seen_schema = true;
    } else if (section == "config") {
      r.config.emplace_back(key, value);
    } else if (section == "summary") {
      if (key == "party_sizes") {
        if (!value.empty()) {
          for (const auto& v : split(value, ',')) r.party_sizes.push_back(number<std::size_t>(v, n));
        }
      } else if (key == "common_blocks") {
        r.common_blocks = number<std::size_t>(value, n);
      } else if (key == "ring") {
        std::vector<PartyId> ring;
        for (const auto& v : split(value, ',')) ring.push_back(number<PartyId>(v, n));
        r.rings.push_back(std::move(ring));
      } else if (key != "matches") {
        throw ParseError("unknown key '" + key + "'", n);
      }
    } else if (section == "counts") {
      if (key == "closed_form") {
        if (value != "n/a") r.closed_form = number<std::uint64_t>(value, n);
      } else if (key == "closed_form_note") {
        r.closed_form_note = value;
      } else if (key == "observed_partial_sets") {
        r.observed_partial_sets = number<std::uint64_t>(value, n);
      } else if (key == "observed_classified") {
        r.observed_classified = number<std::uint64_t>(value, n);
      } else {
        throw ParseError("unknown key '" + key + "'", n);
      }
    } else if (section == "timings") {
      if (key != "non_reproducible") r.timings[key] = number<double>(value, n);
    } else if (section == "quality") {
      if (!r.quality) r.quality.emplace();
      if (key == "true_positives") {
        r.quality->true_positives = number<std::uint64_t>(value, n);
      } else if (key == "false_positives") {
        r.quality->false_positives = number<std::uint64_t>(value, n);
      } else if (key == "false_negatives") {
        r.quality->false_negatives = number<std::uint64_t>(value, n);
      } else if (key != "precision" && key != "recall" && key != "f_measure") {
        throw ParseError("unknown key '" + key + "'", n);
      }
    } else if (section == "privacy") {
      if (!r.privacy) r.privacy.emplace();
      auto& p = *r.privacy;
      if (key == "bf.dr_mean") p.bf_dr_mean = number<double>(value, n);
      else if (key == "bf.dr_marketer") p.bf_dr_marketer = number<double>(value, n);
      else if (key == "bf.items") p.bf_items = number<std::uint64_t>(value, n);
      else if (key == "bf.unmatched") p.bf_unmatched = number<std::uint64_t>(value, n);
      else if (key == "cbf.dr_mean") p.cbf_dr_mean = number<double>(value, n);
      else if (key == "cbf.dr_marketer") p.cbf_dr_marketer = number<double>(value, n);
      else if (key == "cbf.items") p.cbf_items = number<std::uint64_t>(value, n);
      else if (key == "cbf.unmatched") p.cbf_unmatched = number<std::uint64_t>(value, n);
      else throw ParseError("unknown key '" + key + "'", n);
    } else if (section == "warnings") {
      if (key != "warning") throw ParseError("unknown key '" + key + "'", n);
      r.warnings.push_back(value);
    } else {
      throw ParseError("unknown section [" + section + "]", n);
    }
  }
  if (!seen_schema) throw ParseError("missing schema line", n);
  return r;
}

void emit_report(const LinkageReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_report(out, report);
  out.flush();
  if (!out) throw Error("failed writing " + path);
}

LinkageReport parse_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_report(in);
}

}  // namespace pprl

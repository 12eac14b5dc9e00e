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

// Command-line driver: generate, link, attack and sweep.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pprl/common/error.h"
#include "pprl/datagen/csv.h"
#include "pprl/evaluation/quality.h"
#include "pprl/experiment/config.h"
#include "pprl/experiment/report.h"
#include "pprl/experiment/runner.h"

namespace {

using namespace pprl;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", opts.overrides, "override a setting, e.g. --set l=1000")
      ->take_all();
}

// File settings first, then --set, then the dedicated flags in `flags`.
ExperimentConfig resolve(const CommonOptions& opts, const std::vector<std::string>& flags) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    // A previous report is accepted too; its [config] section is reused.
    std::string first;
    while (std::getline(in, first) && (first.empty() || first.front() == '#')) {
    }
    in.clear();
    in.seekg(0);
    if (first.rfind("schema", 0) == 0) {
      config = config_from_report(read_report(in));
    } else {
      config = parse_experiment_config(in);
    }
  }
  apply_overrides(config, opts.overrides);
  apply_overrides(config, flags);
  return config;
}

void push_flag(std::vector<std::string>& flags, const char* key, const std::string& value) {
  if (!value.empty()) flags.push_back(std::string(key) + "=" + value);
}

template <typename T>
std::string joined(const std::vector<T>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_same_v<T, std::string>) {
      out += v;
    } else {
      out += std::to_string(v);
    }
  }
  return out;
}

std::string summary_line(const LinkageReport& r) {
  std::string line = "matches=" + std::to_string(r.matches.size()) +
                     " bytes=" + std::to_string(r.traffic.empty() ? 0 : r.traffic[0].counters.bytes());
  if (r.quality) {
    try {
      line += " f_measure=" + format_double(f_measure(*r.quality));
    } catch (const InvalidArgument&) {
    }
  }
  if (auto it = r.timings.find("total"); it != r.timings.end()) {
    line += " seconds=" + format_double(it->second);
  }
  return line;
}

void write_output(const LinkageReport& report, const std::string& path) {
  if (path.empty() || path == "-") {
    write_report(std::cout, report);
  } else {
    emit_report(report, path);
    std::cerr << "report written to " << path << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-party record linkage with counting Bloom filters"};
  app.require_subcommand(1);

  // generate
  CommonOptions gen_opts;
  std::string gen_dir;
  std::string gen_p, gen_n, gen_overlap, gen_rate, gen_seed;
  auto* gen = app.add_subcommand("generate", "write synthetic party CSV files");
  add_common(gen, gen_opts);
  gen->add_option("-o,--out-dir", gen_dir, "output directory")->required();
  gen->add_option("-p,--parties", gen_p, "number of parties");
  gen->add_option("-n,--records", gen_n, "records per party");
  gen->add_option("--overlap", gen_overlap, "fraction of records held by every party");
  gen->add_option("--corruption", gen_rate, "fraction of overlap records corrupted");
  gen->add_option("--seed", gen_seed, "datagen seed");

  // link / attack share their options.
  CommonOptions link_opts;
  std::vector<std::string> datasets;
  std::string pattern, scheme, output, trace_path;
  auto add_link_options = [&](CLI::App* cmd) {
    add_common(cmd, link_opts);
    cmd->add_option("-d,--dataset", datasets, "party CSV file, repeat once per party");
    cmd->add_option("--pattern", pattern, "NAI, SEQ or RBR");
    cmd->add_option("--scheme", scheme, "BSS, SSS or HSS");
    cmd->add_option("-o,--output", output, "report path ('-' for stdout)");
  };
  auto* link = app.add_subcommand("link", "run one linkage experiment and write a report");
  add_link_options(link);
  link->add_option("--trace", trace_path, "write the message trace (TSV) here");
  auto* attack = app.add_subcommand("attack", "report disclosure risk of the BF and CBF views");
  add_link_options(attack);

  // sweep
  CommonOptions sweep_opts;
  std::string sweep_dir;
  std::vector<std::size_t> sweep_p, sweep_n;
  std::vector<std::string> sweep_patterns, sweep_schemes;
  std::vector<double> sweep_rates;
  auto* sweep = app.add_subcommand("sweep", "run an experiment grid");
  add_common(sweep, sweep_opts);
  sweep->add_option("-o,--out-dir", sweep_dir, "directory for reports and summary.tsv")
      ->required();
  sweep->add_option("-p,--parties", sweep_p, "party counts")->delimiter(',');
  sweep->add_option("-n,--records", sweep_n, "records per party")->delimiter(',');
  sweep->add_option("--patterns", sweep_patterns, "patterns")->delimiter(',');
  sweep->add_option("--schemes", sweep_schemes, "schemes")->delimiter(',');
  sweep->add_option("--corruption", sweep_rates, "corruption rates")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::vector<std::string> flags;
      push_flag(flags, "parties", gen_p);
      push_flag(flags, "records", gen_n);
      push_flag(flags, "overlap", gen_overlap);
      push_flag(flags, "corruption_rate", gen_rate);
      push_flag(flags, "datagen_seed", gen_seed);
      const ExperimentConfig config = resolve(gen_opts, flags);
      const auto ds = generate_dataset(config);
      std::filesystem::create_directories(gen_dir);
      for (std::size_t j = 0; j < ds.parties.size(); ++j) {
        const auto path = std::filesystem::path(gen_dir) / ("party_" + std::to_string(j + 1) + ".csv");
        std::ofstream out(path, std::ios::binary);
        write_records_csv(out, ds.parties[j]);
        if (!out) throw Error("failed writing " + path.string());
      }
      std::ofstream truth(std::filesystem::path(gen_dir) / "ground_truth.txt", std::ios::binary);
      for (const auto& id : ds.ground_truth) truth << id << '\n';
      std::cerr << "wrote " << ds.parties.size() << " parties, " << ds.ground_truth.size()
                << " shared entities, " << ds.corrupted_entities.size() << " corrupted\n";
      return 0;
    }

    if (link->parsed() || attack->parsed()) {
      std::vector<std::string> flags;
      push_flag(flags, "datasets", joined(datasets));
      push_flag(flags, "pattern", pattern);
      push_flag(flags, "scheme", scheme);
      push_flag(flags, "output", output);
      if (attack->parsed()) flags.push_back("privacy=true");
      ExperimentConfig config = resolve(link_opts, flags);
      config.linkage.trace = !trace_path.empty();
      LinkageOutcome outcome;
      const LinkageReport report = run_experiment(config, &outcome);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        out << "seq\tfrom\tto\tstep\tkind\tbytes\n";
        for (const auto& t : outcome.trace) {
          out << t.sequence << '\t' << party_name(t.from) << '\t' << party_name(t.to) << '\t'
              << t.step << '\t' << message_kind_name(t.kind) << '\t' << t.bytes << '\n';
        }
      }
      if (attack->parsed() && report.privacy) {
        const auto& p = *report.privacy;
        std::cout << "bf.dr_mean = " << format_double(p.bf_dr_mean) << '\n'
                  << "bf.dr_marketer = " << format_double(p.bf_dr_marketer) << '\n'
                  << "cbf.dr_mean = " << format_double(p.cbf_dr_mean) << '\n'
                  << "cbf.dr_marketer = " << format_double(p.cbf_dr_marketer) << '\n'
                  << "cbf.items = " << p.cbf_items << '\n';
        if (!config.output.empty()) write_output(report, config.output);
      } else {
        write_output(report, config.output);
        std::cerr << summary_line(report) << '\n';
      }
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      return 0;
    }

    if (sweep->parsed()) {
      const ExperimentConfig base = resolve(sweep_opts, {});
      SweepAxes axes;
      axes.parties = sweep_p;
      axes.records = sweep_n;
      for (const auto& p : sweep_patterns) axes.patterns.push_back(parse_pattern(p));
      for (const auto& s : sweep_schemes) axes.schemes.push_back(parse_scheme(s));
      axes.corruption_rates = sweep_rates;
      const auto runs = expand_sweep(base, axes);
      std::filesystem::create_directories(sweep_dir);
      std::ofstream summary(std::filesystem::path(sweep_dir) / "summary.tsv", std::ios::binary);
      summary << "run\tparties\trecords\tpattern\tscheme\tcorruption\tmatches\tf_measure\tbytes"
                 "\tseconds\n";
      for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& c = runs[i];
        const LinkageReport report = run_experiment(c);
        const std::string name = "run_" + std::to_string(i + 1) + ".txt";
        emit_report(report, (std::filesystem::path(sweep_dir) / name).string());
        std::string f = "n/a";
        if (report.quality) {
          try {
            f = format_double(f_measure(*report.quality));
          } catch (const InvalidArgument&) {
          }
        }
        const auto total = report.timings.find("total");
        summary << i + 1 << '\t' << c.datagen.parties << '\t' << c.datagen.records << '\t'
                << pattern_name(c.linkage.pattern) << '\t' << scheme_name(c.linkage.scheme)
                << '\t' << format_double(c.datagen.corruption.rate) << '\t'
                << report.matches.size() << '\t' << f << '\t'
                << report.traffic.at(0).counters.bytes() << '\t'
                << (total == report.timings.end() ? 0.0 : total->second) << '\n';
        std::cerr << "[" << i + 1 << "/" << runs.size() << "] " << summary_line(report) << '\n';
      }
      return 0;
    }
  } catch (const StageError& e) {
    std::cerr << "error in stage " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

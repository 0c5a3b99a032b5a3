// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// The `levels` command-line front end, callable in-process via run().
///
/// Exit codes: 0 success, 2 domain error, 3 I/O error, 4 usage error.
/// Standard output carries data only; diagnostics go to standard error.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "levels/assets.hpp"
#include "levels/dsl.hpp"
#include "levels/error.hpp"
#include "levels/montecarlo.hpp"
#include "levels/probability.hpp"
#include "levels/structure.hpp"

namespace levels::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kDomainError = 2, kIoError = 3, kUsageError = 4 };

/// Everything needed to reproduce a simulation report.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string tool_version{kToolVersion};

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    return {{"command", command}, {"parameters", params}, {"seed", seed}, {"tool_version", tool_version}};
  }

  static RunManifest from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) m.parameters[k] = v.get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    return m;
  }

  /// Single-line comment form used at the top of CSV reports.
  std::string comment_line() const { return "# manifest: " + to_json().dump() + "\n"; }
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a .sol file, or a built-in structure given as builtin:NAME.
inline std::string read_source(const std::string& path) {
  constexpr std::string_view kPrefix = "builtin:";
  if (path.starts_with(kPrefix)) {
    if (auto text = assets::find(std::string_view(path).substr(kPrefix.size()))) return std::string(*text);
    throw IoError("no built-in structure '" + path.substr(kPrefix.size()) + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buffer.str();
}

/// %.12g: twelve significant digits.
inline std::string format_decimal(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace detail {

struct Options {
  std::string file;
  std::string target;
  std::string structure;
  std::string group;
  std::string format = "csv";
  std::string probability;
  std::vector<std::uint64_t> sizes;
  std::uint64_t trials = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

inline std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

inline std::vector<Structure> load(const std::string& file, const std::string& display, std::ostream& err) {
  const std::string source = read_source(file);
  dsl::ParseResult parsed = dsl::parse(source);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) err << display << ":" << d.to_string() << "\n";
    throw Error(ErrorCode::InvalidStructure, display + " does not describe valid structures");
  }
  return std::move(parsed.structures);
}

/// Writes rows either as CSV (manifest comment, header, rows) or as one JSON
/// object {"manifest": ..., "rows": [...]}. Cells are preformatted text;
/// numeric cells are emitted as JSON numbers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> numeric;

  void write(std::ostream& out, const RunManifest& manifest, const std::string& format) const {
    if (format == "json") {
      std::string text = "{\"manifest\":" + manifest.to_json().dump() + ",\"rows\":[";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        text += r ? ",{" : "{";
        for (std::size_t c = 0; c < header.size(); ++c) {
          text += (c ? "," : "") + nlohmann::json(header[c]).dump() + ":" +
                  (numeric[c] ? rows[r][c] : nlohmann::json(rows[r][c]).dump());
        }
        text += "}";
      }
      out << text << "]}\n";
      return;
    }
    out << manifest.comment_line();
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << "\n";
    }
  }
};

inline int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string source = read_source(o.file);
  const dsl::ParseResult parsed = dsl::parse(source);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) err << o.file << ":" << d.to_string() << "\n";
    return kDomainError;
  }
  for (const Structure& s : parsed.structures) {
    const Classification c = classify(s);
    if (c.kind == Certainty::Certain) {
      out << s.name << ": certain\n";
      continue;
    }
    out << s.name << ": uncertain (opaque: ";
    for (std::size_t i = 0; i < c.opaque_elements.size(); ++i) out << (i ? ", " : "") << c.opaque_elements[i];
    const int hidden = s.at(c.opaque_elements.front()).level + 1;
    out << "; level-" << hidden << " subrelationships unlisted)\n";
  }
  return kOk;
}

inline int cmd_show(const Options& o, std::ostream& out, std::ostream& err) {
  out << dsl::serialize(load(o.file, o.file, err));
  return kOk;
}

inline int cmd_prob(const Options& o, std::ostream& out, std::ostream& err) {
  const auto structures = load(o.file, o.file, err);
  const Structure* home = nullptr;
  for (const Structure& s : structures) {
    if (!o.structure.empty() && s.name != o.structure) continue;
    if (s.find(o.target) == nullptr) continue;
    if (home != nullptr) {
      err << "'" << o.target << "' appears in both " << home->name << " and " << s.name
          << "; choose one with --structure\n";
      return kDomainError;
    }
    home = &s;
  }
  if (home == nullptr) throw Error(ErrorCode::NotFound, "no element '" + o.target + "' in " + o.file);

  const Element& e = home->at(o.target);
  const bool direct = e.is_relationship();
  const std::optional<Probability> p = direct ? probability_of(*home, e.id) : probability_of_outcome(*home, e.id);
  const std::string via = direct ? "direct" : "denotation";

  if (o.format == "csv") {
    out << "target,probability,decimal,via\n" << e.id << ","
        << (p ? p->to_string() : "unknown") << "," << (p ? format_decimal(p->to_double()) : "") << "," << via
        << "\n";
    return kOk;
  }
  out << "{\"target\":" << nlohmann::json(e.id).dump();
  if (p) {
    out << ",\"probability\":" << nlohmann::json(p->to_string()).dump()
        << ",\"decimal\":" << format_decimal(p->to_double());
  } else {
    out << ",\"probability\":null,\"decimal\":null,\"unknown\":true";
  }
  out << ",\"via\":\"" << via << "\"}\n";
  return kOk;
}

inline int cmd_bertrand(const Options& o, std::ostream& out) {
  const mc::Workers workers{o.workers};
  const auto parallel = mc::bertrand_parallel(o.trials, o.seed, workers);
  const auto endpoint = mc::bertrand_endpoint(o.trials, o.seed, workers);
  RunManifest manifest{"bertrand", {{"trials", std::to_string(o.trials)}, {"format", o.format}}, o.seed};

  Table table{{"method", "estimate", "expected", "abs_error"}, {}, {false, true, true, true}};
  auto row = [&](const char* method, double estimate, double expected) {
    table.rows.push_back({method, format_decimal(estimate), format_decimal(expected),
                          format_decimal(std::abs(estimate - expected))});
  };
  row("parallel", parallel.relative, 0.5);
  row("endpoint", endpoint.relative, 1.0 / 3.0);
  table.write(out, manifest, o.format);
  return kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto structures = load(o.file, o.file, err);
  const Structure* home = nullptr;
  for (const Structure& s : structures) {
    if (!s.group_members(o.group).empty()) {
      home = &s;
      break;
    }
  }
  if (home == nullptr) throw Error(ErrorCode::NotFound, "no alternative group '" + o.group + "' in " + o.file);

  const auto records = mc::simulate_group(*home, o.group, o.trials, o.seed, mc::Workers{o.workers});
  RunManifest manifest{"simulate",
                       {{"file", o.file}, {"group", o.group}, {"trials", std::to_string(o.trials)}, {"format", o.format}},
                       o.seed};
  Table table{{"relation", "trials", "occurrences", "relative"}, {}, {false, true, true, true}};
  for (const auto& r : records) {
    table.rows.push_back(
        {r.relation, std::to_string(r.trials), std::to_string(r.occurrences), format_decimal(r.relative)});
  }
  table.write(out, manifest, o.format);
  return kOk;
}

inline int cmd_converge(const Options& o, std::ostream& out, std::ostream& err) {
  const auto p = Probability::parse(o.probability);
  if (!p) {
    err << "probability '" << o.probability << "' is not a decimal or fraction in [0, 1]\n";
    return kDomainError;
  }
  const auto report = mc::convergence_study(*p, o.sizes, o.reps, o.seed, mc::Workers{o.workers});
  RunManifest manifest{"converge",
                       {{"p", p->to_string()},
                        {"sizes", join(o.sizes)},
                        {"reps", std::to_string(o.reps)},
                        {"format", o.format}},
                       o.seed};
  Table table{{"sample_size", "mean_abs_deviation"}, {}, {true, true}};
  for (std::uint64_t size : report.sample_sizes) {
    table.rows.push_back({std::to_string(size), format_decimal(report.mean_abs_deviation.at(size))});
  }
  table.write(out, manifest, o.format);
  return kOk;
}

/// Finds the manifest in a CSV or JSON report.
inline RunManifest extract_manifest(const std::string& report) {
  constexpr std::string_view kPrefix = "# manifest: ";
  std::istringstream lines(report);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.starts_with(kPrefix)) return RunManifest::from_json(nlohmann::json::parse(line.substr(kPrefix.size())));
    if (line.starts_with("{")) return RunManifest::from_json(nlohmann::json::parse(line).at("manifest"));
  }
  throw Error(ErrorCode::InvalidArgument, "report carries no run manifest");
}

/// Command line equivalent to a manifest.
inline std::vector<std::string> manifest_arguments(const RunManifest& m) {
  std::vector<std::string> args{m.command};
  for (const auto& [key, value] : m.parameters) {
    if (key == "file") {
      args.push_back(value);
    } else {
      args.push_back((key.size() == 1 ? "-" : "--") + key);
      args.push_back(value);
    }
  }
  args.push_back("--seed");
  args.push_back(std::to_string(m.seed));
  return args;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

inline int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  const RunManifest m = extract_manifest(read_source(o.file));
  if (m.tool_version != kToolVersion) {
    err << "warning: report was produced by version " << m.tool_version << ", replaying with " << kToolVersion
        << "\n";
  }
  auto args = manifest_arguments(m);
  args.push_back("--workers");
  args.push_back(std::to_string(o.workers));
  return run(args, out, err);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Structures of levels: validate, query probabilities, and simulate relationships", "levels"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  auto add_seed = [&o](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
  };
  auto add_workers = [&o](CLI::App* cmd) {
    cmd->add_option("--workers", o.workers, "worker threads, 0 = all cores (results do not depend on it)")
        ->capture_default_str();
  };
  auto add_format = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  auto* validate_cmd = app.add_subcommand("validate", "check .sol files and classify each structure");
  validate_cmd->add_option("file", o.file, ".sol file or builtin:NAME")->required();

  auto* show_cmd = app.add_subcommand("show", "print structures in canonical form");
  show_cmd->add_option("file", o.file, ".sol file or builtin:NAME")->required();

  auto* prob_cmd = app.add_subcommand("prob", "probability of a relationship or a denoted outcome");
  prob_cmd->add_option("file", o.file, ".sol file or builtin:NAME")->required();
  prob_cmd->add_option("--target", o.target, "element name")->required();
  prob_cmd->add_option("--structure", o.structure, "restrict the lookup to one structure");
  o.format = "json";
  add_format(prob_cmd);

  auto* bertrand_cmd = app.add_subcommand("bertrand", "simulate both chord dynamics");
  bertrand_cmd->add_option("--trials", o.trials, "number of chords")->required()->check(CLI::PositiveNumber);
  add_seed(bertrand_cmd);
  add_workers(bertrand_cmd);
  add_format(bertrand_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "sample an alternative group");
  simulate_cmd->add_option("file", o.file, ".sol file or builtin:NAME")->required();
  simulate_cmd->add_option("--group", o.group, "alternative group tag")->required();
  simulate_cmd->add_option("--trials", o.trials, "number of trials")->required()->check(CLI::PositiveNumber);
  add_seed(simulate_cmd);
  add_workers(simulate_cmd);
  add_format(simulate_cmd);

  auto* converge_cmd = app.add_subcommand("converge", "mean |F_s - p| across sample sizes");
  converge_cmd->add_option("-p,--probability", o.probability, "p as a decimal or fraction")->required();
  converge_cmd->add_option("--sizes", o.sizes, "ascending sample sizes, comma separated")
      ->required()
      ->delimiter(',');
  converge_cmd->add_option("--reps", o.reps, "replications per size")->required()->check(CLI::PositiveNumber);
  add_seed(converge_cmd);
  add_workers(converge_cmd);
  add_format(converge_cmd);

  auto* replay_cmd = app.add_subcommand("replay", "re-run the command recorded in a report's manifest");
  replay_cmd->add_option("file", o.file, "report produced by bertrand, simulate or converge")->required();
  add_workers(replay_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    // The prob default is JSON; table commands default to CSV.
    if (!args.empty() && args.front() != "prob") o.format = "csv";
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "levels: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (validate_cmd->parsed()) return detail::cmd_validate(o, out, err);
    if (show_cmd->parsed()) return detail::cmd_show(o, out, err);
    if (prob_cmd->parsed()) return detail::cmd_prob(o, out, err);
    if (bertrand_cmd->parsed()) return detail::cmd_bertrand(o, out);
    if (simulate_cmd->parsed()) return detail::cmd_simulate(o, out, err);
    if (converge_cmd->parsed()) return detail::cmd_converge(o, out, err);
    if (replay_cmd->parsed()) return detail::cmd_replay(o, out, err);
  } catch (const IoError& e) {
    err << "levels: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "levels: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? kUsageError : kDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "levels: malformed manifest: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace levels::cli

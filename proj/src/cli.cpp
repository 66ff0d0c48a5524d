// Copyright 2026 The metprog Authors.
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

#include "metprog/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "metprog/dsl.hpp"
#include "metprog/evolve.hpp"
#include "metprog/hierarchy.hpp"
#include "metprog/lint.hpp"
#include "metprog/render.hpp"
#include "metprog/trace.hpp"
#include "metprog/validator.hpp"

namespace metprog::cli {

namespace {

using nlohmann::json;

// Signals an exit with status kUsage after the message has been printed.
struct UsageFailure {
  std::string message;
};

struct Options {
  std::string format = "text";
  std::string config_path;
  bool allow_abstract_goals = false;

  // check / lint / graph / levels / trace / extract / fmt
  std::string file;
  // diff
  std::string old_file, new_file;
  // lint
  std::optional<int> max_inputs, max_outputs, max_object_kinds;
  std::vector<std::string> disable;
  // graph
  bool show_levels = false;
  std::string rankdir = "TB";
  // trace
  std::string up, down;
  // extract / skeleton
  std::string root;
  std::string output;
  // fmt
  bool write = false;
  // skeleton
  std::string module;
  std::vector<std::string> metrics;
  std::string program_name;
};

class Runner {
 public:
  Runner(const Options& options, std::istream& in, std::ostream& out,
         std::ostream& err)
      : opt_(options), in_(in), out_(out), err_(err) {}

  bool json_mode() const { return opt_.format == "json"; }

  std::string read(const std::string& path) {
    if (path == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageFailure{"cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
  }

  void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text)) throw UsageFailure{"cannot write '" + path + "'"};
  }

  ParseResult load(const std::string& path) {
    return parse(read(path), path == "-" ? "<stdin>" : path);
  }

  static json to_json(const SourceSpan& span) {
    return json{{"file", span.file},
                {"line", span.line},
                {"column", span.column},
                {"length", span.length}};
  }

  static json to_json(const std::vector<Diagnostic>& diagnostics) {
    json array = json::array();
    for (const auto& d : diagnostics) {
      json related = json::array();
      for (const auto& r : d.related) related.push_back(to_json(r));
      array.push_back(json{{"code", d.code},
                           {"severity", std::string(to_string(d.severity))},
                           {"message", d.message},
                           {"file", d.span.file},
                           {"line", d.span.line},
                           {"column", d.span.column},
                           {"length", d.span.length},
                           {"related", related}});
    }
    return array;
  }

  // Prints diagnostics (text mode) and returns the exit status they imply.
  int report(const std::string& command, std::vector<Diagnostic> diagnostics,
             json payload = json::object()) {
    sort_diagnostics(diagnostics);
    const bool failed = has_errors(diagnostics);
    if (json_mode()) {
      json doc{{"command", command},
               {"ok", !failed},
               {"diagnostics", to_json(diagnostics)}};
      doc.update(payload);
      out_ << doc.dump(2) << "\n";
    } else {
      for (const auto& d : diagnostics) err_ << format_diagnostic(d) << "\n";
    }
    return failed ? kFindings : kSuccess;
  }

  // Parses and runs the structural checks; nullopt after reporting failures.
  std::optional<ParseResult> load_structured(const std::string& command) {
    ParseResult parsed = load(opt_.file);
    if (!parsed.program) {
      report(command, parsed.diagnostics);
      return std::nullopt;
    }
    auto structural = validate_structure(*parsed.program, parsed.spans);
    if (has_errors(structural)) {
      report(command, structural);
      return std::nullopt;
    }
    return parsed;
  }

  static std::string summary(const Program& p) {
    return std::to_string(p.modules.size()) + " modules, " +
           std::to_string(p.connections.size()) + " connections";
  }

  static json summary_json(const Program& p) {
    return json{{"summary",
                 {{"modules", p.modules.size()},
                  {"connections", p.connections.size()}}}};
  }

  ValidateOptions validate_options() const {
    ValidateOptions v;
    v.allow_abstract_goals = opt_.allow_abstract_goals;
    return v;
  }

  int check() {
    ParseResult parsed = load(opt_.file);
    auto diagnostics = validate(parsed, validate_options());
    if (!parsed.program) return report("check", diagnostics);
    const bool failed = has_errors(diagnostics);
    int status = report("check", diagnostics, summary_json(*parsed.program));
    if (!json_mode() && !failed) out_ << "OK: " << summary(*parsed.program) << "\n";
    return status;
  }

  LintConfig lint_config() {
    LintConfig config;
    try {
      if (!opt_.config_path.empty()) {
        config = parse_lint_config(read(opt_.config_path));
      }
      if (opt_.max_inputs) config.max_inputs = *opt_.max_inputs;
      if (opt_.max_outputs) config.max_outputs = *opt_.max_outputs;
      if (opt_.max_object_kinds) config.max_object_kinds = *opt_.max_object_kinds;
      for (const auto& code : opt_.disable) config.disable(code);
    } catch (const Error& e) {
      throw UsageFailure{e.what()};
    }
    return config;
  }

  int lint_command() {
    const LintConfig config = lint_config();
    ParseResult parsed = load(opt_.file);
    auto diagnostics = validate(parsed, validate_options());
    if (!parsed.program) return report("lint", diagnostics);
    if (!has_errors(validate_structure(*parsed.program, parsed.spans))) {
      auto findings = lint(*parsed.program, config, parsed.spans);
      diagnostics.insert(diagnostics.end(), findings.begin(), findings.end());
    }
    const bool failed = has_errors(diagnostics);
    const auto warnings = std::count_if(
        diagnostics.begin(), diagnostics.end(),
        [](const Diagnostic& d) { return d.severity == Severity::warning; });
    int status = report("lint", diagnostics, summary_json(*parsed.program));
    if (!json_mode() && !failed) {
      out_ << "OK: " << summary(*parsed.program) << ", " << warnings
           << " warnings\n";
    }
    return status;
  }

  int graph() {
    auto parsed = load_structured("graph");
    if (!parsed) return kFindings;
    RenderOptions options;
    options.show_levels = opt_.show_levels;
    options.rankdir = opt_.rankdir == "LR" ? RankDir::LR : RankDir::TB;
    const std::string dot = to_dot(*parsed->program, options);
    if (json_mode()) return report("graph", {}, json{{"dot", dot}});
    out_ << dot;
    return kSuccess;
  }

  int levels() {
    auto parsed = load_structured("levels");
    if (!parsed) return kFindings;
    const Program& p = *parsed->program;
    const LevelMap map = compute_levels(p);
    std::vector<std::pair<int, Identifier>> rows;
    for (const auto& [id, level] : map.levels) rows.emplace_back(level, id);
    std::sort(rows.begin(), rows.end());
    if (json_mode()) {
      json levels = json::object();
      for (const auto& [level, id] : rows) levels[id.str()] = level;
      json roots = json::array(), sinks = json::array();
      for (const auto& id : map.roots) roots.push_back(id.str());
      for (const auto& id : map.sinks) sinks.push_back(id.str());
      return report("levels", {},
                    json{{"levels", levels}, {"roots", roots}, {"sinks", sinks}});
    }
    for (const auto& [level, id] : rows) {
      out_ << level << "\t" << id << "\t" << to_string(p.find_module(id)->kind)
           << "\n";
    }
    return kSuccess;
  }

  static std::pair<Identifier, Identifier> split_ref(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos || !Identifier::is_valid(text.substr(0, dot)) ||
        !Identifier::is_valid(text.substr(dot + 1))) {
      throw UsageFailure{"expected <module>.<id>, got '" + text + "'"};
    }
    return {Identifier(text.substr(0, dot)), Identifier(text.substr(dot + 1))};
  }

  int trace() {
    if (opt_.up.empty() == opt_.down.empty()) {
      throw UsageFailure{"trace needs exactly one of --up or --down"};
    }
    auto parsed = load_structured("trace");
    if (!parsed) return kFindings;
    const bool up = !opt_.up.empty();
    const auto [module, id] = split_ref(up ? opt_.up : opt_.down);
    std::vector<TraceChain> chains;
    try {
      chains = up ? trace_up(*parsed->program, module, id)
                  : trace_down(*parsed->program, module, id);
    } catch (const Error& e) {
      throw UsageFailure{e.what()};
    }
    const auto direction = up ? TraceDirection::up : TraceDirection::down;
    if (json_mode()) {
      json array = json::array();
      for (const auto& chain : chains) {
        json steps = json::array();
        for (const auto& s : chain.steps) {
          steps.push_back(json{{"entity", std::string(to_string(s.entity))},
                               {"module", s.module.str()},
                               {"id", s.id.str()},
                               {"edge", std::string(to_string(s.edge))}});
        }
        array.push_back(json{{"steps", steps}});
      }
      return report("trace", {},
                    json{{"direction", up ? "up" : "down"}, {"chains", array}});
    }
    for (const auto& chain : chains) out_ << format_chain(chain, direction) << "\n";
    return kSuccess;
  }

  int extract() {
    auto parsed = load_structured("extract");
    if (!parsed) return kFindings;
    if (!Identifier::is_valid(opt_.root)) {
      throw UsageFailure{"invalid module name '" + opt_.root + "'"};
    }
    Program slice;
    try {
      slice = extract_subprogram(*parsed->program, Identifier(opt_.root));
    } catch (const Error& e) {
      throw UsageFailure{e.what()};
    }
    return emit_program("extract", format(slice));
  }

  // Writes program text to -o when given, otherwise to stdout.
  int emit_program(const std::string& command, const std::string& text) {
    if (!opt_.output.empty()) write_file(opt_.output, text);
    if (json_mode()) {
      return report(command, {},
                    json{{"program", text},
                         {"output", opt_.output.empty() ? json(nullptr)
                                                        : json(opt_.output)}});
    }
    if (opt_.output.empty()) out_ << text;
    return kSuccess;
  }

  int fmt() {
    const std::string original = read(opt_.file);
    ParseResult parsed = parse(original, opt_.file == "-" ? "<stdin>" : opt_.file);
    if (!parsed.program) return report("fmt", parsed.diagnostics);
    const std::string text = format(*parsed.program);
    const bool changed = text != original;
    if (opt_.write) {
      if (opt_.file == "-") throw UsageFailure{"--write needs a file"};
      if (changed) write_file(opt_.file, text);
    }
    if (json_mode()) {
      return report("fmt", {}, json{{"text", text}, {"changed", changed}});
    }
    if (!opt_.write) out_ << text;
    return kSuccess;
  }

  int diff_command() {
    ParseResult a = load(opt_.old_file);
    ParseResult b = load(opt_.new_file);
    if (!a.program || !b.program) {
      auto diagnostics = a.diagnostics;
      diagnostics.insert(diagnostics.end(), b.diagnostics.begin(),
                         b.diagnostics.end());
      return report("diff", diagnostics);
    }
    const ProgramDiff d = diff(*a.program, *b.program);
    if (json_mode()) {
      json doc = json::object();
      doc["renamed"] = d.renamed ? json::array({d.renamed->first.str(),
                                                d.renamed->second.str()})
                                 : json(nullptr);
      doc["added_modules"] = json::array();
      for (const auto& m : d.added_modules) doc["added_modules"].push_back(m.id.str());
      doc["removed_modules"] = json::array();
      for (const auto& id : d.removed_modules) doc["removed_modules"].push_back(id.str());
      doc["changed_modules"] = json::array();
      for (const auto& c : d.changed_modules) {
        doc["changed_modules"].push_back(
            json{{"module", c.module.str()}, {"changes", c.changes}});
      }
      doc["added_connections"] = json::array();
      for (const auto& c : d.added_connections) {
        doc["added_connections"].push_back(json::array({c.from.str(), c.to.str()}));
      }
      doc["removed_connections"] = json::array();
      for (const auto& [from, to] : d.removed_connections) {
        doc["removed_connections"].push_back(json::array({from.str(), to.str()}));
      }
      doc["changed_connections"] = json::array();
      for (const auto& c : d.changed_connections) {
        doc["changed_connections"].push_back(json{
            {"from", c.from.str()}, {"to", c.to.str()}, {"changes", c.changes}});
      }
      return report("diff", {}, json{{"diff", doc}});
    }

    out_ << "--- " << opt_.old_file << "\n+++ " << opt_.new_file << "\n";
    if (d.renamed) {
      out_ << "~ program " << d.renamed->first << " -> " << d.renamed->second << "\n";
    }
    for (const auto& id : d.removed_modules) out_ << "- module " << id << "\n";
    for (const auto& m : d.added_modules) out_ << "+ module " << m.id << "\n";
    for (const auto& c : d.changed_modules) {
      out_ << "~ module " << c.module << "\n";
      for (const auto& line : c.changes) out_ << "    " << line << "\n";
    }
    for (const auto& [from, to] : d.removed_connections) {
      out_ << "- connect " << from << " -> " << to << "\n";
    }
    for (const auto& c : d.added_connections) {
      out_ << "+ connect " << c.from << " -> " << c.to << "\n";
    }
    for (const auto& c : d.changed_connections) {
      out_ << "~ connect " << c.from << " -> " << c.to << "\n";
      for (const auto& line : c.changes) out_ << "    " << line << "\n";
    }
    return kSuccess;
  }

  int skeleton() {
    std::vector<Identifier> metrics;
    Program p;
    try {
      for (const auto& m : opt_.metrics) metrics.emplace_back(m);
      const Identifier module(opt_.module);
      p.name = Identifier(opt_.program_name.empty() ? opt_.module + "_skeleton"
                                                    : opt_.program_name);
      p.modules.push_back(skeleton_from_metrics(metrics, module));
    } catch (const Error& e) {
      throw UsageFailure{e.what()};
    }
    return emit_program("skeleton", format(p));
  }

 private:
  const Options& opt_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Specify, check and render modular software measurement programs.",
               "metprog"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--config", opt.config_path, "Lint configuration file");
  app.add_flag("--allow-abstract-goals", opt.allow_abstract_goals,
               "Report goals without metrics (E008) as warnings");

  auto* check = app.add_subcommand("check", "Parse and validate a program");
  check->add_option("file", opt.file, "Program file (.mp, or - for stdin)")->required();

  auto* lint = app.add_subcommand("lint", "Validate and apply good-design rules");
  lint->add_option("file", opt.file, "Program file")->required();
  lint->add_option("--max-inputs", opt.max_inputs, "Input limit per module")
      ->check(CLI::PositiveNumber);
  lint->add_option("--max-outputs", opt.max_outputs, "Output limit per module")
      ->check(CLI::PositiveNumber);
  lint->add_option("--max-object-kinds", opt.max_object_kinds,
                   "Object-of-measurement kinds per module")
      ->check(CLI::PositiveNumber);
  lint->add_option("--disable", opt.disable, "Lint codes to disable")->delimiter(',');

  auto* graph = app.add_subcommand("graph", "Emit the module diagram as DOT");
  graph->add_option("file", opt.file, "Program file")->required();
  graph->add_flag("--levels", opt.show_levels, "Group modules by hierarchy level");
  graph->add_option("--rankdir", opt.rankdir, "Layout direction")
      ->check(CLI::IsMember({"TB", "LR"}));

  auto* levels = app.add_subcommand("levels", "Print the hierarchy level of each module");
  levels->add_option("file", opt.file, "Program file")->required();

  auto* trace = app.add_subcommand("trace", "Follow derivation chains");
  trace->add_option("file", opt.file, "Program file")->required();
  trace->add_option("--up", opt.up, "<module>.<metric> to trace upwards");
  trace->add_option("--down", opt.down, "<module>.<orggoal> to trace downwards");

  auto* extract = app.add_subcommand("extract", "Extract the subprogram rooted at a module");
  extract->add_option("file", opt.file, "Program file")->required();
  extract->add_option("--root", opt.root, "Root module")->required();
  extract->add_option("-o,--output", opt.output, "Output file");

  auto* fmt = app.add_subcommand("fmt", "Print or rewrite a program in canonical form");
  fmt->add_option("file", opt.file, "Program file")->required();
  fmt->add_flag("--write", opt.write, "Rewrite the file in place");

  auto* diff = app.add_subcommand("diff", "Compare two versions of a program");
  diff->add_option("old", opt.old_file, "Old program")->required();
  diff->add_option("new", opt.new_file, "New program")->required();

  auto* skeleton = app.add_subcommand(
      "skeleton", "Reverse-engineer a module from existing metrics");
  skeleton->add_option("--module", opt.module, "Module name")->required();
  skeleton->add_option("--metrics", opt.metrics, "Comma-separated metric ids")
      ->required()
      ->delimiter(',');
  skeleton->add_option("--program", opt.program_name, "Program name");
  skeleton->add_option("-o,--output", opt.output, "Output file");

  // CLI11 reports a misspelled subcommand as a missing one.
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--format" || args[i] == "--config") {
      ++i;
      continue;
    }
    if (!args[i].empty() && args[i][0] == '-') continue;
    const auto subs = app.get_subcommands([&](CLI::App* sub) { return sub->get_name() == args[i]; });
    if (subs.empty()) {
      err << "metprog: unknown subcommand '" << args[i] << "'\n\n" << app.help();
      return kUsage;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "metprog: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  Runner runner(opt, in, out, err);
  try {
    if (check->parsed()) return runner.check();
    if (lint->parsed()) return runner.lint_command();
    if (graph->parsed()) return runner.graph();
    if (levels->parsed()) return runner.levels();
    if (trace->parsed()) return runner.trace();
    if (extract->parsed()) return runner.extract();
    if (fmt->parsed()) return runner.fmt();
    if (diff->parsed()) return runner.diff_command();
    if (skeleton->parsed()) return runner.skeleton();
  } catch (const UsageFailure& e) {
    err << "metprog: " << e.message << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace metprog::cli

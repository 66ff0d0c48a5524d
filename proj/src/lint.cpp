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

#include "metprog/lint.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "metprog/hierarchy.hpp"
#include "metprog/validator.hpp"

namespace metprog {

namespace {

constexpr std::string_view kPlaceholderMarker = "TODO";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

int parse_threshold(std::string_view key, std::string_view value, int line) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out < 1) {
    throw Error("config line " + std::to_string(line) + ": '" +
                std::string(key) + "' must be an integer >= 1");
  }
  return out;
}

std::vector<std::string> parse_code_list(std::string_view value, int line) {
  auto fail = [&](const std::string& why) -> Error {
    return Error("config line " + std::to_string(line) + ": " + why);
  };
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw fail("'disable' must be a list like [\"W105\"]");
  }
  std::vector<std::string> codes;
  std::string_view body = trim(value.substr(1, value.size() - 2));
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = trim(body.substr(0, comma));
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
      item = item.substr(1, item.size() - 2);
    }
    if (!LintConfig::all_codes().count(std::string(item))) {
      throw fail("unknown lint code '" + std::string(item) + "'");
    }
    codes.emplace_back(item);
    if (comma == std::string_view::npos) break;
    body = trim(body.substr(comma + 1));
  }
  return codes;
}

}  // namespace

std::set<std::string> LintConfig::all_codes() {
  return {"W101", "W102", "W103", "W104", "W105",
          "W106", "W107", "W108", "N202"};
}

void LintConfig::disable(const std::string& code) {
  if (!all_codes().count(code)) throw Error("unknown lint code '" + code + "'");
  enabled.erase(code);
}

LintConfig parse_lint_config(std::string_view text, LintConfig base) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error("config line " + std::to_string(line_no) +
                  ": expected 'key = value'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "max_inputs") {
      base.max_inputs = parse_threshold(key, value, line_no);
    } else if (key == "max_outputs") {
      base.max_outputs = parse_threshold(key, value, line_no);
    } else if (key == "max_object_kinds") {
      base.max_object_kinds = parse_threshold(key, value, line_no);
    } else if (key == "disable") {
      for (const auto& code : parse_code_list(value, line_no)) base.disable(code);
    } else {
      throw Error("config line " + std::to_string(line_no) + ": unknown key '" +
                  std::string(key) + "'");
    }
  }
  return base;
}

std::vector<Diagnostic> lint(const Program& p, const LintConfig& config,
                             const SpanIndex& spans) {
  std::vector<Diagnostic> out;
  auto emit = [&](std::string code, std::string message, SourceSpan span) {
    if (config.is_enabled(code)) {
      out.push_back(make_diagnostic(std::move(code), std::move(message),
                                    std::move(span)));
    }
  };

  try {
    for (auto& d : hierarchy_report(p, spans)) {
      if (d.code == "W101" && config.is_enabled(d.code)) out.push_back(std::move(d));
    }
  } catch (const Error&) {
    // Cyclic programs have no lowest level; validation reports E004.
  }

  std::map<Identifier, std::vector<Identifier>> users;
  std::set<Identifier> connected;
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    const auto& c = p.connections[i];
    if (c.from == c.to || !p.find_module(c.from) || !p.find_module(c.to)) continue;
    users[c.to].push_back(c.from);
    connected.insert(c.from);
    connected.insert(c.to);
    for (auto& d : check_connection_setup(p, i, spans)) {
      if (d.code == "W106" && config.is_enabled(d.code)) out.push_back(std::move(d));
    }
  }

  std::set<Identifier> seen;
  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    const Module& m = p.modules[i];
    if (!seen.insert(m.id).second) continue;
    const SourceSpan at = spans.module(i);
    const std::string name = "'" + m.id.str() + "'";

    if (static_cast<int>(m.inputs.size()) > config.max_inputs) {
      emit("W102",
           "module " + name + " has " + std::to_string(m.inputs.size()) +
               " inputs (limit " + std::to_string(config.max_inputs) +
               "); consider splitting it",
           at);
    }
    if (static_cast<int>(m.outputs.size()) > config.max_outputs) {
      emit("W102",
           "module " + name + " has " + std::to_string(m.outputs.size()) +
               " outputs (limit " + std::to_string(config.max_outputs) +
               "); consider splitting it",
           at);
    }
    if (static_cast<int>(m.objects.size()) > config.max_object_kinds) {
      emit("W103",
           "module " + name + " measures " + std::to_string(m.objects.size()) +
               " kinds of objects (limit " +
               std::to_string(config.max_object_kinds) + ")",
           at);
    }
    if (!m.is_organizational() &&
        module_kind_from_objects(m.objects) == ModuleKind::organizational) {
      emit("W104",
           "regular module " + name +
               " measures an organization; make the organization explicit "
               "with an organizational module",
           at);
    }

    const auto& module_users = users[m.id];
    if (!module_users.empty()) {
      for (const auto& output : m.outputs) {
        const bool consumed = std::any_of(
            module_users.begin(), module_users.end(), [&](const Identifier& u) {
              const Module* user = p.find_module(u);
              return std::any_of(
                  user->inputs.begin(), user->inputs.end(),
                  [&](const MetricRef& ref) {
                    return ref.metric == output &&
                           (!ref.module || *ref.module == m.id);
                  });
            });
        if (!consumed) {
          emit("W105",
               "output '" + output.str() + "' of " + name +
                   " is not an input of any module using it",
               spans.entity(SpanKind::output, i, output));
        }
      }
    }

    if (!connected.count(m.id) && p.modules.size() > 1) {
      emit("W107", "module " + name + " is neither used nor using any module",
           at);
    }

    for (const auto& gamma : m.org_goals) {
      const bool related = std::any_of(
          m.og_relation.begin(), m.og_relation.end(),
          [&](const Derivation& d) { return d.derived == gamma.id; });
      if (!related) {
        emit("W108",
             "organizational goal '" + gamma.id.str() + "' of " + name +
                 " is not related to any measurement goal",
             spans.entity(SpanKind::org_goal, i, gamma.id));
      }
    }

    for (const auto& goal : m.goals) {
      if (goal.description &&
          goal.description->rfind(kPlaceholderMarker, 0) == 0) {
        emit("N202",
             "goal '" + goal.id.str() + "' of " + name +
                 " still has a placeholder description from reverse "
                 "engineering",
             spans.entity(SpanKind::goal, i, goal.id));
      }
    }
  }

  sort_diagnostics(out);
  return out;
}

}  // namespace metprog

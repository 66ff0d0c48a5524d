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

#include "metprog/hierarchy.hpp"

#include <algorithm>
#include <deque>

#include "metprog/validator.hpp"

namespace metprog {

namespace {

bool usable(const Program& p, const Connection& c) {
  return c.from != c.to && p.find_module(c.from) && p.find_module(c.to);
}

}  // namespace

LevelMap compute_levels(const Program& program) {
  LevelMap out;
  std::map<Identifier, std::set<Identifier>> succ;
  std::map<Identifier, int> indegree;
  for (const auto& m : program.modules) {
    indegree.emplace(m.id, 0);
    succ[m.id];
  }
  for (const auto& c : program.connections) {
    if (!usable(program, c)) continue;
    if (succ[c.from].insert(c.to).second) ++indegree[c.to];
  }

  for (const auto& [id, deg] : indegree) {
    if (deg == 0) out.roots.insert(id);
    if (succ[id].empty()) out.sinks.insert(id);
  }

  // Kahn's algorithm; levels relax along edges in topological order.
  std::deque<Identifier> ready(out.roots.begin(), out.roots.end());
  for (const auto& id : out.roots) out.levels[id] = 0;
  std::size_t visited = 0;
  while (!ready.empty()) {
    Identifier node = ready.front();
    ready.pop_front();
    ++visited;
    for (const auto& next : succ[node]) {
      out.levels[next] = std::max(out.levels[next], out.levels[node] + 1);
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != indegree.size()) throw Error("cyclic program");
  return out;
}

Program extract_subprogram(const Program& program, const Identifier& root) {
  if (!program.find_module(root)) {
    throw Error("unknown module '" + root.str() + "'");
  }
  std::set<Identifier> reached{root};
  std::deque<Identifier> queue{root};
  while (!queue.empty()) {
    Identifier node = queue.front();
    queue.pop_front();
    for (const auto& c : program.connections) {
      if (c.from != node || !usable(program, c)) continue;
      if (reached.insert(c.to).second) queue.push_back(c.to);
    }
  }

  Program out;
  out.name = Identifier(program.name.str() + "_" + root.str());
  for (const auto& m : program.modules) {
    if (reached.count(m.id)) out.modules.push_back(m);
  }
  for (const auto& c : program.connections) {
    if (reached.count(c.from) && reached.count(c.to)) {
      out.connections.push_back(c);
    }
  }
  return out;
}

std::vector<Diagnostic> hierarchy_report(const Program& program,
                                         const SpanIndex& spans) {
  const LevelMap levels = compute_levels(program);
  std::vector<Diagnostic> out;
  std::set<Identifier> reported;
  for (std::size_t i = 0; i < program.modules.size(); ++i) {
    const Module& m = program.modules[i];
    if (!m.is_organizational() || !reported.insert(m.id).second) continue;
    if (levels.sinks.count(m.id)) {
      out.push_back(make_diagnostic(
          "W101",
          "organizational module '" + m.id.str() +
              "' is at the lowest level; consider splitting it so only "
              "regular modules remain there",
          spans.module(i)));
    }
    if (levels.roots.count(m.id)) {
      out.push_back(make_diagnostic(
          "N201",
          "organizational module '" + m.id.str() +
              "' is at the highest level and is a candidate independent "
              "program",
          spans.module(i)));
    }
  }
  auto roots = check_regular_roots(program, spans);
  out.insert(out.end(), roots.begin(), roots.end());
  sort_diagnostics(out);
  return out;
}

}  // namespace metprog

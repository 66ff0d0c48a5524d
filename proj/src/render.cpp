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

#include "metprog/render.hpp"

#include <map>
#include <set>
#include <sstream>

#include "metprog/hierarchy.hpp"

namespace metprog {

std::string to_dot(const Program& program, const RenderOptions& options) {
  std::map<Identifier, const Module*> nodes;
  for (const auto& m : program.modules) nodes.emplace(m.id, &m);
  std::set<std::pair<Identifier, Identifier>> edges;
  for (const auto& c : program.connections) edges.emplace(c.from, c.to);

  std::ostringstream os;
  os << "digraph " << program.name << " {\n";
  os << "  rankdir=" << (options.rankdir == RankDir::LR ? "LR" : "TB") << ";\n";
  os << "  node [shape=box];\n";
  for (const auto& [id, module] : nodes) {
    os << "  " << id;
    if (module->is_organizational()) os << " [peripheries=2]";
    os << ";\n";
  }
  for (const auto& [from, to] : edges) {
    os << "  " << from << " -> " << to << ";\n";
  }
  if (options.show_levels) {
    const LevelMap levels = compute_levels(program);
    std::map<int, std::set<Identifier>> by_level;
    for (const auto& [id, level] : levels.levels) by_level[level].insert(id);
    for (const auto& group : by_level) {
      os << "  { rank=same;";
      for (const auto& id : group.second) os << " " << id << ";";
      os << " }\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace metprog

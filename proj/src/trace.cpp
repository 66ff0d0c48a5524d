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

#include "metprog/trace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace metprog {

namespace {

struct Node {
  Identifier module;
  Identifier id;
  TraceEntity entity;

  friend auto operator<=>(const Node& a, const Node& b) {
    return std::tie(a.module, a.id) <=> std::tie(b.module, b.id);
  }
  friend bool operator==(const Node& a, const Node& b) {
    return a.module == b.module && a.id == b.id;
  }
};

struct Edge {
  Node node;
  TraceEdge kind;
};

// Grounding graph: an edge a -> b means b is derived from the need to
// achieve a (or, for metrics, b is derived from goal a). Only well-kinded
// pairs take part.
class Graph {
 public:
  explicit Graph(const Program& p) {
    std::set<Identifier> used;
    for (const auto& c : p.connections) {
      if (c.from != c.to && p.find_module(c.from) && p.find_module(c.to)) {
        used.insert(c.to);
      }
    }
    std::set<Identifier> seen;
    for (const auto& m : p.modules) {
      if (!seen.insert(m.id).second) continue;
      for (const auto& pair : m.gm_relation) {
        if (m.find_metric(pair.derived) && m.find_goal(pair.purpose)) {
          link({m.id, pair.purpose, TraceEntity::goal},
               {m.id, pair.derived, TraceEntity::metric}, TraceEdge::gm);
        }
      }
      if (!m.is_organizational()) continue;
      for (const auto& pair : m.og_relation) {
        if (!m.find_org_goal(pair.derived) || !m.find_goal(pair.purpose)) continue;
        Node gamma{m.id, pair.derived, TraceEntity::org_goal};
        Node goal{m.id, pair.purpose, TraceEntity::goal};
        link(gamma, goal, TraceEdge::og);
        link(goal, gamma, TraceEdge::og);
      }
      if (!used.count(m.id)) {
        for (const auto& g : m.org_goals) {
          axioms_.insert(Node{m.id, g.id, TraceEntity::org_goal});
        }
      }
    }
    for (const auto& c : p.connections) {
      if (c.from == c.to) continue;
      const Module* user = p.find_module(c.from);
      const Module* usee = p.find_module(c.to);
      if (!user || !usee) continue;
      for (const auto& pair : c.relation) {
        if (pair.used_module != c.to || pair.using_module != c.from) continue;
        if (!usee->find_goal(pair.used_goal)) continue;
        const bool org = user->is_organizational();
        const EntityKind want = org ? EntityKind::org_goal : EntityKind::goal;
        if (user->kind_of(pair.using_ref) != want) continue;
        link({c.from, pair.using_ref,
              org ? TraceEntity::org_goal : TraceEntity::goal},
             {c.to, pair.used_goal, TraceEntity::goal}, TraceEdge::connection);
      }
    }
    for (auto& [node, edges] : up_) {
      std::sort(edges.begin(), edges.end(),
                [](const Edge& a, const Edge& b) { return a.node < b.node; });
    }
  }

  // All simple upward paths from `start` that end at the first axiom.
  std::vector<TraceChain> chains_up(const Node& start) const {
    std::vector<TraceChain> out;
    TraceChain path;
    std::set<Node> on_path;
    walk_up(start, TraceEdge::origin, path, on_path, out);
    return out;
  }

 private:
  void link(const Node& from, const Node& to, TraceEdge kind) {
    up_[to].push_back(Edge{from, kind});
  }

  void walk_up(const Node& node, TraceEdge via, TraceChain& path,
               std::set<Node>& on_path, std::vector<TraceChain>& out) const {
    path.steps.push_back(TraceStep{node.entity, node.module, node.id, via});
    on_path.insert(node);
    if (axioms_.count(node)) {
      out.push_back(path);
    } else if (auto it = up_.find(node); it != up_.end()) {
      for (const auto& edge : it->second) {
        if (on_path.count(edge.node)) continue;
        walk_up(edge.node, edge.kind, path, on_path, out);
      }
    }
    on_path.erase(node);
    path.steps.pop_back();
  }

  std::set<Node> axioms_;
  std::map<Node, std::vector<Edge>> up_;
};

const Module& require_module(const Program& p, const Identifier& id) {
  const Module* m = p.find_module(id);
  if (!m) throw Error("unknown module '" + id.str() + "'");
  return *m;
}

}  // namespace

std::string_view to_string(TraceEntity entity) {
  switch (entity) {
    case TraceEntity::metric:
      return "metric";
    case TraceEntity::goal:
      return "goal";
    case TraceEntity::org_goal:
      return "orggoal";
  }
  return "metric";
}

std::string_view to_string(TraceEdge edge) {
  switch (edge) {
    case TraceEdge::origin:
      return "origin";
    case TraceEdge::gm:
      return "G(M)";
    case TraceEdge::og:
      return "G(Γ)";
    case TraceEdge::connection:
      return "connection";
  }
  return "origin";
}

std::vector<TraceChain> trace_up(const Program& program, const Identifier& module,
                                 const Identifier& metric) {
  const Module& m = require_module(program, module);
  if (!m.find_metric(metric)) {
    throw Error("'" + metric.str() + "' is not a metric of '" + module.str() + "'");
  }
  return Graph(program).chains_up(Node{module, metric, TraceEntity::metric});
}

std::vector<TraceChain> trace_down(const Program& program,
                                   const Identifier& module,
                                   const Identifier& org_goal) {
  const Module& m = require_module(program, module);
  if (!m.find_org_goal(org_goal)) {
    throw Error("'" + org_goal.str() + "' is not an organizational goal of '" +
                module.str() + "'");
  }
  const Graph graph(program);

  // Sorted by the (module, id) sequence so the order matches a depth-first
  // walk that takes branches in lexicographic order.
  auto key = [](const TraceChain& c) {
    std::vector<std::pair<std::string, std::string>> k;
    for (const auto& s : c.steps) k.emplace_back(s.module.str(), s.id.str());
    return k;
  };
  std::map<std::vector<std::pair<std::string, std::string>>, TraceChain> found;

  std::set<Identifier> seen;
  for (const auto& owner : program.modules) {
    if (!seen.insert(owner.id).second) continue;
    for (const auto& metric : owner.metrics) {
      for (const auto& up : graph.chains_up(
               Node{owner.id, metric.id, TraceEntity::metric})) {
        auto at = std::find_if(up.steps.begin(), up.steps.end(),
                               [&](const TraceStep& s) {
                                 return s.module == module && s.id == org_goal;
                               });
        if (at == up.steps.end()) continue;
        // Reverse the upward suffix [metric .. org_goal]; the edge that linked
        // step i to step i-1 going up links step i-1 to step i going down.
        TraceChain down;
        const auto last = static_cast<std::size_t>(at - up.steps.begin());
        for (std::size_t i = last + 1; i-- > 0;) {
          TraceStep step = up.steps[i];
          step.edge = i == last ? TraceEdge::origin : up.steps[i + 1].edge;
          down.steps.push_back(step);
        }
        found.emplace(key(down), std::move(down));
      }
    }
  }

  std::vector<TraceChain> out;
  for (auto& [k, chain] : found) out.push_back(std::move(chain));
  return out;
}

std::string format_chain(const TraceChain& chain, TraceDirection direction) {
  const std::string arrow = direction == TraceDirection::up ? " <- " : " -> ";
  std::string out;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& step = chain.steps[i];
    if (i) out += arrow;
    out += step.id.str();
    if (i + 1 == chain.steps.size() || chain.steps[i + 1].module != step.module) {
      out += " [" + step.module.str() + "]";
    }
  }
  return out;
}

}  // namespace metprog

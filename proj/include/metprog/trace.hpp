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

#ifndef METPROG_TRACE_HPP
#define METPROG_TRACE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "metprog/model.hpp"

namespace metprog {

enum class TraceEntity { metric, goal, org_goal };

// How a step is linked to the previous one; `origin` for the first step.
enum class TraceEdge { origin, gm, og, connection };

std::string_view to_string(TraceEntity entity);
std::string_view to_string(TraceEdge edge);

struct TraceStep {
  TraceEntity entity = TraceEntity::metric;
  Identifier module;
  Identifier id;
  TraceEdge edge = TraceEdge::origin;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct TraceChain {
  std::vector<TraceStep> steps;

  friend bool operator==(const TraceChain&, const TraceChain&) = default;
};

// Derivation chains from `metric` up to an organizational goal of a root
// organizational module, each ending at the first such goal it reaches.
// Empty when none of the metric's goals is justified. Branches are explored
// in (module id, entity id) order.
// Throws Error when the module or the metric does not exist.
std::vector<TraceChain> trace_up(const Program& program, const Identifier& module,
                                 const Identifier& metric);

// The parts of all upward chains that start at `org_goal`, read downwards:
// every chain from the organizational goal to a metric that it grounds.
// Throws Error when the module or the organizational goal does not exist.
std::vector<TraceChain> trace_down(const Program& program,
                                   const Identifier& module,
                                   const Identifier& org_goal);

enum class TraceDirection { up, down };

// `m1 <- g1 <- gamma2 [Y]` (up) or `gamma1 -> g3 -> m2 [Y]` (down); each run
// of steps in one module is followed by its module tag.
std::string format_chain(const TraceChain& chain, TraceDirection direction);

}  // namespace metprog

#endif  // METPROG_TRACE_HPP

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


#include <algorithm>

#include "doctest.h"
#include "metprog/trace.hpp"
#include "test_support.hpp"

namespace metprog {
namespace {

using testing::id;

std::vector<std::string> lines(const std::vector<TraceChain>& chains, TraceDirection dir) {
  std::vector<std::string> out;
  for (const auto& c : chains) out.push_back(format_chain(c, dir));
  return out;
}

std::vector<std::string> up(const Program& p, const char* module, const char* metric) {
  return lines(trace_up(p, id(module), id(metric)), TraceDirection::up);
}

std::vector<std::string> down(const Program& p, const char* module, const char* gamma) {
  return lines(trace_down(p, id(module), id(gamma)), TraceDirection::down);
}

TEST_CASE("fig3 chains") {
  const auto p = testing::load_program("fig3.mp");
  auto chains = trace_up(p, id("C"), id("m_c"));
  REQUIRE(chains.size() == 1);
  const std::vector<TraceStep> expected{
      {TraceEntity::metric, id("C"), id("m_c"), TraceEdge::origin},
      {TraceEntity::goal, id("C"), id("g_c"), TraceEdge::gm},
      {TraceEntity::org_goal, id("B"), id("gamma_b1"), TraceEdge::connection},
      {TraceEntity::goal, id("B"), id("g_b1"), TraceEdge::og},
      {TraceEntity::org_goal, id("A"), id("gamma_a"), TraceEdge::connection},
  };
  CHECK(chains[0].steps == expected);
  CHECK(format_chain(chains[0], TraceDirection::up) ==
        "m_c <- g_c [C] <- gamma_b1 <- g_b1 [B] <- gamma_a [A]");

  CHECK(down(p, "B", "gamma_b1") ==
        std::vector<std::string>{"gamma_b1 [B] -> g_c -> m_c [C]"});
  CHECK(down(p, "A", "gamma_a") == std::vector<std::string>{
                                       "gamma_a -> g_a -> m_a [A]",
                                       "gamma_a [A] -> g_b1 -> gamma_b1 [B] -> g_c -> m_c [C]",
                                       "gamma_a [A] -> g_b1 -> m_b1 [B]",
                                       "gamma_a [A] -> g_b2 -> gamma_b2 [B] -> g_d -> m_d [D]",
                                       "gamma_a [A] -> g_b2 -> m_b2 [B]",
                                   });
}

TEST_CASE("module Y chains") {
  const auto p = testing::load_program("module_y.mp");
  CHECK(up(p, "Y", "m1") ==
        std::vector<std::string>{"m1 <- g1 <- gamma2 [Y]", "m1 <- g2 <- gamma2 [Y]"});
  CHECK(down(p, "Y", "gamma1") == std::vector<std::string>{"gamma1 -> g3 -> m2 [Y]"});

  // Used by another module, Y's organizational goals are no longer axioms.
  Program used = p;
  Module user = used.modules[0];
  user.id = id("X");
  used.modules.push_back(user);
  used.connections.push_back({id("X"), id("Y"), {}});
  CHECK(up(used, "Y", "m1").empty());
}

TEST_CASE("empty traces") {
  const auto e007 = testing::load_program("rules/e007.mp");
  CHECK(trace_up(e007, id("B"), id("m2")).empty());
  const auto w108 = testing::load_program("rules/w108.mp");
  CHECK(trace_down(w108, id("A"), id("o2")).empty());
}

TEST_CASE("unknown entities") {
  const auto p = testing::load_program("fig3.mp");
  CHECK_THROWS_AS(trace_up(p, id("Q"), id("m_c")), Error);
  CHECK_THROWS_AS(trace_up(p, id("C"), id("g_c")), Error);
  CHECK_THROWS_AS(trace_down(p, id("C"), id("g_c")), Error);
  CHECK_THROWS_AS(trace_down(p, id("Q"), id("gamma_a")), Error);
}

bool linked(const Program& p, const TraceStep& from, const TraceStep& to) {
  // `to` is the next step upwards from `from`.
  switch (to.edge) {
    case TraceEdge::gm: {
      const Module& m = *p.find_module(from.module);
      return from.module == to.module &&
             std::count(m.gm_relation.begin(), m.gm_relation.end(),
                        Derivation{from.id, to.id}) == 1;
    }
    case TraceEdge::og: {
      const Module& m = *p.find_module(from.module);
      const Derivation forward{from.id, to.id}, backward{to.id, from.id};
      return from.module == to.module &&
             (std::count(m.og_relation.begin(), m.og_relation.end(), forward) +
              std::count(m.og_relation.begin(), m.og_relation.end(), backward)) == 1;
    }
    case TraceEdge::connection: {
      const Connection* c = p.find_connection(to.module, from.module);
      return c && std::count(c->relation.begin(), c->relation.end(),
                             ConnectionPair{from.module, from.id, to.module, to.id}) == 1;
    }
    case TraceEdge::origin:
      return false;
  }
  return false;
}

void check_trace_properties(const Program& p) {
  std::set<std::pair<GoalRef, GoalRef>> up_pairs, down_pairs;  // (metric, γ)
  const auto check = is_program(p);
  const std::set<GoalRef> unjustified(check.unjustified.begin(), check.unjustified.end());
  for (const auto& m : p.modules) {
    for (const auto& metric : m.metrics) {
      const auto chains = trace_up(p, m.id, metric.id);
      bool grounded = false;
      for (const auto& pair : m.gm_relation) {
        if (pair.derived == metric.id && m.find_goal(pair.purpose) &&
            !unjustified.count(GoalRef{m.id, pair.purpose})) {
          grounded = true;
        }
      }
      CHECK(chains.empty() == !grounded);
      for (const auto& chain : chains) {
        REQUIRE(chain.steps.size() >= 3);
        CHECK(chain.steps.front().edge == TraceEdge::origin);
        CHECK(chain.steps.back().entity == TraceEntity::org_goal);
        std::set<std::pair<Identifier, Identifier>> seen;
        for (std::size_t i = 0; i < chain.steps.size(); ++i) {
          const auto& step = chain.steps[i];
          CHECK(seen.insert({step.module, step.id}).second);
          if (i > 0) CHECK(linked(p, chain.steps[i - 1], step));
          if (step.entity == TraceEntity::org_goal) {
            up_pairs.insert({{m.id, metric.id}, {step.module, step.id}});
          }
        }
      }
    }
    for (const auto& gamma : m.org_goals) {
      for (const auto& chain : trace_down(p, m.id, gamma.id)) {
        const auto& last = chain.steps.back();
        CHECK(last.entity == TraceEntity::metric);
        CHECK(chain.steps.front().id == gamma.id);
        down_pairs.insert({{last.module, last.id}, {m.id, gamma.id}});
      }
    }
  }
  CHECK(up_pairs == down_pairs);
}

TEST_CASE("trace properties on fixtures") {
  for (const char* name : {"fig3.mp", "fig4.mp", "module_y.mp", "rules/w106.mp",
                           "rules/e010.mp", "rules/e011.mp"}) {
    CAPTURE(name);
    check_trace_properties(testing::load_program(name));
  }
}

TEST_CASE("property: trace properties on random programs") {
  testing::ProgramGenerator gen(97);
  for (int i = 0; i < 200; ++i) check_trace_properties(gen.next());
}

}  // namespace
}  // namespace metprog

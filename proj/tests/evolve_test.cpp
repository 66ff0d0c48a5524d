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
#include <random>

#include "doctest.h"
#include "metprog/evolve.hpp"
#include "metprog/validator.hpp"
#include "test_support.hpp"

namespace metprog {
namespace {

using testing::codes;
using testing::id;

Goal goal(const std::string& name) { return Goal{id(name), std::nullopt, std::nullopt}; }

// {<A, B>} before B became organizational and before C and D existed.
Program fig3_predecessor() {
  Program p = testing::load_program("fig3.mp");
  p.modules.erase(p.modules.begin() + 2, p.modules.end());
  p.connections.resize(1);
  Module& b = p.modules[1];
  b.kind = ModuleKind::regular;
  b.objects = {ObjectKind::process};
  b.inputs.clear();
  b.org_goals.clear();
  b.og_relation.clear();
  return p;
}

std::vector<Goal> fig3_b_goals() { return {goal("gamma_b1"), goal("gamma_b2")}; }
std::vector<Derivation> fig3_b_pairs() {
  return {{id("gamma_b1"), id("g_b1")}, {id("gamma_b2"), id("g_b2")}};
}

TEST_CASE("promoting B of the fig3 predecessor") {
  const Program before = fig3_predecessor();
  REQUIRE(validate(before).empty());
  auto result = promote(before, id("B"), fig3_b_goals(), fig3_b_pairs());
  CHECK(result.worklist.empty());  // B uses nothing yet
  CHECK(validate(result.program).empty());
  const Module& b = *result.program.find_module(id("B"));
  CHECK(b.is_organizational());
  CHECK(b.og_relation == fig3_b_pairs());

  auto d = diff(before, result.program);
  REQUIRE(d.changed_modules.size() == 1);
  CHECK(d.changed_modules[0].module == id("B"));
  const auto& lines = d.changed_modules[0].changes;
  CHECK(std::count(lines.begin(), lines.end(), "kind: regular -> organizational") == 1);
  CHECK(std::count(lines.begin(), lines.end(), "orggoals: +gamma_b1") == 1);
  CHECK(std::count(lines.begin(), lines.end(), "og_relation: +(gamma_b2, g_b2)") == 1);
  CHECK(d.added_modules.empty());
  CHECK(d.added_connections.empty());
  CHECK(d.changed_connections.empty());

  // Then C and D are added below B.
  auto grown = diff(result.program, testing::load_program("fig3.mp"));
  CHECK(grown.added_module_ids() == std::set<Identifier>{id("C"), id("D")});
  CHECK(grown.added_connection_ids() ==
        std::set<ConnectionId>{{id("B"), id("C")}, {id("B"), id("D")}});
  CHECK(grown.removed_modules.empty());
  CHECK(grown.removed_connections.empty());
}

TEST_CASE("promotion without intra-module pairs leaves uncovered goals unjustified") {
  Program before = fig3_predecessor();
  before.connections[0].relation.pop_back();  // A no longer asks for g_b2
  auto promoted = promote(before, id("B"), fig3_b_goals(), {}).program;
  auto found = validate(promoted);
  REQUIRE(found.size() == 1);
  CHECK(found[0].code == "E010");
  CHECK(found[0].message.find("'g_b2'") != std::string::npos);
}

TEST_CASE("promotion lists the relations to re-source") {
  const Program fig4 = testing::load_program("fig4.mp");
  auto result = promote(fig4, id("D"), {goal("gamma_d")}, {{id("gamma_d"), id("g_d")}});
  REQUIRE(result.worklist.size() == 2);
  CHECK(result.worklist[0].from == id("D"));
  CHECK(result.worklist[0].to == id("B"));
  CHECK(result.worklist[1].to == id("C"));
  CHECK(result.worklist[0].pair.using_ref == id("g_d"));
  CHECK(codes(validate(result.program)) == std::set<std::string>{"E011", "E010"});

  Program fixed = result.program;
  for (auto& c : fixed.connections) {
    if (c.from != id("D")) continue;
    for (auto& pair : c.relation) pair.using_ref = id("gamma_d");
  }
  CHECK(validate(fixed).empty());
}

TEST_CASE("promotion preconditions") {
  const Program fig4 = testing::load_program("fig4.mp");
  const std::vector<Goal> gamma{goal("gamma_d")};
  CHECK_THROWS_AS(promote(fig4, id("A"), gamma, {}), Error);
  CHECK_THROWS_AS(promote(fig4, id("Q"), gamma, {}), Error);
  CHECK_THROWS_AS(promote(fig4, id("D"), {}, {}), Error);
  CHECK_THROWS_AS(promote(fig4, id("D"), {goal("g_d")}, {}), Error);
  CHECK_THROWS_AS(promote(fig4, id("D"), {goal("o"), goal("o")}, {}), Error);
  CHECK_THROWS_AS(promote(fig4, id("D"), gamma, {{id("gamma_d"), id("m_d")}}), Error);
  CHECK_THROWS_AS(promote(fig4, id("D"), gamma, {{id("other"), id("g_d")}}), Error);
  CHECK_THROWS_AS(promote(fig4, id("D"), gamma,
                          {{id("gamma_d"), id("g_d")}, {id("gamma_d"), id("g_d")}}),
                  Error);
}

TEST_CASE("property: promotion keeps everything but kind, Γ and G(Γ)") {
  testing::ProgramGenerator gen(71);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const Program p = gen.next();
    for (const auto& m : p.modules) {
      if (m.is_organizational()) continue;
      std::vector<Derivation> pairs;
      for (const auto& g : m.goals) pairs.push_back({id("new_o"), g.id});
      auto result = promote(p, m.id, {goal("new_o")}, pairs);
      const Module& after = *result.program.find_module(m.id);
      CHECK(after.metrics == m.metrics);
      CHECK(after.outputs == m.outputs);
      CHECK(after.inputs == m.inputs);
      CHECK(after.goals == m.goals);
      CHECK(after.gm_relation == m.gm_relation);
      CHECK(after.objects == m.objects);
      CHECK(result.program.connections == p.connections);

      std::vector<ResourcingItem> expected;
      for (const auto& c : p.connections) {
        if (c.from != m.id) continue;
        for (const auto& pair : c.relation) {
          if (m.find_goal(pair.using_ref)) expected.push_back({c.from, c.to, pair});
        }
      }
      CHECK(result.worklist == expected);

      auto d = diff(p, result.program);
      CHECK(d.touched_modules() == std::set<Identifier>{m.id});
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("skeleton from metrics") {
  auto two = skeleton_from_metrics({id("m_x"), id("m_y")}, id("S"));
  CHECK(two.id == id("S"));
  CHECK_FALSE(two.is_organizational());
  REQUIRE(two.goals.size() == 2);
  CHECK(two.goals[0].id == id("g_m_x"));
  CHECK(two.goals[1].id == id("g_m_y"));
  CHECK(two.goals[0].description == "TODO: elicited from metric m_x");
  CHECK(two.gm_relation == std::vector<Derivation>{{id("m_x"), id("g_m_x")},
                                                   {id("m_y"), id("g_m_y")}});
  CHECK(two.outputs == std::vector<Identifier>{id("m_x"), id("m_y")});

  auto one = skeleton_from_metrics({id("m1")}, id("S"));
  CHECK(one.goals.size() == 1);
  CHECK(one.metrics.size() == 1);

  CHECK_THROWS_AS(skeleton_from_metrics({}, id("S")), Error);
  CHECK_THROWS_AS(skeleton_from_metrics({id("m1"), id("m1")}, id("S")), Error);
  CHECK_THROWS_AS(skeleton_from_metrics({id("m1"), id("g_m1")}, id("S")), Error);
}

TEST_CASE("property: skeletons are well defined and fully derived") {
  std::mt19937 rng(73);
  for (int i = 0; i < 200; ++i) {
    std::vector<Identifier> metrics;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 6); k < n; ++k) {
      metrics.push_back(id("m" + std::to_string(k) + "_" + std::to_string(rng() % 100)));
    }
    auto module = skeleton_from_metrics(metrics, id("S"));
    CHECK(is_well_defined(module).ok);
    Program alone;
    alone.name = id("p");
    alone.modules = {module};
    auto found = codes(validate(alone));
    CHECK(found.count("E007") == 0);
    CHECK(found.count("E008") == 0);
  }
}

TEST_CASE("diff of a program with itself is empty") {
  for (const char* name : {"fig3.mp", "fig4.mp", "module_y.mp"}) {
    auto p = testing::load_program(name);
    CHECK(diff(p, p).empty());
  }
}

// Random edits of a program: module and connection removal and addition,
// field changes, and reordering. Ids stay unique.
Program mutate(Program p, std::mt19937& rng, testing::ProgramGenerator& gen) {
  const Program other = gen.next(4);
  switch (rng() % 6) {
    case 0:
      if (!p.modules.empty()) p.modules.erase(p.modules.begin() + rng() % p.modules.size());
      break;
    case 1: {
      if (p.find_module(id("Extra"))) break;
      Module extra = other.modules.front();
      extra.id = id("Extra");
      p.modules.push_back(extra);
      break;
    }
    case 2:
      if (!p.connections.empty()) p.connections.erase(p.connections.begin());
      break;
    case 3:
      if (p.modules.size() >= 2 && !p.find_connection(p.modules.back().id, p.modules.front().id)) {
        p.connections.push_back({p.modules.back().id, p.modules.front().id, {}});
      }
      break;
    case 4: {
      if (p.modules.empty()) break;
      Module& m = p.modules[rng() % p.modules.size()];
      if (m.find_metric(id("added"))) break;
      m.metrics.push_back(Metric{id("added"), std::string("new")});
      if (!m.goals.empty()) m.goals.front().description = "changed";
      break;
    }
    default:
      std::reverse(p.modules.begin(), p.modules.end());
      std::reverse(p.connections.begin(), p.connections.end());
      if (!p.connections.empty()) p.connections.front().relation.clear();
      break;
  }
  if (rng() % 5 == 0) p.name = id("renamed");
  return p;
}

std::set<Identifier> changed_ids(const ProgramDiff& d) {
  std::set<Identifier> out;
  for (const auto& c : d.changed_modules) out.insert(c.module);
  return out;
}

std::set<ConnectionId> changed_connection_ids(const ProgramDiff& d) {
  std::set<ConnectionId> out;
  for (const auto& c : d.changed_connections) out.insert({c.from, c.to});
  return out;
}

TEST_CASE("property: diffs mirror and apply") {
  testing::ProgramGenerator gen(79);
  std::mt19937 rng(83);
  for (int i = 0; i < 300; ++i) {
    const Program a = gen.next();
    Program b = a;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 3); k < n; ++k) b = mutate(b, rng, gen);

    const auto ab = diff(a, b);
    const auto ba = diff(b, a);
    CHECK(ab.added_module_ids() == ba.removed_modules);
    CHECK(ab.removed_modules == ba.added_module_ids());
    CHECK(ab.added_connection_ids() == ba.removed_connections);
    CHECK(ab.removed_connections == ba.added_connection_ids());
    CHECK(changed_ids(ab) == changed_ids(ba));
    CHECK(changed_connection_ids(ab) == changed_connection_ids(ba));
    CHECK(ab.empty() == ba.empty());

    CHECK(equivalent(apply_diff(a, ab), b));
    CHECK(equivalent(apply_diff(b, ba), a));
    CHECK(ab.empty() == equivalent(a, b));
  }
}

TEST_CASE("single evolve operations stay local on fig4") {
  const Program fig4 = testing::load_program("fig4.mp");

  auto promoted = promote(fig4, id("D"), {goal("gamma_d")}, {{id("gamma_d"), id("g_d")}});
  auto d = diff(fig4, promoted.program);
  CHECK(d.touched_modules() == std::set<Identifier>{id("D")});

  Program grown = fig4;
  grown.modules.push_back(skeleton_from_metrics({id("m_h")}, id("H")));
  grown.connections.push_back(
      {id("C"), id("H"), {{id("H"), id("g_m_h"), id("C"), id("gamma_c")}}});
  d = diff(fig4, grown);
  CHECK(d.added_module_ids() == std::set<Identifier>{id("H")});
  CHECK(d.added_connection_ids() == std::set<ConnectionId>{{id("C"), id("H")}});
  CHECK(d.changed_modules.empty());
  CHECK(d.touched_modules() == std::set<Identifier>{id("C"), id("H")});
}

}  // namespace
}  // namespace metprog

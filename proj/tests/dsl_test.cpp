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


#include <random>
#include <string>

#include "doctest.h"
#include "metprog/dsl.hpp"
#include "test_support.hpp"

namespace metprog {
namespace {

using testing::id;

std::string with_noise(const std::string& text, std::mt19937& rng) {
  // Comments, blank lines and extra blanks between tokens must not matter.
  std::string out;
  for (char c : text) {
    if (c == '\n') {
      if (rng() % 3 == 0) out += "  // note";
      out += '\n';
      if (rng() % 4 == 0) out += "\n";
    } else if (c == ' ' && rng() % 3 == 0) {
      out += "   ";
    } else {
      out += c;
    }
  }
  return out;
}

TEST_CASE("module Y parses into its sets and relations") {
  auto parsed = testing::parse_fixture("module_y.mp");
  REQUIRE(parsed.program);
  CHECK(parsed.diagnostics.empty());
  REQUIRE(parsed.program->modules.size() == 1);
  const Module& y = parsed.program->modules[0];
  CHECK(y.id == id("Y"));
  CHECK(y.is_organizational());
  CHECK(y.org_goals.size() == 2);
  CHECK(y.goals.size() == 3);
  CHECK(y.metrics.size() == 2);
  CHECK(y.og_relation == std::vector<Derivation>{{id("gamma2"), id("g1")},
                                                 {id("gamma2"), id("g2")},
                                                 {id("gamma1"), id("g3")}});
  CHECK(y.gm_relation == std::vector<Derivation>{{id("m1"), id("g1")},
                                                 {id("m1"), id("g2")},
                                                 {id("m2"), id("g3")}});
  CHECK(y.inputs == std::vector<MetricRef>{{std::nullopt, id("m_a")},
                                           {std::nullopt, id("m_b")},
                                           {std::nullopt, id("m_c")}});
  CHECK(y.outputs == std::vector<Identifier>{id("m1"), id("m2")});
}

TEST_CASE("empty input expects a program header") {
  auto parsed = parse("");
  CHECK_FALSE(parsed.program);
  REQUIRE(parsed.diagnostics.size() == 1);
  CHECK(parsed.diagnostics[0].code == "P001");
  CHECK(parsed.diagnostics[0].message == "expected 'program'");
  CHECK(parsed.diagnostics[0].span.line == 1);
}

TEST_CASE("fixture sizes") {
  auto fig3 = testing::load_program("fig3.mp");
  CHECK(fig3.modules.size() == 4);
  CHECK(fig3.connections.size() == 3);
  auto fig4 = testing::load_program("fig4.mp");
  CHECK(fig4.modules.size() == 7);
  CHECK(fig4.connections.size() == 6);
  const auto* d = fig4.find_module(id("D"));
  REQUIRE(d);
  CHECK(d->goals[0].question == "Which features correlate with satisfaction?");
  CHECK(d->inputs[0] == MetricRef{id("B"), id("m_b")});
}

TEST_CASE("format round-trips the fixtures") {
  for (const char* name : {"fig3.mp", "fig4.mp", "module_y.mp"}) {
    CAPTURE(name);
    auto p = testing::load_program(name);
    auto again = parse(format(p));
    REQUIRE(again.program);
    CHECK(*again.program == p);
  }
}

TEST_CASE("fig4 formats to its golden file") {
  auto p = testing::load_program("fig4.mp");
  CHECK(format(p) == testing::read_fixture("golden/fig4.mp"));
}

TEST_CASE("empty module body") {
  Program p;
  p.name = id("p");
  Module x;
  x.id = id("X");
  p.modules.push_back(x);
  const auto text = format(p);
  CHECK(text == "program p\n\nmodule X {\n}\n");
  auto again = parse(text);
  REQUIRE(again.program);
  CHECK(*again.program == p);
}

TEST_CASE("descriptions keep quotes and backslashes") {
  Program p;
  p.name = id("p");
  Module x;
  x.id = id("X");
  x.goals.push_back(Goal{id("g"), R"(say "hi" \ bye)", R"(why "not"?)"});
  x.metrics.push_back(Metric{id("m"), std::string("")});
  x.gm_relation.push_back({id("m"), id("g")});
  p.modules.push_back(x);
  auto again = parse(format(p));
  REQUIRE(again.program);
  CHECK(*again.program == p);
}

TEST_CASE("relate routes pairs by the kind of the left side") {
  auto parsed = parse(R"(program p
module X organizational {
  orggoals: [o]
  goals: [g]
  metrics: [m]
  relate m -> g
  relate o -> g
})");
  REQUIRE(parsed.program);
  const Module& x = parsed.program->modules[0];
  CHECK(x.og_relation == std::vector<Derivation>{{id("o"), id("g")}});
  CHECK(x.gm_relation == std::vector<Derivation>{{id("m"), id("g")}});
}

TEST_CASE("parse errors") {
  SUBCASE("duplicate declaration in one module") {
    auto parsed = parse("program p\nmodule Y {\n  goals: [g]\n  metrics: [g]\n}\n");
    REQUIRE(parsed.diagnostics.size() == 1);
    CHECK(parsed.diagnostics[0].code == "P002");
    CHECK(parsed.diagnostics[0].span.line == 4);
    CHECK(parsed.diagnostics[0].span.column == 13);
  }
  SUBCASE("duplicate section") {
    auto parsed = parse("program p\nmodule Y {\n  goals: [g]\n  goals: [h]\n}\n");
    REQUIRE(parsed.diagnostics.size() == 1);
    CHECK(parsed.diagnostics[0].code == "P002");
  }
  SUBCASE("malformed arrow") {
    auto parsed = parse("program p\nmodule Y {\n  relate a => b\n}\n");
    REQUIRE(parsed.diagnostics.size() == 1);
    CHECK(parsed.diagnostics[0].code == "P003");
    CHECK(parsed.diagnostics[0].span.line == 3);
    CHECK(parsed.diagnostics[0].span.column == 12);
  }
  SUBCASE("orggoals in a regular module") {
    auto parsed = parse("program p\nmodule Y {\n  orggoals: [o]\n}\n");
    REQUIRE(parsed.diagnostics.size() == 1);
    CHECK(parsed.diagnostics[0].code == "P001");
  }
  SUBCASE("sections out of order") {
    auto parsed = parse("program p\nmodule Y {\n  metrics: [m]\n  goals: [g]\n}\n");
    REQUIRE(parsed.diagnostics.size() == 1);
    CHECK(parsed.diagnostics[0].code == "P001");
  }
  SUBCASE("bad escape") {
    auto parsed = parse("program p\nmodule Y {\n  goals: [g: \"a\\qb\"]\n}\n");
    REQUIRE_FALSE(parsed.diagnostics.empty());
    CHECK(parsed.diagnostics[0].code == "P001");
  }
  SUBCASE("unterminated connection") {
    auto parsed = parse("program p\nconnect A -> B {\n  relate B.g -> A.o\n");
    REQUIRE_FALSE(parsed.diagnostics.empty());
    CHECK(parsed.diagnostics[0].code == "P001");
  }
}

TEST_CASE("parser recovers at the next top-level item") {
  const std::vector<std::string> broken = {
      "module B%d {\n  goals: [g g]\n}\n",
      "module B%d {\n  relate a => b\n}\n",
      "module B%d {\n  objects: [planet]\n}\n",
      "module B%d {\n  metrics: [m: 12]\n}\n",
      "module B%d organizational {\n  goals: [g]\n  orggoals: [o]\n}\n",
  };
  for (std::size_t k = 2; k <= broken.size(); ++k) {
    std::string text = "program p\n";
    for (std::size_t i = 0; i < k; ++i) {
      std::string item = broken[i];
      item.replace(item.find("%d"), 2, std::to_string(i));
      text += item + "module Ok" + std::to_string(i) + " {\n  goals: [g]\n}\n";
    }
    CAPTURE(text);
    auto parsed = parse(text);
    CHECK_FALSE(parsed.program);
    CHECK(parsed.diagnostics.size() >= k);
  }
}

TEST_CASE("every declared entity has a span") {
  auto parsed = testing::parse_fixture("fig4.mp");
  REQUIRE(parsed.program);
  const Program& p = *parsed.program;
  const auto& spans = parsed.spans;
  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    const Module& m = p.modules[i];
    CHECK(spans.find(SpanIndex::module_key(i)));
    for (const auto& g : m.org_goals) CHECK(spans.find(SpanIndex::entity_key(SpanKind::org_goal, i, g.id)));
    for (const auto& g : m.goals) CHECK(spans.find(SpanIndex::entity_key(SpanKind::goal, i, g.id)));
    for (const auto& x : m.metrics) CHECK(spans.find(SpanIndex::entity_key(SpanKind::metric, i, x.id)));
    for (const auto& x : m.outputs) CHECK(spans.find(SpanIndex::entity_key(SpanKind::output, i, x)));
    for (const auto& r : m.inputs) CHECK(spans.find(SpanIndex::input_key(i, r)));
    for (const auto& d : m.og_relation) CHECK(spans.find(SpanIndex::pair_key(SpanKind::og_pair, i, d)));
    for (const auto& d : m.gm_relation) CHECK(spans.find(SpanIndex::pair_key(SpanKind::gm_pair, i, d)));
  }
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    CHECK(spans.find(SpanIndex::connection_key(i)));
    for (const auto& cp : p.connections[i].relation) {
      CHECK(spans.find(SpanIndex::connection_pair_key(i, cp)));
    }
  }
  auto a = spans.module(0);
  CHECK(a.file == "fig4.mp");
  CHECK(a.line == 3);
  auto m_d = spans.entity(SpanKind::metric, 1, id("m_d"));
  CHECK(m_d.line == 18);
  CHECK(m_d.column == 14);
  CHECK(m_d.length == 3);
}

TEST_CASE("property: round-trip and idempotence on random programs") {
  testing::ProgramGenerator gen(7);
  std::mt19937 rng(99);
  for (int i = 0; i < 200; ++i) {
    const Program p = gen.next();
    const std::string text = format(p);
    auto parsed = parse(with_noise(text, rng));
    REQUIRE(parsed.program);
    CHECK(*parsed.program == p);
    CHECK(format(*parsed.program) == text);
  }
}

}  // namespace
}  // namespace metprog

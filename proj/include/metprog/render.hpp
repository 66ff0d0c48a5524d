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

#ifndef METPROG_RENDER_HPP
#define METPROG_RENDER_HPP

#include <string>

#include "metprog/model.hpp"

namespace metprog {

enum class RankDir { TB, LR };

struct RenderOptions {
  bool show_levels = false;  // one same-rank group per hierarchy level
  RankDir rankdir = RankDir::TB;
};

// Module diagram as a DOT digraph: boxes labelled with module ids, a double
// border (peripheries=2) for organizational modules, and one arrow per
// connection from the using module to the used one. Nodes are sorted by id
// and edges by (from, to).
std::string to_dot(const Program& program, const RenderOptions& options = {});

}  // namespace metprog

#endif  // METPROG_RENDER_HPP

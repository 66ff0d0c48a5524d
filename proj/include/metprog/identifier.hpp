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

#ifndef METPROG_IDENTIFIER_HPP
#define METPROG_IDENTIFIER_HPP

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace metprog {

// Thrown for violated preconditions (unknown ids, cyclic programs, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A case-sensitive name: one ASCII letter followed by letters, digits or
// underscores.
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string text);

  static bool is_valid(std::string_view text);

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  friend auto operator<=>(const Identifier&, const Identifier&) = default;
  friend bool operator==(const Identifier&, const Identifier&) = default;

 private:
  std::string text_;
};

inline std::ostream& operator<<(std::ostream& os, const Identifier& id) {
  return os << id.str();
}

}  // namespace metprog

#endif  // METPROG_IDENTIFIER_HPP

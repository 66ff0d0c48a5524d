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

#include "metprog/dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace metprog {

// ---------------------------------------------------------------------------
// SpanIndex

void SpanIndex::add(EntityKey key, SourceSpan span) {
  spans_.emplace(std::move(key), std::move(span));
}

std::optional<SourceSpan> SpanIndex::find(const EntityKey& key) const {
  auto it = spans_.find(key);
  if (it == spans_.end()) return std::nullopt;
  return it->second;
}

SourceSpan SpanIndex::lookup(const EntityKey& key) const {
  if (auto span = find(key)) return *span;
  return SourceSpan{file_, 1, 1, 0};
}

EntityKey SpanIndex::module_key(std::size_t module_index) {
  return EntityKey{SpanKind::module, module_index, {}, {}, {}, {}};
}

EntityKey SpanIndex::entity_key(SpanKind kind, std::size_t module_index,
                                const Identifier& id) {
  return EntityKey{kind, module_index, id.str(), {}, {}, {}};
}

EntityKey SpanIndex::input_key(std::size_t module_index, const MetricRef& ref) {
  return EntityKey{SpanKind::input, module_index, ref.str(), {}, {}, {}};
}

EntityKey SpanIndex::pair_key(SpanKind kind, std::size_t module_index,
                              const Derivation& pair) {
  return EntityKey{kind, module_index, pair.derived.str(), pair.purpose.str(),
                   {}, {}};
}

EntityKey SpanIndex::connection_key(std::size_t connection_index) {
  return EntityKey{SpanKind::connection, connection_index, {}, {}, {}, {}};
}

EntityKey SpanIndex::connection_pair_key(std::size_t connection_index,
                                         const ConnectionPair& pair) {
  return EntityKey{SpanKind::connection_pair, connection_index,
                   pair.used_module.str(), pair.used_goal.str(),
                   pair.using_module.str(), pair.using_ref.str()};
}

SourceSpan SpanIndex::module(std::size_t module_index) const {
  return lookup(module_key(module_index));
}

SourceSpan SpanIndex::entity(SpanKind kind, std::size_t module_index,
                             const Identifier& id) const {
  return lookup(entity_key(kind, module_index, id));
}

SourceSpan SpanIndex::input(std::size_t module_index,
                            const MetricRef& ref) const {
  return lookup(input_key(module_index, ref));
}

SourceSpan SpanIndex::pair(SpanKind kind, std::size_t module_index,
                           const Derivation& pair) const {
  return lookup(pair_key(kind, module_index, pair));
}

SourceSpan SpanIndex::connection(std::size_t connection_index) const {
  return lookup(connection_key(connection_index));
}

SourceSpan SpanIndex::connection_pair(std::size_t connection_index,
                                      const ConnectionPair& pair) const {
  return lookup(connection_pair_key(connection_index, pair));
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  ident,
  string,
  lbrace,
  rbrace,
  lbracket,
  rbracket,
  colon,
  comma,
  dot,
  arrow,
  invalid,
  end,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;  // identifier text, unescaped string, or raw lexeme
  int line = 1;
  int column = 1;
  int length = 0;
  bool first_on_line = false;
  std::string error;  // set for invalid tokens
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    int last_line = 0;
    for (;;) {
      skip_space_and_comments();
      Token tok = next();
      tok.first_on_line = tok.line != last_line;
      last_line = tok.line;
      tokens.push_back(std::move(tok));
      if (tokens.back().kind == Tok::end) break;
    }
    return tokens;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (at_end()) return tok;
    const std::size_t start = pos_;
    const char c = peek();
    auto single = [&](Tok kind) {
      advance();
      tok.kind = kind;
    };
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_')) {
        advance();
      }
      tok.kind = Tok::ident;
      tok.text = std::string(text_.substr(start, pos_ - start));
    } else if (c == '"') {
      lex_string(tok);
    } else if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      tok.kind = Tok::arrow;
    } else if (c == '{') {
      single(Tok::lbrace);
    } else if (c == '}') {
      single(Tok::rbrace);
    } else if (c == '[') {
      single(Tok::lbracket);
    } else if (c == ']') {
      single(Tok::rbracket);
    } else if (c == ':') {
      single(Tok::colon);
    } else if (c == ',') {
      single(Tok::comma);
    } else if (c == '.') {
      single(Tok::dot);
    } else {
      // A run of word characters (e.g. `1abc`, `_x`) or a lone symbol.
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                             peek() == '_')) {
          advance();
        }
      } else {
        advance();
        // Keep multi-byte UTF-8 sequences together.
        while (!at_end() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80) {
          advance();
        }
      }
      tok.kind = Tok::invalid;
      tok.error = "invalid character sequence";
    }
    if (tok.kind != Tok::string) {
      if (tok.text.empty()) tok.text = std::string(text_.substr(start, pos_ - start));
    }
    tok.length = static_cast<int>(pos_ - start);
    return tok;
  }

  void lex_string(Token& tok) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (at_end() || peek() == '\n') {
        tok.kind = Tok::invalid;
        tok.error = "unterminated string";
        return;
      }
      char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        char n = peek(1);
        if (n != '"' && n != '\\') {
          advance();
          tok.kind = Tok::invalid;
          tok.error = "invalid escape sequence in string";
          // Consume the rest of the string so lexing can continue.
          while (!at_end() && peek() != '"' && peek() != '\n') advance();
          if (!at_end() && peek() == '"') advance();
          return;
        }
        advance();
        value.push_back(n);
        advance();
        continue;
      }
      value.push_back(c);
      advance();
    }
    tok.kind = Tok::string;
    tok.text = std::move(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case Tok::end:
      return "end of input";
    case Tok::string:
      return "string";
    case Tok::invalid:
      return "'" + tok.text + "'";
    default:
      return "'" + tok.text + "'";
  }
}

// ---------------------------------------------------------------------------
// Parser

// Unwinds to the enclosing top-level item after a fatal syntax error.
struct SyntaxError {};

enum class Section { objects, inputs, outputs, orggoals, goals, metrics };

constexpr std::array<std::string_view, 6> kSectionNames{
    "objects", "inputs", "outputs", "orggoals", "goals", "metrics"};

std::optional<Section> section_from(std::string_view text) {
  for (std::size_t i = 0; i < kSectionNames.size(); ++i) {
    if (kSectionNames[i] == text) return static_cast<Section>(i);
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file)
      : tokens_(std::move(tokens)), file_(std::move(file)), spans_(file_) {}

  ParseResult run() {
    ParseResult result;
    result.file = file_;
    Program program;
    bool header_ok = false;
    try {
      expect_keyword("program", "expected 'program'");
      program.name = expect_ident("program name");
      header_ok = true;
    } catch (const SyntaxError&) {
      synchronize();
    }

    while (peek().kind != Tok::end) {
      const Token& tok = peek();
      try {
        if (is_keyword(tok, "module")) {
          parse_module(program);
        } else if (is_keyword(tok, "connect")) {
          parse_connection(program);
        } else {
          error("P001", tok, "unexpected " + describe(tok) +
                                 ", expected 'module' or 'connect'");
        }
      } catch (const SyntaxError&) {
        synchronize();
      }
    }

    result.diagnostics = std::move(diagnostics_);
    sort_diagnostics(result.diagnostics);
    if (header_ok && !has_errors(result.diagnostics)) {
      result.program = std::move(program);
    }
    result.spans = std::move(spans_);
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& take() {
    const Token& tok = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return tok;
  }

  static bool is_keyword(const Token& tok, std::string_view word) {
    return tok.kind == Tok::ident && tok.text == word;
  }

  SourceSpan span_of(const Token& tok) const {
    return SourceSpan{file_, tok.line, tok.column, tok.length};
  }

  // Span from `first` to the end of the previously consumed token when both
  // are on one line.
  SourceSpan span_from(const Token& first) const {
    SourceSpan span = span_of(first);
    if (pos_ > 0) {
      const Token& last = tokens_[pos_ - 1];
      if (last.line == first.line && last.column >= first.column) {
        span.length = last.column + last.length - first.column;
      }
    }
    return span;
  }

  void report(std::string code, SourceSpan span, std::string message) {
    diagnostics_.push_back(
        make_diagnostic(std::move(code), std::move(message), std::move(span)));
  }

  [[noreturn]] void error(std::string code, const Token& tok,
                          std::string message) {
    if (tok.kind == Tok::invalid && !tok.error.empty() && code == "P001") {
      message = tok.error + " (" + message + ")";
    }
    report(std::move(code), span_of(tok), std::move(message));
    throw SyntaxError{};
  }

  void expect_keyword(std::string_view word, const std::string& message) {
    if (!is_keyword(peek(), word)) error("P001", peek(), message);
    take();
  }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) {
      error("P001", peek(), "expected " + std::string(what) + ", found " +
                                describe(peek()));
    }
    take();
  }

  void expect_arrow() {
    if (peek().kind != Tok::arrow) {
      error("P003", peek(), "malformed relation arrow: expected '->', found " +
                                describe(peek()));
    }
    take();
  }

  Identifier expect_ident(std::string_view what) {
    if (peek().kind != Tok::ident) {
      error("P001", peek(), "expected " + std::string(what) + ", found " +
                                describe(peek()));
    }
    return Identifier(take().text);
  }

  // Skips to the next `module` or `connect` that starts an item.
  void synchronize() {
    take();
    while (peek().kind != Tok::end) {
      const Token& tok = peek();
      const Token& prev = tokens_[pos_ - 1];
      if ((is_keyword(tok, "module") || is_keyword(tok, "connect")) &&
          (tok.first_on_line || prev.kind == Tok::rbrace)) {
        return;
      }
      take();
    }
  }

  template <typename F>
  void parse_list(F&& element) {
    expect(Tok::colon, "':'");
    expect(Tok::lbracket, "'['");
    if (peek().kind == Tok::rbracket) {
      take();
      return;
    }
    for (;;) {
      element();
      if (peek().kind == Tok::comma) {
        take();
        continue;
      }
      expect(Tok::rbracket, "',' or ']'");
      return;
    }
  }

  std::optional<std::string> parse_optional_string_after_colon() {
    if (peek().kind != Tok::colon) return std::nullopt;
    take();
    if (peek().kind != Tok::string) {
      error("P001", peek(), "expected description string, found " +
                                describe(peek()));
    }
    return take().text;
  }

  // Declares `id` in the module's shared namespace; false on duplicates.
  bool declare(std::set<Identifier>& names, const Identifier& id,
               const Token& tok) {
    if (!names.insert(id).second) {
      report("P002", span_of(tok),
             "duplicate declaration of '" + id.str() + "' in this module");
      return false;
    }
    return true;
  }

  void parse_module(Program& program) {
    take();  // module
    const Token& id_tok = peek();
    Module module;
    module.id = expect_ident("module name");
    if (is_keyword(peek(), "organizational")) {
      take();
      module.kind = ModuleKind::organizational;
    }
    expect(Tok::lbrace, "'{'");

    const std::size_t index = program.modules.size();
    std::set<Identifier> names;
    std::set<std::string> inputs_seen;
    std::set<Identifier> outputs_seen;
    std::set<Derivation> pairs_seen;
    std::set<Section> seen;
    std::optional<Section> last;

    while (peek().kind == Tok::ident && peek(1).kind == Tok::colon) {
      const Token& section_tok = peek();
      auto section = section_from(section_tok.text);
      if (!section) break;
      if (seen.count(*section)) {
        report("P002", span_of(section_tok),
               "duplicate '" + section_tok.text + "' section");
      } else if (last && *section < *last) {
        error("P001", section_tok,
              "section '" + section_tok.text + "' must precede '" +
                  std::string(kSectionNames[static_cast<std::size_t>(*last)]) +
                  "'");
      }
      if (*section == Section::orggoals && !module.is_organizational()) {
        error("P001", section_tok,
              "'orggoals' requires a module declared 'organizational'");
      }
      seen.insert(*section);
      last = std::max(last.value_or(*section), *section);
      take();

      switch (*section) {
        case Section::objects:
          parse_list([&] {
            const Token& tok = peek();
            if (tok.kind != Tok::ident || !parse_object_kind(tok.text)) {
              error("P001", tok,
                    "expected object kind (product, process, resource, "
                    "organization), found " + describe(tok));
            }
            take();
            ObjectKind kind = *parse_object_kind(tok.text);
            if (std::find(module.objects.begin(), module.objects.end(), kind) !=
                module.objects.end()) {
              report("P002", span_of(tok),
                     "duplicate object kind '" + tok.text + "'");
              return;
            }
            module.objects.push_back(kind);
          });
          break;
        case Section::inputs:
          parse_list([&] {
            const Token& first = peek();
            MetricRef ref;
            Identifier name = expect_ident("input metric");
            if (peek().kind == Tok::dot) {
              take();
              ref.module = name;
              ref.metric = expect_ident("metric name");
            } else {
              ref.metric = name;
            }
            if (!inputs_seen.insert(ref.str()).second) {
              report("P002", span_from(first),
                     "duplicate input '" + ref.str() + "'");
              return;
            }
            spans_.add(SpanIndex::input_key(index, ref), span_from(first));
            module.inputs.push_back(std::move(ref));
          });
          break;
        case Section::outputs:
          parse_list([&] {
            const Token& tok = peek();
            Identifier id = expect_ident("output metric");
            if (!outputs_seen.insert(id).second) {
              report("P002", span_of(tok), "duplicate output '" + id.str() + "'");
              return;
            }
            spans_.add(SpanIndex::entity_key(SpanKind::output, index, id),
                       span_of(tok));
            module.outputs.push_back(std::move(id));
          });
          break;
        case Section::orggoals:
        case Section::goals: {
          const bool org = *section == Section::orggoals;
          parse_list([&] {
            const Token& tok = peek();
            Goal goal;
            goal.id = expect_ident(org ? "organizational goal" : "goal");
            goal.description = parse_optional_string_after_colon();
            if (is_keyword(peek(), "question")) {
              take();
              if (peek().kind != Tok::string) {
                error("P001", peek(),
                      "expected question string, found " + describe(peek()));
              }
              goal.question = take().text;
            }
            if (!declare(names, goal.id, tok)) return;
            spans_.add(SpanIndex::entity_key(org ? SpanKind::org_goal
                                                 : SpanKind::goal,
                                             index, goal.id),
                       span_of(tok));
            (org ? module.org_goals : module.goals).push_back(std::move(goal));
          });
          break;
        }
        case Section::metrics:
          parse_list([&] {
            const Token& tok = peek();
            Metric metric;
            metric.id = expect_ident("metric");
            metric.description = parse_optional_string_after_colon();
            if (!declare(names, metric.id, tok)) return;
            spans_.add(SpanIndex::entity_key(SpanKind::metric, index, metric.id),
                       span_of(tok));
            module.metrics.push_back(std::move(metric));
          });
          break;
      }
    }

    while (is_keyword(peek(), "relate")) {
      const Token& first = take();
      Derivation pair;
      pair.derived = expect_ident("relation source");
      expect_arrow();
      pair.purpose = expect_ident("relation target");
      const SourceSpan span = span_from(first);
      if (!pairs_seen.insert(pair).second) {
        report("P002", span,
               "duplicate relation (" + pair.derived.str() + ", " +
                   pair.purpose.str() + ")");
        continue;
      }
      // Pairs whose source is an organizational goal belong to G(Γ);
      // everything else is recorded in G(M) and checked by the validator.
      if (module.find_org_goal(pair.derived)) {
        spans_.add(SpanIndex::pair_key(SpanKind::og_pair, index, pair), span);
        module.og_relation.push_back(std::move(pair));
      } else {
        spans_.add(SpanIndex::pair_key(SpanKind::gm_pair, index, pair), span);
        module.gm_relation.push_back(std::move(pair));
      }
    }

    if (peek().kind != Tok::rbrace) {
      const Token& tok = peek();
      if (tok.kind == Tok::ident && section_from(tok.text)) {
        error("P001", tok,
              "section '" + tok.text + "' must precede relations");
      }
      error("P001", tok, "expected 'relate' or '}', found " + describe(tok));
    }
    take();

    spans_.add(SpanIndex::module_key(index), span_of(id_tok));
    program.modules.push_back(std::move(module));
  }

  void parse_connection(Program& program) {
    const Token& first = take();  // connect
    Connection connection;
    connection.from = expect_ident("using module");
    expect_arrow();
    connection.to = expect_ident("used module");
    const SourceSpan header = span_from(first);
    expect(Tok::lbrace, "'{'");

    const std::size_t index = program.connections.size();
    std::set<ConnectionPair> seen;
    while (is_keyword(peek(), "relate")) {
      const Token& rel = take();
      ConnectionPair pair;
      pair.used_module = expect_ident("used module");
      expect(Tok::dot, "'.'");
      pair.used_goal = expect_ident("used goal");
      expect_arrow();
      pair.using_module = expect_ident("using module");
      expect(Tok::dot, "'.'");
      pair.using_ref = expect_ident("using goal");
      const SourceSpan span = span_from(rel);
      if (!seen.insert(pair).second) {
        report("P002", span, "duplicate connection relation pair");
        continue;
      }
      spans_.add(SpanIndex::connection_pair_key(index, pair), span);
      connection.relation.push_back(std::move(pair));
    }
    if (peek().kind != Tok::rbrace) {
      error("P001", peek(), "expected 'relate' or '}', found " + describe(peek()));
    }
    take();

    spans_.add(SpanIndex::connection_key(index), header);
    program.connections.push_back(std::move(connection));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string file_;
  SpanIndex spans_;
  std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// Formatter

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_section(std::ostringstream& os, std::string_view name,
                   const std::vector<std::string>& items) {
  if (items.empty()) return;
  std::string label = std::string(name) + ":";
  label.resize(std::max<std::size_t>(label.size() + 1, 10), ' ');
  os << "  " << label << "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    os << items[i];
  }
  os << "]\n";
}

std::string goal_decl(const Goal& goal) {
  std::string out = goal.id.str();
  if (goal.description) out += ": " + quote(*goal.description);
  if (goal.question) out += " question " + quote(*goal.question);
  return out;
}

}  // namespace

ParseResult parse(std::string_view text, const std::string& file) {
  Parser parser(Lexer(text).run(), file);
  return parser.run();
}

std::string format(const Program& program) {
  std::ostringstream os;
  os << "program " << program.name.str() << "\n";

  for (const auto& m : program.modules) {
    os << "\nmodule " << m.id.str();
    if (m.is_organizational()) os << " organizational";
    os << " {\n";

    std::vector<std::string> items;
    for (auto kind : m.objects) items.emplace_back(to_string(kind));
    write_section(os, "objects", items);

    items.clear();
    for (const auto& ref : m.inputs) items.push_back(ref.str());
    write_section(os, "inputs", items);

    items.clear();
    for (const auto& id : m.outputs) items.push_back(id.str());
    write_section(os, "outputs", items);

    items.clear();
    for (const auto& g : m.org_goals) items.push_back(goal_decl(g));
    write_section(os, "orggoals", items);

    items.clear();
    for (const auto& g : m.goals) items.push_back(goal_decl(g));
    write_section(os, "goals", items);

    items.clear();
    for (const auto& metric : m.metrics) {
      std::string decl = metric.id.str();
      if (metric.description) decl += ": " + quote(*metric.description);
      items.push_back(std::move(decl));
    }
    write_section(os, "metrics", items);

    for (const auto& pair : m.og_relation) {
      os << "  relate " << pair.derived << " -> " << pair.purpose << "\n";
    }
    for (const auto& pair : m.gm_relation) {
      os << "  relate " << pair.derived << " -> " << pair.purpose << "\n";
    }
    os << "}\n";
  }

  for (const auto& c : program.connections) {
    os << "\nconnect " << c.from << " -> " << c.to << " {\n";
    for (const auto& pair : c.relation) {
      os << "  relate " << pair.used_module << "." << pair.used_goal << " -> "
         << pair.using_module << "." << pair.using_ref << "\n";
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace metprog

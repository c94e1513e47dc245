/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include "hyqa/classical_source.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace hyqa {

namespace {

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c == 0) return false;
    std::size_t extra = 0;
    unsigned min_value = 0;
    unsigned value = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1, min_value = 0x80, value = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2, min_value = 0x800, value = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3, min_value = 0x10000, value = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      value = (value << 6) | (cc & 0x3F);
    }
    if (value < min_value || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

const std::unordered_set<std::string_view>& python_keywords() {
  static const std::unordered_set<std::string_view> keywords = {
      "False", "None",   "True",    "and",      "as",     "assert", "async", "await",
      "break", "class",  "continue", "def",     "del",    "elif",   "else",  "except",
      "finally", "for",  "from",    "global",   "if",     "import", "in",    "is",
      "lambda", "nonlocal", "not",  "or",       "pass",   "raise",  "return", "try",
      "while", "with",   "yield",
  };
  return keywords;
}

bool is_name_start(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || u >= 0x80;
}

bool is_name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool is_string_prefix(std::string_view word) {
  if (word.size() > 2) return false;
  std::string lower;
  for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "r" || lower == "u" || lower == "b" || lower == "f" || lower == "br" ||
         lower == "rb" || lower == "fr" || lower == "rf";
}

enum class TokKind { Name, Number, String, Op };

struct RawToken {
  TokKind kind;
  std::string text;
  int line;
  int end_line;
  bool triple = false;
  bool docstring = false;
  std::size_t logical = 0;
};

struct LogicalLine {
  std::size_t first = 0;  // token indices, inclusive
  std::size_t last = 0;
};

constexpr std::array<std::string_view, 3> kOps3 = {"**=", "//=", "..."};
constexpr std::array<std::string_view, 21> kOps2 = {
    "**", "//", "==", "!=", "<=", ">=", "->", ":=", "+=", "-=", "*=",
    "/=", "%=", "&=", "|=", "^=", "@=", "<<", ">>", "<>", "~="};

// Single pass over the text producing tokens and per-line flags.
class Scanner {
 public:
  Scanner(std::string_view text, int line_count)
      : text_(text), continued_(line_count + 2, false), hash_comment_(line_count + 2, false) {}

  void run() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        end_physical_line();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (c == '#') {
        hash_comment_[line_] = true;
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\\' && next_is_newline(pos_ + 1)) {
        backslash_ = true;
        ++pos_;
      } else if (c == '"' || c == '\'') {
        lex_string(pos_);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        lex_number();
      } else if (is_name_start(c)) {
        lex_name();
      } else {
        lex_operator();
      }
    }
    if (logical_has_tokens_) ++logical_;
  }

  std::vector<RawToken> tokens;
  const std::vector<bool>& continued() const { return continued_; }
  const std::vector<bool>& hash_comment() const { return hash_comment_; }

 private:
  bool next_is_newline(std::size_t p) const {
    if (p < text_.size() && text_[p] == '\n') return true;
    return p + 1 < text_.size() && text_[p] == '\r' && text_[p + 1] == '\n';
  }

  void end_physical_line() {
    if (depth_ == 0 && !backslash_ && logical_has_tokens_) {
      ++logical_;
      logical_has_tokens_ = false;
    }
    bool carry = depth_ > 0 || backslash_;
    backslash_ = false;
    ++pos_;
    ++line_;
    if (static_cast<std::size_t>(line_) < continued_.size()) continued_[line_] = carry;
  }

  void push(TokKind kind, std::string text, int start_line, bool triple = false) {
    tokens.push_back({kind, std::move(text), start_line, line_, triple, false, logical_});
    logical_has_tokens_ = true;
  }

  void lex_string(std::size_t start) {
    int start_line = line_;
    char quote = text_[pos_];
    bool triple = text_.substr(pos_, 3) == std::string(3, quote);
    pos_ += triple ? 3 : 1;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        if (text_[pos_ + 1] == '\n') {
          ++line_;
          mark_continued(line_);
        }
        pos_ += 2;
        continue;
      }
      if (c == '\n') {
        if (!triple) break;  // unterminated single-quoted string
        ++line_;
        mark_continued(line_);
        ++pos_;
        continue;
      }
      if (c == quote) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (text_.substr(pos_, 3) == std::string(3, quote)) {
          pos_ += 3;
          break;
        }
      }
      ++pos_;
    }
    push(TokKind::String, std::string(text_.substr(start, pos_ - start)), start_line, triple);
  }

  void mark_continued(int line) {
    if (static_cast<std::size_t>(line) < continued_.size()) continued_[line] = true;
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        ++pos_;
      } else if ((c == '+' || c == '-') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E') &&
                 !(text_.size() > start + 1 && text_[start] == '0' &&
                   (text_[start + 1] == 'x' || text_[start + 1] == 'X'))) {
        ++pos_;
      } else {
        break;
      }
    }
    push(TokKind::Number, std::string(text_.substr(start, pos_ - start)), line_);
  }

  void lex_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    if (pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\'') &&
        is_string_prefix(word)) {
      lex_string(pos_);
      tokens.back().text.insert(0, word);
      return;
    }
    push(TokKind::Name, std::string(word), line_);
  }

  void lex_operator() {
    for (auto op : kOps3) {
      if (text_.substr(pos_, 3) == op) {
        pos_ += 3;
        push(TokKind::Op, std::string(op), line_);
        return;
      }
    }
    for (auto op : kOps2) {
      if (text_.substr(pos_, 2) == op) {
        pos_ += 2;
        push(TokKind::Op, std::string(op), line_);
        return;
      }
    }
    char c = text_[pos_++];
    if (c == '(' || c == '[' || c == '{') {
      ++depth_;
    } else if ((c == ')' || c == ']' || c == '}') && depth_ > 0) {
      --depth_;
    }
    push(TokKind::Op, std::string(1, c), line_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int depth_ = 0;
  bool backslash_ = false;
  std::size_t logical_ = 0;
  bool logical_has_tokens_ = false;
  std::vector<bool> continued_;
  std::vector<bool> hash_comment_;
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

int indentation(std::string_view line) {
  int col = 0;
  for (char c : line) {
    if (c == ' ') {
      ++col;
    } else if (c == '\t') {
      col = (col / 8 + 1) * 8;
    } else if (c == '\f') {
      col = 0;
    } else {
      break;
    }
  }
  return col;
}

bool is_definition_header(const std::vector<RawToken>& toks, const LogicalLine& ll) {
  const auto& first = toks[ll.first];
  if (first.kind != TokKind::Name) return false;
  bool def = first.text == "def" || first.text == "class" ||
             (first.text == "async" && ll.first < ll.last && toks[ll.first + 1].text == "def");
  return def && toks[ll.last].text == ":";
}

}  // namespace

ClassicalFileFacts analyze_source(std::string_view text, std::string_view path,
                                  const DecisionRules& rules) {
  if (!is_valid_utf8(text)) {
    throw NotTextError("not a UTF-8 text file: " + std::string(path));
  }

  ClassicalFileFacts facts;
  facts.path = std::string(path);
  const auto lines = split_lines(text);
  const int n = static_cast<int>(lines.size());
  facts.total_lines = lines.size();

  Scanner scanner(text, n);
  scanner.run();
  auto& toks = scanner.tokens;
  const auto& continued = scanner.continued();
  const auto& hash_comment = scanner.hash_comment();

  std::vector<LogicalLine> logical;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i == 0 || toks[i].logical != toks[i - 1].logical) {
      logical.push_back({i, i});
    } else {
      logical.back().last = i;
    }
  }

  // Docstrings: a lone triple-quoted string opening the file or a def/class body.
  bool expect_doc = true;
  for (const auto& ll : logical) {
    auto& first = toks[ll.first];
    if (expect_doc && ll.first == ll.last && first.kind == TokKind::String && first.triple) {
      first.docstring = true;
    }
    expect_doc = is_definition_header(toks, ll);
  }

  // Line classes. Index 0 unused.
  std::vector<bool> has_code(n + 2, false);
  std::vector<bool> has_doc(n + 2, false);
  for (const auto& t : toks) {
    auto& flags = t.docstring ? has_doc : has_code;
    for (int ln = t.line; ln <= std::min(t.end_line, n); ++ln) flags[ln] = true;
  }
  std::vector<bool> blank(n + 2, false);
  std::vector<bool> code(n + 2, false);
  for (int ln = 1; ln <= n; ++ln) {
    const auto line = lines[static_cast<std::size_t>(ln - 1)];
    if (is_blank(line)) {
      blank[ln] = true;
      ++facts.blank_lines;
    } else if (has_code[ln]) {
      code[ln] = true;
      ++facts.code_lines;
    } else if (has_doc[ln] || hash_comment[ln]) {
      ++facts.comment_lines;
    } else {
      code[ln] = true;
      ++facts.code_lines;
    }
  }

  // Function extents by indentation.
  for (const auto& ll : logical) {
    std::size_t name_idx = ll.first + 1;
    if (toks[ll.first].kind != TokKind::Name) continue;
    if (toks[ll.first].text == "async" && ll.first < ll.last && toks[ll.first + 1].text == "def") {
      ++name_idx;
    } else if (toks[ll.first].text != "def") {
      continue;
    }
    if (name_idx > ll.last || toks[name_idx].kind != TokKind::Name) continue;

    FunctionUnit fn;
    fn.name = toks[name_idx].text;
    fn.start_line = toks[ll.first].line;
    const int header_indent = indentation(lines[static_cast<std::size_t>(fn.start_line - 1)]);
    int end = std::min(toks[ll.last].end_line, n);
    for (int ln = end + 1; ln <= n; ++ln) {
      if (blank[ln]) continue;
      if (continued[ln]) {
        end = ln;
        continue;
      }
      const int indent = indentation(lines[static_cast<std::size_t>(ln - 1)]);
      if (!code[ln] && !has_doc[ln]) {
        // Comment lines never close a function.
        if (indent > header_indent) end = ln;
        continue;
      }
      if (indent <= header_indent) break;
      end = ln;
    }
    fn.end_line = end;
    facts.functions.push_back(std::move(fn));
  }

  // Each line belongs to the innermost function covering it.
  std::vector<int> owner(n + 2, -1);
  for (std::size_t f = 0; f < facts.functions.size(); ++f) {
    const auto& fn = facts.functions[f];
    for (int ln = fn.start_line; ln <= fn.end_line; ++ln) owner[ln] = static_cast<int>(f);
  }
  for (int ln = 1; ln <= n; ++ln) {
    if (owner[ln] >= 0 && code[ln]) ++facts.functions[static_cast<std::size_t>(owner[ln])].code_lines;
  }

  const std::unordered_set<std::string> decision_words(rules.keywords.begin(), rules.keywords.end());
  auto& keywords = python_keywords();
  for (const auto& ll : logical) {
    for (std::size_t i = ll.first; i <= ll.last; ++i) {
      const auto& t = toks[i];
      if (t.docstring) continue;
      switch (t.kind) {
        case TokKind::Name:
          facts.token_stream.push_back(keywords.count(t.text) ? t.text : std::string(kIdentifierToken));
          break;
        case TokKind::Number:
        case TokKind::String:
          facts.token_stream.push_back(std::string(kLiteralToken));
          break;
        case TokKind::Op:
          facts.token_stream.push_back(t.text);
          break;
      }
      if (t.kind != TokKind::Name) continue;
      bool decision = decision_words.count(t.text) > 0;
      if (!decision && rules.count_case_arms && t.text == "case" && i == ll.first &&
          ll.last > ll.first && toks[ll.last].text == ":") {
        decision = true;
      }
      if (decision && owner[t.line] >= 0) {
        ++facts.functions[static_cast<std::size_t>(owner[t.line])].decision_points;
      }
    }
  }
  return facts;
}

}  // namespace hyqa

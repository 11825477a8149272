#pragma once

// Position-tracking reader for the line-oriented file formats.

#include <cctype>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

#include "efunc/errors.hpp"

namespace efunc::detail {

class Cursor {
 public:
  Cursor(const std::string& source, std::size_t line_no, std::string_view line)
      : source_(source), line_no_(line_no), line_(line) {}

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size() || line_[pos_] == '#';
  }

  char peek() {
    skip_ws();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  bool consume(std::string_view token) {
    skip_ws();
    if (line_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  std::uint64_t number() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(line_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("number out of range");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    return v;
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '-' ||
            line_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a keyword");
    return std::string(line_.substr(start, pos_ - start));
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  /// Position of the next token.
  std::size_t mark() {
    skip_ws();
    return pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(source_, line_no_, pos + 1, msg);
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string source_;
  std::size_t line_no_;
  std::string_view line_;
  std::size_t pos_ = 0;
};

// Calls fn(Cursor&) for each non-blank, non-comment line.
template <class Fn>
void for_each_line(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Cursor cur(source, line_no, line);
    if (cur.at_end()) continue;
    fn(cur);
  }
}

}  // namespace efunc::detail

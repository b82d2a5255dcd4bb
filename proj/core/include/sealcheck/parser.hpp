#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sealcheck/errors.hpp"
#include "sealcheck/model.hpp"

namespace sealcheck {

// 1-based position in a source text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;

  friend constexpr auto operator<=>(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind { Syntax, BadProcessId, SelfChannel, DuplicateProcess };

std::string to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, std::string message);

  ParseErrorKind kind() const { return kind_; }
  SourceSpan span() const { return span_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
  std::string detail_;
};

// Parses one program in the textual format:
//
//   file    := header program
//   header  := "processes" NAT ";"
//   program := "program" IDENT "{" proc* "}"
//   proc    := "process" NAT "{" stmt* "}"
//   stmt    := "send" NAT ";" | "recv" NAT ";" | "assign" IDENT ";"
//
// '#' starts a comment running to the end of the line. `assign` statements
// are accepted and dropped. Processes without a block have empty sequences.
Program parse_program(std::string_view source);

// Canonical single-line rendering; parse_program(print_program(p)) == p.
// Processes with empty sequences are omitted.
std::string print_program(const Program& p);

}  // namespace sealcheck

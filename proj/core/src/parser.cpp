#include "sealcheck/parser.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace sealcheck {

std::string to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax:
      return "Syntax";
    case ParseErrorKind::BadProcessId:
      return "BadProcessId";
    case ParseErrorKind::SelfChannel:
      return "SelfChannel";
    case ParseErrorKind::DuplicateProcess:
      return "DuplicateProcess";
  }
  return "Unknown";
}

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, std::string message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) +
            ": " + to_string(kind) + ": " + message),
      kind_(kind),
      span_(span),
      detail_(std::move(message)) {}

namespace {

enum class TokenKind { Ident, Nat, LBrace, RBrace, Semi, End };

struct Token {
  TokenKind kind;
  std::string_view text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::Nat:
      return "number '" + std::string(t.text) + "'";
    case TokenKind::Ident:
      return "'" + std::string(t.text) + "'";
    default:
      return "'" + std::string(t.text) + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    const SourceSpan at = here();
    if (pos_ >= src_.size()) return {TokenKind::End, {}, at};
    const char c = src_[pos_];
    if (c == '{' || c == '}' || c == ';') {
      advance();
      const auto kind = c == '{'   ? TokenKind::LBrace
                        : c == '}' ? TokenKind::RBrace
                                   : TokenKind::Semi;
      return {kind, src_.substr(pos_ - 1, 1), at};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        advance();
      return {TokenKind::Nat, src_.substr(start, pos_ - start), at};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        advance();
      return {TokenKind::Ident, src_.substr(start, pos_ - start), at};
    }
    throw ParseError(ParseErrorKind::Syntax, at,
                     std::string("unexpected character '") + c + "'");
  }

 private:
  SourceSpan here() const { return {line_, column_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { bump(); }

  Program parse() {
    expect_keyword("processes");
    const Token count_tok = cur_;
    const int n = expect_nat();
    if (n < 1)
      throw ParseError(ParseErrorKind::BadProcessId, count_tok.span,
                       "process count must be at least 1");
    expect(TokenKind::Semi, "';'");

    expect_keyword("program");
    const std::string name = expect_ident();
    expect(TokenKind::LBrace, "'{'");

    std::vector<std::vector<Statement>> seqs(static_cast<std::size_t>(n));
    std::set<int> seen;
    while (is_keyword("process")) {
      bump();
      const Token id_tok = cur_;
      const int owner = expect_nat();
      check_process_id(owner, n, id_tok);
      if (!seen.insert(owner).second)
        throw ParseError(ParseErrorKind::DuplicateProcess, id_tok.span,
                         "process " + std::to_string(owner) +
                             " has more than one block");
      expect(TokenKind::LBrace, "'{'");
      auto& seq = seqs[static_cast<std::size_t>(owner - 1)];
      while (cur_.kind != TokenKind::RBrace) {
        if (auto stmt = parse_statement(owner, n)) seq.push_back(*stmt);
      }
      bump();
    }
    expect(TokenKind::RBrace, "'}' or 'process'");
    if (cur_.kind != TokenKind::End)
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       "expected end of input, found " + describe(cur_));
    return Program(name, n, std::move(seqs));
  }

 private:
  std::optional<Statement> parse_statement(int owner, int n) {
    if (is_keyword("assign")) {
      bump();
      expect_ident();
      expect(TokenKind::Semi, "';'");
      return std::nullopt;
    }
    const bool is_send = is_keyword("send");
    if (!is_send && !is_keyword("recv"))
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       "expected 'send', 'recv', 'assign' or '}', found " +
                           describe(cur_));
    bump();
    const Token peer_tok = cur_;
    const int peer = expect_nat();
    check_process_id(peer, n, peer_tok);
    if (peer == owner)
      throw ParseError(ParseErrorKind::SelfChannel, peer_tok.span,
                       "process " + std::to_string(owner) +
                           (is_send ? " sends to" : " receives from") +
                           " itself");
    expect(TokenKind::Semi, "';'");
    return is_send ? Statement::send(ProcessId{peer})
                   : Statement::recv(ProcessId{peer});
  }

  static void check_process_id(int id, int n, const Token& tok) {
    if (id < 1 || id > n)
      throw ParseError(ParseErrorKind::BadProcessId, tok.span,
                       "process id " + std::string(tok.text) +
                           " outside 1.." + std::to_string(n));
  }

  void bump() { cur_ = lexer_.next(); }

  bool is_keyword(std::string_view kw) const {
    return cur_.kind == TokenKind::Ident && cur_.text == kw;
  }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw))
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       "expected '" + std::string(kw) + "', found " +
                           describe(cur_));
    bump();
  }

  void expect(TokenKind kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       std::string("expected ") + what + ", found " +
                           describe(cur_));
    bump();
  }

  std::string expect_ident() {
    if (cur_.kind != TokenKind::Ident)
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       "expected identifier, found " + describe(cur_));
    std::string out(cur_.text);
    bump();
    return out;
  }

  int expect_nat() {
    if (cur_.kind != TokenKind::Nat)
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       "expected number, found " + describe(cur_));
    int value = 0;
    const auto [ptr, ec] = std::from_chars(
        cur_.text.data(), cur_.text.data() + cur_.text.size(), value);
    if (ec != std::errc{})
      throw ParseError(ParseErrorKind::Syntax, cur_.span,
                       "number '" + std::string(cur_.text) + "' out of range");
    bump();
    return value;
  }

  Lexer lexer_;
  Token cur_{TokenKind::End, {}, {}};
};

// Program names are free-form in memory; the text format needs an IDENT.
std::string printable_name(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front())))
    out.insert(out.begin(), 'p');
  return out;
}

}  // namespace

Program parse_program(std::string_view source) { return Parser(source).parse(); }

std::string print_program(const Program& p) {
  std::string out = "processes " + std::to_string(p.process_count()) +
                    "; program " + printable_name(p.name()) + " {";
  for (ProcessId i : processes(p.process_count())) {
    auto seq = p.seq(i);
    if (seq.empty()) continue;
    out += " process " + to_string(i) + " {";
    for (const Statement& s : seq) {
      out += s.kind == StatementKind::Send ? " send " : " recv ";
      out += to_string(s.peer) + ";";
    }
    out += " }";
  }
  out += " }";
  return out;
}

}  // namespace sealcheck

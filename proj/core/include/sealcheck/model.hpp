#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sealcheck {

// Identifier of a process, 1-based.
struct ProcessId {
  int value = 0;

  constexpr ProcessId() = default;
  constexpr explicit ProcessId(int v) : value(v) {}

  friend constexpr auto operator<=>(ProcessId, ProcessId) = default;
};

// All process ids 1..n in ascending order.
std::vector<ProcessId> processes(int n);

// A directed channel <src -> dst>. src != dst.
struct Channel {
  ProcessId src;
  ProcessId dst;

  friend constexpr auto operator<=>(const Channel&, const Channel&) = default;
};

std::string to_string(ProcessId p);
std::string to_string(const Channel& c);

// Every ordered pair (i, j) with i != j, sorted by (src, dst).
std::vector<Channel> all_channels(int n);

enum class StatementKind { Send, Recv };

// One communication statement of a process. For a send, `peer` is the
// destination; for a receive, it is the source. Payloads are not modeled.
struct Statement {
  StatementKind kind = StatementKind::Send;
  ProcessId peer;

  static Statement send(ProcessId to) { return {StatementKind::Send, to}; }
  static Statement recv(ProcessId from) { return {StatementKind::Recv, from}; }

  friend constexpr bool operator==(const Statement&, const Statement&) = default;
};

// Channel used by `stmt` when executed by process `owner`.
Channel channel_of(ProcessId owner, const Statement& stmt);

// Raised when a program references a process outside 1..n or a process
// sends to / receives from itself.
class BadProcessIdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A straight-line message-passing program: one statement sequence per
// process. Immutable after construction.
class Program {
 public:
  // Throws BadProcessIdError if n < 1, seqs.size() != n, a peer lies outside
  // 1..n, or a peer equals its owner.
  Program(std::string name, int n, std::vector<std::vector<Statement>> seqs);

  const std::string& name() const { return name_; }
  int process_count() const { return n_; }
  std::span<const Statement> seq(ProcessId p) const;
  std::size_t statement_count() const;
  bool empty() const { return statement_count() == 0; }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::string name_;
  int n_;
  std::vector<std::vector<Statement>> seqs_;
};

// Incremental construction with ints, for fixtures and generators.
class ProgramBuilder {
 public:
  ProgramBuilder(std::string name, int n);

  ProgramBuilder& send(int owner, int to);
  ProgramBuilder& recv(int owner, int from);
  ProgramBuilder& append(int owner, Statement stmt);

  Program build() const;

 private:
  std::string name_;
  int n_;
  std::vector<std::vector<Statement>> seqs_;
};

// The program with no statements.
Program empty_program(int n, std::string name = "epsilon");

// MT(src -> dst): src sends once, dst receives once.
Program message_transmit(int n, ProcessId src, ProcessId dst);

// Layering P ▸ Q: each process runs its share of P, then its share of Q.
// Throws ProcessCountMismatch (see errors.hpp) when the counts differ.
Program layer(const Program& p, const Program& q);

enum class EventKind { Send, Recv };

// A send or receive event of a program, with its ordinal among the
// same-kind events on its channel (1-based).
struct EventRef {
  ProcessId proc;
  std::size_t index = 0;
  EventKind kind = EventKind::Send;
  Channel channel;
  std::size_t seq_on_channel = 0;

  friend constexpr auto operator<=>(const EventRef&, const EventRef&) = default;
};

// All events ordered by (process, index).
std::vector<EventRef> events(const Program& p);

struct Traffic {
  std::size_t send_count = 0;
  std::size_t recv_count = 0;

  friend constexpr bool operator==(const Traffic&, const Traffic&) = default;
};

// Send/receive counts per channel. Channels without traffic are omitted.
std::map<Channel, Traffic> channel_traffic(const Program& p);

// True iff every channel carries as many sends as receives.
bool is_balanced(const Program& p);

}  // namespace sealcheck

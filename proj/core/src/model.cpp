#include "sealcheck/model.hpp"

#include <utility>

#include "sealcheck/errors.hpp"

namespace sealcheck {

std::vector<ProcessId> processes(int n) {
  std::vector<ProcessId> out;
  out.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
  for (int i = 1; i <= n; ++i) out.emplace_back(i);
  return out;
}

std::string to_string(ProcessId p) { return std::to_string(p.value); }

std::string to_string(const Channel& c) {
  return to_string(c.src) + "->" + to_string(c.dst);
}

std::vector<Channel> all_channels(int n) {
  std::vector<Channel> out;
  for (ProcessId i : processes(n))
    for (ProcessId j : processes(n))
      if (i != j) out.push_back({i, j});
  return out;
}

Channel channel_of(ProcessId owner, const Statement& stmt) {
  if (stmt.kind == StatementKind::Send) return {owner, stmt.peer};
  return {stmt.peer, owner};
}

Program::Program(std::string name, int n,
                 std::vector<std::vector<Statement>> seqs)
    : name_(std::move(name)), n_(n), seqs_(std::move(seqs)) {
  if (n_ < 1) throw BadProcessIdError("process count must be at least 1");
  if (seqs_.size() != static_cast<std::size_t>(n_))
    throw BadProcessIdError("expected " + std::to_string(n_) +
                            " process sequences, got " +
                            std::to_string(seqs_.size()));
  for (int i = 1; i <= n_; ++i) {
    for (const Statement& s : seqs_[static_cast<std::size_t>(i - 1)]) {
      if (s.peer.value < 1 || s.peer.value > n_)
        throw BadProcessIdError("process " + std::to_string(i) +
                                " references process " +
                                std::to_string(s.peer.value) + " outside 1.." +
                                std::to_string(n_));
      if (s.peer.value == i)
        throw BadProcessIdError("process " + std::to_string(i) +
                                " communicates with itself");
    }
  }
}

std::span<const Statement> Program::seq(ProcessId p) const {
  if (p.value < 1 || p.value > n_)
    throw BadProcessIdError("no process " + to_string(p));
  return seqs_[static_cast<std::size_t>(p.value - 1)];
}

std::size_t Program::statement_count() const {
  std::size_t total = 0;
  for (const auto& s : seqs_) total += s.size();
  return total;
}

ProgramBuilder::ProgramBuilder(std::string name, int n)
    : name_(std::move(name)),
      n_(n),
      seqs_(static_cast<std::size_t>(n > 0 ? n : 0)) {}

ProgramBuilder& ProgramBuilder::send(int owner, int to) {
  return append(owner, Statement::send(ProcessId{to}));
}

ProgramBuilder& ProgramBuilder::recv(int owner, int from) {
  return append(owner, Statement::recv(ProcessId{from}));
}

ProgramBuilder& ProgramBuilder::append(int owner, Statement stmt) {
  if (owner < 1 || owner > n_)
    throw BadProcessIdError("no process " + std::to_string(owner));
  seqs_[static_cast<std::size_t>(owner - 1)].push_back(stmt);
  return *this;
}

Program ProgramBuilder::build() const { return Program(name_, n_, seqs_); }

Program empty_program(int n, std::string name) {
  return Program(std::move(name), n,
                 std::vector<std::vector<Statement>>(
                     static_cast<std::size_t>(n > 0 ? n : 0)));
}

Program message_transmit(int n, ProcessId src, ProcessId dst) {
  return ProgramBuilder("mt" + to_string(src) + to_string(dst), n)
      .send(src.value, dst.value)
      .recv(dst.value, src.value)
      .build();
}

Program layer(const Program& p, const Program& q) {
  if (p.process_count() != q.process_count())
    throw ProcessCountMismatch(p.process_count(), q.process_count());
  std::vector<std::vector<Statement>> seqs;
  for (ProcessId i : processes(p.process_count())) {
    auto& out = seqs.emplace_back(p.seq(i).begin(), p.seq(i).end());
    out.insert(out.end(), q.seq(i).begin(), q.seq(i).end());
  }
  return Program(p.name() + "_" + q.name(), p.process_count(), std::move(seqs));
}

std::vector<EventRef> events(const Program& p) {
  std::vector<EventRef> out;
  std::map<std::pair<Channel, EventKind>, std::size_t> ordinal;
  for (ProcessId i : processes(p.process_count())) {
    auto seq = p.seq(i);
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const auto kind = seq[k].kind == StatementKind::Send ? EventKind::Send
                                                           : EventKind::Recv;
      const Channel ch = channel_of(i, seq[k]);
      out.push_back({i, k, kind, ch, ++ordinal[{ch, kind}]});
    }
  }
  return out;
}

std::map<Channel, Traffic> channel_traffic(const Program& p) {
  std::map<Channel, Traffic> out;
  for (ProcessId i : processes(p.process_count())) {
    for (const Statement& s : p.seq(i)) {
      auto& t = out[channel_of(i, s)];
      if (s.kind == StatementKind::Send)
        ++t.send_count;
      else
        ++t.recv_count;
    }
  }
  return out;
}

bool is_balanced(const Program& p) {
  for (const auto& [ch, t] : channel_traffic(p))
    if (t.send_count != t.recv_count) return false;
  return true;
}

}  // namespace sealcheck

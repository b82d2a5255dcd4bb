#include "support.hpp"

#include <functional>

#include "sealcheck/parser.hpp"

#ifndef SEALCHECK_FIXTURE_DIR
#error "SEALCHECK_FIXTURE_DIR must be defined"
#endif

namespace sealcheck::testing {

Program mt(int n, int src, int dst) {
  return message_transmit(n, ProcessId{src}, ProcessId{dst});
}

Program x_program(int n) {
  return ProgramBuilder("x", n).send(1, 2).recv(1, 2).send(2, 1).recv(2, 1).build();
}

Program x_bystander_seal() {
  return ProgramBuilder("x_bystander_seal", 3)
      .send(1, 3).recv(1, 3)
      .send(2, 3).recv(2, 3)
      .recv(3, 1).recv(3, 2).send(3, 1).send(3, 2)
      .build();
}

Program l_program(int n) {
  ProgramBuilder b("l" + std::to_string(n), n);
  for (int i = 2; i <= n; ++i) b.recv(1, i);
  for (int i = 2; i <= n; ++i) {
    for (int k = 2; k <= n; ++k)
      if (k != i) b.send(i, k);
    for (int k = 2; k <= n; ++k)
      if (k != i) b.recv(i, k);
    b.send(i, 1);
  }
  return b.build();
}

Program l_seal(int n) {
  ProgramBuilder b("l" + std::to_string(n) + "_seal", n);
  for (int i = 2; i <= n; ++i) b.send(1, i).recv(i, 1);
  return b.build();
}

std::string fixture_path(const std::string& name) {
  return std::string(SEALCHECK_FIXTURE_DIR) + "/" + name;
}

std::vector<Program> enumerate_programs(int n, std::size_t max_statements) {
  std::vector<Statement> alphabet;
  for (int peer = 1; peer <= n; ++peer) {
    alphabet.push_back(Statement::send(ProcessId{peer}));
    alphabet.push_back(Statement::recv(ProcessId{peer}));
  }

  std::vector<Program> out;
  std::vector<std::vector<Statement>> seqs(static_cast<std::size_t>(n));
  std::function<void(int, std::size_t)> fill = [&](int proc, std::size_t left) {
    if (proc > n) {
      const Program p("small", n, seqs);
      if (is_balanced(p) && deadlock_free(p)) out.push_back(p);
      return;
    }
    auto& seq = seqs[static_cast<std::size_t>(proc - 1)];
    std::function<void(std::size_t)> extend = [&](std::size_t budget) {
      fill(proc + 1, budget);
      if (budget == 0) return;
      for (const Statement& s : alphabet) {
        if (s.peer.value == proc) continue;
        seq.push_back(s);
        extend(budget - 1);
        seq.pop_back();
      }
    };
    extend(left);
  };
  fill(1, max_statements);
  return out;
}

std::vector<Program> small_programs() {
  std::vector<Program> out;
  for (int n = 1; n <= 3; ++n) {
    auto batch = enumerate_programs(n, 4);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

Program random_balanced(std::mt19937_64& rng, int n, std::size_t messages) {
  std::vector<std::vector<Statement>> seqs(static_cast<std::size_t>(n));
  if (n < 2) return Program("random", n, seqs);
  std::uniform_int_distribution<int> pick(1, n);
  for (std::size_t m = 0; m < messages; ++m) {
    const int src = pick(rng);
    int dst = pick(rng);
    while (dst == src) dst = pick(rng);
    auto insert = [&](int owner, Statement s) {
      auto& seq = seqs[static_cast<std::size_t>(owner - 1)];
      std::uniform_int_distribution<std::size_t> at(0, seq.size());
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(at(rng)), s);
    };
    insert(src, Statement::send(ProcessId{dst}));
    insert(dst, Statement::recv(ProcessId{src}));
  }
  return Program("random", n, std::move(seqs));
}

Program random_bsl(std::mt19937_64& rng, int n, std::size_t max_events) {
  std::uniform_int_distribution<std::size_t> count(0, max_events / 2);
  for (;;) {
    Program p = random_balanced(rng, n, count(rng));
    if (deadlock_free(p)) return p;
  }
}

BitMatrix reference_closure(
    std::size_t node_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> succ(node_count);
  for (const auto& [a, b] : edges) succ[a].push_back(b);
  BitMatrix out(node_count);
  for (std::size_t start = 0; start < node_count; ++start) {
    std::vector<bool> seen(node_count, false);
    std::vector<std::size_t> stack(succ[start].begin(), succ[start].end());
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      out.set(start, u);
      for (std::size_t v : succ[u]) stack.push_back(v);
    }
  }
  return out;
}

}  // namespace sealcheck::testing

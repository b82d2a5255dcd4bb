#pragma once

#include <compare>
#include <set>
#include <string>
#include <utility>

#include "sealcheck/model.hpp"

namespace sealcheck {

enum class SigKind { FstDummy, LstDummy, FirstSend, LastRecv };

// Node of a signature, identified structurally by kind plus process (for
// dummies) or channel (for the first send / last receive on that channel).
struct SigNode {
  SigKind kind = SigKind::FstDummy;
  ProcessId proc;   // dummies only; default otherwise
  Channel channel;  // sends/receives only; default otherwise

  static SigNode fst(ProcessId p) { return {SigKind::FstDummy, p, {}}; }
  static SigNode lst(ProcessId p) { return {SigKind::LstDummy, p, {}}; }
  static SigNode first_send(Channel c) { return {SigKind::FirstSend, {}, c}; }
  static SigNode last_recv(Channel c) { return {SigKind::LastRecv, {}, c}; }

  bool is_dummy() const {
    return kind == SigKind::FstDummy || kind == SigKind::LstDummy;
  }

  // "fst_i", "lst_i", "snd:i>j", "rcv:j<i".
  std::string name() const;

  friend constexpr auto operator<=>(const SigNode&, const SigNode&) = default;
};

using SigEdge = std::pair<SigNode, SigNode>;

// Transitively closed causality summary of a balanced, deadlock-free
// straight-line program: dummies plus the first send and last receive of
// each channel that can still interact with neighbouring layers.
struct Signature {
  int n = 0;
  std::set<SigNode> nodes;
  std::set<SigEdge> edges;

  bool has_node(const SigNode& v) const { return nodes.contains(v); }
  bool has_edge(const SigNode& a, const SigNode& b) const {
    return edges.contains({a, b});
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Throws UnbalancedError or CyclicGraphError.
Signature compute_signature(const Program& p);

// Signature of P ▸ Q from Sig(P) and Sig(Q). Throws ProcessCountMismatch.
Signature signature_compose(const Signature& sp, const Signature& sq);

bool signature_equal(const Signature& a, const Signature& b);

// Throws std::logic_error if `s` violates a structural invariant
// (irreflexive, transitive, no covered first send / last receive).
void check_signature_invariants(const Signature& s);

}  // namespace sealcheck

#include "sealcheck/signature.hpp"

#include <map>
#include <stdexcept>
#include <vector>

#include "sealcheck/bit_matrix.hpp"
#include "sealcheck/errors.hpp"
#include "sealcheck/program_graph.hpp"

namespace sealcheck {

std::string SigNode::name() const {
  switch (kind) {
    case SigKind::FstDummy:
      return "fst_" + to_string(proc);
    case SigKind::LstDummy:
      return "lst_" + to_string(proc);
    case SigKind::FirstSend:
      return "snd:" + to_string(channel.src) + ">" + to_string(channel.dst);
    case SigKind::LastRecv:
      return "rcv:" + to_string(channel.dst) + "<" + to_string(channel.src);
  }
  return "?";
}

Signature compute_signature(const Program& p) {
  const ProgramGraph g = build_program_graph(p);
  const ClosedEdgeSet closure = transitive_closure(g);

  std::map<std::size_t, SigNode> kept;
  for (ProcessId i : processes(p.process_count())) {
    kept.emplace(g.fst(i), SigNode::fst(i));
    kept.emplace(g.lst(i), SigNode::lst(i));
  }

  const auto traffic = channel_traffic(p);
  for (std::size_t id = 0; id < g.nodes().size(); ++id) {
    const GraphNode& node = g.nodes()[id];
    if (node.is_dummy()) continue;
    const EventRef& ev = node.event;
    const Channel ch = ev.channel;
    if (ev.kind == EventKind::Send) {
      // Only the first send can race with receives of an earlier layer, and
      // not even that one once the receiver's start causally precedes it.
      if (ev.seq_on_channel == 1 && !closure.contains(g.fst(ch.dst), id))
        kept.emplace(id, SigNode::first_send(ch));
    } else {
      if (ev.seq_on_channel == traffic.at(ch).recv_count &&
          !closure.contains(id, g.lst(ch.src)))
        kept.emplace(id, SigNode::last_recv(ch));
    }
  }

  Signature sig;
  sig.n = p.process_count();
  for (const auto& [id, node] : kept) sig.nodes.insert(node);
  for (const auto& [a, na] : kept)
    for (const auto& [b, nb] : kept)
      if (closure.contains(a, b)) sig.edges.emplace(na, nb);
  return sig;
}

Signature signature_compose(const Signature& sp, const Signature& sq) {
  if (sp.n != sq.n) throw ProcessCountMismatch(sp.n, sq.n);

  enum Layer { P = 0, Q = 1 };
  std::vector<std::pair<SigNode, Layer>> nodes;
  std::map<std::pair<SigNode, Layer>, std::size_t> index;
  auto add_layer = [&](const Signature& s, Layer layer) {
    for (const SigNode& v : s.nodes) {
      index.emplace(std::pair{v, layer}, nodes.size());
      nodes.emplace_back(v, layer);
    }
  };
  add_layer(sp, P);
  add_layer(sq, Q);
  auto id = [&](const SigNode& v, Layer layer) { return index.at({v, layer}); };
  auto find = [&](const SigNode& v, Layer layer) -> const std::size_t* {
    auto it = index.find({v, layer});
    return it == index.end() ? nullptr : &it->second;
  };

  BitMatrix reach(nodes.size());
  for (const auto& [a, b] : sp.edges) reach.set(id(a, P), id(b, P));
  for (const auto& [a, b] : sq.edges) reach.set(id(a, Q), id(b, Q));
  for (ProcessId i : processes(sp.n))
    reach.set(id(SigNode::lst(i), P), id(SigNode::fst(i), Q));
  reach.close_transitively();
  if (reach.any_diagonal()) throw CyclicGraphError();

  std::vector<bool> keep(nodes.size(), true);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& [v, layer] = nodes[k];
    switch (v.kind) {
      case SigKind::FstDummy:
        keep[k] = layer == P;
        break;
      case SigKind::LstDummy:
        keep[k] = layer == Q;
        break;
      case SigKind::FirstSend:
        if (layer == Q)
          keep[k] = find(v, P) == nullptr &&
                    !reach.test(id(SigNode::fst(v.channel.dst), P), k);
        break;
      case SigKind::LastRecv:
        if (layer == P)
          keep[k] = find(v, Q) == nullptr &&
                    !reach.test(k, id(SigNode::lst(v.channel.src), Q));
        break;
    }
  }

  Signature out;
  out.n = sp.n;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    if (!keep[a]) continue;
    out.nodes.insert(nodes[a].first);
    for (std::size_t b = 0; b < nodes.size(); ++b)
      if (keep[b] && reach.test(a, b))
        out.edges.emplace(nodes[a].first, nodes[b].first);
  }
  return out;
}

bool signature_equal(const Signature& a, const Signature& b) { return a == b; }

void check_signature_invariants(const Signature& s) {
  for (const auto& [a, b] : s.edges) {
    if (a == b) throw std::logic_error("signature edge is reflexive: " + a.name());
    if (!s.has_node(a) || !s.has_node(b))
      throw std::logic_error("signature edge leaves the node set");
    for (const auto& [c, d] : s.edges)
      if (c == b && !s.has_edge(a, d))
        throw std::logic_error("signature edges not transitive at " + b.name());
  }
  for (const SigNode& v : s.nodes) {
    if (v.kind == SigKind::FirstSend &&
        s.has_edge(SigNode::fst(v.channel.dst), v))
      throw std::logic_error("covered first send survives: " + v.name());
    if (v.kind == SigKind::LastRecv &&
        s.has_edge(v, SigNode::lst(v.channel.src)))
      throw std::logic_error("covered last receive survives: " + v.name());
  }
  const auto n = static_cast<std::size_t>(s.n);
  if (s.nodes.size() > 2 * n + 2 * n * (n - 1))
    throw std::logic_error("signature exceeds its node bound");
}

}  // namespace sealcheck

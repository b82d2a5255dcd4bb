#include "sealcheck/program_graph.hpp"

#include <map>

#include "sealcheck/errors.hpp"

namespace sealcheck {

std::string GraphNode::name() const {
  switch (kind) {
    case NodeKind::FstDummy:
      return "fst_" + to_string(proc);
    case NodeKind::LstDummy:
      return "lst_" + to_string(proc);
    case NodeKind::Event:
      break;
  }
  return std::string(event.kind == EventKind::Send ? "s:" : "r:") +
         to_string(proc) + ":" + std::to_string(event.index);
}

ProgramGraph::ProgramGraph(int n, std::vector<GraphNode> nodes,
                           std::vector<GraphEdge> edges,
                           std::vector<std::size_t> offsets)
    : n_(n),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      offsets_(std::move(offsets)) {}

std::size_t ProgramGraph::fst(ProcessId p) const {
  return offsets_.at(static_cast<std::size_t>(p.value - 1));
}

std::size_t ProgramGraph::lst(ProcessId p) const {
  const auto i = static_cast<std::size_t>(p.value);
  return (i < offsets_.size() ? offsets_[i] : nodes_.size()) - 1;
}

std::size_t ProgramGraph::event_node(ProcessId p, std::size_t index) const {
  return fst(p) + 1 + index;
}

BitMatrix ProgramGraph::adjacency() const {
  BitMatrix m(nodes_.size());
  for (const GraphEdge& e : edges_) m.set(e.from, e.to);
  return m;
}

ProgramGraph build_program_graph(const Program& p) {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<std::size_t> offsets;

  // Per channel: node indices of sends and receives in channel order.
  std::map<Channel, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      by_channel;

  const auto evs = events(p);
  auto ev = evs.begin();
  for (ProcessId i : processes(p.process_count())) {
    offsets.push_back(nodes.size());
    std::size_t prev = nodes.size();
    nodes.push_back({NodeKind::FstDummy, i, {}});
    for (; ev != evs.end() && ev->proc == i; ++ev) {
      const std::size_t id = nodes.size();
      nodes.push_back({NodeKind::Event, i, *ev});
      edges.push_back({prev, id, EdgeKind::Local});
      auto& slot = by_channel[ev->channel];
      (ev->kind == EventKind::Send ? slot.first : slot.second).push_back(id);
      prev = id;
    }
    const std::size_t last = nodes.size();
    nodes.push_back({NodeKind::LstDummy, i, {}});
    edges.push_back({prev, last, EdgeKind::Local});
  }

  for (const auto& [ch, slot] : by_channel) {
    const auto& [sends, recvs] = slot;
    if (sends.size() != recvs.size()) throw UnbalancedError(ch);
    for (std::size_t k = 0; k < sends.size(); ++k)
      edges.push_back({sends[k], recvs[k], EdgeKind::Match});
  }
  return ProgramGraph(p.process_count(), std::move(nodes), std::move(edges),
                      std::move(offsets));
}

ClosedEdgeSet transitive_closure(const ProgramGraph& g) {
  BitMatrix reach = g.adjacency();
  reach.close_transitively();
  if (reach.any_diagonal()) throw CyclicGraphError();
  return ClosedEdgeSet(std::move(reach));
}

bool deadlock_free(const Program& p) {
  BitMatrix reach = build_program_graph(p).adjacency();
  reach.close_transitively();
  return !reach.any_diagonal();
}

}  // namespace sealcheck

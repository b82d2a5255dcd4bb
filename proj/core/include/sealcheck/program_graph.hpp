#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sealcheck/bit_matrix.hpp"
#include "sealcheck/model.hpp"

namespace sealcheck {

enum class NodeKind { FstDummy, LstDummy, Event };

struct GraphNode {
  NodeKind kind = NodeKind::Event;
  ProcessId proc;
  EventRef event;  // meaningful only for NodeKind::Event

  bool is_dummy() const { return kind != NodeKind::Event; }

  // Stable names: "fst_i", "lst_i", "s:<proc>:<index>", "r:<proc>:<index>".
  std::string name() const;
};

enum class EdgeKind { Local, Match };

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  EdgeKind kind = EdgeKind::Local;

  friend constexpr bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Program graph of a balanced straight-line program. Nodes of process i are
// stored contiguously as fst_i, its events in program order, lst_i.
class ProgramGraph {
 public:
  ProgramGraph(int n, std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
               std::vector<std::size_t> offsets);

  int process_count() const { return n_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  std::size_t fst(ProcessId p) const;
  std::size_t lst(ProcessId p) const;
  std::size_t event_node(ProcessId p, std::size_t index) const;

  BitMatrix adjacency() const;

 private:
  int n_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::size_t> offsets_;  // offsets_[i-1] is the index of fst_i
};

// Irreflexive transitive closure of a program graph's edge relation.
class ClosedEdgeSet {
 public:
  explicit ClosedEdgeSet(BitMatrix reach) : reach_(std::move(reach)) {}

  bool contains(std::size_t from, std::size_t to) const {
    return reach_.test(from, to);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    return reach_.pairs();
  }
  std::size_t size() const { return reach_.count(); }
  const BitMatrix& matrix() const { return reach_; }

 private:
  BitMatrix reach_;
};

// Local successor chains fst_i -> e_1 -> ... -> e_k -> lst_i plus an edge
// from the k'th send to the k'th receive of every channel.
// Throws UnbalancedError if some channel has unequal send/receive counts.
ProgramGraph build_program_graph(const Program& p);

// Throws CyclicGraphError if the graph has a cycle.
ClosedEdgeSet transitive_closure(const ProgramGraph& g);

// True iff the program graph is acyclic. Throws UnbalancedError.
bool deadlock_free(const Program& p);

}  // namespace sealcheck

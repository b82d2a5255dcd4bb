#include "sealcheck/sealing.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sealcheck/errors.hpp"
#include "sealcheck/program_graph.hpp"

namespace sealcheck {

std::vector<Channel> ClosedChannelGraph::open_channels() const {
  std::vector<Channel> out;
  for (const Channel& c : all_channels(n))
    if (!closes(c)) out.push_back(c);
  return out;
}

ClosedChannelGraph closed_channels(const Signature& sig) {
  ClosedChannelGraph out;
  out.n = sig.n;
  for (const Channel& c : all_channels(sig.n)) {
    const SigNode rcv = SigNode::last_recv(c);
    const bool open = sig.has_node(rcv) && !sig.has_edge(rcv, SigNode::lst(c.src));
    if (!open) out.edges.emplace(c.src, c.dst);
  }
  return out;
}

ClosedChannelGraph closed_channels(const Program& p) {
  return closed_channels(compute_signature(p));
}

namespace {

using Adjacency = std::vector<std::vector<ProcessId>>;

std::size_t slot(ProcessId p) { return static_cast<std::size_t>(p.value - 1); }

// Undirected closed-channel graph with neighbour lists in ascending order.
Adjacency undirected(const ClosedChannelGraph& c) {
  Adjacency adj(static_cast<std::size_t>(c.n));
  for (ProcessId i : processes(c.n))
    for (ProcessId j : processes(c.n))
      if (i != j && (c.closes({i, j}) || c.closes({j, i})))
        adj[slot(i)].push_back(j);
  return adj;
}

// BFS parents from `root` visiting neighbours in ascending id order.
// parent[root] = root; unreached nodes keep ProcessId{0}.
std::vector<ProcessId> bfs_parents(const Adjacency& adj, ProcessId root) {
  std::vector<ProcessId> parent(adj.size());
  parent[slot(root)] = root;
  std::deque<ProcessId> queue{root};
  while (!queue.empty()) {
    const ProcessId u = queue.front();
    queue.pop_front();
    for (ProcessId w : adj[slot(u)]) {
      if (parent[slot(w)].value != 0) continue;
      parent[slot(w)] = u;
      queue.push_back(w);
    }
  }
  return parent;
}

std::size_t eccentricity(const Adjacency& tree, ProcessId from) {
  std::vector<std::size_t> dist(tree.size(), std::numeric_limits<std::size_t>::max());
  dist[slot(from)] = 0;
  std::deque<ProcessId> queue{from};
  std::size_t worst = 0;
  while (!queue.empty()) {
    const ProcessId u = queue.front();
    queue.pop_front();
    worst = std::max(worst, dist[slot(u)]);
    for (ProcessId w : tree[slot(u)]) {
      if (dist[slot(w)] != std::numeric_limits<std::size_t>::max()) continue;
      dist[slot(w)] = dist[slot(u)] + 1;
      queue.push_back(w);
    }
  }
  return worst;
}

void preorder(const Adjacency& tree, ProcessId u, ProcessId parent,
              std::vector<std::pair<ProcessId, ProcessId>>& out) {
  for (ProcessId w : tree[slot(u)]) {
    if (w == parent) continue;
    out.emplace_back(u, w);
    preorder(tree, w, u, out);
  }
}

void postorder(const Adjacency& tree, ProcessId u, ProcessId parent,
               std::vector<std::pair<ProcessId, ProcessId>>& out) {
  for (ProcessId w : tree[slot(u)]) {
    if (w == parent) continue;
    postorder(tree, w, u, out);
    out.emplace_back(w, u);
  }
}

}  // namespace

bool is_sealable(const Program& p) {
  const ClosedChannelGraph c = closed_channels(p);
  const auto parent = bfs_parents(undirected(c), ProcessId{1});
  return std::none_of(parent.begin(), parent.end(),
                      [](ProcessId x) { return x.value == 0; });
}

bool is_seal(const Signature& sp, const Signature& sq) {
  if (sp.n != sq.n) throw ProcessCountMismatch(sp.n, sq.n);
  for (const SigNode& rcv : sp.nodes) {
    if (rcv.kind != SigKind::LastRecv) continue;
    const Channel ch = rcv.channel;
    const SigNode send = SigNode::first_send(ch);
    const SigNode target = sq.has_node(send) ? send : SigNode::lst(ch.src);
    // k == ch.src can never satisfy the first conjunct for a surviving
    // receive, so scanning all k is equivalent to skipping it.
    const auto ks = processes(sp.n);
    const bool safe = std::any_of(ks.begin(), ks.end(), [&](ProcessId k) {
      return sp.has_edge(rcv, SigNode::lst(k)) &&
             sq.has_edge(SigNode::fst(k), target);
    });
    if (!safe) return false;
  }
  return true;
}

bool is_seal(const Program& p, const Program& q) {
  if (p.process_count() != q.process_count())
    throw ProcessCountMismatch(p.process_count(), q.process_count());
  return is_seal(compute_signature(p), compute_signature(q));
}

std::string to_string(SealPhase phase) {
  switch (phase) {
    case SealPhase::DirectClose:
      return "direct-close";
    case SealPhase::ConvergeCast:
      return "converge-cast";
    case SealPhase::Broadcast:
      return "broadcast";
  }
  return "?";
}

std::optional<SealPlan> construct_seal(const Program& p) {
  const ClosedChannelGraph closed = closed_channels(p);
  const int n = p.process_count();
  const Adjacency adj = undirected(closed);

  const auto bfs = bfs_parents(adj, ProcessId{1});
  if (std::any_of(bfs.begin(), bfs.end(), [](ProcessId x) { return x.value == 0; }))
    return std::nullopt;

  // Spanning tree T: each undirected edge realized by a closed channel,
  // parent -> child when that direction is closed.
  Adjacency tree(static_cast<std::size_t>(n));
  std::set<std::pair<ProcessId, ProcessId>> oriented;
  for (ProcessId child : processes(n)) {
    const ProcessId parent = bfs[slot(child)];
    if (parent == child) continue;
    tree[slot(parent)].push_back(child);
    tree[slot(child)].push_back(parent);
    if (closed.closes({parent, child}))
      oriented.emplace(parent, child);
    else
      oriented.emplace(child, parent);
  }
  for (auto& nbrs : tree) std::sort(nbrs.begin(), nbrs.end());

  ProcessId center{1};
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (ProcessId v : processes(n)) {
    const std::size_t ecc = eccentricity(tree, v);
    if (ecc < best) {
      best = ecc;
      center = v;
    }
  }

  std::vector<std::pair<ProcessId, ProcessId>> down;  // (parent, child), pre-order
  std::vector<std::pair<ProcessId, ProcessId>> up;    // (child, parent), post-order
  preorder(tree, center, center, down);
  postorder(tree, center, center, up);

  SealPlan plan;
  // Direct closes: a tree edge oriented away from the center whose reverse
  // channel P leaves open.
  for (const auto& [w, w2] : down)
    if (oriented.contains({w, w2}) && !closed.closes({w2, w}))
      plan.transmissions.push_back({w, w2, SealPhase::DirectClose});
  for (const auto& [child, parent] : up)
    plan.transmissions.push_back({child, parent, SealPhase::ConvergeCast});
  for (const auto& [parent, child] : down)
    plan.transmissions.push_back({parent, child, SealPhase::Broadcast});

  const Program seal = expand_plan(plan, n);
  if (!deadlock_free(layer(p, seal)) || !is_seal(p, seal))
    throw std::logic_error("constructed seal failed validation");
  return plan;
}

Program expand_plan(const SealPlan& plan, int n) {
  ProgramBuilder builder("seal", n);
  for (const Transmission& t : plan.transmissions) {
    if (t.src == t.dst)
      throw BadProcessIdError("transmission from process " + to_string(t.src) +
                              " to itself");
    builder.send(t.src.value, t.dst.value).recv(t.dst.value, t.src.value);
  }
  return builder.build();
}

std::string format_plan(const SealPlan& plan) {
  std::string out;
  for (const Transmission& t : plan.transmissions)
    out += to_string(t.src) + " -> " + to_string(t.dst) + " [" +
           to_string(t.phase) + "]\n";
  return out;
}

SealPlan parse_plan(std::string_view text) {
  SealPlan plan;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int src = 0;
    int dst = 0;
    std::string arrow;
    if (!(fields >> src)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                  ": expected 'src -> dst [phase]'");
    }
    if (!(fields >> arrow) || arrow != "->" || !(fields >> dst))
      throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                  ": expected 'src -> dst [phase]'");
    SealPhase phase = SealPhase::DirectClose;
    std::string tag;
    if (fields >> tag) {
      if (tag == "[direct-close]")
        phase = SealPhase::DirectClose;
      else if (tag == "[converge-cast]")
        phase = SealPhase::ConvergeCast;
      else if (tag == "[broadcast]")
        phase = SealPhase::Broadcast;
      else
        throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                    ": unknown phase " + tag);
      if (fields >> tag)
        throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                    ": trailing text");
    }
    plan.transmissions.push_back({ProcessId{src}, ProcessId{dst}, phase});
  }
  return plan;
}

}  // namespace sealcheck

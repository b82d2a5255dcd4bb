#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sealcheck/model.hpp"
#include "sealcheck/signature.hpp"

namespace sealcheck {

// Directed graph on processes with an edge (i, j) iff the program closes
// channel <i -> j>, i.e. leaves it empty in every execution from empty
// channels.
struct ClosedChannelGraph {
  int n = 0;
  std::set<std::pair<ProcessId, ProcessId>> edges;

  bool closes(Channel c) const { return edges.contains({c.src, c.dst}); }
  std::vector<Channel> open_channels() const;

  friend bool operator==(const ClosedChannelGraph&, const ClosedChannelGraph&) = default;
};

ClosedChannelGraph closed_channels(const Program& p);
ClosedChannelGraph closed_channels(const Signature& sig);

// True iff the undirected closed-channel graph connects all processes.
bool is_sealable(const Program& p);

// Decides whether `q` (properly) seals `p` from their signatures: for every
// channel <i -> j> that p leaves open there is a process k such that p's
// last receive on the channel precedes lst_k, and fst_k precedes q's first
// send on the channel (or lst_i when q has no such send).
bool is_seal(const Program& p, const Program& q);
bool is_seal(const Signature& sp, const Signature& sq);

enum class SealPhase { DirectClose, ConvergeCast, Broadcast };

std::string to_string(SealPhase phase);

struct Transmission {
  ProcessId src;
  ProcessId dst;
  SealPhase phase = SealPhase::DirectClose;

  friend constexpr bool operator==(const Transmission&, const Transmission&) = default;
};

// Ordered message transmissions making up a seal; each one expands to
// MT(src -> dst).
struct SealPlan {
  std::vector<Transmission> transmissions;

  std::size_t size() const { return transmissions.size(); }
  friend bool operator==(const SealPlan&, const SealPlan&) = default;
};

// Builds a seal of fewer than 3n transmissions from a spanning tree of the
// undirected closed-channel graph: direct closes of open parent/child
// channels, a converge-cast to the tree's center, then a broadcast back
// out. Returns nullopt when `p` is unsealable.
std::optional<SealPlan> construct_seal(const Program& p);

// Layering of MT(src -> dst) for each transmission in order.
// Throws BadProcessIdError for ids outside 1..n or src == dst.
Program expand_plan(const SealPlan& plan, int n);

// One line per transmission: "src -> dst [phase]".
std::string format_plan(const SealPlan& plan);

// Inverse of format_plan. Blank lines and '#' comments are ignored; the
// phase tag is optional and defaults to direct-close.
// Throws std::invalid_argument on malformed lines.
SealPlan parse_plan(std::string_view text);

}  // namespace sealcheck

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "sealcheck/bit_matrix.hpp"
#include "sealcheck/model.hpp"

// Brute-force reference semantics for small straight-line programs over
// reliable non-FIFO channels.
//
// A finite world of events stands in for an execution: every acyclic
// matching that assigns each receive a distinct send on its channel extends
// to a complete run (local runs padded with stuttering steps), and every
// run restricted to the world gives such a matching. Questions about "any
// later layer" are answered by appending probe sends, one per channel, after
// the layers under test; a later send can never be matched more permissively
// than the earliest possible one.

namespace sealcheck {

enum class Origin { LayerP, LayerS, Probe };

struct WorldEvent {
  EventKind kind = EventKind::Send;
  Channel channel;
  Origin origin = Origin::LayerP;
};

struct EventId {
  ProcessId proc;
  std::size_t index = 0;

  friend constexpr auto operator<=>(const EventId&, const EventId&) = default;
};

// Per-process event sequences built from concatenated layers plus probes.
class EventWorld {
 public:
  explicit EventWorld(int n);

  // Appends the program's statements after the events already present.
  void append(const Program& p, Origin origin);
  // Appends a probe send on `c` at its source process.
  void add_probe(Channel c);

  int process_count() const { return n_; }
  const std::vector<WorldEvent>& events_of(ProcessId p) const;
  const WorldEvent& at(EventId e) const;
  std::size_t event_count() const;

  // Position of `e` in the process-major flattening of all events.
  std::size_t flat_index(EventId e) const;
  std::vector<EventId> all_events() const;

 private:
  int n_;
  std::vector<std::vector<WorldEvent>> events_;
};

// Receive -> send assignment, sorted by receive.
struct Matching {
  std::vector<std::pair<EventId, EventId>> assignment;

  friend bool operator==(const Matching&, const Matching&) = default;
};

struct OracleBudget {
  std::size_t max_matchings = 1'000'000;
  std::size_t max_events = 24;
};

// Calls `visit` for every receive-total, injective, same-channel, acyclic
// matching in lexicographic order (receives by position, then the assigned
// send's position). Stops early when `visit` returns false.
// Throws ShapeError when a channel has more receives than sends and
// BudgetExceeded when the world has more than max_events events or the
// product of per-channel injection counts exceeds max_matchings.
void for_each_matching(const EventWorld& w, const OracleBudget& budget,
                       const std::function<bool(const Matching&)>& visit);

std::vector<Matching> enumerate_matchings(const EventWorld& w,
                                          const OracleBudget& budget = {});

// Reflexive-free closure of program order plus send -> receive pairs, over
// flat indices. Diagonal entries mean the matching is cyclic.
BitMatrix induced_order(const EventWorld& w, const Matching& m);

// Total on receives, injective, same channel, acyclic.
bool is_valid_matching(const EventWorld& w, const Matching& m);

// Some execution of `p` from empty channels leaves `ch` non-empty: a probe
// send appended after `p` can be received by one of p's receives.
bool oracle_channel_open(const Program& p, Channel ch,
                         const OracleBudget& budget = {});

// `s` seals `p`: with one probe per channel after p ▸ s, every matching
// assigns each receive of p a send of p.
bool oracle_seals(const Program& p, const Program& s,
                  const OracleBudget& budget = {});

bool oracle_tcc(const Program& p, const OracleBudget& budget = {});

// At least one acyclic receive-total matching of `p` alone exists.
bool oracle_deadlock_free(const Program& p, const OracleBudget& budget = {});

}  // namespace sealcheck

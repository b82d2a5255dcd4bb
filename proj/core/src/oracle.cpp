#include "sealcheck/oracle.hpp"

#include <limits>
#include <map>

#include "sealcheck/errors.hpp"

namespace sealcheck {

EventWorld::EventWorld(int n) : n_(n), events_(static_cast<std::size_t>(n)) {
  if (n < 1) throw BadProcessIdError("process count must be at least 1");
}

void EventWorld::append(const Program& p, Origin origin) {
  if (p.process_count() != n_) throw ProcessCountMismatch(n_, p.process_count());
  for (ProcessId i : processes(n_)) {
    for (const Statement& s : p.seq(i)) {
      const auto kind =
          s.kind == StatementKind::Send ? EventKind::Send : EventKind::Recv;
      events_[static_cast<std::size_t>(i.value - 1)].push_back(
          {kind, channel_of(i, s), origin});
    }
  }
}

void EventWorld::add_probe(Channel c) {
  if (c.src.value < 1 || c.src.value > n_ || c.dst.value < 1 ||
      c.dst.value > n_ || c.src == c.dst)
    throw BadProcessIdError("bad probe channel " + to_string(c));
  events_[static_cast<std::size_t>(c.src.value - 1)].push_back(
      {EventKind::Send, c, Origin::Probe});
}

const std::vector<WorldEvent>& EventWorld::events_of(ProcessId p) const {
  return events_.at(static_cast<std::size_t>(p.value - 1));
}

const WorldEvent& EventWorld::at(EventId e) const {
  return events_of(e.proc).at(e.index);
}

std::size_t EventWorld::event_count() const {
  std::size_t total = 0;
  for (const auto& seq : events_) total += seq.size();
  return total;
}

std::size_t EventWorld::flat_index(EventId e) const {
  std::size_t offset = 0;
  for (int i = 1; i < e.proc.value; ++i)
    offset += events_[static_cast<std::size_t>(i - 1)].size();
  return offset + e.index;
}

std::vector<EventId> EventWorld::all_events() const {
  std::vector<EventId> out;
  for (ProcessId i : processes(n_))
    for (std::size_t k = 0; k < events_of(i).size(); ++k) out.push_back({i, k});
  return out;
}

namespace {

// Backtracking search over receive assignments with incremental cycle
// pruning. Nodes are flat event indices.
class MatchingSearch {
 public:
  MatchingSearch(const EventWorld& w,
                 const std::function<bool(const Matching&)>& visit)
      : visit_(visit) {
    ids_ = w.all_events();
    const std::size_t count = ids_.size();
    next_.assign(count, kNone);
    matched_recv_.assign(count, kNone);
    for (std::size_t k = 0; k + 1 < count; ++k)
      if (ids_[k].proc == ids_[k + 1].proc) next_[k] = k + 1;

    std::map<Channel, std::vector<std::size_t>> sends;
    for (std::size_t k = 0; k < count; ++k) {
      const WorldEvent& e = w.at(ids_[k]);
      if (e.kind == EventKind::Send) sends[e.channel].push_back(k);
    }
    for (std::size_t k = 0; k < count; ++k) {
      const WorldEvent& e = w.at(ids_[k]);
      if (e.kind != EventKind::Recv) continue;
      recvs_.push_back(k);
      candidates_.push_back(sends[e.channel]);
    }
  }

  void run() { search(0); }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // True iff `to` is reachable from `from` along program order and the
  // current send -> receive assignments.
  bool reaches(std::size_t from, std::size_t to) {
    stack_.clear();
    seen_.assign(ids_.size(), false);
    stack_.push_back(from);
    seen_[from] = true;
    while (!stack_.empty()) {
      const std::size_t u = stack_.back();
      stack_.pop_back();
      if (u == to) return true;
      for (std::size_t v : {next_[u], matched_recv_[u]}) {
        if (v == kNone || seen_[v]) continue;
        seen_[v] = true;
        stack_.push_back(v);
      }
    }
    return false;
  }

  bool search(std::size_t depth) {
    if (depth == recvs_.size()) {
      Matching m;
      m.assignment.reserve(recvs_.size());
      for (std::size_t k = 0; k < recvs_.size(); ++k)
        m.assignment.emplace_back(ids_[recvs_[k]], ids_[chosen_[k]]);
      return visit_(m);
    }
    const std::size_t r = recvs_[depth];
    chosen_.resize(depth + 1);
    for (std::size_t s : candidates_[depth]) {
      if (matched_recv_[s] != kNone) continue;
      if (reaches(r, s)) continue;  // s -> r would close a cycle
      matched_recv_[s] = r;
      chosen_[depth] = s;
      const bool go_on = search(depth + 1);
      matched_recv_[s] = kNone;
      if (!go_on) return false;
    }
    return true;
  }

  const std::function<bool(const Matching&)>& visit_;
  std::vector<EventId> ids_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> matched_recv_;
  std::vector<std::size_t> recvs_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> stack_;
  std::vector<bool> seen_;
};

void check_budget(const EventWorld& w, const OracleBudget& budget) {
  std::map<Channel, std::pair<std::size_t, std::size_t>> counts;  // sends, recvs
  for (EventId id : w.all_events()) {
    const WorldEvent& e = w.at(id);
    auto& c = counts[e.channel];
    (e.kind == EventKind::Send ? c.first : c.second)++;
  }
  for (const auto& [ch, c] : counts)
    if (c.second > c.first) throw ShapeError(ch);

  if (w.event_count() > budget.max_events)
    throw BudgetExceeded("world has " + std::to_string(w.event_count()) +
                         " events, budget allows " +
                         std::to_string(budget.max_events));
  // Injections of r receives into s sends: s! / (s - r)!.
  std::size_t product = 1;
  for (const auto& [ch, c] : counts) {
    for (std::size_t k = 0; k < c.second; ++k) {
      const std::size_t factor = c.first - k;
      if (product > budget.max_matchings / factor)
        throw BudgetExceeded("more than " + std::to_string(budget.max_matchings) +
                             " candidate matchings");
      product *= factor;
    }
  }
  if (product > budget.max_matchings)
    throw BudgetExceeded("more than " + std::to_string(budget.max_matchings) +
                         " candidate matchings");
}

void require_balanced(const Program& p) {
  for (const auto& [ch, t] : channel_traffic(p))
    if (t.send_count != t.recv_count) throw UnbalancedError(ch);
}

}  // namespace

void for_each_matching(const EventWorld& w, const OracleBudget& budget,
                       const std::function<bool(const Matching&)>& visit) {
  check_budget(w, budget);
  MatchingSearch(w, visit).run();
}

std::vector<Matching> enumerate_matchings(const EventWorld& w,
                                          const OracleBudget& budget) {
  std::vector<Matching> out;
  for_each_matching(w, budget, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

BitMatrix induced_order(const EventWorld& w, const Matching& m) {
  const auto ids = w.all_events();
  BitMatrix order(ids.size());
  for (std::size_t k = 0; k + 1 < ids.size(); ++k)
    if (ids[k].proc == ids[k + 1].proc) order.set(k, k + 1);
  for (const auto& [recv, send] : m.assignment)
    order.set(w.flat_index(send), w.flat_index(recv));
  order.close_transitively();
  return order;
}

bool is_valid_matching(const EventWorld& w, const Matching& m) {
  std::map<EventId, int> recv_uses;
  std::map<EventId, int> send_uses;
  for (const auto& [recv, send] : m.assignment) {
    if (recv.proc.value < 1 || recv.proc.value > w.process_count() ||
        send.proc.value < 1 || send.proc.value > w.process_count())
      return false;
    if (recv.index >= w.events_of(recv.proc).size() ||
        send.index >= w.events_of(send.proc).size())
      return false;
    const WorldEvent& r = w.at(recv);
    const WorldEvent& s = w.at(send);
    if (r.kind != EventKind::Recv || s.kind != EventKind::Send) return false;
    if (r.channel != s.channel) return false;
    if (++recv_uses[recv] > 1 || ++send_uses[send] > 1) return false;
  }
  for (EventId id : w.all_events())
    if (w.at(id).kind == EventKind::Recv && !recv_uses.contains(id)) return false;
  return !induced_order(w, m).any_diagonal();
}

bool oracle_channel_open(const Program& p, Channel ch, const OracleBudget& budget) {
  require_balanced(p);
  EventWorld w(p.process_count());
  w.append(p, Origin::LayerP);
  w.add_probe(ch);
  bool open = false;
  for_each_matching(w, budget, [&](const Matching& m) {
    for (const auto& [recv, send] : m.assignment)
      if (w.at(send).origin == Origin::Probe) open = true;
    return !open;
  });
  return open;
}

bool oracle_seals(const Program& p, const Program& s, const OracleBudget& budget) {
  if (p.process_count() != s.process_count())
    throw ProcessCountMismatch(p.process_count(), s.process_count());
  require_balanced(p);
  require_balanced(s);
  EventWorld w(p.process_count());
  w.append(p, Origin::LayerP);
  w.append(s, Origin::LayerS);
  for (const Channel& c : all_channels(p.process_count())) w.add_probe(c);
  bool sealed = true;
  for_each_matching(w, budget, [&](const Matching& m) {
    for (const auto& [recv, send] : m.assignment)
      if (w.at(recv).origin == Origin::LayerP &&
          w.at(send).origin != Origin::LayerP)
        sealed = false;
    return sealed;
  });
  return sealed;
}

bool oracle_tcc(const Program& p, const OracleBudget& budget) {
  return oracle_seals(p, empty_program(p.process_count()), budget);
}

bool oracle_deadlock_free(const Program& p, const OracleBudget& budget) {
  EventWorld w(p.process_count());
  w.append(p, Origin::LayerP);
  bool found = false;
  for_each_matching(w, budget, [&](const Matching&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace sealcheck

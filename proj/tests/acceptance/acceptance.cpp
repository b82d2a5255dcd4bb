// Acceptance suite: one PASS/FAIL line per criterion.
//
//   sealcheck_acceptance          run every criterion
//   sealcheck_acceptance 4 7      run the listed criteria
//
// Exit status is 0 iff every selected criterion passed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sealcheck/errors.hpp"
#include "sealcheck/oracle.hpp"
#include "sealcheck/parser.hpp"
#include "sealcheck/program_graph.hpp"
#include "sealcheck/sealing.hpp"
#include "sealcheck/signature.hpp"
#include "support.hpp"

namespace sc = sealcheck;
namespace st = sealcheck::testing;

namespace {

// Pinned limits.
constexpr double kFixtureSeconds = 1.0;
constexpr double kExhaustiveSeconds = 600.0;
constexpr int kExhaustiveMaxProcesses = 3;
constexpr std::size_t kExhaustiveMaxEvents = 4;
constexpr std::size_t kCompositionPairs = 1000;
constexpr int kCompositionMaxProcesses = 5;
constexpr std::size_t kCompositionMaxEvents = 10;
constexpr std::size_t kSynthesisPrograms = 500;
constexpr int kSynthesisMaxProcesses = 6;
constexpr std::size_t kSynthesisMaxEvents = 12;
constexpr std::size_t kAlgebraTriples = 300;
constexpr int kAlgebraMaxProcesses = 4;
constexpr std::size_t kAlgebraMaxEvents = 8;
constexpr std::size_t kRoundTrips = 1000;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Collects failed checks, keeping the first few messages.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  std::string notes() const {
    std::string out;
    for (const auto& n : notes_) out += "; " + n;
    return out;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

const std::vector<sc::Program>& exhaustive_set() {
  static const std::vector<sc::Program> programs = [] {
    std::vector<sc::Program> out;
    for (int n = 1; n <= kExhaustiveMaxProcesses; ++n) {
      auto batch = st::enumerate_programs(n, kExhaustiveMaxEvents);
      out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
  }();
  return programs;
}

sc::Program load_fixture(const std::string& name) {
  std::ifstream in(st::fixture_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sc::parse_program(buf.str());
}

std::string show(const sc::Program& p) { return sc::print_program(p); }

Outcome reference_fixtures() {
  Stopwatch clock;
  Checker c;
  const sc::Program mt12 = st::mt(2, 1, 2);
  const sc::Program mt21 = st::mt(2, 2, 1);
  const sc::Channel ch{sc::ProcessId{1}, sc::ProcessId{2}};
  c.expect(sc::is_seal(mt12, mt21), "is_seal(MT12, MT21) should be true");
  c.expect(!sc::is_seal(mt12, mt12), "is_seal(MT12, MT12) should be false");
  c.expect(sc::compute_signature(mt12).has_node(sc::SigNode::last_recv(ch)),
           "Sig(MT12) should keep its last receive");
  c.expect(!sc::compute_signature(sc::layer(mt12, mt21)).has_node(sc::SigNode::last_recv(ch)),
           "Sig(MT12 then ack) should drop the last receive");
  const sc::Program x = load_fixture("x.prog");
  c.expect(!sc::is_sealable(x), "X should be unsealable");
  c.expect(!sc::construct_seal(x).has_value(), "construct_seal(X) should be empty");
  const sc::Program pp = load_fixture("x_bystander.prog");
  const sc::Program sp = load_fixture("x_bystander_seal.prog");
  c.expect(sc::is_sealable(pp), "bystander variant of X should be sealable");
  c.expect(sc::is_seal(pp, sp), "is_seal(bystander X, its seal) should be true");
  const double secs = clock.seconds();
  c.expect(secs < kFixtureSeconds, "runtime " + std::to_string(secs) + " s");
  return {c.ok(), std::to_string(c.checks()) + " checks, " + std::to_string(secs) + " s" +
                      c.notes()};
}

Outcome decision_oracle_equivalence() {
  Stopwatch clock;
  Checker c;
  const auto& programs = exhaustive_set();
  std::size_t pairs = 0;
  std::size_t seals = 0;
  for (const sc::Program& p : programs) {
    for (const sc::Program& q : programs) {
      if (p.process_count() != q.process_count()) continue;
      if (!sc::deadlock_free(sc::layer(p, q))) continue;
      ++pairs;
      const bool fast = sc::is_seal(p, q);
      seals += fast ? 1 : 0;
      bool slow = false;
      try {
        slow = sc::oracle_seals(p, q);
      } catch (const sc::BudgetExceeded& e) {
        c.expect(false, "oracle budget exceeded on " + show(p) + " / " + show(q));
        continue;
      }
      c.expect(fast == slow, "disagree on p=" + show(p) + " q=" + show(q));
    }
  }
  const double secs = clock.seconds();
  c.expect(secs <= kExhaustiveSeconds, "runtime " + std::to_string(secs) + " s");
  return {c.ok(), std::to_string(pairs) + " pairs (" + std::to_string(seals) + " seals), " +
                      std::to_string(c.failures()) + " disagreements, " +
                      std::to_string(secs) + " s" + c.notes()};
}

Outcome open_channel_equivalence() {
  Checker c;
  std::size_t open = 0;
  for (const sc::Program& p : exhaustive_set()) {
    const sc::Signature sig = sc::compute_signature(p);
    for (const sc::Channel& ch : sc::all_channels(p.process_count())) {
      const bool fast = sig.has_node(sc::SigNode::last_recv(ch));
      open += fast ? 1 : 0;
      c.expect(fast == sc::oracle_channel_open(p, ch),
               "disagree on " + show(p) + " channel " + sc::to_string(ch));
    }
  }
  return {c.ok(), std::to_string(exhaustive_set().size()) + " programs, " +
                      std::to_string(c.checks()) + " channels (" + std::to_string(open) +
                      " open), " + std::to_string(c.failures()) + " disagreements" + c.notes()};
}

Outcome compositionality() {
  Checker c;
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> procs(1, kCompositionMaxProcesses);
  std::size_t random_pairs = 0;
  while (random_pairs < kCompositionPairs) {
    const int n = procs(rng);
    const sc::Program p = st::random_bsl(rng, n, kCompositionMaxEvents);
    const sc::Program q = st::random_bsl(rng, n, kCompositionMaxEvents);
    const sc::Program pq = sc::layer(p, q);
    if (!sc::deadlock_free(pq)) continue;
    ++random_pairs;
    c.expect(sc::signature_compose(sc::compute_signature(p), sc::compute_signature(q)) ==
                 sc::compute_signature(pq),
             "random pair p=" + show(p) + " q=" + show(q));
  }
  std::size_t exhaustive_pairs = 0;
  const auto& programs = exhaustive_set();
  std::vector<sc::Signature> sigs;
  sigs.reserve(programs.size());
  for (const auto& p : programs) sigs.push_back(sc::compute_signature(p));
  for (std::size_t a = 0; a < programs.size(); ++a) {
    for (std::size_t b = 0; b < programs.size(); ++b) {
      if (programs[a].process_count() != programs[b].process_count()) continue;
      const sc::Program pq = sc::layer(programs[a], programs[b]);
      if (!sc::deadlock_free(pq)) continue;
      ++exhaustive_pairs;
      c.expect(sc::signature_compose(sigs[a], sigs[b]) == sc::compute_signature(pq),
               "exhaustive pair p=" + show(programs[a]) + " q=" + show(programs[b]));
    }
  }
  return {c.ok(), std::to_string(random_pairs) + " random + " +
                      std::to_string(exhaustive_pairs) + " exhaustive pairs, " +
                      std::to_string(c.failures()) + " mismatches" + c.notes()};
}

Outcome seal_synthesis() {
  Checker c;
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_int_distribution<int> procs(2, kSynthesisMaxProcesses);
  std::size_t sealable = 0;
  std::size_t unsealable = 0;
  std::size_t oracle_confirmed = 0;
  std::size_t worst_ratio_num = 0;
  while (sealable < kSynthesisPrograms) {
    const int n = procs(rng);
    const sc::Program p = st::random_bsl(rng, n, kSynthesisMaxEvents);
    const auto plan = sc::construct_seal(p);
    if (!sc::is_sealable(p)) {
      ++unsealable;
      c.expect(!plan.has_value(), "unsealable program got a plan: " + show(p));
      continue;
    }
    ++sealable;
    if (!plan) {
      c.expect(false, "no plan for sealable " + show(p));
      continue;
    }
    const std::size_t size = plan->size();
    worst_ratio_num = std::max(worst_ratio_num, size * 100 / static_cast<std::size_t>(n));
    c.expect(size < static_cast<std::size_t>(3 * n),
             std::to_string(size) + " transmissions for n=" + std::to_string(n));
    const sc::Program seal = sc::expand_plan(*plan, n);
    c.expect(sc::is_seal(p, seal), "expansion does not seal " + show(p));
    try {
      c.expect(sc::oracle_seals(p, seal), "oracle rejects seal of " + show(p));
      ++oracle_confirmed;
    } catch (const sc::BudgetExceeded&) {
      // Outside the enumerable range.
    }
  }
  return {c.ok(), std::to_string(sealable) + " sealable (" + std::to_string(oracle_confirmed) +
                      " oracle-confirmed), " + std::to_string(unsealable) +
                      " unsealable, max transmissions/n = " +
                      std::to_string(static_cast<double>(worst_ratio_num) / 100.0) + c.notes()};
}

Outcome example_l() {
  Checker c;
  std::string counts;
  for (int n : {4, 5, 6}) {
    const sc::Program l = st::l_program(n);
    const std::size_t open = sc::closed_channels(l).open_channels().size();
    const std::size_t expected = static_cast<std::size_t>(n * n - 3 * n + 3);
    counts += " n=" + std::to_string(n) + ":" + std::to_string(open) + "/" +
              std::to_string(expected);
    c.expect(open == expected, "n=" + std::to_string(n) + " open channels " +
                                   std::to_string(open) + ", expected " +
                                   std::to_string(expected));
    const sc::Program s = st::l_seal(n);
    c.expect(s.statement_count() == 2 * static_cast<std::size_t>(n - 1),
             "hand seal size for n=" + std::to_string(n));
    c.expect(sc::is_seal(l, s), "is_seal(L, S) false for n=" + std::to_string(n));
    const auto plan = sc::construct_seal(l);
    c.expect(plan.has_value() && plan->size() < static_cast<std::size_t>(3 * n),
             "construct_seal(L) for n=" + std::to_string(n));
  }
  return {c.ok(), "open/expected" + counts + c.notes()};
}

Outcome non_tcc() {
  Checker c;
  std::size_t with_send = 0;
  for (const sc::Program& p : exhaustive_set()) {
    if (p.empty()) continue;
    ++with_send;
    c.expect(!sc::oracle_tcc(p), "oracle_tcc true for " + show(p));
  }
  for (int n = 1; n <= kExhaustiveMaxProcesses; ++n)
    c.expect(sc::oracle_tcc(sc::empty_program(n)), "oracle_tcc(empty) false");
  return {c.ok(), std::to_string(with_send) + " programs with a send" + c.notes()};
}

sc::Program seal_or_random(std::mt19937_64& rng, const sc::Program& p, int n) {
  if (std::bernoulli_distribution(0.5)(rng)) {
    if (const auto plan = sc::construct_seal(p)) return sc::expand_plan(*plan, n);
  }
  return st::random_bsl(rng, n, kAlgebraMaxEvents);
}

Outcome seal_algebra() {
  Checker c;
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_int_distribution<int> procs(2, kAlgebraMaxProcesses);
  std::size_t triples = 0;
  std::size_t extension_premises = 0;
  std::size_t chain_premises = 0;
  while (triples < kAlgebraTriples) {
    const int n = procs(rng);
    const sc::Program p = st::random_bsl(rng, n, kAlgebraMaxEvents);
    const sc::Program s = seal_or_random(rng, p, n);
    const sc::Program q = seal_or_random(rng, s, n);
    if (!sc::deadlock_free(sc::layer(sc::layer(p, s), q))) continue;
    ++triples;
    if (!sc::is_seal(p, s)) continue;
    ++extension_premises;
    c.expect(sc::is_seal(p, sc::layer(s, q)),
             "extension: p=" + show(p) + " s=" + show(s) + " q=" + show(q));
    if (!sc::is_seal(s, q)) continue;
    ++chain_premises;
    c.expect(sc::is_seal(sc::layer(p, s), q),
             "chain: p=" + show(p) + " s=" + show(s) + " s'=" + show(q));
  }
  return {c.ok(), std::to_string(triples) + " triples, " + std::to_string(extension_premises) +
                      " with is_seal(p,s), " + std::to_string(chain_premises) +
                      " also with is_seal(s,s'), " + std::to_string(c.failures()) +
                      " counterexamples" + c.notes()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("sealcheck_accept_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

Outcome dsl_round_trip() {
  Checker c;
  std::mt19937_64 rng(kSeed + 9);
  std::uniform_int_distribution<int> procs(1, 6);
  std::uniform_int_distribution<std::size_t> msgs(0, 8);
  std::uniform_int_distribution<int> extra(0, 3);
  for (std::size_t k = 0; k < kRoundTrips; ++k) {
    const int n = procs(rng);
    const sc::Program base = st::random_balanced(rng, n, msgs(rng));
    // Also exercise unbalanced sequences: append stray statements.
    std::vector<std::vector<sc::Statement>> seqs;
    for (sc::ProcessId i : sc::processes(n)) {
      auto seq = std::vector<sc::Statement>(base.seq(i).begin(), base.seq(i).end());
      if (n > 1) {
        for (int e = extra(rng); e > 0; --e) {
          const int peer = (i.value % n) + 1;
          seq.push_back(e % 2 ? sc::Statement::send(sc::ProcessId{peer})
                              : sc::Statement::recv(sc::ProcessId{peer}));
        }
      }
      seqs.push_back(std::move(seq));
    }
    const sc::Program p("prog_" + std::to_string(k), n, std::move(seqs));
    const std::string text = sc::print_program(p);
    try {
      const sc::Program back = sc::parse_program(text);
      c.expect(back == p && sc::print_program(back) == text, "round trip changed " + text);
    } catch (const sc::ParseError& e) {
      c.expect(false, std::string("printed text does not parse: ") + e.what());
    }
  }
  const std::size_t round_trips = c.checks();

  struct BadInput {
    std::string text;
    sc::ParseErrorKind kind;
  };
  const std::vector<BadInput> bad = {
      {"processes 2; program p { process 1 { send 2 } }", sc::ParseErrorKind::Syntax},
      {"processes 2 program p { }", sc::ParseErrorKind::Syntax},
      {"processes 2; program p { process 1 { jump 2; } }", sc::ParseErrorKind::Syntax},
      {"", sc::ParseErrorKind::Syntax},
      {"processes 0; program p { }", sc::ParseErrorKind::BadProcessId},
      {"processes 2; program p { process 3 { } }", sc::ParseErrorKind::BadProcessId},
      {"processes 2; program p { process 1 { recv 7; } }", sc::ParseErrorKind::BadProcessId},
      {"processes 2; program p { process 2 { send 2; } }", sc::ParseErrorKind::SelfChannel},
      {"processes 3; program p { process 2 { } process 2 { } }",
       sc::ParseErrorKind::DuplicateProcess},
  };
  for (std::size_t k = 0; k < bad.size(); ++k) {
    try {
      sc::parse_program(bad[k].text);
      c.expect(false, "accepted bad input " + std::to_string(k));
    } catch (const sc::ParseError& e) {
      c.expect(e.kind() == bad[k].kind, "wrong kind for bad input " + std::to_string(k) +
                                            ": " + e.what());
    }
    const auto r = sc::cli::run({"check", write_temp("bad" + std::to_string(k), bad[k].text)});
    c.expect(r.exit_code == 2, "exit code " + std::to_string(r.exit_code) +
                                   " for bad input " + std::to_string(k));
  }
  return {c.ok(), std::to_string(round_trips) + " round trips, " + std::to_string(bad.size()) +
                      " error fixtures" + c.notes()};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "reference fixtures", reference_fixtures},
    {2, "is_seal agrees with the oracle (exhaustive)", decision_oracle_equivalence},
    {3, "open channels agree with the oracle (exhaustive)", open_channel_equivalence},
    {4, "signature composition", compositionality},
    {5, "seal synthesis soundness and size", seal_synthesis},
    {6, "phase L example", example_l},
    {7, "non-empty programs are not tail closed", non_tcc},
    {8, "seal algebra", seal_algebra},
    {9, "DSL round trip and parse errors", dsl_round_trip},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) {
    char* end = nullptr;
    const long id = std::strtol(argv[k], &end, 10);
    if (*end != '\0' || id < 1 || id > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1-9]...\n", argv[0]);
      return 2;
    }
    selected.push_back(static_cast<int>(id));
  }
  if (selected.empty())
    for (const Criterion& c : kCriteria) selected.push_back(c.id);

  bool all = true;
  for (int id : selected) {
    const Criterion& c = kCriteria[id - 1];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %d: %s  %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

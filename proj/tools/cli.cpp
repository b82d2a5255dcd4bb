#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "sealcheck/errors.hpp"
#include "sealcheck/oracle.hpp"
#include "sealcheck/parser.hpp"
#include "sealcheck/program_graph.hpp"
#include "sealcheck/sealing.hpp"
#include "sealcheck/signature.hpp"

namespace sealcheck::cli {
namespace {

constexpr const char* kFooter = R"(Output is line-oriented "key: value" text unless --dot is given.
Keys by command:
  check      balanced, deadlock_free
  graph      nodes, edges, node, edge
  sig        nodes, edges, node, edge
  channels   closed, open, closed_channels, open_channels
  sealable   sealable
  is-seal    seals
  seal       sealable, open_channels, transmissions, bound, transmission
  verify     <query>: static=<v> oracle=<v> AGREE|DISAGREE, verdict
Exit codes: 0 ok, 1 negative answer, 2 input error, 3 budget exceeded or
internal error.)";

// Thrown for problems with the command line or input files.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Program load_program(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_program(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string graph_text(const ProgramGraph& g, bool dot) {
  std::ostringstream out;
  if (!dot) {
    out << "nodes: " << g.nodes().size() << "\n";
    out << "edges: " << g.edges().size() << "\n";
    for (const GraphNode& v : g.nodes()) out << "node: " << v.name() << "\n";
    for (const GraphEdge& e : g.edges())
      out << "edge: " << g.nodes()[e.from].name() << " -> "
          << g.nodes()[e.to].name()
          << (e.kind == EdgeKind::Match ? " [match]" : " [local]") << "\n";
    return out.str();
  }
  out << "digraph program_graph {\n  rankdir=TB;\n";
  for (ProcessId i : processes(g.process_count())) {
    out << "  subgraph cluster_" << i.value << " {\n    label="
        << quote("process " + to_string(i)) << ";\n";
    for (std::size_t k = g.fst(i); k <= g.lst(i); ++k) {
      const GraphNode& v = g.nodes()[k];
      out << "    " << quote(v.name()) << " [shape="
          << (v.is_dummy() ? "box" : "circle") << "];\n";
    }
    out << "  }\n";
  }
  for (const GraphEdge& e : g.edges())
    out << "  " << quote(g.nodes()[e.from].name()) << " -> "
        << quote(g.nodes()[e.to].name())
        << (e.kind == EdgeKind::Match ? " [style=solid, constraint=false]" : "")
        << ";\n";
  out << "}\n";
  return out.str();
}

// An edge is transitive-only when some intermediate node also connects its
// endpoints.
bool transitive_only(const Signature& s, const SigEdge& e) {
  return std::any_of(s.nodes.begin(), s.nodes.end(), [&](const SigNode& mid) {
    return s.has_edge(e.first, mid) && s.has_edge(mid, e.second);
  });
}

std::string signature_text(const Signature& s, bool dot) {
  std::ostringstream out;
  if (!dot) {
    out << "nodes: " << s.nodes.size() << "\n";
    out << "edges: " << s.edges.size() << "\n";
    for (const SigNode& v : s.nodes) out << "node: " << v.name() << "\n";
    for (const auto& [a, b] : s.edges)
      out << "edge: " << a.name() << " -> " << b.name() << "\n";
    return out.str();
  }
  out << "digraph signature {\n";
  for (const SigNode& v : s.nodes)
    out << "  " << quote(v.name()) << " [shape="
        << (v.is_dummy() ? "box" : "circle") << "];\n";
  for (const SigEdge& e : s.edges)
    out << "  " << quote(e.first.name()) << " -> " << quote(e.second.name())
        << (transitive_only(s, e) ? " [penwidth=0.4, arrowsize=0.5]"
                                  : " [penwidth=1.5]")
        << ";\n";
  out << "}\n";
  return out.str();
}

struct Options {
  std::vector<std::string> files;
  std::string plan_out;
  std::string mode;
  bool dot = false;
  int n = 0;
  std::size_t budget = OracleBudget{}.max_matchings;
};

CliResult cmd_check(const Options& o) {
  const Program p = load_program(o.files.at(0));
  CliResult r;
  const bool balanced = is_balanced(p);
  r.out += "balanced: " + yes_no(balanced) + "\n";
  if (!balanced) {
    r.out += "deadlock_free: unknown\n";
    r.exit_code = kNegative;
    return r;
  }
  const bool free = deadlock_free(p);
  r.out += "deadlock_free: " + yes_no(free) + "\n";
  r.exit_code = free ? kOk : kNegative;
  return r;
}

CliResult cmd_graph(const Options& o) {
  return {kOk, graph_text(build_program_graph(load_program(o.files.at(0))), o.dot), {}};
}

CliResult cmd_sig(const Options& o) {
  return {kOk, signature_text(compute_signature(load_program(o.files.at(0))), o.dot), {}};
}

CliResult cmd_channels(const Options& o) {
  const ClosedChannelGraph c = closed_channels(load_program(o.files.at(0)));
  CliResult r;
  for (const auto& [i, j] : c.edges)
    r.out += "closed: " + to_string(Channel{i, j}) + "\n";
  const auto open = c.open_channels();
  for (const Channel& ch : open) r.out += "open: " + to_string(ch) + "\n";
  r.out += "closed_channels: " + std::to_string(c.edges.size()) + "\n";
  r.out += "open_channels: " + std::to_string(open.size()) + "\n";
  return r;
}

CliResult cmd_sealable(const Options& o) {
  const bool ok = is_sealable(load_program(o.files.at(0)));
  return {ok ? kOk : kNegative, "sealable: " + yes_no(ok) + "\n", {}};
}

CliResult cmd_is_seal(const Options& o) {
  const bool ok = is_seal(load_program(o.files.at(0)), load_program(o.files.at(1)));
  return {ok ? kOk : kNegative, "seals: " + yes_no(ok) + "\n", {}};
}

CliResult cmd_seal(const Options& o) {
  const Program p = load_program(o.files.at(0));
  CliResult r;
  const auto open = closed_channels(p).open_channels();
  const auto plan = construct_seal(p);
  r.out += "sealable: " + yes_no(plan.has_value()) + "\n";
  r.out += "open_channels: " + std::to_string(open.size()) + "\n";
  if (!plan) {
    r.exit_code = kNegative;
    return r;
  }
  r.out += "transmissions: " + std::to_string(plan->size()) + "\n";
  r.out += "bound: " + std::to_string(3 * p.process_count()) + "\n";
  for (const Transmission& t : plan->transmissions)
    r.out += "transmission: " + to_string(t.src) + " -> " + to_string(t.dst) +
             " [" + to_string(t.phase) + "]\n";
  if (!o.plan_out.empty()) {
    std::ofstream file(o.plan_out, std::ios::binary);
    if (!(file << format_plan(*plan))) throw InputError("cannot write " + o.plan_out);
  }
  return r;
}

CliResult cmd_expand(const Options& o) {
  if (o.n < 1) throw InputError("-n must be at least 1");
  SealPlan plan;
  try {
    plan = parse_plan(read_file(o.files.at(0)));
  } catch (const std::invalid_argument& e) {
    throw InputError(o.files.at(0) + ": " + e.what());
  }
  return {kOk, print_program(expand_plan(plan, o.n)) + "\n", {}};
}

std::string open_closed(bool open) { return open ? "open" : "closed"; }

CliResult cmd_verify(const Options& o) {
  OracleBudget budget;
  budget.max_matchings = o.budget;
  CliResult r;
  bool all_agree = true;
  auto report = [&](const std::string& query, const std::string& static_answer,
                    const std::string& oracle_answer) {
    const bool agree = static_answer == oracle_answer;
    all_agree = all_agree && agree;
    r.out += query + ": static=" + static_answer + " oracle=" + oracle_answer +
             (agree ? " AGREE" : " DISAGREE") + "\n";
  };

  if (o.mode == "channels") {
    for (const std::string& path : o.files) {
      const Program p = load_program(path);
      const Signature sig = compute_signature(p);
      for (const Channel& ch : all_channels(p.process_count())) {
        const bool static_open = sig.has_node(SigNode::last_recv(ch));
        const bool oracle_open = oracle_channel_open(p, ch, budget);
        report(path + " " + to_string(ch), open_closed(static_open),
               open_closed(oracle_open));
      }
    }
  } else if (o.mode == "is-seal") {
    if (o.files.size() != 2) throw InputError("verify is-seal takes exactly two files");
    const Program p = load_program(o.files[0]);
    const Program q = load_program(o.files[1]);
    report("seals", yes_no(is_seal(p, q)), yes_no(oracle_seals(p, q, budget)));
  } else if (o.mode == "tcc") {
    for (const std::string& path : o.files) {
      const Program p = load_program(path);
      // Statically, p is TCC iff the empty program seals it.
      const bool static_tcc = is_seal(p, empty_program(p.process_count()));
      report(path + " tcc", yes_no(static_tcc), yes_no(oracle_tcc(p, budget)));
    }
  } else {
    throw InputError("unknown verify mode '" + o.mode + "'");
  }
  r.out += std::string("verdict: ") + (all_agree ? "AGREE" : "DISAGREE") + "\n";
  r.exit_code = all_agree ? kOk : kNegative;
  return r;
}

}  // namespace

CliResult run(const std::vector<std::string>& args) {
  CLI::App app{"Sealing analysis for straight-line message-passing programs", "sealcheck"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Options o;
  std::function<CliResult(const Options&)> handler;
  auto bind = [&](CLI::App* sub, CliResult (*fn)(const Options&)) {
    sub->callback([&handler, fn] { handler = fn; });
  };

  auto* check = app.add_subcommand("check", "Report balance and deadlock freedom");
  check->add_option("file", o.files, "Program file")->required()->expected(1);
  bind(check, cmd_check);

  auto* graph = app.add_subcommand("graph", "Print the program graph");
  graph->add_option("file", o.files, "Program file")->required()->expected(1);
  graph->add_flag("--dot", o.dot, "Emit Graphviz DOT");
  bind(graph, cmd_graph);

  auto* sig = app.add_subcommand("sig", "Print the signature");
  sig->add_option("file", o.files, "Program file")->required()->expected(1);
  sig->add_flag("--dot", o.dot, "Emit Graphviz DOT");
  bind(sig, cmd_sig);

  auto* channels = app.add_subcommand("channels", "List closed and open channels");
  channels->add_option("file", o.files, "Program file")->required()->expected(1);
  bind(channels, cmd_channels);

  auto* sealable = app.add_subcommand("sealable", "Decide whether the program can be sealed");
  sealable->add_option("file", o.files, "Program file")->required()->expected(1);
  bind(sealable, cmd_sealable);

  auto* is_seal_cmd = app.add_subcommand("is-seal", "Decide whether Q seals P");
  is_seal_cmd->add_option("files", o.files, "P.prog Q.prog")->required()->expected(2);
  bind(is_seal_cmd, cmd_is_seal);

  auto* seal = app.add_subcommand("seal", "Synthesize a seal");
  seal->add_option("file", o.files, "Program file")->required()->expected(1);
  seal->add_option("-o", o.plan_out, "Write the plan to this file");
  bind(seal, cmd_seal);

  auto* expand = app.add_subcommand("expand", "Expand a seal plan into a program");
  expand->add_option("plan", o.files, "Plan file")->required()->expected(1);
  expand->add_option("-n", o.n, "Process count")->required();
  bind(expand, cmd_expand);

  auto* verify = app.add_subcommand("verify", "Cross-check static answers against the oracle");
  verify->add_option("mode", o.mode, "channels | is-seal | tcc")
      ->required()
      ->check(CLI::IsMember({"channels", "is-seal", "tcc"}));
  verify->add_option("files", o.files, "Program files")->required();
  verify->add_option("--budget", o.budget, "Maximum candidate matchings")
      ->check(CLI::PositiveNumber);
  bind(verify, cmd_verify);

  CliResult result;
  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? kOk : kInputError;
    return result;
  }

  try {
    result = handler(o);
  } catch (const InputError& e) {
    result = {kInputError, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const BudgetExceeded& e) {
    result = {kBudgetOrInternal, {}, std::string("error: budget exceeded: ") + e.what() + "\n"};
  } catch (const Error& e) {
    // Unbalanced, cyclic, or mismatched inputs violate analysis preconditions.
    result = {kInputError, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const BadProcessIdError& e) {
    result = {kInputError, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    result = {kBudgetOrInternal, {}, std::string("internal error: ") + e.what() + "\n"};
  }
  return result;
}

}  // namespace sealcheck::cli

// Copyright 2026 The gts Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gts/chordal.hpp"
#include "gts/graph_algo.hpp"
#include "gts/harness.hpp"
#include "gts/hardness.hpp"
#include "gts/instance_io.hpp"
#include "gts/kernel_rules.hpp"
#include "gts/multicomponent.hpp"
#include "gts/oracle.hpp"
#include "gts/planar.hpp"
#include "gts/rewrite.hpp"

namespace gts::cli {

namespace {

// Exit status carried out of a command body.
struct Exit {
  int code;
};

class Io {
 public:
  Io(std::istream& in, std::ostream& out, std::ostream& err)
      : in_(in), out_(out), err_(err) {}

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  std::string slurp(const std::string& path) {
    std::stringstream buffer;
    if (path == "-") {
      buffer << in_.rdbuf();
      return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      err_ << "error: cannot open " << path << '\n';
      throw Exit{kNoInput};
    }
    buffer << file.rdbuf();
    return buffer.str();
  }

  // Writes to `path`, or to stdout for "-".
  void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err_ << "error: cannot write " << path << '\n';
      throw Exit{kNoInput};
    }
    file << text;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

Instance load_instance(Io& io, const std::string& path,
                       std::string* raw = nullptr) {
  std::string text = io.slurp(path);
  try {
    Instance inst = parse_instance(text);
    if (raw) *raw = std::move(text);
    return inst;
  } catch (const ParseError& e) {
    io.err() << e.what() << '\n';
    throw Exit{kUsage};
  } catch (const Error& e) {
    io.err() << "invalid instance: " << e.what() << '\n';
    throw Exit{kData};
  }
}

VertexSet parse_id_list(const std::string& text) {
  VertexSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = std::stoul(item, &used);
    if (used != item.size() || v == 0) {
      throw std::invalid_argument("bad vertex id '" + item + "'");
    }
    out.push_back(static_cast<VertexId>(v));
  }
  return make_set(out);
}

std::uint64_t budget_or_default(std::uint64_t flag) {
  return flag == 0 ? default_state_budget() : flag;
}

std::vector<NamedRule> rules_for(const std::vector<std::string>& ids) {
  std::vector<NamedRule> out;
  for (const auto& id : ids) {
    if (id == "r6") {
      out.push_back({"r6", [](const Instance& i) { return rule_r6_auto(i); }});
    } else {
      out.push_back(basic_rules({id}).front());
    }
  }
  return out;
}

// ---- solve ----

struct SolveFlags {
  std::string path;
  std::uint64_t budget = 0;
  std::string x_reduced;
};

int cmd_solve(Io& io, const SolveFlags& f) {
  Instance inst = load_instance(io, f.path);
  try {
    Verdict v = f.x_reduced.empty()
                    ? solve(inst, budget_or_default(f.budget))
                    : solve_x_reduced(inst, parse_id_list(f.x_reduced),
                                      budget_or_default(f.budget));
    io.out() << format_verdict(v);
    return v.reachable ? kYes : kNo;
  } catch (const ResourceLimitError& e) {
    io.out() << "LIMIT " << e.states() << '\n';
    return kLimit;
  }
}

// ---- kernelize ----

struct KernelizeFlags {
  std::string path;
  std::string rules;
  bool planar = false;
  bool chordal = false;
  bool unsafe = false;
  bool audit = false;
  std::size_t alpha = 0, beta = 0, gamma = 0;
  std::string output = "-";
  std::string trace;
  std::string tree;  // Clique tree of the kernel.
};

std::string normalization_lines(const char* side, const Normalization& n) {
  std::ostringstream out;
  for (const Move& m : n.prefix) {
    out << "# normalize " << side << " move " << m.from << ' ' << m.to << '\n';
  }
  if (!n.ok) {
    out << "# normalize " << side << " failed at " << n.blocking << ": "
        << n.failure << '\n';
  }
  return out.str();
}

int cmd_kernelize(Io& io, const KernelizeFlags& f) {
  if (f.planar && f.chordal) {
    io.err() << "error: --planar and --chordal are exclusive\n";
    return kUsage;
  }
  if (f.unsafe && !f.planar && !f.chordal) {
    io.err() << "error: --unsafe-thresholds needs --planar or --chordal\n";
    return kUsage;
  }
  if ((f.alpha || f.beta || f.gamma) && !(f.chordal && f.unsafe)) {
    io.err() << "error: --alpha/--beta/--gamma need --chordal "
                "--unsafe-thresholds\n";
    return kUsage;
  }
  if (!f.tree.empty() && !f.chordal) {
    io.err() << "error: --tree needs --chordal\n";
    return kUsage;
  }
  if (f.chordal && !f.rules.empty()) {
    io.err() << "error: --rules does not combine with --chordal\n";
    return kUsage;
  }
  std::vector<std::string> ids{"r1", "r2", "r3", "r4", "r5"};
  if (!f.rules.empty()) {
    try {
      ids = parse_rule_list(f.rules);
    } catch (const std::invalid_argument& e) {
      io.err() << "error: " << e.what() << '\n';
      return kUsage;
    }
  }

  std::string raw;
  Instance inst = load_instance(io, f.path, &raw);
  Instance kernel;
  ReductionTrace trace;
  std::string preamble;
  try {
    if (f.planar) {
      if (!is_planar(inst.graph)) {
        io.err() << "error: --planar on a non-planar graph\n";
        return kData;
      }
      std::optional<PlanarThresholds> th;
      if (f.unsafe) th = desk_thresholds(inst.k);
      std::vector<NamedRule> rules = rules_for(ids);
      for (NamedRule& r : planar_rules(th)) rules.push_back(std::move(r));
      embedding_of(inst);
      std::tie(kernel, trace) = exhaust(inst, rules);
    } else if (f.chordal) {
      if (!inst.is_classic()) {
        io.err() << "error: --chordal needs an instance without black holes\n";
        return kData;
      }
      C1Search search;
      if (f.unsafe) {
        search.alpha = f.alpha ? f.alpha : 5 * inst.k + 5;
        search.beta = f.beta ? f.beta : 2;
        search.gamma = f.gamma;
      }
      ChordalRun run = chordal_kernel(inst, search);
      kernel = std::move(run.kernel);
      trace = std::move(run.trace);
      preamble = normalization_lines("source", run.source_normalization) +
                 normalization_lines("target", run.target_normalization);
    } else {
      std::tie(kernel, trace) = exhaust(inst, rules_for(ids));
    }
  } catch (const NotChordalError& e) {
    io.err() << "error: not chordal; chordless cycle";
    for (VertexId v : e.cycle()) io.err() << ' ' << v;
    io.err() << '\n';
    return kData;
  } catch (const ResourceLimitError& e) {
    io.err() << "LIMIT " << e.states() << '\n';
    return kLimit;
  } catch (const Error& e) {
    io.err() << "error: " << e.what() << '\n';
    return kData;
  }

  io.emit(f.output, kernel == inst ? raw : serialize_instance(kernel));
  if (!f.tree.empty()) {
    io.emit(f.tree, format_clique_tree(clique_tree(kernel.graph)));
  }
  std::string trace_text = preamble + format_trace(trace);
  if (f.audit) trace_text += audit(kernel).to_string();
  if (f.trace.empty()) {
    io.err() << trace_text;
  } else {
    io.emit(f.trace, trace_text);
  }
  return kYes;
}

// ---- signatures ----

struct SignatureFlags {
  std::string path;
  std::string cutset;
  std::size_t ell = 1;
  bool types = false;
};

int cmd_signatures(Io& io, const SignatureFlags& f) {
  Instance inst = load_instance(io, f.path);
  VertexSet x;
  try {
    x = parse_id_list(f.cutset);
  } catch (const std::exception& e) {
    io.err() << "error: --cutset: " << e.what() << '\n';
    return kUsage;
  }
  for (VertexId v : x) {
    if (!inst.graph.contains(v)) {
      io.err() << "error: cutset vertex " << v << " is not in the graph\n";
      return kData;
    }
  }
  try {
    for (VertexId v : inst.graph.ids()) {
      if (std::binary_search(x.begin(), x.end(), v)) continue;
      Signature sig = vertex_signature(inst.graph, x, v, f.ell);
      io.out() << v << ' ' << sig.size();
      if (f.types) {
        const char* sep = " ";
        for (const EllType& t : sig) {
          io.out() << sep << format_type(t, x);
          sep = " ; ";
        }
      }
      io.out() << '\n';
    }
  } catch (const ResourceLimitError& e) {
    io.err() << "LIMIT " << e.states() << ": " << e.what() << '\n';
    return kLimit;
  } catch (const Error& e) {
    io.err() << "error: " << e.what() << '\n';
    return kData;
  }
  return kYes;
}

// ---- gen-hardness ----

struct HardnessFlags {
  std::uint32_t k = 0, n = 0;
  std::string edges;
  std::string output = "-";
};

int cmd_gen_hardness(Io& io, const HardnessFlags& f) {
  MisInstance mis;
  if (!f.edges.empty()) {
    std::string text = io.slurp(f.edges);
    try {
      mis = parse_mis(text);
    } catch (const ParseError& e) {
      io.err() << e.what() << '\n';
      return kUsage;
    }
    if ((f.k && f.k != mis.k) || (f.n && f.n != mis.n)) {
      io.err() << "error: --k/--n disagree with the header of " << f.edges
               << '\n';
      return kData;
    }
  } else {
    if (!f.k || !f.n) {
      io.err() << "error: give --k and --n, or --edges\n";
      return kUsage;
    }
    mis.k = f.k;
    mis.n = f.n;
  }
  SplitInstance s;
  try {
    s = build_split_instance(mis);
  } catch (const Error& e) {
    io.err() << "error: " << e.what() << '\n';
    return kData;
  }
  std::ostringstream text;
  text << "# split graph from p mis " << mis.k << ' ' << mis.n << ": |C|="
       << s.layout.c.size() << " |U|=" << s.layout.u.size()
       << " |D|=" << s.layout.d.size() << " k'=" << s.instance.k << '\n'
       << "# clique ids 1.." << s.layout.c.size() << '\n'
       << serialize_instance(s.instance);
  io.emit(f.output, text.str());
  return kYes;
}

// ---- harness ----

struct HarnessFlags {
  std::string rules = "r1-r5";
  HarnessConfig cfg;
  std::string dump;
};

int cmd_harness(Io& io, HarnessFlags f) {
  try {
    f.cfg.rules = parse_rule_list(f.rules);
  } catch (const std::invalid_argument& e) {
    io.err() << "error: " << e.what() << '\n';
    return kUsage;
  }
  const auto& e = f.cfg.ensemble;
  if (e.min_vertices > e.max_vertices || e.min_density > e.max_density ||
      e.max_vertices == 0) {
    io.err() << "error: empty ensemble range\n";
    return kUsage;
  }
  HarnessSummary summary;
  if (f.cfg.trials > 0) summary = run_harness(f.cfg, rules_for({"r6"}));
  std::string failure = summary.first_failure;
  summary.first_failure.clear();
  io.out() << summary.to_string();
  if (summary.discrepancies() == 0) return kYes;
  if (f.dump.empty()) {
    io.err() << failure;
  } else {
    io.emit(f.dump, failure);
  }
  return kNo;
}

// ---- stats ----

int cmd_stats(Io& io, const std::string& path) {
  Instance inst = load_instance(io, path);
  const GalacticGraph& g = inst.graph;
  std::size_t max_degree = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    max_degree = std::max(max_degree, g.degree(i));
  }
  auto& out = io.out();
  out << "vertices " << g.size() << '\n'
      << "planets " << g.num_planets() << '\n'
      << "black_holes " << g.num_holes() << '\n'
      << "edges " << g.num_edges() << '\n'
      << "k " << inst.k << '\n'
      << "components " << connected_components(g, {}).size() << '\n'
      << "planetary_components " << planetary_components(g).size() << '\n'
      << "max_degree " << max_degree << '\n'
      << "planar " << (is_planar(g) ? "yes" : "no") << '\n';
  const bool chordal = is_chordal(g);
  out << "chordal " << (chordal ? "yes" : "no") << '\n';
  if (chordal) out << "clique_number " << clique_number(g) << '\n';
  out << "rotation " << (inst.rotation ? "yes" : "no") << '\n';
  return kYes;
}

}  // namespace

std::vector<std::string> parse_rule_list(const std::string& list) {
  auto number = [&](std::string s) {
    if (!s.empty() && (s[0] == 'r' || s[0] == 'R')) s = s.substr(1);
    if (s.size() != 1 || s[0] < '1' || s[0] > '6') {
      throw std::invalid_argument("unknown rule in '" + list + "'");
    }
    return s[0] - '0';
  };
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-');
    int lo = number(item.substr(0, dash));
    int hi = dash == std::string::npos ? lo : number(item.substr(dash + 1));
    if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
    for (int r = lo; r <= hi; ++r) {
      std::string id = "r" + std::to_string(r);
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
  }
  if (out.empty()) throw std::invalid_argument("no rules in '" + list + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Io io(in, out, err);
  CLI::App app{"Token sliding solver and kernelizer", "gts"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  SolveFlags solve_f;
  auto* solve_cmd = app.add_subcommand("solve", "Decide reachability");
  solve_cmd->add_option("file", solve_f.path, "Instance file or -")
      ->required();
  solve_cmd->add_option("--budget", solve_f.budget,
                        "State budget; 0 uses GTS_STATE_BUDGET or 10^7");
  solve_cmd->add_option("--x-reduced", solve_f.x_reduced,
                        "Comma separated X: minimise moves touching X first");

  KernelizeFlags ker_f;
  auto* ker_cmd = app.add_subcommand("kernelize", "Exhaust reduction rules");
  ker_cmd->add_option("file", ker_f.path, "Instance file or -")->required();
  ker_cmd->add_option("--rules", ker_f.rules, "Rules, e.g. r1-r5 or r1,r3");
  ker_cmd->add_flag("--planar", ker_f.planar, "Add P1-P4");
  ker_cmd->add_flag("--chordal", ker_f.chordal,
                    "Normalize, then R1, R3, R5, R6 and C1");
  ker_cmd->add_flag("--unsafe-thresholds", ker_f.unsafe,
                    "Desk-scale thresholds; marked in the trace");
  ker_cmd->add_flag("--audit", ker_f.audit, "Append the audit report");
  ker_cmd->add_option("--alpha", ker_f.alpha, "C1 search sections");
  ker_cmd->add_option("--beta", ker_f.beta, "C1 search section length");
  ker_cmd->add_option("--gamma", ker_f.gamma, "C1 component limit");
  ker_cmd->add_option("-o,--output", ker_f.output, "Reduced instance (- for stdout)");
  ker_cmd->add_option("--tree", ker_f.tree,
                      "With --chordal: clique tree of the kernel (- for stdout)");
  ker_cmd->add_option("--trace", ker_f.trace,
                      "Trace file (- for stdout); stderr when omitted");

  SignatureFlags sig_f;
  auto* sig_cmd = app.add_subcommand("signatures", "Vertex signatures in G - X");
  sig_cmd->add_option("file", sig_f.path, "Instance file or -")->required();
  sig_cmd->add_option("--cutset", sig_f.cutset, "Comma separated X")
      ->required();
  sig_cmd->add_option("--ell", sig_f.ell, "Maximum number of blocks");
  sig_cmd->add_flag("--types", sig_f.types, "Dump every type");

  HardnessFlags hard_f;
  auto* hard_cmd =
      app.add_subcommand("gen-hardness", "Split graph instance from MIS");
  hard_cmd->add_option("--k", hard_f.k, "Number of classes");
  hard_cmd->add_option("--n", hard_f.n, "Class size");
  hard_cmd->add_option("--edges", hard_f.edges, "MIS file (p mis <k> <n>)");
  hard_cmd->add_option("-o,--output", hard_f.output, "Output (- for stdout)");

  HarnessFlags har_f;
  auto& ens = har_f.cfg.ensemble;
  auto* har_cmd = app.add_subcommand("harness", "Randomized rule safety");
  har_cmd->add_option("--rules", har_f.rules, "Rules, e.g. r1-r5");
  har_cmd->add_option("--trials", har_f.cfg.trials, "Applications per rule");
  har_cmd->add_option("--seed", har_f.cfg.seed, "Seed");
  har_cmd->add_option("--min-vertices", ens.min_vertices, "Smallest graph");
  har_cmd->add_option("--max-vertices", ens.max_vertices, "Largest graph");
  har_cmd->add_option("--max-k", ens.max_k, "Largest token count");
  har_cmd->add_option("--min-density", ens.min_density, "Edge density floor")
      ->check(CLI::Range(0.0, 1.0));
  har_cmd->add_option("--max-density", ens.max_density, "Edge density cap")
      ->check(CLI::Range(0.0, 1.0));
  har_cmd->add_option("--hole-prob", ens.hole_prob, "Black hole probability")
      ->check(CLI::Range(0.0, 1.0));
  har_cmd->add_option("--budget", har_f.cfg.state_budget, "State budget");
  har_cmd->add_option("--max-attempts", har_f.cfg.max_attempts,
                      "Samples per trial");
  har_cmd->add_option("--dump", har_f.dump,
                      "Offending instance file; stderr when omitted");

  std::string stats_path;
  auto* stats_cmd = app.add_subcommand("stats", "Graph statistics");
  stats_cmd->add_option("file", stats_path, "Instance file or -")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(io, solve_f);
    if (ker_cmd->parsed()) return cmd_kernelize(io, ker_f);
    if (sig_cmd->parsed()) return cmd_signatures(io, sig_f);
    if (hard_cmd->parsed()) return cmd_gen_hardness(io, hard_f);
    if (har_cmd->parsed()) return cmd_harness(io, har_f);
    if (stats_cmd->parsed()) return cmd_stats(io, stats_path);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}

}  // namespace gts::cli

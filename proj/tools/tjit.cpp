// tjit: command-line front-end over the tjit library.
// Exit codes: 0 all pass, 1 some check failed, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tjit/extract.hpp"
#include "tjit/generate.hpp"
#include "tjit/gp.hpp"
#include "tjit/hotpath.hpp"
#include "tjit/io.hpp"
#include "tjit/observation.hpp"
#include "tjit/optimize.hpp"
#include "tjit/pipeline.hpp"
#include "tjit/semantics.hpp"

using namespace tjit;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string program, other;
  std::string domain = "onepoint";
  std::size_t threshold = 2;
  std::size_t budget = 2000;
  std::uint64_t seed = 0;
  std::string initials = "empty";
  std::vector<std::string> passes;
  std::string dot;
  bool json = false;
  std::string hotpath;
  std::string obs = "sc";
  std::vector<std::string> vars;
  std::size_t rounds = 3;
  std::size_t count = 1;
  bool gp = false, bails = false;
  std::size_t min_stmts = 4, max_stmts = 12;
};

Program load_program(const std::string& path) { return parse_program(read_file(path)); }

std::vector<Store> load_initials(const Opts& o) { return parse_initials(o.initials, o.seed); }

std::vector<std::string> pass_list(const Opts& o) {
  std::vector<std::string> out;
  for (auto& spec : o.passes)
    for (auto& n : split_passes(spec)) {
      pass_by_name(n);  // validates
      out.push_back(n);
    }
  return out;
}

void write_dot(const std::string& path, const std::string& dot) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << dot;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << dot;
}

std::vector<HotPath> mine(const Program& p, const Opts& o) {
  auto initials = load_initials(o);
  if (initials.empty()) throw UsageError("no initial stores");
  auto r = run(p, initials.front(), o.budget);
  return o.domain == "cp" ? hot_merged(r.trace, p, o.threshold, o.domain)
                          : hot(r.trace, p, o.threshold, o.domain);
}

// --hotpath is an index into the mined list or a file; empty picks the
// path a runtime monitor would see first.
HotPath choose_hot_path(const Program& p, const Opts& o) {
  if (!o.hotpath.empty() &&
      o.hotpath.find_first_not_of("0123456789") != std::string::npos)
    return parse_hot_path(read_file(o.hotpath), o.domain);
  auto hps = mine(p, o);
  if (hps.empty()) throw std::runtime_error("no hot path found");
  if (o.hotpath.empty()) return hps[*select_hot_path(hps)];
  std::size_t k = std::stoul(o.hotpath);
  if (k >= hps.size())
    throw UsageError("hot path index " + o.hotpath + " out of range (" +
                     std::to_string(hps.size()) + " found)");
  return hps[k];
}

int cmd_run(const Opts& o, bool jsonl) {
  auto p = load_program(o.program);
  for (auto& rho : load_initials(o)) {
    auto r = run(p, rho, o.budget);
    if (jsonl) {
      std::cout << trace_to_jsonl(r.trace, r.truncated);
      continue;
    }
    for (auto& s : r.trace) std::cout << to_string(s) << "\n";
    std::cout << (r.truncated ? "; truncated" : "; halted") << " after " << r.trace.size()
              << " states\n";
  }
  return 0;
}

int cmd_hot(const Opts& o) {
  auto p = load_program(o.program);
  std::vector<Trace> traces;
  for (auto& rho : load_initials(o)) traces.push_back(run(p, rho, o.budget).trace);
  std::vector<HotPath> hps;
  if (o.domain == "cp") {
    for (auto& t : traces)
      for (auto& h : hot_merged(t, p, o.threshold, o.domain)) hps.push_back(h);
  } else {
    hps = alpha_hot(traces, p, o.threshold, o.domain);
  }
  for (std::size_t k = 0; k < hps.size(); ++k) std::cout << k << ": " << to_string(hps[k]) << "\n";
  return 0;
}

int cmd_extract(const Opts& o) {
  auto p = load_program(o.program);
  auto hp = choose_hot_path(p, o);
  auto r = extract(p, hp);
  std::cout << to_string(r.transformed);
  write_dot(o.dot, program_to_dot(r.transformed, r.stitched));
  return 0;
}

int cmd_optimize(const Opts& o) {
  auto p = load_program(o.program);
  auto hp = choose_hot_path(p, o);
  std::vector<Pass> passes;
  for (auto& n : pass_list(o)) passes.push_back(pass_by_name(n));
  auto r = optimize_full(p, hp, passes);
  std::cout << to_string(r.program);
  write_dot(o.dot, program_to_dot(r.program, r.stitch));
  return 0;
}

int cmd_check(const Opts& o) {
  auto a = load_program(o.program);
  auto b = load_program(o.other);
  Observation obs = Observation::SC;
  if (o.obs == "out")
    obs = Observation::Out;
  else if (o.obs == "osch")
    obs = Observation::Osch;
  else if (o.obs != "sc")
    throw UsageError("unknown observation '" + o.obs + "'");
  std::set<std::string> X(o.vars.begin(), o.vars.end());
  auto rep = equiv_check(a, b, load_initials(o), o.budget, obs, X);
  std::cout << to_tap(rep, o.obs);
  return rep.pass() ? 0 : 1;
}

int cmd_pipeline(const Opts& o) {
  auto p = load_program(o.program);
  PipelineConfig cfg;
  cfg.domain = o.domain;
  cfg.threshold = o.threshold;
  cfg.budget = o.budget;
  cfg.initials = load_initials(o);
  cfg.passes = pass_list(o);
  cfg.rounds = o.rounds;
  cfg.seed = o.seed;
  auto rep = run_pipeline(p, cfg);
  if (o.json) {
    std::cout << report_json(rep) << "\n";
  } else {
    for (auto& h : rep.hotpaths) std::cout << "hot " << to_string(h) << "\n";
    for (std::size_t k = 0; k < rep.rounds.size(); ++k) {
      auto& r = rep.rounds[k];
      std::cout << "round " << k + 1 << ": " << to_string(r.hp) << "\n";
      for (auto& s : r.skipped) std::cout << "  skipped " << s << "\n";
    }
    std::cout << to_string(rep.after);
    std::cout << to_tap(rep.verdicts, rep.observation == Observation::Out ? "out" : "sc");
    if (rep.minimized)
      std::cout << "# minimized: rho=" << to_string(rep.minimized->initial)
                << " budget=" << rep.minimized_budget << " divergence="
                << rep.minimized->divergence.value_or(0) << "\n";
    if (!rep.error.empty()) std::cout << "# error: " << rep.error << "\n";
    std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
  }
  write_dot(o.dot, program_to_dot(rep.after));
  return rep.pass() ? 0 : 1;
}

Store first_store(const Opts& o) {
  auto s = load_initials(o);
  return s.empty() ? Store{} : s.front();
}

int cmd_gp_compile(const Opts& o) {
  auto s = parse_gp(read_file(o.program));
  auto p = gp_compile(s);
  std::cout << to_string(p);
  write_dot(o.dot, program_to_dot(p));
  return 0;
}

int cmd_gp_trace(const Opts& o) {
  auto s = parse_gp(read_file(o.program));
  auto rec = gp_record_hot_path(s, first_store(o), o.budget);
  std::cout << "rules:";
  for (auto& r : rec.rules) std::cout << " " << r;
  std::cout << "\nt = " << to_string(rec.t) << "\nstitched = " << to_string(rec.stitched)
            << "\nhot path:\n";
  for (auto& c : rec.hp) std::cout << "  " << c.text() << "\n";
  return 0;
}

int cmd_gp_check(const Opts& o) {
  auto s = parse_gp(read_file(o.program));
  auto c = gp_equivalence_check(s, load_initials(o), o.budget);
  std::cout << "t = " << to_string(c.rec.t) << "\n";
  std::cout << "# extraction vs compiled stitch: "
            << (c.renaming ? "equal up to renaming" : "NOT equal up to renaming") << "\n";
  std::cout << to_tap(c.runs, "sc");
  std::cout << (c.pass() ? "PASS" : "FAIL") << "\n";
  return c.pass() ? 0 : 1;
}

int cmd_gen(const Opts& o) {
  for (std::size_t k = 0; k < o.count; ++k) {
    std::uint64_t seed = o.seed + k;
    if (o.gp) {
      auto g = gen_gp(seed, 1, o.bails);
      std::cout << "// seed " << seed << "\n" << pretty(g.program);
    } else {
      GenBounds b{o.min_stmts, o.max_stmts};
      auto p = gen_program(seed, b);
      std::cout << "; seed " << seed << "\n";
      for (auto& rho : sample_stores(p, seed, 1)) std::cout << "; store " << store_to_json(rho) << "\n";
      std::cout << to_string(p);
    }
    if (k + 1 < o.count) std::cout << "\n";
  }
  return 0;
}

int cmd_render(const Opts& o) {
  auto p = load_program(o.program);
  std::string dot = program_to_dot(p);
  if (o.dot.empty())
    std::cout << dot;
  else
    write_dot(o.dot, dot);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tjit: trace extraction and hot path optimization for a small command language"};
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "maximum states per run")->capture_default_str();
    c->add_option("--seed", o.seed, "seed for random initial stores")->capture_default_str();
    c->add_option("--initials", o.initials, "store file (one JSON object per line) or spec")
        ->capture_default_str();
  };
  auto mining = [&](CLI::App* c) {
    c->add_option("--domain", o.domain, "onepoint, type or cp")->capture_default_str();
    c->add_option("--threshold", o.threshold, "hot path threshold N")->capture_default_str();
  };
  auto program = [&](CLI::App* c) {
    c->add_option("program", o.program, "program file")->required();
  };

  auto* run_c = app.add_subcommand("run", "print the run of a program");
  program(run_c);
  common(run_c);
  run_c->add_flag("--json", o.json, "JSON lines instead of text");

  auto* trace_c = app.add_subcommand("trace", "print the run as JSON lines");
  program(trace_c);
  common(trace_c);

  auto* hot_c = app.add_subcommand("hot", "list hot paths");
  program(hot_c);
  common(hot_c);
  mining(hot_c);

  auto* ext_c = app.add_subcommand("extract", "trace extraction of one hot path");
  program(ext_c);
  common(ext_c);
  mining(ext_c);
  ext_c->add_option("--hotpath", o.hotpath, "index into the mined list, or a hot path file");
  ext_c->add_option("--dot", o.dot, "write a DOT graph ('-' for stdout)");

  auto* opt_c = app.add_subcommand("optimize", "extraction followed by stitch passes");
  program(opt_c);
  common(opt_c);
  mining(opt_c);
  opt_c->add_option("--hotpath", o.hotpath, "index into the mined list, or a hot path file");
  opt_c->add_option("--pass", o.passes, "ts, cf, dse; chain with '|' or repeat")->required();
  opt_c->add_option("--dot", o.dot, "write a DOT graph ('-' for stdout)");

  auto* chk_c = app.add_subcommand("check", "compare two programs on sampled stores");
  chk_c->add_option("lhs", o.program, "first program")->required();
  chk_c->add_option("rhs", o.other, "second program")->required();
  common(chk_c);
  chk_c->add_option("--obs", o.obs, "sc, out or osch")->capture_default_str();
  chk_c->add_option("--vars", o.vars, "observed variables for out/osch");

  auto* pipe_c = app.add_subcommand("pipeline", "run, mine, extract, optimize and check");
  program(pipe_c);
  common(pipe_c);
  mining(pipe_c);
  pipe_c->add_option("--pass", o.passes, "ts, cf, dse");
  pipe_c->add_option("--rounds", o.rounds, "extraction rounds")->capture_default_str();
  pipe_c->add_flag("--json", o.json, "machine-readable report");
  pipe_c->add_option("--dot", o.dot, "write the final program as DOT");

  auto* gpc_c = app.add_subcommand("gp-compile", "compile a while-program");
  program(gpc_c);
  gpc_c->add_option("--dot", o.dot, "write a DOT graph ('-' for stdout)");

  auto* gpt_c = app.add_subcommand("gp-trace", "record the first loop of a while-program");
  program(gpt_c);
  common(gpt_c);

  auto* gpk_c = app.add_subcommand("gp-check", "recording versus extraction on a while-program");
  program(gpk_c);
  common(gpk_c);

  auto* gen_c = app.add_subcommand("gen", "generate random programs");
  gen_c->add_option("--seed", o.seed, "first seed")->capture_default_str();
  gen_c->add_option("--count", o.count, "number of programs")->capture_default_str();
  gen_c->add_option("--min-stmts", o.min_stmts)->capture_default_str();
  gen_c->add_option("--max-stmts", o.max_stmts)->capture_default_str();
  gen_c->add_flag("--gp", o.gp, "while-programs instead of command programs");
  gen_c->add_flag("--bails", o.bails, "allow bail in while-programs");

  auto* ren_c = app.add_subcommand("render", "flow graph as DOT");
  program(ren_c);
  ren_c->add_option("--dot", o.dot, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run_c->parsed()) return cmd_run(o, o.json);
    if (trace_c->parsed()) return cmd_run(o, true);
    if (hot_c->parsed()) return cmd_hot(o);
    if (ext_c->parsed()) return cmd_extract(o);
    if (opt_c->parsed()) return cmd_optimize(o);
    if (chk_c->parsed()) return cmd_check(o);
    if (pipe_c->parsed()) return cmd_pipeline(o);
    if (gpc_c->parsed()) return cmd_gp_compile(o);
    if (gpt_c->parsed()) return cmd_gp_trace(o);
    if (gpk_c->parsed()) return cmd_gp_check(o);
    if (gen_c->parsed()) return cmd_gen(o);
    if (ren_c->parsed()) return cmd_render(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tjit/syntax.hpp"
#include "tjit/value.hpp"

namespace tjit {

struct State {
  Store store;
  Command cmd;

  friend bool operator==(const State& a, const State& b) {
    return a.store == b.store && a.cmd == b.cmd;
  }
  friend bool operator!=(const State& a, const State& b) { return !(a == b); }
  friend bool operator<(const State& a, const State& b) {
    if (a.cmd != b.cmd) return a.cmd < b.cmd;
    return a.store < b.store;
  }
};

using Trace = std::vector<State>;

std::string to_string(const State& s);  // <[x/0], L1: (x <= 20) -> L2>

// Expression evaluation. Undef is the error value.
Value eval(const Expr& e, const Store& rho);
// nullopt stands for undef.
std::optional<bool> eval_bool(const BExpr& b, const Store& rho);
// nullopt stands for the stuck result.
std::optional<Store> apply_action(const Action& a, const Store& rho);

// Successor states: every command labelled suc(C), paired with the
// store the action produces. Empty when stuck or when suc(C) is undefined.
std::vector<State> step(const Program& p, const State& s);

// Commands at `label` whose action is defined on rho.
std::vector<Command> enabled(const Program& p, const std::string& label, const Store& rho);

struct Run {
  Trace trace;
  bool truncated = false;  // budget reached while the run could go on
};

// The maximal run from the entry command enabled on rho0, recording at
// most `budget` states. A conditional that sticks on undef is kept as a
// final state when it is the only candidate. Throws on nondeterminism.
Run run(const Program& p, const Store& rho0, std::size_t budget);
// Same, starting from an arbitrary state.
Run run_from(const Program& p, const State& s0, std::size_t budget);

// Checks the trace linkage: every command is in p and each state is a
// successor of its predecessor. Returns the first bad index, if any.
std::optional<std::size_t> check_trace(const Program& p, const Trace& t);

// All suffixes of t, longest first.
std::vector<Trace> suffixes(const Trace& t);

// Collecting versions.
std::set<Value> collecting_eval(const Expr& e, const std::set<Store>& S);
std::set<Store> collecting_filter(const BExpr& b, const std::set<Store>& S);
std::set<Store> collecting_action(const Action& a, const std::set<Store>& S);

}  // namespace tjit

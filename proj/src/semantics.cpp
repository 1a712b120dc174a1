#include "tjit/semantics.hpp"

#include <stdexcept>

#include "tjit/domains.hpp"

namespace tjit {

std::string to_string(const State& s) {
  return "<" + to_string(s.store) + ", " + s.cmd.text() + ">";
}

namespace {

bool is_prefix(const std::string& a, const std::string& b) {
  return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}

Value plus(const Value& a, const Value& b) {
  if (a.kind() == Value::Kind::Int && b.kind() == Value::Kind::Int)
    return Value::integer(wrap_add(a.as_int(), b.as_int()));
  if (a.kind() == Value::Kind::Str && b.kind() == Value::Kind::Str)
    return Value::str(a.as_str() + b.as_str());
  return Value();
}

}  // namespace

Value eval(const Expr& e, const Store& rho) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e.lit;
    case Expr::Kind::Var:
      return rho.get(e.name);
    case Expr::Kind::Index: {
      Value i = eval(*e.a, rho);
      if (i.kind() != Value::Kind::Int) return Value();
      return rho.get(element_var(e.name, i.as_int()));
    }
    case Expr::Kind::Add:
      return plus(eval(*e.a, rho), eval(*e.b, rho));
    case Expr::Kind::AddTyped: {
      Value a = eval(*e.a, rho), b = eval(*e.b, rho);
      auto want = e.tag == AddTag::Int ? Value::Kind::Int : Value::Kind::Str;
      if (a.kind() != want || b.kind() != want) return Value();
      return plus(a, b);
    }
    case Expr::Kind::Mod: {
      Value a = eval(*e.a, rho), b = eval(*e.b, rho);
      if (a.kind() != Value::Kind::Int || b.kind() != Value::Kind::Int || b.as_int() == 0)
        return Value();
      if (b.as_int() == -1) return Value::integer(0);
      return Value::integer(a.as_int() % b.as_int());
    }
  }
  return Value();
}

std::optional<bool> eval_bool(const BExpr& b, const Store& rho) {
  switch (b.kind) {
    case BExpr::Kind::True:
      return true;
    case BExpr::Kind::False:
      return false;
    case BExpr::Kind::Not: {
      auto v = eval_bool(*b.a, rho);
      if (!v) return std::nullopt;
      return !*v;
    }
    case BExpr::Kind::And: {
      auto x = eval_bool(*b.a, rho), y = eval_bool(*b.b, rho);
      if (!x || !y) return std::nullopt;
      return *x && *y;
    }
    default:
      break;
  }
  Value l = eval(*b.l, rho), r = eval(*b.r, rho);
  if (l.is_undef() || r.is_undef() || l.kind() != r.kind()) return std::nullopt;
  if (b.kind == BExpr::Kind::Eq) return l == r;
  if (l.kind() == Value::Kind::Int) {
    return b.kind == BExpr::Kind::Leq ? l.as_int() <= r.as_int() : l.as_int() < r.as_int();
  }
  if (l.kind() == Value::Kind::Str) {
    bool pre = is_prefix(l.as_str(), r.as_str());
    return b.kind == BExpr::Kind::Leq ? pre : pre && l.as_str() != r.as_str();
  }
  return std::nullopt;
}

std::optional<Store> apply_action(const Action& a, const Store& rho) {
  switch (a.kind) {
    case Action::Kind::Skip:
    case Action::Kind::Put:
      return rho;
    case Action::Kind::Assign: {
      Value v = eval(*a.rhs, rho);
      if (v.is_undef()) return std::nullopt;
      std::string x = a.target;
      if (a.subscript) {
        Value i = eval(*a.subscript, rho);
        if (i.kind() != Value::Kind::Int) return std::nullopt;
        x = element_var(a.target, i.as_int());
        if (!rho.bound(x)) return std::nullopt;
      }
      Store out = rho;
      out.set(x, v);
      return out;
    }
    case Action::Kind::Cond: {
      auto v = eval_bool(*a.cond, rho);
      if (v && *v) return rho;
      return std::nullopt;
    }
    case Action::Kind::Guard: {
      bool in = domain(a.domain).contains(a.abs, rho);
      if (in == a.positive) return rho;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<State> step(const Program& p, const State& s) {
  std::vector<State> out;
  if (s.cmd.succ == kNoLabel) return out;
  auto rho = apply_action(s.cmd.act, s.store);
  if (!rho) return out;
  for (auto& c : p.at(s.cmd.succ)) out.push_back(State{*rho, c});
  return out;
}

std::vector<Command> enabled(const Program& p, const std::string& label, const Store& rho) {
  std::vector<Command> out;
  for (auto& c : p.at(label))
    if (apply_action(c.act, rho)) out.push_back(c);
  return out;
}

namespace {

// The unique next state of a deterministic run among candidates, or
// nothing. A lone stuck candidate is still a legal trace extension.
std::optional<State> choose(const std::vector<State>& cands) {
  std::optional<State> pick;
  for (auto& s : cands) {
    if (!apply_action(s.cmd.act, s.store)) continue;
    if (pick) throw std::runtime_error("nondeterministic program at " + s.cmd.label);
    pick = s;
  }
  if (!pick && cands.size() == 1) pick = cands[0];
  return pick;
}

}  // namespace

Run run_from(const Program& p, const State& s0, std::size_t budget) {
  Run r;
  if (budget == 0) {
    r.truncated = true;
    return r;
  }
  r.trace.push_back(s0);
  for (;;) {
    const State& cur = r.trace.back();
    // A stuck state has no successor at all.
    if (!apply_action(cur.cmd.act, cur.store)) return r;
    auto next = choose(step(p, cur));
    if (!next) return r;
    if (r.trace.size() >= budget) {
      r.truncated = true;
      return r;
    }
    r.trace.push_back(std::move(*next));
  }
}

Run run(const Program& p, const Store& rho0, std::size_t budget) {
  std::vector<State> cands;
  for (auto& c : p.at(p.entry())) cands.push_back(State{rho0, c});
  if (cands.empty()) throw std::invalid_argument("entry label " + p.entry() + " has no command");
  auto first = choose(cands);
  if (!first) return Run{};
  return run_from(p, *first, budget);
}

std::optional<std::size_t> check_trace(const Program& p, const Trace& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!p.contains(t[i].cmd)) return i;
    if (i == 0) continue;
    bool ok = false;
    for (auto& s : step(p, t[i - 1]))
      if (s == t[i]) ok = true;
    if (!ok) return i;
  }
  return std::nullopt;
}

std::vector<Trace> suffixes(const Trace& t) {
  std::vector<Trace> out;
  for (std::size_t k = 0; k < t.size(); ++k) out.emplace_back(t.begin() + k, t.end());
  return out;
}

std::set<Value> collecting_eval(const Expr& e, const std::set<Store>& S) {
  std::set<Value> out;
  for (auto& rho : S) out.insert(eval(e, rho));
  return out;
}

std::set<Store> collecting_filter(const BExpr& b, const std::set<Store>& S) {
  std::set<Store> out;
  for (auto& rho : S) {
    auto v = eval_bool(b, rho);
    if (v && *v) out.insert(rho);
  }
  return out;
}

std::set<Store> collecting_action(const Action& a, const std::set<Store>& S) {
  std::set<Store> out;
  for (auto& rho : S)
    if (auto r = apply_action(a, rho)) out.insert(*r);
  return out;
}

}  // namespace tjit

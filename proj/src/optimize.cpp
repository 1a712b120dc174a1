#include "tjit/optimize.hpp"

#include <sstream>

#include "tjit/domains.hpp"

namespace tjit {

namespace {

// Hot path position of a relabelled l_i label.
std::map<std::string, std::size_t> act_positions(const StitchResult& r) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < r.pos.size(); ++i) {
    auto it = r.label_map.find("l" + std::to_string(i));
    if (it != r.label_map.end()) out[it->second] = i;
  }
  return out;
}

ExprP specialize(const ExprP& e, const AbstractStore& guard) {
  switch (e->kind) {
    case Expr::Kind::Index:
      return index(e->name, specialize(e->a, guard));
    case Expr::Kind::Add: {
      TypeName t = eval_type(*e, guard);
      auto a = specialize(e->a, guard), b = specialize(e->b, guard);
      if (t == TypeName::Int) return add_typed(a, b, AddTag::Int);
      if (t == TypeName::Str) return add_typed(a, b, AddTag::Str);
      return add(a, b);
    }
    case Expr::Kind::AddTyped:
      return add_typed(specialize(e->a, guard), specialize(e->b, guard), e->tag);
    case Expr::Kind::Mod:
      return mod(specialize(e->a, guard), specialize(e->b, guard));
    default:
      return e;
  }
}

ExprP substitute(const ExprP& e, const std::map<std::string, Value>& env) {
  switch (e->kind) {
    case Expr::Kind::Var: {
      auto it = env.find(e->name);
      return it == env.end() ? e : lit(it->second);
    }
    case Expr::Kind::Index:
      return index(e->name, substitute(e->a, env));
    case Expr::Kind::Add:
      return add(substitute(e->a, env), substitute(e->b, env));
    case Expr::Kind::AddTyped:
      return add_typed(substitute(e->a, env), substitute(e->b, env), e->tag);
    case Expr::Kind::Mod:
      return mod(substitute(e->a, env), substitute(e->b, env));
    default:
      return e;
  }
}

Action with_rhs(const Action& a, ExprP rhs) {
  return a.subscript ? assign_index_action(a.target, a.subscript, std::move(rhs))
                     : assign_action(a.target, std::move(rhs));
}

void require_domain(const StitchResult& st, const std::string& tag, const char* pass) {
  if (st.hp.domain != tag)
    throw OptimizeError(std::string(pass) + " needs " + tag + " guards, got " + st.hp.domain);
}

std::set<std::string> reads_of(const Action& a) {
  std::set<std::string> out;
  switch (a.kind) {
    case Action::Kind::Assign:
      if (a.subscript) collect_vars(*a.subscript, out);
      collect_vars(*a.rhs, out);
      break;
    case Action::Kind::Cond:
      collect_vars(*a.cond, out);
      break;
    case Action::Kind::Put:
      out = a.put_vars;
      break;
    default:
      break;
  }
  return out;
}

bool mentions(const std::set<std::string>& vs, const std::string& z) {
  if (vs.count(z)) return true;
  auto fam = family_of(z);
  return fam && vs.count(*fam);
}

// The assignment cannot stick on any store that passed its guard.
bool never_sticks(const Action& a, const StitchResult& st, std::size_t i) {
  if (a.subscript) return false;
  std::set<std::string> vs;
  collect_vars(*a.rhs, vs);
  if (vs.empty()) return !eval(*a.rhs, Store{}).is_undef();
  if (st.hp.domain != "type") return false;
  TypeName t = eval_type(*a.rhs, st.hp.guard(i));
  return t == TypeName::Int || t == TypeName::Str || t == TypeName::Bool;
}

// Is z overwritten along the stitch, starting at label `from`, before
// anything could observe it?
bool dead_after(const StitchResult& st, const std::set<Command>& cmds, const std::string& z,
                std::string from) {
  const std::string L0 = st.hp.cmd(0).label;
  bool onepoint = st.hp.domain == "onepoint";
  std::set<std::string> visited;
  for (;;) {
    if (from == L0 || from == kNoLabel || !visited.insert(from).second) return false;
    std::vector<Command> here;
    for (auto& c : cmds)
      if (c.label == from) here.push_back(c);
    if (here.empty()) return false;  // leaves the stitch
    if (here.size() == 1) {
      const Action& a = here[0].act;
      if (a.is_conditional()) return false;
      // out observes the whole store at every put, not just the named vars
      if (a.kind == Action::Kind::Put) return false;
      if (mentions(reads_of(a), z)) return false;
      if (a.kind == Action::Kind::Assign && !a.subscript && a.target == z) return true;
      from = here[0].succ;
      continue;
    }
    if (here.size() != 2) return false;
    const Command* stay = nullptr;
    for (auto& c : here) {
      if (c.act.kind == Action::Kind::Cond) {
        if (mentions(reads_of(c.act), z)) return false;
        // the exit of a conditional pair is always possible
        return false;
      }
      if (c.act.kind != Action::Kind::Guard) return false;
      if (c.act.positive)
        stay = &c;
      else if (!onepoint)
        return false;
    }
    if (!stay) return false;
    from = stay->succ;
  }
}

std::set<std::string> exits(const std::set<Command>& cs, const std::set<std::string>& inside) {
  std::set<std::string> out;
  for (auto& c : cs)
    if (!inside.count(c.succ)) out.insert(c.succ);
  return out;
}

}  // namespace

std::set<Command> type_specialize(const StitchResult& st, const std::set<Command>& cmds) {
  require_domain(st, "type", "ts");
  auto pos = act_positions(st);
  std::set<Command> out;
  for (auto& c : cmds) {
    auto it = pos.find(c.label);
    if (it == pos.end() || c.act.kind != Action::Kind::Assign) {
      out.insert(c);
      continue;
    }
    out.insert(make_command(c.label, with_rhs(c.act, specialize(c.act.rhs, st.hp.guard(it->second))),
                            c.succ));
  }
  return out;
}

std::set<Command> type_specialize(const StitchResult& st) { return type_specialize(st, st.stitched); }

CommandMap type_specialize_map(const StitchResult& st) {
  CommandMap m;
  for (auto& c : st.stitched) {
    auto s = type_specialize(st, {c});
    if (*s.begin() != c) m[c] = *s.begin();
  }
  return m;
}

std::set<std::string> free_vars(const std::set<Command>& cs) {
  std::set<std::string> vs, assigned;
  for (auto& c : cs) {
    auto v = vars_of(c.act);
    vs.insert(v.begin(), v.end());
    if (c.act.kind == Action::Kind::Assign) assigned.insert(c.act.target);
  }
  for (auto& x : assigned) vs.erase(x);
  return vs;
}

std::set<Command> const_fold(const StitchResult& st, const std::set<Command>& cmds) {
  require_domain(st, "cp", "cf");
  auto fv = free_vars(cmds);
  auto pos = act_positions(st);
  std::set<Command> out;
  for (auto& c : cmds) {
    auto it = pos.find(c.label);
    if (it == pos.end() || c.act.kind != Action::Kind::Assign) {
      out.insert(c);
      continue;
    }
    std::set<std::string> used;
    collect_vars(*c.act.rhs, used);
    std::map<std::string, Value> env;
    for (auto& y : used) {
      if (!fv.count(y)) continue;
      CPVal v = cp_lookup(st.hp.guard(it->second), y);
      if (v.kind == CPVal::Kind::Const && !v.c.is_undef()) env[y] = v.c;
    }
    out.insert(env.empty() ? c : make_command(c.label, with_rhs(c.act, substitute(c.act.rhs, env)), c.succ));
  }
  return out;
}

std::set<Command> const_fold(const StitchResult& st) { return const_fold(st, st.stitched); }

std::set<Command> dead_store_eliminate(const StitchResult& st, const std::set<Command>& cmds) {
  auto pos = act_positions(st);
  std::set<Command> cur = cmds;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& c : cur) {
      auto it = pos.find(c.label);
      if (it == pos.end() || c.act.kind != Action::Kind::Assign || c.act.subscript) continue;
      if (!never_sticks(c.act, st, it->second)) continue;
      if (!dead_after(st, cur, c.act.target, c.succ)) continue;
      Command dead = c;
      std::set<Command> next;
      for (auto& d : cur) {
        if (d == dead) continue;
        next.insert(d.succ == dead.label ? make_command(d.label, d.act, dead.succ) : d);
      }
      cur = std::move(next);
      changed = true;
      break;
    }
  }
  return cur;
}

std::set<Command> dead_store_eliminate(const StitchResult& st) {
  return dead_store_eliminate(st, st.stitched);
}

Pass pass_by_name(const std::string& name) {
  if (name == "ts") return [](const StitchResult& r, const std::set<Command>& c) { return type_specialize(r, c); };
  if (name == "cf") return [](const StitchResult& r, const std::set<Command>& c) { return const_fold(r, c); };
  if (name == "dse")
    return [](const StitchResult& r, const std::set<Command>& c) { return dead_store_eliminate(r, c); };
  throw std::invalid_argument("unknown pass '" + name + "' (expected ts, cf or dse)");
}

std::vector<std::string> split_passes(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : spec + "|") {
    if (ch == '|' || ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  return out;
}

Optimized optimize_stitch(const StitchResult& r, const std::vector<Pass>& passes) {
  std::set<Command> cmds = r.stitched;
  for (auto& p : passes) cmds = p(r, cmds);

  std::set<std::string> inside;
  for (auto& c : r.stitched) inside.insert(c.label);
  for (auto& c : cmds)
    if (!inside.count(c.label)) throw OptimizeError("pass introduced label " + c.label);
  if (r.entry_guard) {
    bool entry = false;
    for (auto& c : cmds) entry = entry || c.label == r.entry_guard->label;
    if (!entry) throw OptimizeError("pass removed the stitch entry " + r.entry_guard->label);
  }
  if (exits(cmds, inside) != exits(r.stitched, inside))
    throw OptimizeError("pass changed the stitch exits");

  Optimized o{r, cmds, replace_stitch(r, cmds)};
  auto diags = well_formed(o.program, well_formed(r.transformed, true).empty());
  if (!diags.empty()) throw OptimizeError("optimized program is ill-formed: " + diags.front());
  return o;
}

Optimized optimize_full(const Program& p, const HotPath& hp, const std::vector<Pass>& passes) {
  return optimize_stitch(extract(p, hp), passes);
}

}  // namespace tjit

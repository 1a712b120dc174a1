#include "tjit/witness.hpp"

#include "tjit/domains.hpp"

namespace tjit {

namespace {

// Position i of a fresh label l_i, if lbl is one.
std::optional<std::size_t> act_position(const StitchResult& r, const std::string& lbl) {
  for (std::size_t i = 0; i < r.pos.size(); ++i) {
    auto it = r.label_map.find("l" + std::to_string(i));
    if (it != r.label_map.end() && it->second == lbl) return i;
  }
  return std::nullopt;
}

}  // namespace

Trace tr_out(const StitchResult& r, const Trace& t) {
  for (auto& p : r.pos)
    if (!p.in_original) throw WitnessError("tr_out needs a plain extraction");
  const HotPath& hp = r.hp;
  const std::size_t n = hp.n();
  const Domain& d = domain(hp.domain);
  const Command& C0 = hp.cmd(0);
  auto C0c = cmpl(C0, r.original);
  auto ok = [&](std::size_t i, const Store& rho) { return d.contains(hp.guard(i), rho); };
  auto get = [](const std::optional<Command>& c, const char* what) -> const Command& {
    if (!c) throw WitnessError(std::string("stitch has no ") + what);
    return *c;
  };

  Trace out;
  out.reserve(t.size() * 2);
  std::size_t in = 0;  // next expected hot path position, 0 outside
  for (auto& s : t) {
    const Store& rho = s.store;
    if (!in) {
      if (s.cmd == C0) {
        if (ok(0, rho)) {
          out.push_back({rho, get(r.entry_guard, "entry guard")});
          out.push_back({rho, get(r.pos[0].act, "head copy")});
          in = n > 0 ? 1 : 0;
        } else {
          out.push_back({rho, get(r.entry_guard_fail, "entry guard")});
          out.push_back({rho, get(r.bar_act, "bar copy")});
        }
      } else if (C0c && s.cmd == *C0c) {
        if (ok(0, rho)) {
          out.push_back({rho, get(r.entry_guard, "entry guard")});
          out.push_back({rho, get(r.pos[0].neg_act, "head complement copy")});
        } else {
          out.push_back({rho, get(r.entry_guard_fail, "entry guard")});
          out.push_back({rho, get(r.bar_neg, "bar complement copy")});
        }
      } else {
        out.push_back(s);
      }
      continue;
    }

    std::size_t i = in;
    const Command& Ci = hp.cmd(i);
    auto cc = cmpl(Ci, r.original);
    const auto& P = r.pos[i];
    if (s.cmd == Ci) {
      if (ok(i, rho)) {
        out.push_back({rho, get(P.guard, "guard")});
        out.push_back({rho, get(P.act, "copy")});
        in = i == n ? 0 : i + 1;
      } else {
        out.push_back({rho, get(P.guard_fail, "guard")});
        out.push_back(s);
        in = 0;
      }
    } else if (cc && s.cmd == *cc) {
      out.push_back({rho, ok(i, rho) ? get(P.guard, "guard") : get(P.guard_fail, "guard")});
      out.push_back(ok(i, rho) ? State{rho, get(P.neg_act, "complement copy")} : s);
      in = 0;
    } else {
      throw WitnessError("trace leaves the hot path at position " + std::to_string(i) +
                         " through " + s.cmd.text());
    }
  }
  return out;
}

Trace rtr(const StitchResult& r, const Trace& t) {
  using K = StitchRole::Kind;
  const HotPath& hp = r.hp;
  Trace out;
  out.reserve(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const State& s = t[k];
    auto it = r.roles.find(s.cmd);
    if (it == r.roles.end()) {
      out.push_back(s);
      continue;
    }
    const auto& role = it->second;
    const Command& Ci = hp.cmd(role.i);
    switch (role.kind) {
      case K::EntryGuard:
      case K::EntryGuardFail:
      case K::Guard:
      case K::GuardFail:
        if (k + 1 == t.size()) out.push_back({s.store, Ci});
        break;
      case K::Act:
      case K::Bar:
      case K::Rewired:
        out.push_back({s.store, Ci});
        break;
      case K::NegAct:
      case K::BarNeg: {
        auto cc = cmpl(Ci, r.original);
        if (!cc) throw WitnessError("no complement for " + Ci.text());
        out.push_back({s.store, *cc});
        break;
      }
    }
  }
  return out;
}

Trace td(const CommandMap& generic_of, const Trace& t) {
  Trace out;
  out.reserve(t.size());
  for (auto& s : t) {
    auto it = generic_of.find(s.cmd);
    if (it == generic_of.end()) {
      out.push_back(s);
      continue;
    }
    out.push_back({s.store, it->second});
    bool stuck = !apply_action(s.cmd.act, s.store);
    if (stuck && apply_action(it->second.act, s.store)) break;
  }
  return out;
}

Trace sp(const StitchResult& r, const CommandMap& specialized_of, const Trace& t) {
  const Domain& d = domain(r.hp.domain);
  Trace out;
  out.reserve(t.size());
  for (auto& s : t) {
    auto it = specialized_of.find(s.cmd);
    if (it == specialized_of.end()) {
      out.push_back(s);
      continue;
    }
    out.push_back({s.store, it->second});
    auto i = act_position(r, s.cmd.label);
    if (i && !d.contains(r.hp.guard(*i), s.store)) break;
  }
  return out;
}

Trace lift_full(const std::set<Command>& fragment, const std::function<Trace(const Trace&)>& f,
                const Trace& t) {
  Trace out;
  out.reserve(t.size());
  std::size_t k = 0;
  while (k < t.size()) {
    if (!fragment.count(t[k].cmd)) {
      out.push_back(t[k++]);
      continue;
    }
    std::size_t e = k;
    while (e < t.size() && fragment.count(t[e].cmd)) ++e;
    Trace piece(t.begin() + k, t.begin() + e);
    for (auto& s : f(piece)) out.push_back(s);
    k = e;
  }
  return out;
}

}  // namespace tjit

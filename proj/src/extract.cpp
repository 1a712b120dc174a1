#include "tjit/extract.hpp"

#include "tjit/domains.hpp"

namespace tjit {

namespace {

bool uses_prefix(const Program& p, const std::string& prefix) {
  for (auto& c : p.commands()) {
    if (c.label.rfind(prefix, 0) == 0) return true;
    if (c.succ.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

// Smallest scope k whose label prefixes are unused in p.
std::string scope_suffix(const Program& p, const std::vector<std::string>& stems) {
  for (int k = 0;; ++k) {
    std::string s = k == 0 ? "" : std::to_string(k);
    bool clash = false;
    for (auto& stem : stems) clash = clash || uses_prefix(p, stem + s + "#");
    if (!clash) return s;
  }
}

}  // namespace

StitchResult extract_nested(const Program& current, const HotPath& hp, const Program& original) {
  if (hp.path.empty()) throw ExtractError("empty hot path");
  if (!has_domain(hp.domain)) throw ExtractError("unknown domain '" + hp.domain + "'");
  const std::size_t n = hp.n();
  for (std::size_t i = 0; i <= n; ++i)
    if (!current.contains(hp.cmd(i)))
      throw ExtractError("hot path command not in program: " + hp.cmd(i).text());

  std::vector<bool> inP(n + 1);
  bool any = false;
  for (std::size_t i = 0; i <= n; ++i) any = (inP[i] = original.contains(hp.cmd(i))) || any;
  if (!any) throw ExtractError("hot path lies entirely inside stitched code");
  if (hp.cmd(n).succ != hp.cmd(0).label)
    throw ExtractError("hot path does not return to its head");

  std::string s = scope_suffix(current, {"h", "g", "bar"});
  auto ell = [&](std::size_t i) { return "h" + s + "#" + std::to_string(i); };
  auto gl = [&](std::size_t i) { return "g" + s + "#" + std::to_string(i); };
  const Command& C0 = hp.cmd(0);
  const std::string L0 = C0.label;
  const std::string bar = "bar" + s + "#" + L0;

  StitchResult r;
  r.source = current;
  r.original = original;
  r.hp = hp;
  r.pos.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) r.pos[i].in_original = inP[i];

  std::vector<std::optional<Command>> cP(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    if (inP[i]) cP[i] = cmpl(hp.cmd(i), original);

  Program out = current;
  const std::set<std::string> old_labels = current.labels();
  auto guard = [&](std::size_t i, bool pos) { return guard_action(hp.domain, hp.guard(i), pos); };
  auto add = [&](const Command& c, StitchRole role, bool stitched = true) {
    out.add(c);
    r.roles[c] = role;
    if (stitched) r.stitched.insert(c);
    if (!old_labels.count(c.label)) r.fresh_labels.insert(c.label);
  };
  using K = StitchRole::Kind;

  if (inP[0]) {
    // (1) head and its complement leave the program
    if (!out.remove(C0)) throw ExtractError("head already extracted: " + C0.text());
    if (cP[0]) out.remove(*cP[0]);
    // (2) the unguarded copies under bar(L0)
    r.bar_act = make_command(bar, C0.act, C0.succ);
    add(*r.bar_act, {K::Bar, 0}, false);
    if (cP[0]) {
      r.bar_neg = make_command(bar, cP[0]->act, cP[0]->succ);
      add(*r.bar_neg, {K::BarNeg, 0}, false);
    }
    // (3) entry guard pair
    r.entry_guard = make_command(L0, guard(0, true), ell(0));
    r.entry_guard_fail = make_command(L0, guard(0, false), bar);
    add(*r.entry_guard, {K::EntryGuard, 0});
    add(*r.entry_guard_fail, {K::EntryGuardFail, 0});
  }

  for (std::size_t i = 0; i <= n; ++i) {
    const Command& Ci = hp.cmd(i);
    auto& P = r.pos[i];
    if (inP[i]) {
      // (4) and (7): the relabelled action
      std::string succ;
      if (i == n)
        succ = L0;
      else if (inP[i + 1])
        succ = gl(i + 1);
      else
        succ = hp.cmd(i + 1).label;
      P.act = make_command(ell(i), Ci.act, succ);
      add(*P.act, {K::Act, i});
      // (5) complement exit
      if (cP[i]) {
        P.neg_act = make_command(ell(i), cP[i]->act, cP[i]->succ);
        add(*P.neg_act, {K::NegAct, i});
      }
      // (6) interior guards
      if (i >= 1) {
        P.guard = make_command(gl(i), guard(i, true), ell(i));
        P.guard_fail = make_command(gl(i), guard(i, false), Ci.label);
        add(*P.guard, {K::Guard, i});
        add(*P.guard_fail, {K::GuardFail, i});
      }
    } else if (i < n && inP[i + 1]) {
      // (8) and (9): an inner path's exit now returns into this path
      if (!out.remove(Ci))
        throw ExtractError("inner exit used twice by the hot path: " + Ci.text());
      P.rewired = make_command(Ci.label, Ci.act, gl(i + 1));
      add(*P.rewired, {K::Rewired, i});
    }
  }

  for (std::size_t i = 0; i <= n; ++i) {
    r.label_map["l" + std::to_string(i)] = ell(i);
    if (i >= 1) r.label_map["g" + std::to_string(i)] = gl(i);
  }
  r.label_map["bar"] = bar;

  bool det = well_formed(current, true).empty();
  auto diags = well_formed(out, det);
  if (!diags.empty()) throw ExtractError("extraction breaks well-formedness: " + diags.front());
  r.transformed = std::move(out);
  return r;
}

StitchResult extract(const Program& p, const HotPath& hp) { return extract_nested(p, hp, p); }

Program replace_stitch(const StitchResult& r, const std::set<Command>& replacement) {
  Program out = r.transformed;
  for (auto& c : r.stitched) out.remove(c);
  for (auto& c : replacement) out.add(c);
  return out;
}

Program extract_gp(const Program& p, const std::vector<Command>& hp) {
  if (hp.empty()) throw ExtractError("empty hot path");
  const std::size_t n = hp.size() - 1;
  for (auto& c : hp)
    if (!p.contains(c)) throw ExtractError("hot path command not in program: " + c.text());
  if (hp[n].succ != hp[0].label) throw ExtractError("hot path is not cyclic");

  bool interior = false;
  for (std::size_t i = 2; i <= n; ++i) interior = interior || cmpl(hp[i], p).has_value();
  if (!interior) return p;

  std::string s = scope_suffix(p, {"t"});
  auto ell = [&](std::size_t i) { return "t" + s + "#" + std::to_string(i); };
  Program out = p;
  for (std::size_t i = 0; i <= n; ++i) {
    out.add(make_command(ell(i), hp[i].act, ell(i == n ? 0 : i + 1)));
    if (auto cc = cmpl(hp[i], p)) out.add(make_command(ell(i), cc->act, cc->succ));
  }
  if (p.entry() == hp[0].label) out.set_entry(ell(0));
  return out;
}

}  // namespace tjit

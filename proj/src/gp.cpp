#include "tjit/gp.hpp"

#include <set>

#include "lexer.hpp"
#include "tjit/extract.hpp"
#include "tjit/hotpath.hpp"

namespace tjit {

namespace {

GpCmdP make(GpCmd::Kind k, std::string x, ExprP e, BExprP b, Stm body) {
  return std::make_shared<const GpCmd>(GpCmd{k, std::move(x), std::move(e), std::move(b), std::move(body)});
}

std::string cmd_string(const GpCmd& c) {
  switch (c.kind) {
    case GpCmd::Kind::Skip:
      return "skip;";
    case GpCmd::Kind::Assign:
      return c.x + " := " + to_string(*c.e) + ";";
    case GpCmd::Kind::If:
      return "if " + to_string(*c.b) + " then { " + to_string(c.body) + " }";
    case GpCmd::Kind::While:
      return "while " + to_string(*c.b) + " do { " + to_string(c.body) + " }";
    case GpCmd::Kind::Bail:
      return "bail " + to_string(*c.b) + " to { " + to_string(c.body) + " }";
  }
  return "?";
}

void pretty_into(const Stm& s, int depth, std::string& out) {
  std::string pad(2 * depth, ' ');
  for (auto& c : s) {
    switch (c->kind) {
      case GpCmd::Kind::Skip:
      case GpCmd::Kind::Assign:
        out += pad + cmd_string(*c) + "\n";
        break;
      default: {
        const char* kw = c->kind == GpCmd::Kind::If ? "if " : c->kind == GpCmd::Kind::While ? "while " : "bail ";
        const char* mid = c->kind == GpCmd::Kind::If ? " then {\n" : c->kind == GpCmd::Kind::While ? " do {\n" : " to {\n";
        out += pad + kw + to_string(*c->b) + mid;
        pretty_into(c->body, depth + 1, out);
        out += pad + "}\n";
      }
    }
  }
}

Stm tail(const Stm& s) { return Stm(s.begin() + 1, s.end()); }

// (if B then (S while B do S)) K
Stm unfold(const GpCmd& w, const Stm& k) {
  Stm body = w.body;
  body.push_back(make(GpCmd::Kind::While, "", nullptr, w.b, w.body));
  Stm out{gp_if(w.b, body)};
  out.insert(out.end(), k.begin(), k.end());
  return out;
}

// Is c the unfolding of a while loop? Returns that loop.
std::optional<GpCmdP> unfolded_loop(const GpCmd& c) {
  if (c.kind != GpCmd::Kind::If || c.body.empty()) return std::nullopt;
  const auto& w = c.body.back();
  if (w->kind != GpCmd::Kind::While || to_string(*w->b) != to_string(*c.b)) return std::nullopt;
  if (!same(w->body, Stm(c.body.begin(), c.body.end() - 1))) return std::nullopt;
  return w;
}

Stm parse_stm(detail::TokenStream& ts, bool nested) {
  Stm out;
  for (;;) {
    if (nested ? ts.is("}") : ts.at_end()) return out;
    if (ts.at_end()) ts.fail("missing '}'");
    auto block = [&]() {
      ts.expect("{");
      Stm body = parse_stm(ts, true);
      ts.expect("}");
      ts.accept(";");
      return body;
    };
    if (ts.accept("skip")) {
      ts.expect(";");
      out.push_back(gp_skip());
    } else if (ts.accept("if")) {
      auto b = detail::bexpr(ts);
      ts.expect("then");
      out.push_back(gp_if(b, block()));
    } else if (ts.accept("while")) {
      auto b = detail::bexpr(ts);
      ts.expect("do");
      out.push_back(gp_while(b, block()));
    } else if (ts.accept("bail")) {
      auto b = detail::bexpr(ts);
      ts.expect("to");
      out.push_back(gp_bail(b, block()));
    } else {
      auto x = ts.ident();
      ts.expect(":=");
      auto e = detail::expr(ts);
      ts.expect(";");
      out.push_back(gp_assign(x, e));
    }
  }
}

}  // namespace

GpCmdP gp_skip() { return make(GpCmd::Kind::Skip, "", nullptr, nullptr, {}); }
GpCmdP gp_assign(std::string x, ExprP e) { return make(GpCmd::Kind::Assign, std::move(x), std::move(e), nullptr, {}); }
GpCmdP gp_if(BExprP b, Stm body) { return make(GpCmd::Kind::If, "", nullptr, std::move(b), std::move(body)); }
GpCmdP gp_while(BExprP b, Stm body) { return make(GpCmd::Kind::While, "", nullptr, std::move(b), std::move(body)); }
GpCmdP gp_bail(BExprP b, Stm body) { return make(GpCmd::Kind::Bail, "", nullptr, std::move(b), std::move(body)); }

Stm concat(const Stm& a, const Stm& b) {
  Stm out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const Stm& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += cmd_string(*s[i]);
  }
  return out;
}

std::string pretty(const Stm& s) {
  std::string out;
  pretty_into(s, 0, out);
  return out;
}

bool same(const Stm& a, const Stm& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i] && cmd_string(*a[i]) != cmd_string(*b[i])) return false;
  return true;
}

Stm parse_gp(const std::string& text) {
  detail::TokenStream ts(detail::tokenize(text));
  return parse_stm(ts, false);
}

std::optional<GpState> gp_step(const GpState& s) {
  if (s.stm.empty()) return std::nullopt;
  const GpCmd& c = *s.stm.front();
  Stm k = tail(s.stm);
  switch (c.kind) {
    case GpCmd::Kind::Skip:
      return GpState{s.store, k};
    case GpCmd::Kind::Assign: {
      Value v = eval(*c.e, s.store);
      if (v.is_undef()) return std::nullopt;
      Store r = s.store;
      r.set(c.x, v);
      return GpState{r, k};
    }
    case GpCmd::Kind::If: {
      auto b = eval_bool(*c.b, s.store);
      if (!b) return std::nullopt;
      return GpState{s.store, *b ? concat(c.body, k) : k};
    }
    case GpCmd::Kind::While:
      return GpState{s.store, unfold(c, k)};
    case GpCmd::Kind::Bail: {
      auto b = eval_bool(*c.b, s.store);
      if (!b) return std::nullopt;
      return GpState{s.store, *b ? c.body : k};
    }
  }
  return std::nullopt;
}

GpRun gp_run(const Stm& s, const Store& rho0, std::size_t budget) {
  GpRun r;
  if (budget == 0) return r;
  r.trace.push_back({rho0, s});
  while (auto n = gp_step(r.trace.back())) {
    if (r.trace.size() >= budget) {
      r.truncated = true;
      break;
    }
    r.trace.push_back(std::move(*n));
  }
  return r;
}

std::string GpLabeler::operator()(const Stm& s) {
  auto key = to_string(s);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  std::string l = "l" + std::to_string(ids_.size());
  ids_.emplace(key, l);
  return l;
}

std::vector<Command> gp_first(const Stm& s, GpLabeler& l) {
  std::string here = l(s);
  if (s.empty()) return {make_command(here, skip_action(), kNoLabel)};
  const GpCmd& c = *s.front();
  Stm k = tail(s);
  switch (c.kind) {
    case GpCmd::Kind::Skip:
      return {make_command(here, skip_action(), l(k))};
    case GpCmd::Kind::Assign:
      return {make_command(here, assign_action(c.x, c.e), l(k))};
    case GpCmd::Kind::If:
      return {make_command(here, cond_action(c.b), l(concat(c.body, k))),
              make_command(here, cond_action(bnot(c.b)), l(k))};
    case GpCmd::Kind::While:
      return {make_command(here, skip_action(), l(unfold(c, k)))};
    case GpCmd::Kind::Bail:
      return {make_command(here, cond_action(c.b), l(c.body)),
              make_command(here, cond_action(bnot(c.b)), l(k))};
  }
  return {};
}

Program gp_compile(const Stm& s, GpLabeler& l) {
  Program p(l(s));
  std::set<std::string> done;
  std::vector<Stm> todo{s};
  while (!todo.empty()) {
    Stm cur = std::move(todo.back());
    todo.pop_back();
    if (!done.insert(to_string(cur)).second) continue;
    for (auto& c : gp_first(cur, l)) p.add(c);
    if (cur.empty()) continue;
    const GpCmd& c = *cur.front();
    Stm k = tail(cur);
    switch (c.kind) {
      case GpCmd::Kind::Skip:
      case GpCmd::Kind::Assign:
        todo.push_back(k);
        break;
      case GpCmd::Kind::If:
        todo.push_back(k);
        todo.push_back(concat(c.body, k));
        break;
      case GpCmd::Kind::While:
        todo.push_back(unfold(c, k));
        break;
      case GpCmd::Kind::Bail:
        todo.push_back(k);
        todo.push_back(c.body);
        break;
    }
  }
  return p;
}

Program gp_compile(const Stm& s) {
  GpLabeler l;
  return gp_compile(s, l);
}

State gp_compile_state(const GpState& s, GpLabeler& l) {
  auto first = gp_first(s.stm, l);
  if (first.size() == 1) return {s.store, first[0]};
  auto b = eval_bool(*s.stm.front()->b, s.store);
  if (!b) throw GpError("undefined test in " + cmd_string(*s.stm.front()));
  return {s.store, *b ? first[0] : first[1]};
}

Trace gp_compile_trace(const GpTrace& t, GpLabeler& l) {
  Trace out;
  out.reserve(t.size());
  for (auto& s : t) out.push_back(gp_compile_state(s, l));
  return out;
}

GpTrace gp_decompile_trace(const Trace& t, const Stm& s, GpLabeler& l) {
  GpTrace out;
  if (t.empty()) return out;
  if (t[0].cmd.label != l(s)) throw GpError("trace does not start at the program entry");
  GpState cur{t[0].store, s};
  for (std::size_t k = 0;; ++k) {
    if (t[k].cmd.label != l(cur.stm))
      throw GpError("trace leaves the compiled program at index " + std::to_string(k));
    cur.store = t[k].store;
    out.push_back(cur);
    if (k + 1 == t.size()) break;
    auto n = gp_step(cur);
    if (!n) throw GpError("trace continues past a stuck state at index " + std::to_string(k));
    cur = std::move(*n);
  }
  return out;
}

std::optional<std::string> check_compile_step(const Program& compiled, const GpState& s,
                                              GpLabeler& l) {
  State cs = gp_compile_state(s, l);
  if (!compiled.contains(cs.cmd)) return "compiled command missing: " + cs.cmd.text();
  auto succ = step(compiled, cs);
  std::vector<State> image;
  for (auto& n : succ)
    if (!n.cmd.act.is_conditional() || apply_action(n.cmd.act, n.store)) image.push_back(n);
  auto next = gp_step(s);
  if (!next) {
    if (!image.empty()) return "stuck GP state has a compiled successor: " + image[0].cmd.text();
    return std::nullopt;
  }
  State cn = gp_compile_state(*next, l);
  if (image.size() != 1 || image[0] != cn)
    return "compiled successor differs from " + to_string(cn);
  return std::nullopt;
}

std::optional<GpTraceStep> gp_trace_step(const GpExtState& s, bool record) {
  if (auto p = std::get_if<GpState>(&s)) {
    if (record && !p->stm.empty())
      if (auto w = unfolded_loop(*p->stm.front())) {
        auto b = eval_bool(*(*w)->b, p->store);
        if (b && *b) {
          Stm k = tail(p->stm);
          return GpTraceStep{GpTState{p->store, concat({*w}, k), {}, concat(p->stm.front()->body, k)},
                             "T1"};
        }
      }
    auto n = gp_step(*p);
    if (!n) return std::nullopt;
    return GpTraceStep{*n, "B"};
  }

  const auto& r = std::get<GpTState>(s);
  if (!r.cur.empty()) {
    const GpCmdP& head = r.cur.front();
    const GpCmd& c = *head;
    Stm k = tail(r.cur);
    switch (c.kind) {
      case GpCmd::Kind::Skip:
        return GpTraceStep{GpTState{r.store, r.kw, concat(r.t, {head}), k}, "T2"};
      case GpCmd::Kind::Assign: {
        Value v = eval(*c.e, r.store);
        if (v.is_undef()) return std::nullopt;
        Store st = r.store;
        st.set(c.x, v);
        return GpTraceStep{GpTState{st, r.kw, concat(r.t, {head}), k}, "T3"};
      }
      case GpCmd::Kind::If: {
        auto b = eval_bool(*c.b, r.store);
        if (!b) return std::nullopt;
        if (*b)
          return GpTraceStep{GpTState{r.store, r.kw, concat(r.t, {gp_bail(bnot(c.b), k)}), concat(c.body, k)},
                             "T4"};
        return GpTraceStep{GpTState{r.store, r.kw, concat(r.t, {gp_bail(c.b, concat(c.body, k))}), k}, "T4"};
      }
      case GpCmd::Kind::While:
        if (same(r.cur, r.kw)) {
          // stitch: (while B do t) K, with no optimization
          return GpTraceStep{GpState{r.store, concat({gp_while(c.b, r.t)}, k)}, "T5"};
        }
        return GpTraceStep{GpTState{r.store, r.kw, concat(r.t, {gp_skip()}), unfold(c, k)}, "T5"};
      case GpCmd::Kind::Bail:
        break;
    }
  }
  auto n = gp_step({r.store, r.cur});
  if (!n) return std::nullopt;
  return GpTraceStep{*n, "T6"};
}

GpRecording gp_record_hot_path(const Stm& s, const Store& rho0, std::size_t budget) {
  if (s.empty() || s.front()->kind != GpCmd::Kind::While)
    throw GpError("recording needs a while-headed program");
  GpRecording rec;
  GpLabeler l;
  rec.compiled = gp_compile(s, l);

  GpExtState cur = GpState{rho0, s};
  GpTrace seen;  // plain and current-statement projection
  std::optional<std::size_t> start;
  for (std::size_t steps = 0;; ++steps) {
    if (auto t = std::get_if<GpTState>(&cur)) {
      seen.push_back({t->store, t->cur});
      if (same(t->cur, t->kw)) {
        rec.t = t->t;
        rec.stitched = concat({gp_while(t->kw.front()->b, t->t)}, tail(t->kw));
        break;
      }
    } else {
      seen.push_back(std::get<GpState>(cur));
    }
    if (steps >= budget) throw GpError("budget exhausted before the loop was recorded");
    auto n = gp_trace_step(cur, !start);
    if (!n) throw GpError("program stopped before the loop was recorded");
    if (n->rule == "T6") throw GpError("recording aborted at " + cmd_string(*std::get<GpTState>(cur).cur.front()));
    if (n->rule == "T1") {
      // the loop itself sits one state back
      if (seen.size() < 2 || !same(seen[seen.size() - 2].stm, std::get<GpTState>(n->next).kw))
        throw GpError("recording started outside a loop entry");
      start = seen.size() - 2;
    }
    if (start) rec.rules.push_back(n->rule);
    cur = std::move(n->next);
  }

  rec.segment.assign(seen.begin() + static_cast<std::ptrdiff_t>(*start), seen.end());
  Trace ct = gp_compile_trace(rec.segment, l);
  for (std::size_t k = 0; k + 1 < ct.size(); ++k) rec.hp.push_back(ct[k].cmd);
  bool found = false;
  for (auto& seg : sloop(ct, rec.compiled))
    found = found || (seg.i == 0 && seg.j + 2 == ct.size());
  if (!found) throw GpError("recorded iteration is not a loop path of the compiled program");
  return rec;
}

GpCheck gp_equivalence_check(const Stm& s, const std::vector<Store>& initials, std::size_t budget,
                             const GpExtraction& extr) {
  if (initials.empty()) throw GpError("no initial store");
  GpCheck c;
  c.rec = gp_record_hot_path(s, initials.front(), budget);
  c.extracted = extr ? extr(c.rec.compiled, c.rec.hp) : extract_gp(c.rec.compiled, c.rec.hp);
  c.stitched = gp_compile(c.rec.stitched);
  c.renaming = rename_equal(c.extracted, c.stitched);
  for (auto& rho : initials) {
    auto a = gp_run(s, rho, budget);
    auto b = gp_run(c.rec.stitched, rho, budget);
    StoreSeq sa, sb;
    for (auto& st : a.trace) sa.push_back(st.store);
    for (auto& st : b.trace) sb.push_back(st.store);
    Verdict v = compare_observations(sc(sa), a.truncated, sc(sb), b.truncated);
    v.initial = rho;
    c.runs.verdicts.push_back(std::move(v));
  }
  return c;
}

}  // namespace tjit

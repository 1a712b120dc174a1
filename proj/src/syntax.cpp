#include "tjit/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

namespace tjit {

namespace {

ExprP make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
BExprP make_bexpr(BExpr b) { return std::make_shared<const BExpr>(std::move(b)); }

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::AddTyped:
      return 1;
    case Expr::Kind::Mod:
      return 2;
    default:
      return 3;
  }
}

std::string operand(const Expr& e, int level, bool right) {
  int p = prec(e);
  bool paren = right ? p <= level : p < level;
  std::string s = to_string(e);
  return paren ? "(" + s + ")" : s;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace

ExprP lit(Value v) {
  Expr e{Expr::Kind::Lit, std::move(v), {}, nullptr, nullptr};
  return make_expr(std::move(e));
}
ExprP lit_int(std::int64_t n) { return lit(Value::integer(n)); }
ExprP var(std::string x) { return make_expr(Expr{Expr::Kind::Var, {}, std::move(x), nullptr, nullptr}); }
ExprP index(std::string base, ExprP i) {
  return make_expr(Expr{Expr::Kind::Index, {}, std::move(base), std::move(i), nullptr});
}
ExprP add(ExprP a, ExprP b) {
  return make_expr(Expr{Expr::Kind::Add, {}, {}, std::move(a), std::move(b)});
}
ExprP add_typed(ExprP a, ExprP b, AddTag t) {
  return make_expr(Expr{Expr::Kind::AddTyped, {}, {}, std::move(a), std::move(b), t});
}
ExprP mod(ExprP a, ExprP b) {
  return make_expr(Expr{Expr::Kind::Mod, {}, {}, std::move(a), std::move(b)});
}

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return to_string(e.lit);
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Index:
      return e.name + "[" + to_string(*e.a) + "]";
    case Expr::Kind::Add:
      return operand(*e.a, 1, false) + " + " + operand(*e.b, 1, true);
    case Expr::Kind::AddTyped:
      return operand(*e.a, 1, false) + (e.tag == AddTag::Int ? " +Int " : " +Str ") +
             operand(*e.b, 1, true);
    case Expr::Kind::Mod:
      return operand(*e.a, 2, false) + " % " + operand(*e.b, 2, true);
  }
  return "?";
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return;
    case Expr::Kind::Var:
      out.insert(e.name);
      return;
    case Expr::Kind::Index:
      out.insert(e.name);
      collect_vars(*e.a, out);
      return;
    default:
      collect_vars(*e.a, out);
      collect_vars(*e.b, out);
  }
}

BExprP btrue() {
  static const BExprP t = make_bexpr(BExpr{BExpr::Kind::True, nullptr, nullptr, nullptr, nullptr});
  return t;
}
BExprP bfalse() {
  static const BExprP f = make_bexpr(BExpr{BExpr::Kind::False, nullptr, nullptr, nullptr, nullptr});
  return f;
}
BExprP leq(ExprP l, ExprP r) { return make_bexpr(BExpr{BExpr::Kind::Leq, std::move(l), std::move(r), nullptr, nullptr}); }
BExprP lt(ExprP l, ExprP r) { return make_bexpr(BExpr{BExpr::Kind::Lt, std::move(l), std::move(r), nullptr, nullptr}); }
BExprP eq(ExprP l, ExprP r) { return make_bexpr(BExpr{BExpr::Kind::Eq, std::move(l), std::move(r), nullptr, nullptr}); }
BExprP bnot(BExprP b) {
  if (b->kind == BExpr::Kind::Not) return b->a;
  return make_bexpr(BExpr{BExpr::Kind::Not, nullptr, nullptr, std::move(b), nullptr});
}
BExprP band(BExprP a, BExprP b) {
  return make_bexpr(BExpr{BExpr::Kind::And, nullptr, nullptr, std::move(a), std::move(b)});
}

std::string to_string(const BExpr& b) {
  switch (b.kind) {
    case BExpr::Kind::True:
      return "tt";
    case BExpr::Kind::False:
      return "ff";
    case BExpr::Kind::Leq:
      return "(" + to_string(*b.l) + " <= " + to_string(*b.r) + ")";
    case BExpr::Kind::Lt:
      return "(" + to_string(*b.l) + " < " + to_string(*b.r) + ")";
    case BExpr::Kind::Eq:
      return "(" + to_string(*b.l) + " = " + to_string(*b.r) + ")";
    case BExpr::Kind::Not:
      return "!" + to_string(*b.a);
    case BExpr::Kind::And:
      return "(" + to_string(*b.a) + " && " + to_string(*b.b) + ")";
  }
  return "?";
}

void collect_vars(const BExpr& b, std::set<std::string>& out) {
  switch (b.kind) {
    case BExpr::Kind::True:
    case BExpr::Kind::False:
      return;
    case BExpr::Kind::Not:
      collect_vars(*b.a, out);
      return;
    case BExpr::Kind::And:
      collect_vars(*b.a, out);
      collect_vars(*b.b, out);
      return;
    default:
      collect_vars(*b.l, out);
      collect_vars(*b.r, out);
  }
}

std::string to_string(TypeName t) {
  switch (t) {
    case TypeName::Bot:
      return "Bot";
    case TypeName::Int:
      return "Int";
    case TypeName::Str:
      return "String";
    case TypeName::Bool:
      return "Bool";
    case TypeName::Undef:
      return "Undef";
    case TypeName::Top:
      return "Top";
  }
  return "?";
}

std::string to_string(const CPVal& v) {
  switch (v.kind) {
    case CPVal::Kind::Bot:
      return "bot";
    case CPVal::Kind::Top:
      return "top";
    case CPVal::Kind::Const:
      return to_string(v.c);
  }
  return "?";
}

std::string to_string(const AbstractStore& a) {
  if (a.bottom) return "bot";
  std::vector<std::string> parts;
  for (auto& [k, s] : a.slots) {
    bool family = k.size() > 2 && k.compare(k.size() - 2, 2, "[]") == 0;
    std::string name = family ? k.substr(0, k.size() - 2) : k;
    std::string val = std::visit([](auto&& x) { return to_string(x); }, s);
    parts.push_back(name + ": " + val + (family ? "[]" : ""));
  }
  return "{" + join(parts, ", ") + "}";
}

// ---------------------------------------------------------------------------

Action skip_action() {
  Action a;
  a.kind = Action::Kind::Skip;
  a.text = "skip";
  return a;
}

Action assign_action(std::string x, ExprP e) {
  Action a;
  a.kind = Action::Kind::Assign;
  a.text = x + " := " + to_string(*e);
  a.target = std::move(x);
  a.rhs = std::move(e);
  return a;
}

Action assign_index_action(std::string base, ExprP sub, ExprP e) {
  Action a;
  a.kind = Action::Kind::Assign;
  a.text = base + "[" + to_string(*sub) + "] := " + to_string(*e);
  a.target = std::move(base);
  a.subscript = std::move(sub);
  a.rhs = std::move(e);
  return a;
}

Action cond_action(BExprP b) {
  Action a;
  a.kind = Action::Kind::Cond;
  a.text = to_string(*b);
  a.cond = std::move(b);
  return a;
}

Action guard_action(std::string domain, AbstractStore abs, bool positive) {
  Action a;
  a.kind = Action::Kind::Guard;
  a.text = std::string(positive ? "" : "!") + "guard " + domain + " " + to_string(abs);
  a.domain = std::move(domain);
  a.abs = std::move(abs);
  a.positive = positive;
  return a;
}

Action put_action(std::set<std::string> xs) {
  Action a;
  a.kind = Action::Kind::Put;
  a.text = "put {" + join(std::vector<std::string>(xs.begin(), xs.end()), ", ") + "}";
  a.put_vars = std::move(xs);
  return a;
}

Action negate(const Action& a) {
  if (a.kind == Action::Kind::Cond) return cond_action(bnot(a.cond));
  if (a.kind == Action::Kind::Guard) return guard_action(a.domain, a.abs, !a.positive);
  throw std::invalid_argument("negate: not a conditional: " + a.text);
}

std::set<std::string> vars_of(const Action& a) {
  std::set<std::string> out;
  switch (a.kind) {
    case Action::Kind::Assign:
      out.insert(a.target);
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

bool label_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
  return a < b;
}

std::string Command::text() const { return label + ": " + act.text + " -> " + succ; }

bool operator==(const Command& a, const Command& b) {
  return a.label == b.label && a.succ == b.succ && a.act.text == b.act.text;
}

bool operator<(const Command& a, const Command& b) {
  if (a.label != b.label) return a.label < b.label;
  if (a.act.text != b.act.text) return a.act.text < b.act.text;
  return a.succ < b.succ;
}

Command make_command(std::string label, Action act, std::string succ) {
  return Command{std::move(label), std::move(act), std::move(succ)};
}

bool Program::add(const Command& c) { return cmds_.insert(c).second; }
bool Program::remove(const Command& c) { return cmds_.erase(c) != 0; }

std::vector<Command> Program::at(const std::string& label) const {
  std::vector<Command> out;
  Command probe{label, Action{}, ""};
  probe.act.text = "";
  for (auto it = cmds_.lower_bound(probe); it != cmds_.end() && it->label == label; ++it)
    out.push_back(*it);
  return out;
}

std::set<std::string> Program::labels() const {
  std::set<std::string> out;
  for (auto& c : cmds_) out.insert(c.label);
  return out;
}

std::set<std::string> Program::vars() const {
  std::set<std::string> out;
  for (auto& c : cmds_) {
    auto vs = vars_of(c.act);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

std::optional<Command> cmpl(const Command& c, const Program& p) {
  if (!c.act.is_conditional()) return std::nullopt;
  std::string want = negate(c.act).text;
  std::optional<Command> found;
  for (auto& d : p.at(c.label)) {
    if (d.act.text != want) continue;
    if (found) return std::nullopt;
    found = d;
  }
  return found;
}

std::vector<std::string> well_formed(const Program& p, bool deterministic) {
  std::vector<std::string> diags;
  if (p.empty()) {
    diags.push_back("no commands");
    return diags;
  }
  if (p.at(p.entry()).empty()) diags.push_back("entry label " + p.entry() + " has no command");
  for (auto& c : p.commands()) {
    if (c.label == kNoLabel) diags.push_back("command labelled with the undefined label");
    if (!c.act.is_conditional()) continue;
    std::string want = negate(c.act).text;
    int n = 0;
    for (auto& d : p.at(c.label))
      if (d.act.text == want) ++n;
    if (n == 0)
      diags.push_back(c.label + ": no complement for " + c.act.text);
    else if (n > 1)
      diags.push_back(c.label + ": several complements for " + c.act.text);
  }
  if (deterministic) {
    for (auto& l : p.labels()) {
      auto cs = p.at(l);
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
          bool compl_pair = cs[i].act.is_conditional() &&
                            negate(cs[i].act).text == cs[j].act.text;
          if (!compl_pair)
            diags.push_back(l + ": nondeterministic pair " + cs[i].act.text + " / " +
                            cs[j].act.text);
        }
    }
  }
  return diags;
}

namespace {

std::string label_signature(const Program& p, const std::string& l) {
  std::vector<std::string> ts;
  for (auto& c : p.at(l)) ts.push_back(c.act.text + (c.succ == kNoLabel ? " ->." : ""));
  std::sort(ts.begin(), ts.end());
  return join(ts, "\n");
}

}  // namespace

std::optional<std::map<std::string, std::string>> rename_equal(const Program& p1,
                                                               const Program& p2) {
  if (p1.size() != p2.size()) return std::nullopt;
  std::map<std::string, std::string> f, g;
  std::deque<std::pair<std::string, std::string>> work;

  auto bind = [&](const std::string& a, const std::string& b) {
    auto fa = f.find(a);
    if (fa != f.end()) return fa->second == b;
    if (g.count(b)) return false;
    f[a] = b;
    g[b] = a;
    work.emplace_back(a, b);
    return true;
  };

  auto drain = [&]() {
    while (!work.empty()) {
      auto [a, b] = work.front();
      work.pop_front();
      auto c1 = p1.at(a), c2 = p2.at(b);
      if (c1.size() != c2.size()) return false;
      auto by_text = [](const Command& x, const Command& y) { return x.act.text < y.act.text; };
      std::sort(c1.begin(), c1.end(), by_text);
      std::sort(c2.begin(), c2.end(), by_text);
      for (std::size_t i = 0; i < c1.size(); ++i) {
        if (c1[i].act.text != c2[i].act.text) return false;
        bool u1 = c1[i].succ == kNoLabel, u2 = c2[i].succ == kNoLabel;
        if (u1 != u2) return false;
        if (!u1 && !bind(c1[i].succ, c2[i].succ)) return false;
      }
    }
    return true;
  };

  if (!bind(p1.entry(), p2.entry()) || !drain()) return std::nullopt;

  // Commands unreachable from the entry: pair labels by signature, in
  // label order, and keep traversing from each new pair.
  for (;;) {
    std::string a;
    for (auto& l : p1.labels())
      if (!f.count(l)) {
        a = l;
        break;
      }
    if (a.empty()) break;
    std::string sig = label_signature(p1, a), b;
    for (auto& l : p2.labels())
      if (!g.count(l) && label_signature(p2, l) == sig) {
        b = l;
        break;
      }
    if (b.empty() || !bind(a, b) || !drain()) return std::nullopt;
  }

  if (!(relabel(p1, f) == p2)) return std::nullopt;
  return f;
}

Program relabel(const Program& p, const std::map<std::string, std::string>& f) {
  auto m = [&](const std::string& l) {
    auto it = f.find(l);
    return it == f.end() ? l : it->second;
  };
  Program out(m(p.entry()));
  for (auto& c : p.commands()) out.add(Command{m(c.label), c.act, c.succ == kNoLabel ? c.succ : m(c.succ)});
  return out;
}

std::string to_string(const Program& p) {
  // Labels in depth-first discovery order from the entry, then the rest.
  std::vector<std::string> order;
  std::set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& l) {
    if (l == kNoLabel || seen.count(l)) return;
    seen.insert(l);
    auto cs = p.at(l);
    if (cs.empty()) return;
    order.push_back(l);
    std::stable_sort(cs.begin(), cs.end(), [](const Command& a, const Command& b) {
      return (a.act.text[0] == '!') < (b.act.text[0] == '!');
    });
    for (auto& c : cs) visit(c.succ);
  };
  visit(p.entry());
  std::vector<std::string> rest;
  for (auto& l : p.labels())
    if (!seen.count(l)) rest.push_back(l);
  std::sort(rest.begin(), rest.end(), label_less);
  order.insert(order.end(), rest.begin(), rest.end());

  std::string out = "#entry " + p.entry() + "\n";
  for (auto& l : order) {
    auto cs = p.at(l);
    std::stable_sort(cs.begin(), cs.end(), [](const Command& a, const Command& b) {
      return (a.act.text[0] == '!') < (b.act.text[0] == '!');
    });
    for (auto& c : cs) out += c.text() + "\n";
  }
  return out;
}

}  // namespace tjit

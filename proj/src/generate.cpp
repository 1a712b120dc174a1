#include "tjit/generate.hpp"

#include <map>
#include <random>
#include <set>

namespace tjit {

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

const std::vector<std::string> kInts = {"a", "b", "c"};
const std::vector<std::string> kStrs = {"\"a\"", "\"b\"", "\"ab\""};

// Integer expressions over the data variables and `inputs`.
ExprP int_expr(Gen& g, const std::vector<std::string>& vars, int depth) {
  int k = depth > 0 ? g.uniform(0, 4) : g.uniform(0, 1);
  switch (k) {
    case 0:
      return lit_int(g.uniform(-3, 9));
    case 1:
    case 2:
      return var(g.pick(vars));
    case 3:
      return add(int_expr(g, vars, depth - 1), int_expr(g, vars, depth - 1));
    default:
      return mod(int_expr(g, vars, depth - 1), lit_int(g.uniform(2, 5)));
  }
}

BExprP int_test(Gen& g, const std::vector<std::string>& vars) {
  auto l = int_expr(g, vars, 1);
  switch (g.uniform(0, 3)) {
    case 0:
      return leq(l, lit_int(g.uniform(0, 12)));
    case 1:
      return lt(l, lit_int(g.uniform(0, 12)));
    case 2:
      return eq(mod(var(g.pick(vars)), lit_int(g.uniform(2, 4))), lit_int(0));
    default:
      return band(leq(lit_int(g.uniform(-2, 3)), l), leq(l, lit_int(g.uniform(4, 15))));
  }
}

// Emits labelled commands for a structured body.
class Emitter {
 public:
  Emitter(Gen& g, Program& p, std::vector<std::string> vars) : g_(g), p_(p), vars_(std::move(vars)) {}

  std::string fresh() { return "L" + std::to_string(next_++); }

  void cmd(const std::string& l, Action a, const std::string& succ) { p_.add(make_command(l, std::move(a), succ)); }

  // Statements starting at `at`, continuing to `out`.
  void block(const std::string& at, const std::string& out, std::size_t budget, int depth) {
    std::string cur = at;
    std::size_t n = budget;
    while (n > 0) {
      std::size_t used = 1;
      std::string nxt = n == 1 ? out : fresh();
      int k = g_.uniform(0, 9);
      if (depth >= 2) k = std::min(k, 5);
      if (k <= 3) {
        cmd(cur, assign_action(g_.pick(kInts), int_expr(g_, vars_, 2)), nxt);
      } else if (k == 4) {
        cmd(cur, assign_action("s", add(var("s"), parse_expr(g_.pick(kStrs)))), nxt);
      } else if (k == 5) {
        cmd(cur, put_action({g_.pick(kInts), "s"}), nxt);
      } else if (k <= 7 && n >= 3) {
        // if / else
        used = std::min<std::size_t>(n - 1, static_cast<std::size_t>(g_.uniform(2, 4)));
        auto b = int_test(g_, vars_);
        std::string t = fresh(), e = fresh();
        cmd(cur, cond_action(b), t);
        cmd(cur, cond_action(bnot(b)), e);
        std::size_t left = std::max<std::size_t>(1, used / 2);
        block(t, nxt, left, depth + 1);
        block(e, nxt, std::max<std::size_t>(1, used - left), depth + 1);
      } else if (n >= 3) {
        // inner counted loop on its own counter
        used = std::min<std::size_t>(n - 1, static_cast<std::size_t>(g_.uniform(2, 4)));
        std::string j = "j" + std::to_string(depth);
        std::string head = fresh(), body = fresh(), inc = fresh();
        cmd(cur, assign_action(j, lit_int(0)), head);
        auto b = lt(var(j), lit_int(g_.uniform(2, 5)));
        cmd(head, cond_action(b), body);
        cmd(head, cond_action(bnot(b)), nxt);
        block(body, inc, used, depth + 1);
        cmd(inc, assign_action(j, add(var(j), lit_int(1))), head);
      } else {
        cmd(cur, skip_action(), nxt);
      }
      n -= std::min(n, used);
      cur = nxt;
    }
  }

 private:
  Gen& g_;
  Program& p_;
  std::vector<std::string> vars_;
  int next_ = 0;
};

}  // namespace

Program gen_program(std::uint64_t seed, GenBounds bounds) {
  Gen g(seed);
  Program p("L0");
  // one data variable may be an input, read before any assignment
  std::vector<std::string> init = kInts;
  std::vector<std::string> vars = kInts;
  if (g.chance(0.4)) {
    init.erase(init.begin() + g.uniform(0, 2));
    vars.push_back("n");
  }
  Emitter e(g, p, vars);
  std::string cur = e.fresh();
  for (auto& x : init) {
    std::string nxt = e.fresh();
    e.cmd(cur, assign_action(x, lit_int(g.uniform(-2, 6))), nxt);
    cur = nxt;
  }
  std::string head = e.fresh();
  e.cmd(cur, assign_action("s", parse_expr("\"\"")), head);
  // outer loop: i := 0; while i < K
  std::string test = e.fresh(), body = e.fresh(), inc = e.fresh(), done = e.fresh(), end = e.fresh();
  e.cmd(head, assign_action("i", lit_int(0)), test);
  auto b = lt(var("i"), lit_int(g.uniform(3, 8)));
  e.cmd(test, cond_action(b), body);
  e.cmd(test, cond_action(bnot(b)), done);
  std::size_t n = static_cast<std::size_t>(
      g.uniform(static_cast<int>(bounds.min_stmts), static_cast<int>(std::max(bounds.min_stmts, bounds.max_stmts))));
  e.block(body, inc, std::max<std::size_t>(1, n), 0);
  e.cmd(inc, assign_action("i", add(var("i"), lit_int(1))), test);
  e.cmd(done, put_action({"a", "b", "c", "s"}), end);
  e.cmd(end, skip_action(), kNoLabel);
  return p;
}

std::vector<Store> sample_stores(const Program& p, std::uint64_t seed, std::size_t count) {
  // Variables that may be read before any assignment: forward must-assigned
  // sets per label, intersected over incoming commands.
  auto reads = [](const Action& a) {
    auto vs = vars_of(a);
    if (a.kind == Action::Kind::Assign) {
      vs.erase(a.target);
      collect_vars(*a.rhs, vs);
      if (a.subscript) collect_vars(*a.subscript, vs);
    }
    return vs;
  };
  std::map<std::string, std::set<std::string>> must;
  must[p.entry()] = {};
  std::set<std::string> inputs;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& c : p.commands()) {
      auto it = must.find(c.label);
      if (it == must.end()) continue;
      auto defs = it->second;
      for (auto& x : reads(c.act))
        if (!defs.count(x)) inputs.insert(x);
      if (c.act.kind == Action::Kind::Assign && !c.act.subscript) defs.insert(c.act.target);
      if (c.succ == kNoLabel) continue;
      auto jt = must.find(c.succ);
      if (jt == must.end()) {
        must.emplace(c.succ, defs);
        changed = true;
      } else {
        std::set<std::string> meet;
        for (auto& x : jt->second)
          if (defs.count(x)) meet.insert(x);
        if (meet != jt->second) {
          jt->second = std::move(meet);
          changed = true;
        }
      }
    }
  }
  Gen g(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Store> out;
  for (std::size_t k = 0; k < count; ++k) {
    Store s;
    for (auto& x : inputs) s.set(x, Value::integer(g.uniform(-5, 20)));
    out.push_back(s);
  }
  return out;
}

namespace {

Stm gp_block(Gen& g, std::size_t n, int depth, std::vector<std::string> counters) {
  Stm out;
  for (std::size_t k = 0; k < n; ++k) {
    int kind = g.uniform(0, 9);
    if (depth >= 2) kind = std::min(kind, 5);
    if (kind <= 4) {
      out.push_back(gp_assign(g.pick(kInts), int_expr(g, kInts, 2)));
    } else if (kind == 5) {
      out.push_back(gp_skip());
    } else if (kind <= 7) {
      out.push_back(gp_if(int_test(g, kInts), gp_block(g, static_cast<std::size_t>(g.uniform(1, 3)), depth + 1, counters)));
    } else {
      std::string j = "j" + std::to_string(depth);
      out.push_back(gp_assign(j, lit_int(0)));
      Stm body = gp_block(g, static_cast<std::size_t>(g.uniform(1, 2)), depth + 1, counters);
      body.push_back(gp_assign(j, add(var(j), lit_int(1))));
      out.push_back(gp_while(lt(var(j), lit_int(g.uniform(2, 4))), body));
    }
  }
  return out;
}

}  // namespace

GpSample gen_gp(std::uint64_t seed, std::size_t count, bool bails) {
  Gen g(seed);
  GpSample s;
  Stm body = gp_block(g, static_cast<std::size_t>(g.uniform(2, 5)), 0, {});
  body.push_back(gp_assign("i", add(var("i"), lit_int(1))));
  s.program.push_back(gp_while(lt(var("i"), lit_int(g.uniform(3, 7))), body));
  if (bails && g.chance(0.7))
    s.program.push_back(gp_bail(int_test(g, kInts), gp_block(g, 2, 1, {})));
  s.program.push_back(gp_assign("a", add(var("a"), lit_int(1))));
  for (std::size_t k = 0; k < count; ++k) {
    Store r;
    r.set("i", Value::integer(g.uniform(-1, 1)));
    for (auto& x : kInts) r.set(x, Value::integer(g.uniform(-4, 12)));
    s.stores.push_back(r);
  }
  return s;
}

}  // namespace tjit

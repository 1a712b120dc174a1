#include "tjit/hotpath.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace tjit {

AbstractTrace alpha_store(const Trace& t, const Domain& d) {
  AbstractTrace out;
  out.reserve(t.size());
  for (auto& s : t) out.push_back(AbsState{d.alpha1(s.store), s.cmd});
  return out;
}

namespace {

bool negated(const Command& c) {
  if (c.act.kind == Action::Kind::Guard) return !c.act.positive;
  return c.act.kind == Action::Kind::Cond && c.act.cond->kind == BExpr::Kind::Not;
}

// Commands at a label, positive branch first.
std::vector<Command> branches(const Program& p, const std::string& l) {
  auto cs = p.at(l);
  std::stable_sort(cs.begin(), cs.end(),
                   [](const Command& a, const Command& b) { return !negated(a) && negated(b); });
  return cs;
}

}  // namespace

TopoOrder::TopoOrder(const Program& p) {
  std::set<Command> visited;
  std::vector<Command> post;
  std::function<void(const Command&)> dfs = [&](const Command& c) {
    if (!visited.insert(c).second) return;
    if (c.succ != kNoLabel)
      for (auto& d : branches(p, c.succ)) dfs(d);
    post.push_back(c);
  };
  for (auto& c : branches(p, p.entry())) dfs(c);
  std::size_t r = 0;
  for (auto it = post.rbegin(); it != post.rend(); ++it) rank_[*it] = r++;
  for (auto& c : p.commands())
    if (!rank_.count(c)) {
      // Unreachable pieces get their own reverse postorder, appended.
      std::size_t mark = post.size();
      dfs(c);
      for (std::size_t k = post.size(); k > mark; --k) rank_[post[k - 1]] = r++;
    }
}

std::size_t TopoOrder::rank(const Command& c) const {
  auto it = rank_.find(c);
  return it == rank_.end() ? std::numeric_limits<std::size_t>::max() : it->second;
}

std::vector<Segment> sloop(const Trace& t, const Program& p, const TopoOrder& ord) {
  std::vector<Segment> out;
  if (t.size() < 2) return out;
  std::size_t last = t.size() - 1;
  std::map<Command, std::optional<Command>> cmpl_cache;
  for (std::size_t i = 0; i < last; ++i) {
    const Command& ci = t[i].cmd;
    auto it = cmpl_cache.find(ci);
    if (it == cmpl_cache.end()) it = cmpl_cache.emplace(ci, cmpl(ci, p)).first;
    const auto& cc = it->second;
    for (std::size_t j = i; j < last; ++j) {
      const Command& cj = t[j].cmd;
      if (j > i && (cj == ci || (cc && cj == *cc))) break;
      if (cj.succ == ci.label && ord.before(ci, cj)) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<Segment> sloop(const Trace& t, const Program& p) { return sloop(t, p, TopoOrder(p)); }

std::vector<std::vector<Command>> sloop_gp(const Trace& t, const Program& p) {
  std::vector<std::vector<Command>> out;
  std::set<std::vector<Command>> seen;
  for (auto& s : sloop(t, p)) {
    std::vector<Command> cs;
    for (std::size_t k = s.i; k <= s.j; ++k) cs.push_back(t[k].cmd);
    if (seen.insert(cs).second) out.push_back(cs);
  }
  return out;
}

std::size_t count(const AbstractTrace& trace, const AbstractTrace& path) {
  if (path.empty() || path.size() > trace.size()) return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i + path.size() <= trace.size(); ++i)
    if (std::equal(path.begin(), path.end(), trace.begin() + i)) ++n;
  return n;
}

std::string to_string(const HotPath& hp) {
  std::string out = std::to_string(hp.threshold) + "-hot [" + hp.domain + "] : ";
  for (std::size_t i = 0; i < hp.path.size(); ++i) {
    if (i) out += " ; ";
    out += "(" + to_string(hp.path[i].abs) + ") " + hp.path[i].cmd.text();
  }
  return out + " count=" + std::to_string(hp.count);
}

namespace {

// Trace positions as interned integer symbols so that occurrence
// counting is a plain integer substring search.
struct Symbols {
  std::vector<int> sym;
  std::vector<std::vector<std::size_t>> positions;  // by symbol

  template <typename Key>
  static Symbols build(const std::vector<Key>& keys) {
    Symbols s;
    std::map<Key, int> ids;
    s.sym.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      auto [it, fresh] = ids.emplace(keys[i], static_cast<int>(ids.size()));
      if (fresh) s.positions.emplace_back();
      s.sym.push_back(it->second);
      s.positions[it->second].push_back(i);
    }
    return s;
  }

  // Start offsets of every occurrence of sym[i..j].
  std::vector<std::size_t> occurrences(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out;
    std::size_t m = j - i + 1;
    for (std::size_t p : positions[sym[i]]) {
      if (p + m > sym.size()) break;
      if (std::equal(sym.begin() + i, sym.begin() + j + 1, sym.begin() + p)) out.push_back(p);
    }
    return out;
  }
};

struct Candidate {
  std::size_t i, j;
  std::vector<std::size_t> occ;
};

// Distinct loop paths over the symbol sequence with at least n
// occurrences, by first occurrence.
std::vector<Candidate> mine(const Trace& t, const Program& p, const Symbols& s, std::size_t n) {
  std::vector<Candidate> out;
  std::set<std::vector<int>> seen;
  auto segs = sloop(t, p);
  std::sort(segs.begin(), segs.end());
  for (auto& seg : segs) {
    std::vector<int> key(s.sym.begin() + seg.i, s.sym.begin() + seg.j + 1);
    if (!seen.insert(key).second) continue;
    auto occ = s.occurrences(seg.i, seg.j);
    if (occ.size() >= n) out.push_back({seg.i, seg.j, std::move(occ)});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.occ.front() < b.occ.front();
  });
  return out;
}

std::vector<HotPath> hot_impl(const Trace& t, const Program& p, std::size_t n,
                              const std::string& dom, bool merged) {
  if (n == 0) throw std::invalid_argument("threshold must be at least 1");
  const Domain& d = domain(dom);
  std::vector<HotPath> out;
  if (t.size() < 2) return out;

  AbstractTrace at;
  Symbols s;
  if (merged) {
    std::vector<Command> cmds;
    for (auto& st : t) cmds.push_back(st.cmd);
    s = Symbols::build(cmds);
  } else {
    at = alpha_store(t, d);
    s = Symbols::build(at);
  }

  for (auto& c : mine(t, p, s, n)) {
    HotPath hp;
    hp.domain = dom;
    hp.threshold = n;
    hp.count = c.occ.size();
    hp.first_index = c.occ.front();
    std::size_t len = c.j - c.i + 1;
    hp.nth_end = c.occ[n - 1] + len - 1;
    for (std::size_t k = 0; k < len; ++k) {
      if (merged) {
        std::vector<Store> seen;
        for (std::size_t r = 0; r < n; ++r) seen.push_back(t[c.occ[r] + k].store);
        hp.path.push_back(AbsState{d.alpha(seen), t[c.i + k].cmd});
      } else {
        hp.path.push_back(at[c.i + k]);
      }
    }
    out.push_back(std::move(hp));
  }
  return out;
}

}  // namespace

std::vector<HotPath> hot(const Trace& t, const Program& p, std::size_t n, const std::string& dom) {
  return hot_impl(t, p, n, dom, false);
}

std::vector<HotPath> hot_merged(const Trace& t, const Program& p, std::size_t n,
                                const std::string& dom) {
  return hot_impl(t, p, n, dom, true);
}

std::vector<HotPath> alpha_hot(const std::vector<Trace>& ts, const Program& p, std::size_t n,
                               const std::string& dom) {
  std::vector<HotPath> out;
  std::set<AbstractTrace> seen;
  for (auto& t : ts)
    for (auto& hp : hot(t, p, n, dom))
      if (seen.insert(hp.path).second) out.push_back(hp);
  return out;
}

Trace hotcut(const Trace& t, const Program& original) {
  Trace out;
  if (t.empty()) return out;
  auto outside = [&](const State& s) { return !original.contains(s.cmd); };
  State head = t[0];
  std::size_t r = 1;
  for (;;) {
    if (r + 1 < t.size() && outside(head) && outside(t[r]) && outside(t[r + 1])) {
      ++r;
      continue;
    }
    out.push_back(head);
    if (r >= t.size()) break;
    head = t[r++];
  }
  return out;
}

std::vector<HotPath> outerhot(const Trace& t, const Program& original, const Program& current,
                              std::size_t n, const std::string& dom, bool merged) {
  return hot_impl(hotcut(t, original), current, n, dom, merged);
}

std::optional<std::size_t> select_hot_path(const std::vector<HotPath>& hps) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < hps.size(); ++k) {
    if (!best) {
      best = k;
      continue;
    }
    const auto& a = hps[k];
    const auto& b = hps[*best];
    if (a.nth_end < b.nth_end || (a.nth_end == b.nth_end && a.first_index < b.first_index))
      best = k;
  }
  return best;
}

std::vector<std::string> check_hot_path(const HotPath& hp, const Program& p) {
  std::vector<std::string> diags;
  if (hp.path.empty()) {
    diags.push_back("empty hot path");
    return diags;
  }
  const Command& c0 = hp.cmd(0);
  if (hp.cmd(hp.n()).succ != c0.label) diags.push_back("last successor does not return to head");
  auto c0c = cmpl(c0, p);
  for (std::size_t i = 1; i <= hp.n(); ++i)
    if (hp.cmd(i) == c0 || (c0c && hp.cmd(i) == *c0c))
      diags.push_back("head repeats at position " + std::to_string(i));
  return diags;
}

}  // namespace tjit

#include "tjit/observation.hpp"

#include <algorithm>

namespace tjit {

std::string to_string(const StoreSeq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += to_string(s[i]);
  }
  return out;
}

StoreSeq st(const Trace& t) {
  StoreSeq out;
  out.reserve(t.size());
  for (auto& s : t) out.push_back(s.store);
  return out;
}

StoreSeq sc(const StoreSeq& stores) {
  StoreSeq out;
  for (auto& s : stores)
    if (out.empty() || out.back() != s) out.push_back(s);
  return out;
}

StoreSeq sc(const Trace& t) {
  StoreSeq out;
  for (auto& s : t)
    if (out.empty() || out.back() != s.store) out.push_back(s.store);
  return out;
}

StoreSeq out(const Trace& t, const std::set<std::string>& X) {
  StoreSeq res;
  for (auto& s : t)
    if (s.cmd.act.kind == Action::Kind::Put) res.push_back(s.store.restrict(X));
  return res;
}

StoreSeq osch(const Trace& t, const std::set<std::string>& X) {
  StoreSeq res;
  bool put_seen = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    put_seen = put_seen || t[i].cmd.act.kind == Action::Kind::Put;
    bool last = i + 1 == t.size();
    if (last || t[i].store != t[i + 1].store) {
      if (put_seen) res.push_back(t[i].store.restrict(X));
      put_seen = false;
    }
  }
  return res;
}

std::set<StoreSeq> alpha_st(const std::vector<Trace>& T) {
  std::set<StoreSeq> out;
  for (auto& t : T) out.insert(st(t));
  return out;
}

std::set<StoreSeq> alpha_sc(const std::vector<Trace>& T) {
  std::set<StoreSeq> out;
  for (auto& t : T) out.insert(sc(t));
  return out;
}

std::set<StoreSeq> alpha_out(const std::vector<Trace>& T, const std::set<std::string>& X) {
  std::set<StoreSeq> res;
  for (auto& t : T) res.insert(out(t, X));
  return res;
}

std::set<StoreSeq> alpha_osch(const std::vector<Trace>& T, const std::set<std::string>& X) {
  std::set<StoreSeq> res;
  for (auto& t : T) res.insert(osch(t, X));
  return res;
}

std::set<StoreSeq> alpha_rho_sc(const std::vector<Trace>& T, const Store& rho) {
  std::set<StoreSeq> res;
  for (auto& t : T)
    if (!t.empty() && t.front().store == rho) res.insert(sc(t));
  return res;
}

bool EquivReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Verdict compare_observations(const StoreSeq& a, bool a_trunc, const StoreSeq& b, bool b_trunc) {
  Verdict v;
  v.lhs = a;
  v.rhs = b;
  v.lhs_truncated = a_trunc;
  v.rhs_truncated = b_trunc;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) {
      v.divergence = i;
      return v;
    }
  if (a.size() != b.size()) {
    // The shorter side must be the one cut off by the budget.
    bool shorter_truncated = a.size() < b.size() ? a_trunc : b_trunc;
    if (!shorter_truncated) {
      v.divergence = n;
      return v;
    }
  }
  v.pass = true;
  return v;
}

namespace {

StoreSeq observe(const Trace& t, Observation obs, const std::set<std::string>& X) {
  switch (obs) {
    case Observation::SC:
      return sc(t);
    case Observation::Out:
      return out(t, X);
    case Observation::Osch:
      return osch(t, X);
  }
  return {};
}

}  // namespace

EquivReport equiv_check(const Program& p1, const Program& p2, const std::vector<Store>& initials,
                        std::size_t budget, Observation obs, std::set<std::string> X) {
  if (X.empty()) {
    X = p1.vars();
    auto v2 = p2.vars();
    X.insert(v2.begin(), v2.end());
  }
  EquivReport rep;
  for (auto& rho : initials) {
    Verdict v;
    try {
      auto r1 = run(p1, rho, budget);
      auto r2 = run(p2, rho, budget);
      v = compare_observations(observe(r1.trace, obs, X), r1.truncated,
                               observe(r2.trace, obs, X), r2.truncated);
    } catch (const std::exception& e) {
      v.pass = false;
      v.error = e.what();
    }
    v.initial = rho;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

EquivReport sc_equiv_check(const Program& p1, const Program& p2, const std::vector<Store>& initials,
                           std::size_t budget) {
  return equiv_check(p1, p2, initials, budget, Observation::SC);
}

std::string to_tap(const EquivReport& r, const std::string& what) {
  std::string out = "1.." + std::to_string(r.verdicts.size()) + "\n";
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    auto& v = r.verdicts[i];
    std::string n = std::to_string(i + 1);
    if (v.pass)
      out += "ok " + n + " - rho=" + to_string(v.initial) + " " + what + "-equal\n";
    else if (!v.error.empty())
      out += "not ok " + n + " - rho=" + to_string(v.initial) + " error: " + v.error + "\n";
    else
      out += "not ok " + n + " - rho=" + to_string(v.initial) + " diverged at index " +
             std::to_string(v.divergence.value_or(0)) + "\n";
  }
  return out;
}

}  // namespace tjit

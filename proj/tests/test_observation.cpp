#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tjit/generate.hpp"
#include "tjit/observation.hpp"

using namespace tjit;

namespace {

State at(const std::string& json, const std::string& cmd) {
  return State{store(json), parse_command(cmd)};
}

bool is_put(const State& s) { return s.cmd.act.kind == Action::Kind::Put; }

// Case-by-case transcription of the output-change fold.
StoreSeq osch_cases(Trace t, const std::set<std::string>& X) {
  StoreSeq res;
  while (!t.empty()) {
    if (t.size() == 1) {
      if (is_put(t[0])) res.push_back(t[0].store.restrict(X));
      break;
    }
    if (t[0].store == t[1].store) {
      if (is_put(t[0])) t[1].cmd = make_command(t[1].cmd.label, t[0].cmd.act, t[1].cmd.succ);
    } else if (is_put(t[0])) {
      res.push_back(t[0].store.restrict(X));
    }
    t.erase(t.begin());
  }
  return res;
}

Trace random_trace(std::mt19937_64& rng, std::size_t n) {
  const char* cmds[] = {"L0: skip -> L0", "L0: put {x} -> L0", "L0: x := 1 -> L0"};
  Trace t;
  for (std::size_t k = 0; k < n; ++k) {
    Store s;
    s.set("x", Value::integer(static_cast<std::int64_t>(rng() % 3)));
    t.push_back(State{s, parse_command(cmds[rng() % 3])});
  }
  return t;
}

}  // namespace

TEST_CASE("sc collapses consecutive equal stores") {
  Trace t{at("{}", "L0: x := 0 -> L1"), at(R"({"x": 0})", "L1: skip -> L2"),
          at(R"({"x": 0})", "L2: x := 1 -> L3"), at(R"({"x": 1})", "L3: skip -> .")};
  CHECK(to_string(sc(t)) == "[] [x/0] [x/1]");
  CHECK(st(t).size() == 4);
  CHECK(sc(Trace{}).empty());
  CHECK(sc(Trace{t[0]}).size() == 1);
}

TEST_CASE("sc is idempotent and ignores stuttering") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    auto t = random_trace(rng, 1 + rng() % 12);
    auto once = sc(t);
    CHECK(sc(once) == once);
    Trace stut;
    for (auto& s : t) {
      stut.push_back(s);
      if (rng() % 2) stut.push_back(s);
    }
    CHECK(sc(stut) == once);
  }
}

TEST_CASE("out keeps put states only") {
  Trace t{at(R"({"x": 1, "y": 2})", "L0: skip -> L1"), at(R"({"x": 1, "y": 2})", "L1: put {x} -> L2"),
          at(R"({"x": 1, "y": 2})", "L2: x := 5 -> .")};
  CHECK(to_string(out(t, {"x"})) == "[x/1]");
  CHECK(out(Trace{t[0], t[2]}, {"x"}).empty());
}

TEST_CASE("osch agrees with the case analysis") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 500; ++k) {
    auto t = random_trace(rng, rng() % 10);
    CHECK(osch(t, {"x"}) == osch_cases(t, {"x"}));
  }
  CHECK(osch(Trace{}, {"x"}).empty());
  CHECK(to_string(osch(Trace{at(R"({"x": 4})", "L0: put {x} -> .")}, {"x"})) == "[x/4]");
}

TEST_CASE("comparison under budgets") {
  StoreSeq a{store("{}"), store(R"({"x": 1})")};
  StoreSeq b{store("{}")};
  CHECK(compare_observations(a, false, a, false).pass);
  CHECK(compare_observations(a, false, b, true).pass);
  auto v = compare_observations(a, false, b, false);
  CHECK_FALSE(v.pass);
  CHECK(v.divergence == std::optional<std::size_t>(1));
  auto w = compare_observations(a, false, StoreSeq{store(R"({"x": 2})")}, true);
  CHECK(w.divergence == std::optional<std::size_t>(0));
}

TEST_CASE("a program is equivalent to itself") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto p = gen_program(seed);
    auto rs = sample_stores(p, seed, 3);
    CHECK(sc_equiv_check(p, p, rs, 300).pass());
    CHECK(equiv_check(p, p, rs, 300, Observation::Osch).pass());
  }
}

TEST_CASE("sc tells the counting loop from a variant") {
  auto p = sample("counting.tjit");
  auto q = parse_program(to_string(p));
  q.remove(parse_command("L4: x := x + 3 -> L1"));
  q.add(parse_command("L4: x := x + 2 -> L1"));
  auto rep = sc_equiv_check(p, q, {Store{}}, 1000);
  CHECK_FALSE(rep.pass());
  CHECK(to_tap(rep).find("not ok 1") != std::string::npos);
}

TEST_CASE("abstractions of trace sets") {
  auto p = sample("counting.tjit");
  auto t1 = run(p, Store{}, 1000).trace;
  auto t2 = run(p, store(R"({"x": 50})"), 1000).trace;
  CHECK(alpha_sc({t1, t2}).size() == 2);
  CHECK(alpha_st({t1, t1}).size() == 1);
  CHECK(alpha_rho_sc({t1, t2}, Store{}) == std::set<StoreSeq>{sc(t1)});
  CHECK(alpha_out({t1, t2}, {"x"}) == std::set<StoreSeq>{StoreSeq{}});
}

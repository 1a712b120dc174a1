#include "doctest.h"
#include "support.hpp"
#include "tjit/generate.hpp"
#include "tjit/hotpath.hpp"

using namespace tjit;

namespace {

Trace counting_trace() { return run(sample("counting.tjit"), Store{}, 1000).trace; }

std::string commands(const HotPath& hp) {
  std::string out;
  for (auto& s : hp.path) out += s.cmd.text() + "\n";
  return out;
}

}  // namespace

TEST_CASE("topological order follows the positive branch first") {
  auto p = sample("counting.tjit");
  TopoOrder ord(p);
  auto r = [&](const char* c) { return ord.rank(parse_command(c)); };
  CHECK(r("L0: x := 0 -> L1") == 0);
  CHECK(r("L1: (x <= 20) -> L2") < r("L1: !(x <= 20) -> L5"));
  CHECK(r("L2: x := x + 1 -> L3") < r("L3: (x % 3 = 0) -> L4"));
  CHECK(ord.before(parse_command("L1: (x <= 20) -> L2"), parse_command("L4: x := x + 3 -> L1")));
}

TEST_CASE("loop segments end on a backward jump to their head") {
  auto p = sample("counting.tjit");
  auto t = counting_trace();
  TopoOrder ord(p);
  auto segs = sloop(t, p);
  REQUIRE_FALSE(segs.empty());
  for (auto& s : segs) {
    CHECK(s.j < t.size() - 1);
    CHECK(t[s.j].cmd.succ == t[s.i].cmd.label);
    CHECK(ord.before(t[s.i].cmd, t[s.j].cmd));
    auto cc = cmpl(t[s.i].cmd, p);
    for (auto k = s.i + 1; k <= s.j; ++k) {
      CHECK(t[k].cmd != t[s.i].cmd);
      if (cc) CHECK(t[k].cmd != *cc);
    }
  }
  CHECK(sloop_gp(t, p).size() == 2);
}

TEST_CASE("occurrences may overlap") {
  auto c = parse_command("L0: skip -> L0");
  AbstractTrace t(5, AbsState{AbstractStore{}, c});
  CHECK(count(t, AbstractTrace(2, AbsState{AbstractStore{}, c})) == 4);
  CHECK(count(t, AbstractTrace(6, AbsState{AbstractStore{}, c})) == 0);
  CHECK(count(t, {}) == 0);
}

TEST_CASE("the two hot paths of the counting loop") {
  auto p = sample("counting.tjit");
  auto hps = alpha_hot({counting_trace()}, p, 2, "onepoint");
  REQUIRE(hps.size() == 2);
  CHECK(commands(hps[0]) ==
        "L1: (x <= 20) -> L2\nL2: x := x + 1 -> L3\nL3: !(x % 3 = 0) -> L1\n");
  CHECK(hps[0].count == 8);
  CHECK(commands(hps[1]) ==
        "L1: (x <= 20) -> L2\nL2: x := x + 1 -> L3\nL3: (x % 3 = 0) -> L4\nL4: x := x + 3 -> L1\n");
  CHECK(hps[1].count == 4);
  for (auto& hp : hps) CHECK(check_hot_path(hp, p).empty());
  auto best = select_hot_path(hps);
  REQUIRE(best);
  CHECK(*best == 0);
  CHECK(alpha_hot({counting_trace()}, p, 9, "onepoint").empty());
}

TEST_CASE("hot paths only grow when the threshold drops") {
  auto p = sample("counting.tjit");
  auto t = counting_trace();
  std::size_t prev = 0;
  for (std::size_t n = 10; n >= 1; --n) {
    auto k = hot(t, p, n, "onepoint").size();
    CHECK(k >= prev);
    prev = k;
  }
  CHECK_THROWS_AS(hot(t, p, 0, "onepoint"), std::invalid_argument);
}

TEST_CASE("mined hot paths are structurally valid on generated programs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = gen_program(seed);
    auto rho = sample_stores(p, seed, 1).front();
    auto t = run(p, rho, 400).trace;
    for (auto dom : {"onepoint", "type"})
      for (auto& hp : hot(t, p, 2, dom)) {
        CHECK(check_hot_path(hp, p).empty());
        CHECK(hp.count >= 2);
        CHECK(count(alpha_store(t, domain(dom)), hp.path) == hp.count);
      }
  }
}

TEST_CASE("merged mining joins the guards of the first occurrences") {
  auto p = sample("fold.tjit");
  auto t = run(p, Store{}, 1000).trace;
  auto hps = hot_merged(t, p, 2, "cp");
  REQUIRE_FALSE(hps.empty());
  CHECK(to_string(hps[0].guard(0)) == "{a: 2, x: top}");
}

TEST_CASE("hotcut keeps the states of the original program") {
  auto p = sample("counting.tjit");
  auto t = counting_trace();
  CHECK(hotcut(t, p) == t);
  // Foreign states in a row of three lose their middle.
  Trace u = t;
  auto foreign = parse_command("Z: skip -> Z");
  u.insert(u.begin() + 2, 4, State{u[2].store, foreign});
  auto cut = hotcut(u, p);
  CHECK(cut.size() < u.size());
  for (std::size_t k = 0; k + 2 < cut.size(); ++k)
    CHECK(!(!p.contains(cut[k].cmd) && !p.contains(cut[k + 1].cmd) && !p.contains(cut[k + 2].cmd)));
}

TEST_CASE("check_hot_path reports a broken cycle") {
  auto p = sample("counting.tjit");
  HotPath hp;
  hp.path = {AbsState{{}, parse_command("L1: (x <= 20) -> L2")},
             AbsState{{}, parse_command("L2: x := x + 1 -> L3")}};
  CHECK_FALSE(check_hot_path(hp, p).empty());
  CHECK_FALSE(check_hot_path(HotPath{}, p).empty());
}

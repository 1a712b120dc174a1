#include "doctest.h"
#include "goldens.hpp"
#include "support.hpp"
#include "tjit/generate.hpp"
#include "tjit/observation.hpp"
#include "tjit/optimize.hpp"

using namespace tjit;

namespace {

HotPath first_hot(const Program& p, const Store& rho, const std::string& dom, bool merged = false) {
  auto t = run(p, rho, 5000).trace;
  auto hps = merged ? hot_merged(t, p, 2, dom) : hot(t, p, 2, dom);
  REQUIRE_FALSE(hps.empty());
  return hps[*select_hot_path(hps)];
}

std::set<std::string> texts(const std::set<Command>& cs) {
  std::set<std::string> out;
  for (auto& c : cs) out.insert(c.text());
  return out;
}

}  // namespace

TEST_CASE("pass names") {
  CHECK(split_passes("ts|cf") == std::vector<std::string>{"ts", "cf"});
  CHECK(split_passes(" ts, dse ") == std::vector<std::string>{"ts", "dse"});
  CHECK(split_passes("").empty());
  CHECK_THROWS_AS(pass_by_name("inline"), std::invalid_argument);
}

TEST_CASE("type specialization of the sieve inner loop") {
  auto p = sample("sieve.tjit");
  auto rho = parse_initials(sample_path("sieve.init"), 0).front();
  auto o = optimize_full(p, first_hot(p, rho, "type"), {pass_by_name("ts")});
  bool typed = false;
  for (auto& t : texts(o.stitch)) typed = typed || t.find("k := k +Int i") != std::string::npos;
  CHECK(typed);
  CHECK(sc_equiv_check(p, o.program, {rho}, 20000).pass());
  CHECK_FALSE(type_specialize_map(o.extraction).empty());
}

TEST_CASE("constant folding needs a constant guard") {
  auto p = sample("fold.tjit");
  auto o = optimize_full(p, first_hot(p, Store{}, "cp", true), {pass_by_name("cf")});
  CHECK(rename_equal(o.program, parse_program(goldens::kFolded)).has_value());
  CHECK_THROWS_AS(optimize_full(p, first_hot(p, Store{}, "onepoint"), {pass_by_name("cf")}),
                  OptimizeError);
}

TEST_CASE("free variables") {
  std::set<Command> cs{parse_command("A: x := y + 1 -> B"), parse_command("B: y := z -> A")};
  CHECK(free_vars(cs) == std::set<std::string>{"z"});
}

TEST_CASE("dead store elimination on the demo loop") {
  auto p = sample("deadstore.tjit");
  auto o = optimize_full(p, first_hot(p, Store{}, "onepoint"), {pass_by_name("dse")});
  CHECK(o.stitch.size() < o.extraction.stitched.size());
  for (auto& t : texts(o.stitch)) CHECK(t.find("z := 0") == std::string::npos);
  CHECK(equiv_check(p, o.program, {Store{}}, 1000, Observation::Out).pass());
  CHECK_FALSE(sc_equiv_check(p, o.program, {Store{}}, 1000).pass());
}

TEST_CASE("a put between two stores keeps the first") {
  auto p = parse_program(R"(#entry L0
L0: i := 0 -> L1
L1: (i < 4) -> L2
L1: !(i < 4) -> L6
L2: a := 2 -> L3
L3: put {i} -> L4
L4: a := i -> L5
L5: i := i + 1 -> L1
L6: skip -> .
)");
  auto o = optimize_full(p, first_hot(p, Store{}, "onepoint"), {pass_by_name("dse")});
  bool kept = false;
  for (auto& t : texts(o.stitch)) kept = kept || t.find("a := 2") != std::string::npos;
  CHECK(kept);
  CHECK(equiv_check(p, o.program, {Store{}}, 1000, Observation::Out).pass());
}

TEST_CASE("passes keep generated programs well formed") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto p = gen_program(seed);
    auto rs = sample_stores(p, seed, 2);
    auto t = run(p, rs[0], 400).trace;
    for (auto [dom, pass] : {std::pair{"type", "ts"}, std::pair{"cp", "cf"}})
      for (auto& hp : hot_merged(t, p, 2, dom)) {
        auto o = optimize_full(p, hp, {pass_by_name(pass)});
        REQUIRE(well_formed(o.program).empty());
        CHECK(sc_equiv_check(p, o.program, rs, 400).pass());
      }
  }
}

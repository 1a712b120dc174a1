#include "doctest.h"
#include "goldens.hpp"
#include "support.hpp"
#include "tjit/extract.hpp"
#include "tjit/generate.hpp"
#include "tjit/observation.hpp"

using namespace tjit;

namespace {

HotPath counting_hp(std::size_t k) {
  auto p = sample("counting.tjit");
  return alpha_hot({run(p, Store{}, 1000).trace}, p, 2, "onepoint").at(k);
}

}  // namespace

TEST_CASE("extraction of the short path") {
  auto p = sample("counting.tjit");
  auto r = extract(p, counting_hp(0));
  CHECK(well_formed(r.transformed).empty());
  CHECK(rename_equal(r.transformed, parse_program(goldens::kCountingExtracted)).has_value());
  CHECK(r.source == p);
  CHECK(r.entry_guard.has_value());
  CHECK(r.entry_guard->label == "L1");
  for (auto& l : r.fresh_labels) CHECK_FALSE(p.labels().count(l));
  for (auto& c : r.stitched) CHECK(r.transformed.contains(c));
}

TEST_CASE("fresh labels do not clash with existing ones") {
  auto p = sample("counting.tjit");
  auto r1 = extract(p, counting_hp(0));
  auto once = r1.transformed;
  auto hps = outerhot(run(once, Store{}, 1000).trace, p, once, 2, "onepoint");
  auto best = select_hot_path(hps);
  REQUIRE(best);
  auto r2 = extract_nested(once, hps[*best], p);
  std::set<std::string> before = once.labels();
  for (auto& l : r2.fresh_labels) {
    CAPTURE(l);
    CHECK_FALSE(before.count(l));
  }
  CHECK(well_formed(r2.transformed).empty());
}

TEST_CASE("extraction preserves store changes") {
  auto p = sample("counting.tjit");
  std::vector<Store> rs{Store{}};
  for (int x = -5; x <= 25; x += 3) rs.push_back(store("{\"x\": " + std::to_string(x) + "}"));
  for (std::size_t k = 0; k < 2; ++k) {
    auto r = extract(p, counting_hp(k));
    CHECK(sc_equiv_check(p, r.transformed, rs, 2000).pass());
  }
}

TEST_CASE("replacing the stitch by itself is the identity") {
  auto r = extract(sample("counting.tjit"), counting_hp(1));
  CHECK(replace_stitch(r, r.stitched) == r.transformed);
}

TEST_CASE("nested equals plain extraction on original commands") {
  auto p = sample("counting.tjit");
  auto hp = counting_hp(1);
  CHECK(extract_nested(p, hp, p).transformed == extract(p, hp).transformed);
}

TEST_CASE("extraction on generated programs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = gen_program(seed);
    auto rs = sample_stores(p, seed, 2);
    auto hps = hot(run(p, rs[0], 400).trace, p, 2, "onepoint");
    for (auto& hp : hps) {
      auto r = extract(p, hp);
      REQUIRE(well_formed(r.transformed).empty());
      CHECK(sc_equiv_check(p, r.transformed, rs, 400).pass());
    }
  }
}

TEST_CASE("an invalid hot path is refused") {
  HotPath hp;
  hp.domain = "onepoint";
  hp.path = {AbsState{{}, parse_command("L1: (x <= 20) -> L2")}};
  CHECK_THROWS_AS(extract(sample("counting.tjit"), hp), ExtractError);
}

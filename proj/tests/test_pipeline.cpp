#include "doctest.h"
#include "goldens.hpp"
#include "json.hpp"
#include "support.hpp"
#include "tjit/generate.hpp"
#include "tjit/pipeline.hpp"

using namespace tjit;

TEST_CASE("pipeline on the counting loop") {
  PipelineConfig cfg;
  cfg.initials = parse_initials("empty;x=-3..25", 0);
  auto rep = run_pipeline(sample("counting.tjit"), cfg);
  CHECK(rep.pass());
  REQUIRE(rep.rounds.size() >= 2);
  CHECK(rename_equal(rep.rounds[0].after, parse_program(goldens::kCountingExtracted)).has_value());
  CHECK(rep.observation == Observation::SC);
  auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j["observation"] == "sc");
  CHECK(j.contains("rounds"));
}

TEST_CASE("dead store pipeline is checked on outputs") {
  PipelineConfig cfg;
  cfg.passes = {"dse"};
  auto rep = run_pipeline(sample("deadstore.tjit"), cfg);
  CHECK(rep.observation == Observation::Out);
  CHECK(rep.pass());
}

TEST_CASE("a bad pass name is reported, not thrown") {
  PipelineConfig cfg;
  cfg.passes = {"inline"};
  PipelineReport rep;
  try {
    rep = run_pipeline(sample("counting.tjit"), cfg);
  } catch (const std::invalid_argument&) {
    return;
  }
  CHECK_FALSE(rep.error.empty());
}

TEST_CASE("pipelines on generated programs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = gen_program(seed);
    PipelineConfig cfg;
    cfg.budget = 500;
    cfg.initials = sample_stores(p, seed, 2);
    cfg.domain = seed % 2 ? "type" : "onepoint";
    if (seed % 2) cfg.passes = {"ts"};
    auto rep = run_pipeline(p, cfg);
    CHECK_MESSAGE(rep.pass(), "seed " << seed << " " << rep.error);
    for (auto& r : rep.rounds) CHECK(well_formed(r.after).empty());
  }
}

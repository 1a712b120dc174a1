#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tjit/extract.hpp"
#include "tjit/hotpath.hpp"
#include "tjit/observation.hpp"
#include "tjit/optimize.hpp"

namespace tjit {

struct PipelineConfig {
  std::string domain = "onepoint";
  std::size_t threshold = 2;
  std::size_t budget = 2000;
  std::vector<Store> initials{Store{}};  // the first one drives hot path mining
  std::vector<std::string> passes;
  std::size_t rounds = 3;
  std::uint64_t seed = 0;
};

struct PipelineRound {
  HotPath hp;
  Program before, after;
  std::vector<std::string> skipped;  // candidates whose extraction failed, with reasons
};

struct PipelineReport {
  std::vector<HotPath> hotpaths;  // mined in the first round
  std::vector<PipelineRound> rounds;
  Program before, after;
  Observation observation = Observation::SC;
  EquivReport verdicts;
  // Set on failure: the smallest failing setup found by shrinking.
  std::optional<Verdict> minimized;
  std::size_t minimized_budget = 0;
  std::string error;  // "stage: message"

  bool pass() const { return error.empty() && verdicts.pass(); }
};

// run -> mine -> extract (nested after the first round) -> passes,
// repeated, then the equivalence check against the original.
PipelineReport run_pipeline(const Program& p, const PipelineConfig& cfg);

std::string report_json(const PipelineReport& r);

}  // namespace tjit

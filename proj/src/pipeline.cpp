#include "tjit/pipeline.hpp"

#include <algorithm>

#include "json.hpp"

namespace tjit {

namespace {

bool uses_dse(const std::vector<std::string>& passes) {
  return std::find(passes.begin(), passes.end(), "dse") != passes.end();
}

EquivReport check(const Program& a, const Program& b, const std::vector<Store>& initials,
                  std::size_t budget, Observation obs) {
  return equiv_check(a, b, initials, budget, obs);
}

// Halve the failing pool, then the budget, while the failure persists.
void shrink(const Program& a, const Program& b, const PipelineConfig& cfg, PipelineReport& rep) {
  std::vector<Store> pool;
  for (auto& v : rep.verdicts.verdicts)
    if (!v.pass) pool.push_back(v.initial);
  std::size_t budget = cfg.budget;
  while (pool.size() > 1) {
    std::vector<Store> half(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(pool.size() / 2));
    if (check(a, b, half, budget, rep.observation).pass()) break;
    pool = std::move(half);
  }
  pool.resize(1);
  while (budget > 1 && !check(a, b, pool, budget / 2, rep.observation).pass()) budget /= 2;
  rep.minimized = check(a, b, pool, budget, rep.observation).verdicts.front();
  rep.minimized_budget = budget;
}

}  // namespace

PipelineReport run_pipeline(const Program& p, const PipelineConfig& cfg) {
  PipelineReport rep;
  rep.before = p;
  rep.after = p;
  rep.observation = uses_dse(cfg.passes) ? Observation::Out : Observation::SC;
  std::string stage = "parse";
  try {
    stage = "well-formedness";
    auto diags = well_formed(p, true);
    if (!diags.empty()) throw std::invalid_argument(diags.front());
    stage = "passes";
    std::vector<Pass> passes;
    for (auto& n : cfg.passes) passes.push_back(pass_by_name(n));
    const Store rho = cfg.initials.empty() ? Store{} : cfg.initials.front();
    const bool merged = cfg.domain == "cp";

    Program cur = p;
    for (std::size_t round = 0; round < cfg.rounds; ++round) {
      stage = "run";
      auto r = run(cur, rho, cfg.budget);
      stage = "mine";
      auto cands = outerhot(r.trace, p, cur, cfg.threshold, cfg.domain, merged);
      if (round == 0) rep.hotpaths = cands;
      std::stable_sort(cands.begin(), cands.end(), [](const HotPath& a, const HotPath& b) {
        return a.nth_end != b.nth_end ? a.nth_end < b.nth_end : a.first_index < b.first_index;
      });
      PipelineRound pr;
      pr.before = cur;
      bool done = false;
      for (auto& hp : cands) {
        stage = "extract";
        try {
          auto st = extract_nested(cur, hp, p);
          stage = "optimize";
          auto o = optimize_stitch(st, passes);
          pr.hp = hp;
          pr.after = o.program;
          done = true;
          break;
        } catch (const ExtractError& e) {
          pr.skipped.push_back(e.what());
        } catch (const OptimizeError& e) {
          pr.skipped.push_back(e.what());
        }
      }
      if (!done) break;
      cur = pr.after;
      rep.rounds.push_back(std::move(pr));
    }
    rep.after = cur;
    stage = "check";
    rep.verdicts = check(p, cur, cfg.initials, cfg.budget, rep.observation);
    std::stable_sort(rep.verdicts.verdicts.begin(), rep.verdicts.verdicts.end(),
                     [](const Verdict& a, const Verdict& b) { return a.initial < b.initial; });
    if (!rep.verdicts.pass()) shrink(p, cur, cfg, rep);
  } catch (const std::exception& e) {
    rep.error = stage + ": " + e.what();
  }
  return rep;
}

std::string report_json(const PipelineReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["hotpaths"] = ordered_json::array();
  for (auto& hp : r.hotpaths) j["hotpaths"].push_back(to_string(hp));
  j["rounds"] = ordered_json::array();
  for (auto& pr : r.rounds) {
    ordered_json o;
    o["hotpath"] = to_string(pr.hp);
    o["skipped"] = pr.skipped;
    j["rounds"].push_back(o);
  }
  j["observation"] = r.observation == Observation::Out ? "out" : "sc";
  j["verdicts"] = ordered_json::array();
  for (auto& v : r.verdicts.verdicts) {
    ordered_json o;
    o["initial"] = to_string(v.initial);
    o["result"] = v.pass ? "PASS" : "FAIL";
    if (v.divergence) o["divergence"] = *v.divergence;
    if (!v.error.empty()) o["error"] = v.error;
    j["verdicts"].push_back(o);
  }
  if (r.minimized) {
    j["minimized"] = {{"initial", to_string(r.minimized->initial)},
                      {"budget", r.minimized_budget},
                      {"divergence", r.minimized->divergence.value_or(0)}};
  }
  if (!r.error.empty()) j["error"] = r.error;
  j["programs"] = {{"before", to_string(r.before)}, {"after", to_string(r.after)}};
  j["result"] = r.pass() ? "PASS" : "FAIL";
  return j.dump(2);
}

}  // namespace tjit

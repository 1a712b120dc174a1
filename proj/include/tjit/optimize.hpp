#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tjit/extract.hpp"
#include "tjit/witness.hpp"

namespace tjit {

struct OptimizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A pass rewrites the current stitched command set of an extraction.
using Pass = std::function<std::set<Command>(const StitchResult&, const std::set<Command>&)>;

// Typed additions in relabelled assignments, from the type guard of
// each position. Nested additions are specialized too.
std::set<Command> type_specialize(const StitchResult& st, const std::set<Command>& cmds);
std::set<Command> type_specialize(const StitchResult& st);
// Generic stitched command -> its specialized form, for the ones that change.
CommandMap type_specialize_map(const StitchResult& st);

// Substitutes guard constants for never-assigned variables in the
// right-hand sides of relabelled assignments.
std::set<Command> const_fold(const StitchResult& st, const std::set<Command>& cmds);
std::set<Command> const_fold(const StitchResult& st);

// Variables occurring in cs minus the assignment targets of cs.
std::set<std::string> free_vars(const std::set<Command>& cs);

// Removes assignments overwritten further along the stitch before any
// read, put or feasible exit, rewiring their predecessors.
std::set<Command> dead_store_eliminate(const StitchResult& st, const std::set<Command>& cmds);
std::set<Command> dead_store_eliminate(const StitchResult& st);

// "ts", "cf", "dse"; throws std::invalid_argument otherwise.
Pass pass_by_name(const std::string& name);
// "ts|cf" or "ts,cf"
std::vector<std::string> split_passes(const std::string& spec);

struct Optimized {
  StitchResult extraction;
  std::set<Command> stitch;  // after the passes
  Program program;
};

// Extraction followed by the passes, left to right, on the stitch.
// Throws OptimizeError when a pass moves the stitch boundary.
Optimized optimize_full(const Program& p, const HotPath& hp, const std::vector<Pass>& passes);
Optimized optimize_stitch(const StitchResult& r, const std::vector<Pass>& passes);

}  // namespace tjit

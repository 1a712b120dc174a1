#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tjit/hotpath.hpp"
#include "tjit/syntax.hpp"

namespace tjit {

struct ExtractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// What a stitched command stands for, so that witnesses and passes can
// map it back to the hot path.
struct StitchRole {
  enum class Kind {
    EntryGuard,      // L0: guard a0 -> l0
    EntryGuardFail,  // L0: !guard a0 -> bar(L0)
    Guard,           // g_i: guard a_i -> l_i
    GuardFail,       // g_i: !guard a_i -> L_i
    Act,             // l_i: act(C_i) -> g_{i+1} | L0 | L_{i+1}
    NegAct,          // l_i: !act(C_i) -> suc(cmpl(C_i))
    Rewired,         // exit of an inner stitched path, retargeted to g_{i+1}
    Bar,             // bar(L0): act(C0) -> L1
    BarNeg,          // bar(L0): !act(C0) -> L1^c
  };
  Kind kind;
  std::size_t i = 0;
};

struct StitchPosition {
  bool in_original = false;
  std::optional<Command> guard, guard_fail;  // g_i pair (i >= 1)
  std::optional<Command> act, neg_act;       // l_i commands
  std::optional<Command> rewired;            // clause for inner-path exits
};

struct StitchResult {
  Program transformed;
  Program source;  // the program the transform was applied to
  Program original;
  HotPath hp;
  std::set<Command> stitched;
  std::vector<StitchPosition> pos;
  std::optional<Command> entry_guard, entry_guard_fail;
  std::optional<Command> bar_act, bar_neg;
  std::map<Command, StitchRole> roles;  // stitched commands and bar copies
  std::set<std::string> fresh_labels;
  // "l0" -> "h#0", "g1" -> "g#1", "bar" -> "bar#L1"
  std::map<std::string, std::string> label_map;
};

// Plain trace extraction of hp into p.
StitchResult extract(const Program& p, const HotPath& hp);

// Extraction of hp into a program that already carries stitched paths.
// Commands of hp outside `original` are entry or exit commands of inner
// paths. Equals extract() when every hp command is in `original`.
StitchResult extract_nested(const Program& current, const HotPath& hp, const Program& original);

// Replace the stitched commands of r by `replacement` (same boundary).
Program replace_stitch(const StitchResult& r, const std::set<Command>& replacement);

// Extraction for programs compiled from while-programs: a guardless
// relabelled copy of the loop path. Returns p unchanged when no command
// past the loop test has a complement. The entry moves onto the copy
// when the head was the entry.
Program extract_gp(const Program& p, const std::vector<Command>& hp);

}  // namespace tjit

#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "tjit/extract.hpp"
#include "tjit/semantics.hpp"

namespace tjit {

struct WitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maps a trace of the source program onto the extracted program,
// replacing every guarded run through the hot path by its stitched
// copy. Only plain extractions (every hot path command in the
// original) are supported.
Trace tr_out(const StitchResult& r, const Trace& t);

// Maps a trace of the extracted program back onto the source: guard
// states disappear (a trailing one becomes its hot path command) and
// relabelled commands return to their originals.
Trace rtr(const StitchResult& r, const Trace& t);

// Specialized command -> generic command, as produced by an
// optimization of the stitch.
using CommandMap = std::map<Command, Command>;

// Type de-specialization: typed additions go back to generic ones. A
// typed addition whose operands do not have the tag's type ends the
// trace.
Trace td(const CommandMap& generic_of, const Trace& t);

// Type specialization of a stitch trace. The trace is cut right after
// the first specialized state whose store escapes the governing guard.
Trace sp(const StitchResult& r, const CommandMap& specialized_of, const Trace& t);

// Applies f to every maximal run of states whose commands lie in
// `fragment`, leaving the other states alone.
Trace lift_full(const std::set<Command>& fragment, const std::function<Trace(const Trace&)>& f,
                const Trace& t);

}  // namespace tjit

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tjit/observation.hpp"
#include "tjit/semantics.hpp"
#include "tjit/syntax.hpp"

namespace tjit {

// While-programs with bail, compiled into the command language.

struct GpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GpCmd;
using GpCmdP = std::shared_ptr<const GpCmd>;
// A statement is a flat command sequence; the empty one is epsilon.
using Stm = std::vector<GpCmdP>;

struct GpCmd {
  enum class Kind { Skip, Assign, If, While, Bail };
  Kind kind;
  std::string x;  // Assign
  ExprP e;        // Assign
  BExprP b;       // If, While, Bail
  Stm body;       // If, While, Bail
};

GpCmdP gp_skip();
GpCmdP gp_assign(std::string x, ExprP e);
GpCmdP gp_if(BExprP b, Stm body);
GpCmdP gp_while(BExprP b, Stm body);
GpCmdP gp_bail(BExprP b, Stm body);

Stm concat(const Stm& a, const Stm& b);
// One-line canonical form; equal statements print equally.
std::string to_string(const Stm& s);
// Indented form for humans.
std::string pretty(const Stm& s);
bool same(const Stm& a, const Stm& b);

// skip; x := E; if B then { S } while B do { S } bail B to { S }
Stm parse_gp(const std::string& text);

struct GpState {
  Store store;
  Stm stm;
};

using GpTrace = std::vector<GpState>;

// Baseline step; nullopt when stuck (epsilon, undef test or value).
std::optional<GpState> gp_step(const GpState& s);

struct GpRun {
  GpTrace trace;
  bool truncated = false;
};
GpRun gp_run(const Stm& s, const Store& rho0, std::size_t budget);

// Injective statement labels, memoized on the printed form.
class GpLabeler {
 public:
  std::string operator()(const Stm& s);

 private:
  std::map<std::string, std::string> ids_;
};

// First commands of s.
std::vector<Command> gp_first(const Stm& s, GpLabeler& l);
// Full compilation; the entry is l(s).
Program gp_compile(const Stm& s, GpLabeler& l);
Program gp_compile(const Stm& s);

// Compiled state; throws GpError on an undef if/bail test.
State gp_compile_state(const GpState& s, GpLabeler& l);
Trace gp_compile_trace(const GpTrace& t, GpLabeler& l);
// Rebuilds the GP run behind a trace of gp_compile(s, l) from l(s).
GpTrace gp_decompile_trace(const Trace& t, const Stm& s, GpLabeler& l);

// One baseline step against the compiled program: the compiled
// successor must be among the program's successors, and be the only
// enabled one. Returns a diagnostic on mismatch.
std::optional<std::string> check_compile_step(const Program& compiled, const GpState& s,
                                              GpLabeler& l);

// Recording mode: loop entry K_w, recorded trace t, current statement.
struct GpTState {
  Store store;
  Stm kw, t, cur;
};
using GpExtState = std::variant<GpState, GpTState>;

struct GpTraceStep {
  GpExtState next;
  std::string rule;  // "B", "T1" .. "T6"
};

// One step of the tracing machine. Plain states start recording at an
// unfolded loop with a true test when `record` is set; recording states
// fall back to a baseline step (T6) when no recording rule applies.
std::optional<GpTraceStep> gp_trace_step(const GpExtState& s, bool record = true);

struct GpRecording {
  Stm t;               // recorded loop body
  Stm stitched;        // (while B do t) K
  Program compiled;    // gp_compile(S)
  std::vector<Command> hp;  // hot path on the compiled program
  std::vector<std::string> rules;
  GpTrace segment;     // from the loop entry back to it
};

// Runs S (while-headed) until the first loop iteration is recorded.
GpRecording gp_record_hot_path(const Stm& s, const Store& rho0, std::size_t budget);

struct GpCheck {
  GpRecording rec;
  Program extracted, stitched;
  std::optional<std::map<std::string, std::string>> renaming;
  EquivReport runs;  // sc agreement of the GP runs of S and the stitched program
  bool pass() const { return renaming.has_value() && runs.pass(); }
};

using GpExtraction = std::function<Program(const Program&, const std::vector<Command>&)>;

// Records from initials[0] and compares extraction of the compiled loop
// against compilation of the stitched loop.
GpCheck gp_equivalence_check(const Stm& s, const std::vector<Store>& initials, std::size_t budget,
                             const GpExtraction& extr = {});

}  // namespace tjit

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tjit/domains.hpp"
#include "tjit/semantics.hpp"

namespace tjit {

struct AbsState {
  AbstractStore abs;
  Command cmd;

  friend bool operator==(const AbsState& a, const AbsState& b) {
    return a.cmd == b.cmd && a.abs == b.abs;
  }
  friend bool operator!=(const AbsState& a, const AbsState& b) { return !(a == b); }
  friend bool operator<(const AbsState& a, const AbsState& b) {
    if (a.cmd != b.cmd) return a.cmd < b.cmd;
    return a.abs < b.abs;
  }
};

using AbstractTrace = std::vector<AbsState>;

AbstractTrace alpha_store(const Trace& t, const Domain& d);

// Reverse-postorder ranks over commands, depth first from the entry
// commands. At each label the positive branch (guard success, true
// test) is visited first; unreachable commands come last.
// A jump from C to C' is backward when rank(C') <= rank(C).
class TopoOrder {
 public:
  TopoOrder() = default;
  explicit TopoOrder(const Program& p);
  std::size_t rank(const Command& c) const;
  // C <. C'
  bool before(const Command& a, const Command& b) const { return rank(a) <= rank(b); }
  const std::map<Command, std::size_t>& ranks() const { return rank_; }

 private:
  std::map<Command, std::size_t> rank_;
};

inline TopoOrder topo_order(const Program& p) { return TopoOrder(p); }

struct Segment {
  std::size_t i, j;  // inclusive
  friend bool operator==(const Segment& a, const Segment& b) { return a.i == b.i && a.j == b.j; }
  friend bool operator<(const Segment& a, const Segment& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
};

// Loop paths of t: segments [i, j] with j < |t|-1, C_i <. C_j,
// suc(C_j) = lbl(C_i) and no C_i or cmpl(C_i) strictly after i.
// Complements are taken in p.
std::vector<Segment> sloop(const Trace& t, const Program& p, const TopoOrder& ord);
std::vector<Segment> sloop(const Trace& t, const Program& p);

// Command-only loop paths, distinct, by first occurrence.
std::vector<std::vector<Command>> sloop_gp(const Trace& t, const Program& p);

// Overlapping occurrences of path in trace.
std::size_t count(const AbstractTrace& trace, const AbstractTrace& path);

struct HotPath {
  std::string domain;
  std::size_t threshold = 0;
  AbstractTrace path;
  std::size_t count = 0;
  std::size_t first_index = 0;  // start of the first occurrence
  std::size_t nth_end = 0;      // last index of the threshold-th occurrence

  std::size_t n() const { return path.size() - 1; }
  std::size_t next(std::size_t i) const { return i == n() ? 0 : i + 1; }
  const Command& cmd(std::size_t i) const { return path[i].cmd; }
  const AbstractStore& guard(std::size_t i) const { return path[i].abs; }
};

// "2-hot [onepoint] : ({}) L1: (x <= 20) -> L2 ; ... count=8"
std::string to_string(const HotPath& hp);

// Hot paths of t: abstracted loop paths occurring at least n times in
// alpha_store(t), sorted by first occurrence.
std::vector<HotPath> hot(const Trace& t, const Program& p, std::size_t n, const std::string& dom);

// Variant for domains where per-state abstraction never repeats (cp):
// loop paths are grouped by their command sequence, counted on the
// command projection, and each guard is alpha over the stores seen at
// that position in the first n occurrences.
std::vector<HotPath> hot_merged(const Trace& t, const Program& p, std::size_t n,
                                const std::string& dom);

std::vector<HotPath> alpha_hot(const std::vector<Trace>& ts, const Program& p, std::size_t n,
                               const std::string& dom);

// Drops every middle state of three consecutive states outside original.
Trace hotcut(const Trace& t, const Program& original);

// Hot paths of hotcut(t); loop tests use current's order and complements.
std::vector<HotPath> outerhot(const Trace& t, const Program& original, const Program& current,
                              std::size_t n, const std::string& dom, bool merged = false);

// The path whose threshold-th occurrence completes first, as a runtime
// monitor would see it.
std::optional<std::size_t> select_hot_path(const std::vector<HotPath>& hps);

// Structural checks: cyclic successor and no interior head or
// complement. Empty when valid.
std::vector<std::string> check_hot_path(const HotPath& hp, const Program& p);

}  // namespace tjit

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tjit/hotpath.hpp"
#include "tjit/semantics.hpp"

namespace tjit {

// {"x": 3, "s": "foo", "b": true}
std::string store_to_json(const Store& s);
Store store_from_json(const std::string& text);

// One {"store", "label", "action", "succ"} object per line, followed by
// {"truncated": true} when the run was cut off.
std::string trace_to_jsonl(const Trace& t, bool truncated = false);
Trace trace_from_jsonl(const std::string& text, bool* truncated = nullptr);

// Initial stores from a file (one JSON store per line) or an inline
// spec. Specs separated by ';' are concatenated:
//   empty              the empty store
//   {"x": 1}           one store as JSON
//   x=0..3,y=1..2      product of integer ranges
//   rand:N:x,y         N stores with seeded integers in [-10, 30]
std::vector<Store> parse_initials(const std::string& spec_or_path, std::uint64_t seed);

std::string read_file(const std::string& path);

// Reads a hot path in the printed form of to_string(HotPath), or one
// "(abstract store) command" per line. The "N-hot [domain] :" header, when
// present, overrides `domain`.
HotPath parse_hot_path(const std::string& text, const std::string& domain = "onepoint");

// Graphviz digraph: one node per label, one edge per command. Commands
// in `highlight` are drawn bold.
std::string program_to_dot(const Program& p, const std::set<Command>& highlight = {});

}  // namespace tjit

#pragma once

#include <cstdint>
#include <vector>

#include "tjit/gp.hpp"
#include "tjit/syntax.hpp"
#include "tjit/value.hpp"

namespace tjit {

struct GenBounds {
  std::size_t min_stmts = 4, max_stmts = 12;  // statements in the loop body tree
};

// A well-formed deterministic program around a counted outer loop, with
// nested if/else, inner counted loops, puts and string updates. Some
// variables are read before any assignment; sample_stores binds them.
Program gen_program(std::uint64_t seed, GenBounds b = {});

// Stores binding the variables p reads before assigning them.
std::vector<Store> sample_stores(const Program& p, std::uint64_t seed, std::size_t count);

struct GpSample {
  Stm program;  // while-headed
  std::vector<Store> stores;
};

// A while-headed program whose variables come from the initial stores.
// With `bails`, bail commands may appear after the loop.
GpSample gen_gp(std::uint64_t seed, std::size_t count, bool bails = false);

}  // namespace tjit

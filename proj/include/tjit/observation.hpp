#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tjit/semantics.hpp"

namespace tjit {

using StoreSeq = std::vector<Store>;

std::string to_string(const StoreSeq& s);

// Plain store sequence of a trace.
StoreSeq st(const Trace& t);
// Store changes: consecutive equal stores collapse.
StoreSeq sc(const Trace& t);
StoreSeq sc(const StoreSeq& stores);
// Stores at put states, restricted to X.
StoreSeq out(const Trace& t, const std::set<std::string>& X);
// Store changes at output points: a run of equal stores is recorded
// (restricted to X) only if one of its states is a put.
StoreSeq osch(const Trace& t, const std::set<std::string>& X);

std::set<StoreSeq> alpha_st(const std::vector<Trace>& T);
std::set<StoreSeq> alpha_sc(const std::vector<Trace>& T);
std::set<StoreSeq> alpha_out(const std::vector<Trace>& T, const std::set<std::string>& X);
std::set<StoreSeq> alpha_osch(const std::vector<Trace>& T, const std::set<std::string>& X);
// sc images of the traces whose first store is rho.
std::set<StoreSeq> alpha_rho_sc(const std::vector<Trace>& T, const Store& rho);

enum class Observation { SC, Out, Osch };

struct Verdict {
  Store initial;
  bool pass = false;
  std::optional<std::size_t> divergence;  // first differing index
  StoreSeq lhs, rhs;
  bool lhs_truncated = false, rhs_truncated = false;
  std::string error;  // a run threw
};

struct EquivReport {
  std::vector<Verdict> verdicts;
  bool pass() const;
};

// Compares two observation sequences under the bounded-run discipline:
// one must be a prefix of the other, and they must be equal when both
// runs finished within budget.
Verdict compare_observations(const StoreSeq& a, bool a_trunc, const StoreSeq& b, bool b_trunc);

EquivReport sc_equiv_check(const Program& p1, const Program& p2, const std::vector<Store>& initials,
                           std::size_t budget);

// Generalized check. X empty means vars(p1) u vars(p2).
EquivReport equiv_check(const Program& p1, const Program& p2, const std::vector<Store>& initials,
                        std::size_t budget, Observation obs, std::set<std::string> X = {});

// ok 1 - rho={...} sc-equal / not ok 2 - diverged at index k
std::string to_tap(const EquivReport& r, const std::string& what = "sc");

}  // namespace tjit

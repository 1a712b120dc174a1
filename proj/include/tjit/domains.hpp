#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tjit/syntax.hpp"
#include "tjit/value.hpp"

namespace tjit {

// A nonrelational store abstraction. Elements are AbstractStores; gamma
// is never built, only tested through contains().
class Domain {
 public:
  virtual ~Domain() = default;
  virtual std::string tag() const = 0;
  virtual AbstractStore alpha(const std::vector<Store>& stores) const = 0;
  virtual bool contains(const AbstractStore& a, const Store& rho) const = 0;
  virtual bool leq(const AbstractStore& a, const AbstractStore& b) const = 0;
  virtual AbstractStore top() const = 0;
  AbstractStore bottom() const {
    AbstractStore b;
    b.bottom = true;
    return b;
  }
  AbstractStore alpha1(const Store& rho) const { return alpha({rho}); }
};

// Lookup by tag ("onepoint", "type", "cp"). Throws std::invalid_argument
// for unknown tags.
const Domain& domain(const std::string& tag);
bool has_domain(const std::string& tag);
void register_domain(std::shared_ptr<const Domain> d);
std::vector<std::string> domain_tags();

// Value-level type lattice: Bot below Int, String, Bool, Undef below Top.
TypeName type_of(const Value& v);
TypeName type_alpha(const std::set<Value>& vs);
bool type_leq(TypeName a, TypeName b);
TypeName type_join(TypeName a, TypeName b);

// Slot of x in a type store. A family slot "b[]" covers unlisted b_i,
// which may also be unbound, so they read as the family type joined
// with Undef.
TypeName type_lookup(const AbstractStore& a, const std::string& x);

TypeName abstract_add_type(TypeName t1, TypeName t2);
TypeName eval_type(const Expr& e, const AbstractStore& rt);

// Flat constant lattice.
CPVal cp_alpha(const std::set<Value>& vs);
bool cp_leq(const CPVal& a, const CPVal& b);
CPVal cp_lookup(const AbstractStore& a, const std::string& x);
CPVal cp_const(Value v);
CPVal cp_top();
CPVal cp_bot();

}  // namespace tjit

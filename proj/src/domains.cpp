#include "tjit/domains.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tjit {

TypeName type_of(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Undef:
      return TypeName::Undef;
    case Value::Kind::Int:
      return TypeName::Int;
    case Value::Kind::Str:
      return TypeName::Str;
    case Value::Kind::Bool:
      return TypeName::Bool;
  }
  return TypeName::Top;
}

bool type_leq(TypeName a, TypeName b) {
  return a == b || a == TypeName::Bot || b == TypeName::Top;
}

TypeName type_join(TypeName a, TypeName b) {
  if (type_leq(a, b)) return b;
  if (type_leq(b, a)) return a;
  return TypeName::Top;
}

TypeName type_alpha(const std::set<Value>& vs) {
  TypeName t = TypeName::Bot;
  for (auto& v : vs) t = type_join(t, type_of(v));
  return t;
}

namespace {

bool is_family_key(const std::string& k) {
  return k.size() > 2 && k.compare(k.size() - 2, 2, "[]") == 0;
}

std::string family_key(const std::string& base) { return base + "[]"; }

bool has_bot_slot(const AbstractStore& a) {
  for (auto& [k, s] : a.slots) {
    if (auto t = std::get_if<TypeName>(&s); t && *t == TypeName::Bot) return true;
    if (auto c = std::get_if<CPVal>(&s); c && c->kind == CPVal::Kind::Bot) return true;
  }
  return false;
}

std::set<std::string> all_vars(const std::vector<Store>& stores) {
  std::set<std::string> xs;
  for (auto& s : stores)
    for (auto& [k, v] : s.bindings()) xs.insert(k);
  return xs;
}

class OnePoint : public Domain {
 public:
  std::string tag() const override { return "onepoint"; }
  AbstractStore alpha(const std::vector<Store>&) const override { return {}; }
  bool contains(const AbstractStore&, const Store&) const override { return true; }
  bool leq(const AbstractStore&, const AbstractStore&) const override { return true; }
  AbstractStore top() const override { return {}; }
};

class Types : public Domain {
 public:
  std::string tag() const override { return "type"; }

  AbstractStore alpha(const std::vector<Store>& stores) const override {
    if (stores.empty()) return bottom();
    AbstractStore a;
    std::map<std::string, std::vector<std::string>> families;
    for (auto& x : all_vars(stores)) {
      std::set<Value> vs;
      for (auto& s : stores) vs.insert(s.get(x));
      TypeName t = type_alpha(vs);
      if (t == TypeName::Undef) continue;
      a.slots[x] = t;
      if (auto f = family_of(x)) families[*f].push_back(x);
    }
    // Arrays: collapse a homogeneous element family into one slot.
    for (auto& [base, members] : families) {
      if (members.size() < 2 || a.slots.count(base)) continue;
      Slot first = a.slots[members[0]];
      bool same = true;
      for (auto& m : members) same = same && a.slots[m] == first;
      if (!same) continue;
      for (auto& m : members) a.slots.erase(m);
      a.slots[family_key(base)] = first;
    }
    return a;
  }

  bool contains(const AbstractStore& a, const Store& rho) const override {
    if (a.bottom || has_bot_slot(a)) return false;
    for (auto& [x, v] : rho.bindings()) {
      TypeName t = type_of(v);
      auto it = a.slots.find(x);
      if (it != a.slots.end()) {
        if (!type_leq(t, std::get<TypeName>(it->second))) return false;
        continue;
      }
      auto f = family_of(x);
      auto fit = f ? a.slots.find(family_key(*f)) : a.slots.end();
      if (fit == a.slots.end()) return false;  // slot reads Undef but x is bound
      if (!type_leq(t, std::get<TypeName>(fit->second))) return false;
    }
    for (auto& [k, s] : a.slots) {
      if (is_family_key(k) || rho.bound(k)) continue;
      if (!type_leq(TypeName::Undef, std::get<TypeName>(s))) return false;
    }
    return true;
  }

  bool leq(const AbstractStore& a, const AbstractStore& b) const override {
    if (a.bottom || has_bot_slot(a)) return true;
    if (b.bottom || has_bot_slot(b)) return false;
    std::set<std::string> keys;
    for (auto& [k, s] : a.slots) keys.insert(k);
    for (auto& [k, s] : b.slots) keys.insert(k);
    for (auto& k : keys) {
      TypeName ta, tb;
      if (is_family_key(k)) {
        ta = family_slot(a, k);
        tb = family_slot(b, k);
      } else {
        ta = type_lookup(a, k);
        tb = type_lookup(b, k);
      }
      if (!type_leq(ta, tb)) return false;
    }
    return true;
  }

  AbstractStore top() const override {
    // Every listed slot Top; unlisted variables still read Undef, so the
    // sparse form has no true top. Callers use it only as "no constraint".
    return {};
  }

 private:
  static TypeName family_slot(const AbstractStore& a, const std::string& key) {
    auto it = a.slots.find(key);
    TypeName t = it == a.slots.end() ? TypeName::Undef : std::get<TypeName>(it->second);
    return type_join(t, TypeName::Undef);
  }
};

class ConstProp : public Domain {
 public:
  std::string tag() const override { return "cp"; }

  AbstractStore alpha(const std::vector<Store>& stores) const override {
    if (stores.empty()) return bottom();
    AbstractStore a;
    for (auto& x : all_vars(stores)) {
      std::set<Value> vs;
      for (auto& s : stores) vs.insert(s.get(x));
      CPVal c = cp_alpha(vs);
      if (c.kind == CPVal::Kind::Const && c.c.is_undef()) continue;
      a.slots[x] = c;
    }
    return a;
  }

  bool contains(const AbstractStore& a, const Store& rho) const override {
    if (a.bottom || has_bot_slot(a)) return false;
    for (auto& [x, s] : a.slots) {
      const CPVal& c = std::get<CPVal>(s);
      if (c.kind == CPVal::Kind::Const && rho.get(x) != c.c) return false;
    }
    for (auto& [x, v] : rho.bindings())
      if (!a.slots.count(x)) return false;
    return true;
  }

  bool leq(const AbstractStore& a, const AbstractStore& b) const override {
    if (a.bottom || has_bot_slot(a)) return true;
    if (b.bottom || has_bot_slot(b)) return false;
    std::set<std::string> keys;
    for (auto& [k, s] : a.slots) keys.insert(k);
    for (auto& [k, s] : b.slots) keys.insert(k);
    for (auto& k : keys)
      if (!cp_leq(cp_lookup(a, k), cp_lookup(b, k))) return false;
    return true;
  }

  AbstractStore top() const override { return {}; }
};

struct Registry {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const Domain>> byTag;
  Registry() {
    for (std::shared_ptr<const Domain> d : {std::shared_ptr<const Domain>(new OnePoint),
                                            std::shared_ptr<const Domain>(new Types),
                                            std::shared_ptr<const Domain>(new ConstProp)})
      byTag[d->tag()] = d;
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

const Domain& domain(const std::string& tag) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.byTag.find(tag);
  if (it == r.byTag.end()) throw std::invalid_argument("unknown domain '" + tag + "'");
  return *it->second;
}

bool has_domain(const std::string& tag) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.byTag.count(tag) != 0;
}

void register_domain(std::shared_ptr<const Domain> d) {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  r.byTag[d->tag()] = std::move(d);
}

std::vector<std::string> domain_tags() {
  auto& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  std::vector<std::string> out;
  for (auto& [k, d] : r.byTag) out.push_back(k);
  return out;
}

TypeName type_lookup(const AbstractStore& a, const std::string& x) {
  if (a.bottom) return TypeName::Bot;
  auto it = a.slots.find(x);
  if (it != a.slots.end()) return std::get<TypeName>(it->second);
  if (auto f = family_of(x)) {
    auto fit = a.slots.find(family_key(*f));
    if (fit != a.slots.end()) return type_join(std::get<TypeName>(fit->second), TypeName::Undef);
  }
  return TypeName::Undef;
}

TypeName abstract_add_type(TypeName t1, TypeName t2) {
  if (t1 == TypeName::Bot || t2 == TypeName::Bot) return TypeName::Bot;
  if (t1 == t2 && (t1 == TypeName::Int || t1 == TypeName::Str)) return t1;
  if (t1 != TypeName::Top && t2 != TypeName::Top) return TypeName::Undef;
  return TypeName::Top;
}

namespace {

// Operations defined only on one operand type (typed additions, %).
TypeName typed_op(TypeName t1, TypeName t2, TypeName want) {
  if (t1 == TypeName::Bot || t2 == TypeName::Bot) return TypeName::Bot;
  if (t1 == want && t2 == want) return want;
  if (t1 != TypeName::Top && t2 != TypeName::Top) return TypeName::Undef;
  return TypeName::Top;
}

}  // namespace

TypeName eval_type(const Expr& e, const AbstractStore& rt) {
  if (rt.bottom) return TypeName::Bot;
  switch (e.kind) {
    case Expr::Kind::Lit:
      return type_of(e.lit);
    case Expr::Kind::Var:
      return type_lookup(rt, e.name);
    case Expr::Kind::Index: {
      TypeName t = TypeName::Undef;
      for (auto& [k, s] : rt.slots) {
        bool member = k == family_key(e.name) || family_of(k) == std::optional<std::string>(e.name);
        if (member) t = type_join(t, std::get<TypeName>(s));
      }
      TypeName sub = eval_type(*e.a, rt);
      if (sub == TypeName::Bot) return TypeName::Bot;
      return t;
    }
    case Expr::Kind::Add:
      return abstract_add_type(eval_type(*e.a, rt), eval_type(*e.b, rt));
    case Expr::Kind::AddTyped:
      return typed_op(eval_type(*e.a, rt), eval_type(*e.b, rt),
                      e.tag == AddTag::Int ? TypeName::Int : TypeName::Str);
    case Expr::Kind::Mod: {
      TypeName t = typed_op(eval_type(*e.a, rt), eval_type(*e.b, rt), TypeName::Int);
      // An integer divisor other than a nonzero literal may be 0, giving undef.
      bool safe = e.b->kind == Expr::Kind::Lit && e.b->lit.kind() == Value::Kind::Int &&
                  e.b->lit.as_int() != 0;
      return t == TypeName::Int && !safe ? TypeName::Top : t;
    }
  }
  return TypeName::Top;
}

CPVal cp_const(Value v) { return CPVal{CPVal::Kind::Const, std::move(v)}; }
CPVal cp_top() { return CPVal{CPVal::Kind::Top, {}}; }
CPVal cp_bot() { return CPVal{CPVal::Kind::Bot, {}}; }

CPVal cp_alpha(const std::set<Value>& vs) {
  if (vs.empty()) return cp_bot();
  if (vs.size() == 1) return cp_const(*vs.begin());
  return cp_top();
}

bool cp_leq(const CPVal& a, const CPVal& b) {
  if (a.kind == CPVal::Kind::Bot || b.kind == CPVal::Kind::Top) return true;
  if (a.kind == CPVal::Kind::Top || b.kind == CPVal::Kind::Bot) return false;
  return a.c == b.c;
}

CPVal cp_lookup(const AbstractStore& a, const std::string& x) {
  if (a.bottom) return cp_bot();
  auto it = a.slots.find(x);
  if (it != a.slots.end()) return std::get<CPVal>(it->second);
  return cp_const(Value());
}

}  // namespace tjit

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace tjit {

// Integers, strings, and the boolean extension used by array programs.
// The default-constructed value is undef.
class Value {
 public:
  enum class Kind { Undef, Int, Str, Bool };

  Value() = default;
  static Value integer(std::int64_t n) { return Value(Rep(n)); }
  static Value str(std::string s) { return Value(Rep(std::move(s))); }
  static Value boolean(bool b) { return Value(Rep(b)); }

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_undef() const { return kind() == Kind::Undef; }
  std::int64_t as_int() const { return std::get<std::int64_t>(rep_); }
  const std::string& as_str() const { return std::get<std::string>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }

  friend bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) { return a.rep_ < b.rep_; }

 private:
  using Rep = std::variant<std::monostate, std::int64_t, std::string, bool>;
  explicit Value(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

// Literal syntax: 3, -7, "foo", tt, ff, undef.
std::string to_string(const Value& v);

// A finite map from variables to values. Unbound means undef, so
// binding undef erases the variable.
class Store {
 public:
  using Map = std::map<std::string, Value>;

  Store() = default;
  explicit Store(Map m);

  Value get(const std::string& x) const;
  void set(const std::string& x, const Value& v);
  bool bound(const std::string& x) const { return m_.count(x) != 0; }
  const Map& bindings() const { return m_; }
  std::size_t size() const { return m_.size(); }

  // rho restricted to xs
  Store restrict(const std::set<std::string>& xs) const;

  friend bool operator==(const Store& a, const Store& b) { return a.m_ == b.m_; }
  friend bool operator!=(const Store& a, const Store& b) { return !(a == b); }
  friend bool operator<(const Store& a, const Store& b) { return a.m_ < b.m_; }

 private:
  Map m_;
};

// [x/3, s/"foo"]
std::string to_string(const Store& s);

// Array element i of family `base` lives in variable base_i.
std::string element_var(const std::string& base, std::int64_t i);
// Inverse of element_var: the family name if x looks like base_<n>.
std::optional<std::string> family_of(const std::string& x);

}  // namespace tjit

#include "tjit/value.hpp"

#include <cctype>

namespace tjit {

std::string to_string(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Undef:
      return "undef";
    case Value::Kind::Int:
      return std::to_string(v.as_int());
    case Value::Kind::Bool:
      return v.as_bool() ? "tt" : "ff";
    case Value::Kind::Str: {
      std::string out = "\"";
      for (char c : v.as_str()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
  }
  return "?";
}

Store::Store(Map m) {
  for (auto& [k, v] : m)
    if (!v.is_undef()) m_.emplace(k, v);
}

Value Store::get(const std::string& x) const {
  auto it = m_.find(x);
  return it == m_.end() ? Value() : it->second;
}

void Store::set(const std::string& x, const Value& v) {
  if (v.is_undef())
    m_.erase(x);
  else
    m_[x] = v;
}

Store Store::restrict(const std::set<std::string>& xs) const {
  Store out;
  for (auto& [k, v] : m_)
    if (xs.count(k)) out.m_.emplace(k, v);
  return out;
}

std::string to_string(const Store& s) {
  std::string out = "[";
  bool first = true;
  for (auto& [k, v] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += k + "/" + to_string(v);
  }
  return out + "]";
}

std::string element_var(const std::string& base, std::int64_t i) {
  return base + "_" + std::to_string(i);
}

std::optional<std::string> family_of(const std::string& x) {
  auto us = x.rfind('_');
  if (us == std::string::npos || us == 0 || us + 1 == x.size()) return std::nullopt;
  for (std::size_t i = us + 1; i < x.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(x[i]))) return std::nullopt;
  return x.substr(0, us);
}

}  // namespace tjit

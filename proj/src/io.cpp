#include "tjit/io.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace tjit {

using nlohmann::json;

namespace {

json value_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int:
      return v.as_int();
    case Value::Kind::Str:
      return v.as_str();
    case Value::Kind::Bool:
      return v.as_bool();
    case Value::Kind::Undef:
      break;
  }
  return nullptr;
}

Value json_value(const json& j) {
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_string()) return Value::str(j.get<std::string>());
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_null()) return Value();
  throw std::invalid_argument("unsupported store value " + j.dump());
}

json store_json(const Store& s) {
  json o = json::object();
  for (auto& [k, v] : s.bindings()) o[k] = value_json(v);
  return o;
}

Store json_store(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("store must be a JSON object");
  Store s;
  for (auto& [k, v] : j.items()) s.set(k, json_value(v));
  return s;
}

std::int64_t to_int(const std::string& s) {
  std::size_t used = 0;
  auto v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Store> parse_spec(const std::string& spec, std::mt19937_64& rng) {
  if (spec == "empty") return {Store{}};
  if (spec[0] == '{') return {store_from_json(spec)};
  if (spec.rfind("rand:", 0) == 0) {
    auto parts = split(spec.substr(5), ':');
    if (parts.size() != 2) throw std::invalid_argument("expected rand:N:vars");
    auto n = to_int(parts[0]);
    auto vars = split(parts[1], ',');
    std::uniform_int_distribution<int> d(-10, 30);
    std::vector<Store> out;
    for (std::int64_t k = 0; k < n; ++k) {
      Store s;
      for (auto& x : vars) s.set(x, Value::integer(d(rng)));
      out.push_back(s);
    }
    return out;
  }
  std::vector<Store> out{Store{}};
  for (auto& item : split(spec, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad initials item '" + item + "'");
    std::string x = item.substr(0, eq), range = item.substr(eq + 1);
    auto dots = range.find("..");
    std::int64_t lo = to_int(range.substr(0, dots));
    std::int64_t hi = dots == std::string::npos ? lo : to_int(range.substr(dots + 2));
    std::vector<Store> next;
    for (auto& s : out)
      for (auto v = lo; v <= hi; ++v) {
        Store t = s;
        t.set(x, Value::integer(v));
        next.push_back(t);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::string store_to_json(const Store& s) { return store_json(s).dump(); }

Store store_from_json(const std::string& text) {
  try {
    return json_store(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument("bad store JSON: " + std::string(e.what()));
  }
}

std::string trace_to_jsonl(const Trace& t, bool truncated) {
  std::string out;
  for (auto& s : t) {
    json o = {{"store", store_json(s.store)},
              {"label", s.cmd.label},
              {"action", s.cmd.act.text},
              {"succ", s.cmd.succ}};
    out += o.dump() + "\n";
  }
  if (truncated) out += json({{"truncated", true}}).dump() + "\n";
  return out;
}

Trace trace_from_jsonl(const std::string& text, bool* truncated) {
  Trace t;
  if (truncated) *truncated = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto o = json::parse(line);
    if (o.contains("truncated")) {
      if (truncated) *truncated = o["truncated"].get<bool>();
      continue;
    }
    Command c = make_command(o.at("label").get<std::string>(), parse_action(o.at("action").get<std::string>()),
                             o.at("succ").get<std::string>());
    t.push_back({json_store(o.at("store")), c});
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Store> parse_initials(const std::string& spec_or_path, std::uint64_t seed) {
  std::vector<Store> out;
  if (std::filesystem::is_regular_file(spec_or_path)) {
    std::istringstream in(read_file(spec_or_path));
    std::string line;
    while (std::getline(in, line)) {
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      out.push_back(store_from_json(line));
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  for (auto& spec : split(spec_or_path, ';')) {
    auto more = parse_spec(spec, rng);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

}  // namespace tjit

namespace tjit {

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string program_to_dot(const Program& p, const std::set<Command>& highlight) {
  std::string out = "digraph program {\n  node [shape=circle];\n";
  out += "  __entry [shape=point];\n  __entry -> " + dot_quote(p.entry()) + ";\n";
  auto nodes = p.labels();
  for (auto& c : p.commands()) nodes.insert(c.succ);
  for (auto& l : nodes) {
    std::string shape = l == kNoLabel ? "doublecircle" : "circle";
    out += "  " + dot_quote(l) + " [shape=" + shape + "];\n";
  }
  for (auto& c : p.commands()) {
    out += "  " + dot_quote(c.label) + " -> " + dot_quote(c.succ) + " [label=" +
           dot_quote(c.act.text);
    if (highlight.count(c)) out += ", style=bold";
    out += "];\n";
  }
  return out + "}\n";
}

}  // namespace tjit

namespace tjit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Splits on ';' outside string literals.
std::vector<std::string> split_items(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  bool in_str = false;
  for (char c : s) {
    if (c == '"') in_str = !in_str;
    if (c == ';' && !in_str) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

HotPath parse_hot_path(const std::string& text, const std::string& domain) {
  HotPath hp;
  hp.domain = domain;
  hp.threshold = 1;
  std::string body;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!body.empty()) body += " ; ";
    body += line;
  }
  static const std::regex header(R"(^(\d+)-hot \[([A-Za-z0-9_]+)\] :\s*)");
  std::smatch m;
  if (std::regex_search(body, m, header)) {
    hp.threshold = std::stoul(m[1]);
    hp.domain = m[2];
    body = m.suffix();
  }
  static const std::regex count_re(R"(\s*count=(\d+)\s*$)");
  if (std::regex_search(body, m, count_re)) {
    hp.count = std::stoul(m[1]);
    body = body.substr(0, static_cast<std::size_t>(m.position(0)));
  }
  for (auto& item : split_items(body)) {
    if (item.empty()) continue;
    if (item[0] != '(') throw std::invalid_argument("hot path entry must start with '(': " + item);
    int depth = 0;
    std::size_t close = std::string::npos;
    bool in_str = false;
    for (std::size_t k = 0; k < item.size(); ++k) {
      char c = item[k];
      if (c == '"') in_str = !in_str;
      if (in_str) continue;
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) {
        close = k;
        break;
      }
    }
    if (close == std::string::npos) throw std::invalid_argument("unbalanced entry: " + item);
    auto abs = parse_abstract(hp.domain, item.substr(1, close - 1));
    auto cmd = parse_command(trim(item.substr(close + 1)));
    hp.path.push_back(AbsState{abs, cmd});
  }
  if (hp.path.empty()) throw std::invalid_argument("empty hot path");
  return hp;
}

}  // namespace tjit

#include <cctype>
#include <sstream>

#include "lexer.hpp"
#include "tjit/syntax.hpp"

namespace tjit {
namespace detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize(const std::string& src, int first_line) {
  std::vector<Token> out;
  int line = first_line;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Int, src.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (c == '"') {
      std::string s;
      std::size_t j = i + 1;
      for (; j < src.size() && src[j] != '"'; ++j) {
        if (src[j] == '\\' && j + 1 < src.size()) ++j;
        if (src[j] == '\n') throw ParseError("unterminated string", line);
        s += src[j];
      }
      if (j >= src.size()) throw ParseError("unterminated string", line);
      out.push_back({Token::Kind::Str, s, line});
      i = j + 1;
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == ":=" || two == "->" || two == "<=" || two == "&&") {
      out.push_back({Token::Kind::Punct, two, line});
      i += 2;
      continue;
    }
    if (c == '+') {
      auto tag = src.substr(i + 1, 3);
      if ((tag == "Int" || tag == "Str") && (i + 4 >= src.size() || !ident_char(src[i + 4]))) {
        out.push_back({Token::Kind::Punct, "+" + tag, line});
        i += 4;
        continue;
      }
    }
    if (std::string("(){}[],;:<=!+%-").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), line});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line);
  }
  out.push_back({Token::Kind::End, "", line});
  return out;
}

const Token& TokenStream::peek(std::size_t k) const {
  std::size_t i = pos_ + k;
  return i < toks_.size() ? toks_[i] : toks_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::is(const std::string& s, std::size_t k) const {
  const Token& t = peek(k);
  return (t.kind == Token::Kind::Punct || t.kind == Token::Kind::Ident) && t.text == s;
}

bool TokenStream::accept(const std::string& s) {
  if (!is(s)) return false;
  next();
  return true;
}

void TokenStream::expect(const std::string& s) {
  if (!accept(s)) fail("expected '" + s + "'");
}

std::string TokenStream::ident() {
  if (peek().kind != Token::Kind::Ident) fail("expected identifier");
  return next().text;
}

void TokenStream::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", found " + found, t.line);
}

Value value(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::Int) return Value::integer(std::stoll(ts.next().text));
  if (t.kind == Token::Kind::Str) return Value::str(ts.next().text);
  if (ts.is("-") && ts.peek(1).kind == Token::Kind::Int) {
    ts.next();
    return Value::integer(-std::stoll(ts.next().text));
  }
  if (ts.accept("tt")) return Value::boolean(true);
  if (ts.accept("ff")) return Value::boolean(false);
  if (ts.accept("undef")) return Value();
  ts.fail("expected a value");
}

namespace {

ExprP factor(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::Int || t.kind == Token::Kind::Str || ts.is("-") || ts.is("tt") ||
      ts.is("ff")) {
    if (ts.is("-") && ts.peek(1).kind != Token::Kind::Int) ts.fail("expected an integer after '-'");
    return lit(value(ts));
  }
  if (ts.accept("(")) {
    auto e = expr(ts);
    ts.expect(")");
    return e;
  }
  if (t.kind == Token::Kind::Ident) {
    auto name = ts.next().text;
    if (ts.accept("[")) {
      auto i = expr(ts);
      ts.expect("]");
      return index(name, i);
    }
    return var(name);
  }
  ts.fail("expected an expression");
}

ExprP term(TokenStream& ts) {
  auto e = factor(ts);
  while (ts.accept("%")) e = mod(e, factor(ts));
  return e;
}

bool comparison_op(const TokenStream& ts) { return ts.is("<=") || ts.is("<") || ts.is("="); }

BExprP comparison(TokenStream& ts) {
  auto l = expr(ts);
  if (ts.accept("<=")) return leq(l, expr(ts));
  if (ts.accept("<")) return lt(l, expr(ts));
  if (ts.accept("=")) return eq(l, expr(ts));
  if (l->kind == Expr::Kind::Lit && l->lit.kind() == Value::Kind::Bool)
    return l->lit.as_bool() ? btrue() : bfalse();
  ts.fail("expected a comparison");
}

BExprP bunary(TokenStream& ts) {
  if (ts.accept("!")) return bnot(bunary(ts));
  if (ts.is("(")) {
    auto m = ts.mark();
    try {
      ts.next();
      auto b = bexpr(ts);
      ts.expect(")");
      if (!comparison_op(ts) && !ts.is("+") && !ts.is("+Int") && !ts.is("+Str") && !ts.is("%"))
        return b;
    } catch (const ParseError&) {
    }
    ts.reset(m);
  }
  return comparison(ts);
}

}  // namespace

ExprP expr(TokenStream& ts) {
  auto e = term(ts);
  for (;;) {
    if (ts.accept("+"))
      e = add(e, term(ts));
    else if (ts.accept("+Int"))
      e = add_typed(e, term(ts), AddTag::Int);
    else if (ts.accept("+Str"))
      e = add_typed(e, term(ts), AddTag::Str);
    else
      return e;
  }
}

BExprP bexpr(TokenStream& ts) {
  auto b = bunary(ts);
  while (ts.accept("&&")) b = band(b, bunary(ts));
  return b;
}

}  // namespace detail

using detail::Token;
using detail::TokenStream;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

TokenStream stream(const std::string& text, int line) {
  return TokenStream(detail::tokenize(text, line > 0 ? line : 1));
}

void expect_end(TokenStream& ts) {
  if (!ts.at_end()) ts.fail("unexpected trailing input");
}

std::optional<TypeName> type_name(const std::string& s) {
  if (s == "Int") return TypeName::Int;
  if (s == "String" || s == "Str") return TypeName::Str;
  if (s == "Bool") return TypeName::Bool;
  if (s == "Undef") return TypeName::Undef;
  if (s == "Top") return TypeName::Top;
  if (s == "Bot") return TypeName::Bot;
  return std::nullopt;
}

AbstractStore abstract_store(TokenStream& ts, const std::string& domain) {
  AbstractStore a;
  if (ts.accept("bot")) {
    a.bottom = true;
    return a;
  }
  ts.expect("{");
  if (ts.accept("}")) return a;
  do {
    std::string x = ts.ident();
    ts.expect(":");
    Slot s;
    if (domain == "type") {
      auto t = type_name(ts.ident());
      if (!t) ts.fail("expected a type name");
      s = *t;
    } else if (domain == "cp") {
      CPVal v;
      if (ts.accept("top"))
        v.kind = CPVal::Kind::Top;
      else if (ts.accept("bot"))
        v.kind = CPVal::Kind::Bot;
      else {
        v.kind = CPVal::Kind::Const;
        v.c = detail::value(ts);
      }
      s = v;
    } else {
      ts.fail("domain '" + domain + "' has no slots");
    }
    if (ts.accept("[")) {
      ts.expect("]");
      x += "[]";
    }
    if (a.slots.count(x)) ts.fail("duplicate slot " + x);
    a.slots.emplace(x, s);
  } while (ts.accept(","));
  ts.expect("}");
  return a;
}

Action action(TokenStream& ts) {
  if (ts.is("skip") && ts.peek(1).kind == Token::Kind::End) {
    ts.next();
    return skip_action();
  }
  if (ts.is("put") && ts.is("{", 1)) {
    ts.next();
    ts.next();
    std::set<std::string> xs;
    if (!ts.accept("}")) {
      do xs.insert(ts.ident());
      while (ts.accept(","));
      ts.expect("}");
    }
    return put_action(xs);
  }
  bool neg_guard = ts.is("!") && ts.is("guard", 1);
  if (neg_guard || (ts.is("guard") && ts.peek(1).kind == Token::Kind::Ident)) {
    if (neg_guard) ts.next();
    ts.next();
    std::string dom = ts.ident();
    return guard_action(dom, abstract_store(ts, dom), !neg_guard);
  }
  if (ts.peek().kind == Token::Kind::Ident) {
    auto m = ts.mark();
    std::string x = ts.next().text;
    if (ts.accept(":=")) return assign_action(x, detail::expr(ts));
    if (ts.accept("[")) {
      try {
        auto sub = detail::expr(ts);
        ts.expect("]");
        if (ts.accept(":=")) return assign_index_action(x, sub, detail::expr(ts));
      } catch (const ParseError&) {
      }
    }
    ts.reset(m);
  }
  return cond_action(detail::bexpr(ts));
}

Action parse_action_at(const std::string& text, int line) {
  auto ts = stream(text, line);
  auto a = action(ts);
  expect_end(ts);
  return a;
}

bool valid_label(const std::string& l) {
  if (l.empty()) return false;
  for (char c : l)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == ';') return false;
  return true;
}

Command parse_command_at(const std::string& line_text, int line) {
  auto colon = line_text.find(':');
  if (colon == std::string::npos) throw ParseError("expected 'label: action -> label'", line);
  std::string label = trim(line_text.substr(0, colon));
  std::string rest = line_text.substr(colon + 1);
  auto arrow = rest.rfind("->");
  if (arrow == std::string::npos) throw ParseError("expected '->'", line);
  std::string succ = trim(rest.substr(arrow + 2));
  if (!valid_label(label) || label == kNoLabel) throw ParseError("bad label '" + label + "'", line);
  if (!valid_label(succ)) throw ParseError("bad successor '" + succ + "'", line);
  return make_command(label, parse_action_at(rest.substr(0, arrow), line), succ);
}

std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && in_str) {
      ++i;
      continue;
    }
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == ';' && !in_str) return s.substr(0, i);
  }
  return s;
}

}  // namespace

Program parse_program(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::optional<std::string> entry;
  std::vector<Command> cmds;
  std::set<Command> seen;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(strip_comment(raw));
    if (s.empty()) continue;
    if (s.rfind("#entry", 0) == 0) {
      if (entry) throw ParseError("duplicate entry directive", line);
      std::string l = trim(s.substr(6));
      if (!valid_label(l) || l == kNoLabel) throw ParseError("bad entry label", line);
      entry = l;
      continue;
    }
    auto c = parse_command_at(s, line);
    if (!seen.insert(c).second) throw ParseError("duplicate command " + c.text(), line);
    cmds.push_back(c);
  }
  if (!entry) throw ParseError("missing entry directive", 0);
  if (cmds.empty()) throw ParseError("no commands", 0);
  Program p(*entry);
  for (auto& c : cmds) p.add(c);
  return p;
}

ExprP parse_expr(const std::string& text) {
  auto ts = stream(text, 0);
  auto e = detail::expr(ts);
  expect_end(ts);
  return e;
}

BExprP parse_bexpr(const std::string& text) {
  auto ts = stream(text, 0);
  auto b = detail::bexpr(ts);
  expect_end(ts);
  return b;
}

Action parse_action(const std::string& text) { return parse_action_at(text, 0); }

Command parse_command(const std::string& text) { return parse_command_at(trim(text), 0); }

AbstractStore parse_abstract(const std::string& domain, const std::string& text) {
  auto ts = stream(text, 0);
  auto a = abstract_store(ts, domain);
  expect_end(ts);
  return a;
}

Value parse_value(const std::string& text) {
  auto ts = stream(text, 0);
  auto v = detail::value(ts);
  expect_end(ts);
  return v;
}

}  // namespace tjit

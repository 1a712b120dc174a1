#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tjit/value.hpp"

namespace tjit {

// ---------------------------------------------------------------------------
// Expressions

enum class AddTag { Int, Str };

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Lit, Var, Index, Add, AddTyped, Mod };
  Kind kind;
  Value lit;         // Lit
  std::string name;  // Var, Index (array family)
  ExprP a, b;        // Index uses a as the subscript
  AddTag tag = AddTag::Int;
};

ExprP lit(Value v);
ExprP lit_int(std::int64_t n);
ExprP var(std::string x);
ExprP index(std::string base, ExprP i);
ExprP add(ExprP a, ExprP b);
ExprP add_typed(ExprP a, ExprP b, AddTag t);
ExprP mod(ExprP a, ExprP b);

std::string to_string(const Expr& e);
inline std::string to_string(const ExprP& e) { return to_string(*e); }

// Variables read by e. Index reads are reported under the family name.
void collect_vars(const Expr& e, std::set<std::string>& out);

struct BExpr;
using BExprP = std::shared_ptr<const BExpr>;

struct BExpr {
  enum class Kind { True, False, Leq, Lt, Eq, Not, And };
  Kind kind;
  ExprP l, r;      // comparisons
  BExprP a, b;     // Not uses a; And uses a, b
};

BExprP btrue();
BExprP bfalse();
BExprP leq(ExprP l, ExprP r);
BExprP lt(ExprP l, ExprP r);
BExprP eq(ExprP l, ExprP r);
// Double negation collapses, so bnot(bnot(b)) is b itself.
BExprP bnot(BExprP b);
BExprP band(BExprP a, BExprP b);

std::string to_string(const BExpr& b);
inline std::string to_string(const BExprP& b) { return to_string(*b); }
void collect_vars(const BExpr& b, std::set<std::string>& out);

// ---------------------------------------------------------------------------
// Abstract stores. The data lives here so guards can carry it; the
// behaviour (alpha, gamma membership, order) lives in domains.hpp.

enum class TypeName { Bot, Int, Str, Bool, Undef, Top };

struct CPVal {
  enum class Kind { Bot, Const, Top };
  Kind kind = Kind::Top;
  Value c;
  friend bool operator==(const CPVal& a, const CPVal& b) {
    return a.kind == b.kind && a.c == b.c;
  }
  friend bool operator<(const CPVal& a, const CPVal& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.c < b.c;
  }
};

using Slot = std::variant<TypeName, CPVal>;

// Sparse: unlisted variables read as the domain's default (Undef for
// types, the constant undef for cp). `bottom` is the everywhere-bottom
// store, which a sparse map cannot express. Keys ending in "[]" stand for
// a whole array family.
struct AbstractStore {
  bool bottom = false;
  std::map<std::string, Slot> slots;

  friend bool operator==(const AbstractStore& a, const AbstractStore& b) {
    return a.bottom == b.bottom && a.slots == b.slots;
  }
  friend bool operator!=(const AbstractStore& a, const AbstractStore& b) {
    return !(a == b);
  }
  friend bool operator<(const AbstractStore& a, const AbstractStore& b) {
    if (a.bottom != b.bottom) return a.bottom < b.bottom;
    return a.slots < b.slots;
  }
};

std::string to_string(TypeName t);
std::string to_string(const CPVal& v);
// {x: Int, primes: Bool[]} / {a: 2, x: top} / {} / bot
std::string to_string(const AbstractStore& a);

// ---------------------------------------------------------------------------
// Actions, commands, programs

struct Action {
  enum class Kind { Skip, Assign, Cond, Guard, Put };
  Kind kind = Kind::Skip;

  std::string target;  // Assign
  ExprP subscript;     // Assign to target[subscript] when set
  ExprP rhs;           // Assign
  BExprP cond;         // Cond
  std::string domain;  // Guard
  AbstractStore abs;   // Guard
  bool positive = true;
  std::set<std::string> put_vars;  // Put

  // Canonical printed form, fixed at construction. Equality and
  // ordering of actions go through it.
  std::string text;

  bool is_conditional() const { return kind == Kind::Cond || kind == Kind::Guard; }
};

Action skip_action();
Action assign_action(std::string x, ExprP e);
Action assign_index_action(std::string base, ExprP sub, ExprP e);
Action cond_action(BExprP b);
Action guard_action(std::string domain, AbstractStore a, bool positive = true);
Action put_action(std::set<std::string> xs);

// The complementary action of a conditional or guard.
Action negate(const Action& a);

// Variables occurring in an action (guards contribute none).
std::set<std::string> vars_of(const Action& a);

inline const std::string kNoLabel = ".";

// Orders labels with embedded numbers numerically: L2 < L10.
bool label_less(const std::string& a, const std::string& b);

struct Command {
  std::string label;
  Action act;
  std::string succ;

  std::string text() const;  // L: A -> L'
};

bool operator==(const Command& a, const Command& b);
inline bool operator!=(const Command& a, const Command& b) { return !(a == b); }
bool operator<(const Command& a, const Command& b);

Command make_command(std::string label, Action act, std::string succ);

class Program {
 public:
  Program() = default;
  explicit Program(std::string entry) : entry_(std::move(entry)) {}

  const std::string& entry() const { return entry_; }
  void set_entry(std::string e) { entry_ = std::move(e); }

  // Set semantics: adding a present command is a no-op.
  bool add(const Command& c);
  bool remove(const Command& c);
  bool contains(const Command& c) const { return cmds_.count(c) != 0; }
  std::size_t size() const { return cmds_.size(); }
  bool empty() const { return cmds_.empty(); }

  const std::set<Command>& commands() const { return cmds_; }
  std::vector<Command> at(const std::string& label) const;
  std::set<std::string> labels() const;
  std::set<std::string> vars() const;

  friend bool operator==(const Program& a, const Program& b) {
    return a.entry_ == b.entry_ && a.cmds_ == b.cmds_;
  }

 private:
  std::string entry_;
  std::set<Command> cmds_;
};

// Complement of c inside p, if p has exactly one.
std::optional<Command> cmpl(const Command& c, const Program& p);

// Empty when p is well-formed (and deterministic when asked).
std::vector<std::string> well_formed(const Program& p, bool deterministic = true);

// A label bijection taking p1 onto p2, found by canonical breadth-first
// relabeling from the entries. Absent when none is found.
std::optional<std::map<std::string, std::string>> rename_equal(const Program& p1,
                                                               const Program& p2);

// Relabel every label through f (labels missing from f are kept).
Program relabel(const Program& p, const std::map<std::string, std::string>& f);

std::string to_string(const Program& p);

// ---------------------------------------------------------------------------
// Parsing

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

Program parse_program(const std::string& text);
ExprP parse_expr(const std::string& text);
BExprP parse_bexpr(const std::string& text);
Action parse_action(const std::string& text);
Command parse_command(const std::string& text);
AbstractStore parse_abstract(const std::string& domain, const std::string& text);
Value parse_value(const std::string& text);

}  // namespace tjit

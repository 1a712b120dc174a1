#include "doctest.h"
#include "support.hpp"
#include "tjit/generate.hpp"

using namespace tjit;

TEST_CASE("value literals print back") {
  CHECK(to_string(Value::integer(-7)) == "-7");
  CHECK(to_string(Value::str("foo")) == "\"foo\"");
  CHECK(to_string(Value::boolean(true)) == "tt");
  CHECK(to_string(Value()) == "undef");
  for (auto text : {"3", "-7", "\"foo\"", "tt", "ff", "undef"})
    CHECK(to_string(parse_value(text)) == text);
}

TEST_CASE("binding undef unbinds") {
  Store s;
  s.set("x", Value::integer(1));
  CHECK(s.bound("x"));
  s.set("x", Value());
  CHECK_FALSE(s.bound("x"));
  CHECK(s == Store{});
}

TEST_CASE("restrict keeps only the listed variables") {
  auto s = store(R"({"x": 1, "y": "a", "z": true})");
  CHECK(to_string(s.restrict({"x", "z", "w"})) == "[x/1, z/tt]");
}

TEST_CASE("array elements are plain variables") {
  CHECK(element_var("primes", 12) == "primes_12");
  CHECK(family_of("primes_12") == std::optional<std::string>("primes"));
  CHECK_FALSE(family_of("primes").has_value());
}

TEST_CASE("labels with numbers order numerically") {
  CHECK(label_less("L2", "L10"));
  CHECK_FALSE(label_less("L10", "L2"));
  CHECK(label_less("L9", "M0"));
}

TEST_CASE("double negation collapses") {
  auto b = parse_bexpr("(x <= 20)");
  CHECK(bnot(bnot(b)) == b);
  auto a = cond_action(b);
  CHECK(negate(negate(a)).text == a.text);
  CHECK(negate(a).text == "!(x <= 20)");
}

TEST_CASE("parser round trip on the samples") {
  for (auto name : {"counting.tjit", "fold.tjit", "sieve.tjit", "deadstore.tjit"}) {
    auto p = sample(name);
    CHECK(parse_program(to_string(p)) == p);
    CHECK(well_formed(p).empty());
  }
}

TEST_CASE("parser round trip on generated programs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = gen_program(seed);
    REQUIRE(parse_program(to_string(p)) == p);
  }
}

TEST_CASE("guards print per domain") {
  CHECK(parse_action("guard onepoint {}").text == "guard onepoint {}");
  CHECK(parse_action("guard type {k: Int, i: Int, primes: Bool[]}").text ==
        "guard type {i: Int, k: Int, primes: Bool[]}");
  CHECK(parse_action("!guard cp {x: top, a: 2}").text == "!guard cp {a: 2, x: top}");
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_program("#entry L0\nL0: x := -> L1\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_program("L0: skip -> .\n"), ParseError);
}

TEST_CASE("well_formed rejects a missing complement and nondeterminism") {
  auto p = parse_program("#entry L0\nL0: (x <= 1) -> L1\nL1: skip -> .\n");
  CHECK_FALSE(well_formed(p).empty());
  auto q = parse_program("#entry L0\nL0: skip -> L1\nL0: x := 1 -> L1\nL1: skip -> .\n");
  CHECK_FALSE(well_formed(q).empty());
  CHECK(well_formed(q, false).empty());
}

TEST_CASE("cmpl finds the negated twin") {
  auto p = sample("counting.tjit");
  auto c = parse_command("L1: (x <= 20) -> L2");
  auto cc = cmpl(c, p);
  REQUIRE(cc);
  CHECK(cc->text() == "L1: !(x <= 20) -> L5");
  CHECK_FALSE(cmpl(parse_command("L0: x := 0 -> L1"), p).has_value());
}

TEST_CASE("rename_equal finds the relabelling") {
  auto p = sample("counting.tjit");
  std::map<std::string, std::string> f{{"L0", "a"}, {"L1", "b"}, {"L2", "c"},
                                       {"L3", "d"}, {"L4", "e"}, {"L5", "f"}};
  auto q = relabel(p, f);
  auto g = rename_equal(p, q);
  REQUIRE(g);
  CHECK(relabel(p, *g) == q);
  auto r = q;
  r.remove(parse_command("e: x := x + 3 -> b"));
  r.add(parse_command("e: x := x + 4 -> b"));
  CHECK_FALSE(rename_equal(p, r).has_value());
}

TEST_CASE("vars and labels") {
  auto p = sample("sieve.tjit");
  CHECK(p.vars() == std::set<std::string>{"i", "k", "primes"});
  CHECK(p.labels().count("L8"));
  CHECK(p.at("L4").size() == 2);
}

#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tjit/domains.hpp"

using namespace tjit;

namespace {

const std::vector<TypeName> kTypes{TypeName::Bot, TypeName::Int,   TypeName::Str,
                                   TypeName::Bool, TypeName::Undef, TypeName::Top};

std::vector<Value> some_values() {
  return {Value(), Value::integer(0), Value::integer(3), Value::str(""), Value::str("a"),
          Value::boolean(true)};
}

std::vector<Store> random_stores(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  auto vals = some_values();
  std::vector<Store> out;
  for (std::size_t k = 0; k < n; ++k) {
    Store s;
    for (auto x : {"x", "y", "z"}) s.set(x, vals[rng() % vals.size()]);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("type lattice is a partial order with joins") {
  for (auto a : kTypes) {
    CHECK(type_leq(a, a));
    CHECK(type_leq(TypeName::Bot, a));
    CHECK(type_leq(a, TypeName::Top));
    for (auto b : kTypes) {
      auto j = type_join(a, b);
      CHECK(type_leq(a, j));
      CHECK(type_leq(b, j));
      if (type_leq(a, b) && type_leq(b, a)) CHECK(a == b);
      for (auto c : kTypes)
        if (type_leq(a, c) && type_leq(b, c)) CHECK(type_leq(j, c));
    }
  }
}

TEST_CASE("type abstraction of value sets") {
  CHECK(type_alpha({}) == TypeName::Bot);
  CHECK(type_alpha({Value::integer(1), Value::integer(2)}) == TypeName::Int);
  CHECK(type_alpha({Value::integer(1), Value::str("a")}) == TypeName::Top);
  CHECK(type_alpha({Value()}) == TypeName::Undef);
}

TEST_CASE("typed addition table") {
  CHECK(abstract_add_type(TypeName::Int, TypeName::Int) == TypeName::Int);
  CHECK(abstract_add_type(TypeName::Str, TypeName::Str) == TypeName::Str);
  CHECK(abstract_add_type(TypeName::Int, TypeName::Str) == TypeName::Undef);
  CHECK(abstract_add_type(TypeName::Bot, TypeName::Top) == TypeName::Bot);
  CHECK(abstract_add_type(TypeName::Int, TypeName::Top) == TypeName::Top);
}

TEST_CASE("modulo by something that may be zero is not Int") {
  auto rt = parse_abstract("type", "{x: Int, y: Int}");
  CHECK(eval_type(*parse_expr("x % 3"), rt) == TypeName::Int);
  CHECK(eval_type(*parse_expr("x % y"), rt) == TypeName::Top);
  CHECK(eval_type(*parse_expr("x % 0"), rt) == TypeName::Top);
}

TEST_CASE("cp lattice") {
  auto two = cp_const(Value::integer(2));
  CHECK(cp_alpha({}) == cp_bot());
  CHECK(cp_alpha({Value::integer(2)}) == two);
  CHECK(cp_alpha({Value::integer(2), Value::integer(3)}) == cp_top());
  CHECK(cp_leq(cp_bot(), two));
  CHECK(cp_leq(two, cp_top()));
  CHECK_FALSE(cp_leq(two, cp_const(Value::integer(3))));
}

TEST_CASE("alpha is sound and least on every domain") {
  for (std::string tag : {"onepoint", "type", "cp"}) {
    CAPTURE(tag);
    const Domain& d = domain(tag);
    // top() is sparse, so unlisted variables still read as undef
    auto top = tag == "onepoint" ? d.top() : parse_abstract(tag, tag == "type" ? "{x: Top, y: Top, z: Top}" : "{x: top, y: top, z: top}");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto S = random_stores(seed, 1 + seed % 4);
      auto a = d.alpha(S);
      for (auto& rho : S) CHECK(d.contains(a, rho));
      for (auto& rho : S) CHECK(d.leq(d.alpha1(rho), a));
      CHECK(d.leq(a, top));
      CHECK(d.leq(d.bottom(), a));
      if (tag != "onepoint") CHECK_FALSE(d.contains(d.bottom(), S[0]));
    }
  }
}

TEST_CASE("gamma is monotone") {
  const Domain& d = domain("type");
  auto small = parse_abstract("type", "{x: Int}");
  auto big = parse_abstract("type", "{x: Top}");
  CHECK(d.leq(small, big));
  for (auto& rho : random_stores(3, 60))
    if (d.contains(small, rho.restrict({"x"}))) CHECK(d.contains(big, rho.restrict({"x"})));
}

TEST_CASE("array family slots") {
  auto a = parse_abstract("type", "{primes: Bool[]}");
  CHECK(type_lookup(a, "primes_3") == type_join(TypeName::Bool, TypeName::Undef));
  auto rho = store(R"({"primes_0": true, "primes_7": false})");
  CHECK(domain("type").contains(a, rho));
  CHECK_FALSE(domain("type").contains(a, store(R"({"primes_0": 1})")));
}

TEST_CASE("unknown domains are rejected") {
  CHECK_THROWS_AS(domain("interval"), std::invalid_argument);
  CHECK(has_domain("cp"));
  auto tags = domain_tags();
  CHECK(std::find(tags.begin(), tags.end(), "type") != tags.end());
}

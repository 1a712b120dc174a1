#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "tjit/generate.hpp"

using namespace tjit;

TEST_CASE("store JSON round trip") {
  auto s = store(R"({"x": 3, "s": "foo", "b": true, "n": -2})");
  CHECK(store_from_json(store_to_json(s)) == s);
  CHECK(s.size() == 4);
  CHECK(store_from_json("{}") == Store{});
  CHECK_THROWS_AS(store_from_json("{\"x\": "), std::invalid_argument);
  CHECK_THROWS_AS(store_from_json("[1]"), std::invalid_argument);
}

TEST_CASE("trace JSONL round trip") {
  auto p = sample("counting.tjit");
  auto r = run(p, Store{}, 12);
  auto text = trace_to_jsonl(r.trace, r.truncated);
  bool trunc = false;
  CHECK(trace_from_jsonl(text, &trunc) == r.trace);
  CHECK(trunc);
  auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
  CHECK(first["label"] == "L0");
  CHECK(first["action"] == "x := 0");
  CHECK(first["succ"] == "L1");
}

TEST_CASE("initial store specs") {
  CHECK(parse_initials("empty", 0) == std::vector<Store>{Store{}});
  auto grid = parse_initials("x=0..2,y=1..2", 0);
  CHECK(grid.size() == 6);
  CHECK(parse_initials("{\"x\": 5};empty", 0).size() == 2);
  auto a = parse_initials("rand:4:x,y", 9);
  CHECK(a.size() == 4);
  CHECK(a == parse_initials("rand:4:x,y", 9));
  for (auto& s : a) {
    auto x = s.get("x").as_int();
    CHECK(x >= -10);
    CHECK(x <= 30);
  }
  CHECK(parse_initials(sample_path("sieve.init"), 0).front().size() == 100);
  CHECK_THROWS_AS(parse_initials("bogus", 0), std::invalid_argument);
  CHECK_THROWS_AS(read_file("/nonexistent/file"), std::invalid_argument);
}

TEST_CASE("hot path text round trip") {
  for (auto [name, dom] : {std::pair{"counting.tjit", "onepoint"}, std::pair{"sieve.tjit", "type"}}) {
    auto p = sample(name);
    Store rho = std::string(name) == "sieve.tjit" ? parse_initials(sample_path("sieve.init"), 0)[0]
                                                  : Store{};
    for (auto& hp : hot(run(p, rho, 3000).trace, p, 2, dom)) {
      auto back = parse_hot_path(to_string(hp));
      CHECK(back.domain == hp.domain);
      CHECK(back.path == hp.path);
    }
  }
  auto hp = parse_hot_path("({}) L1: (x <= 20) -> L2\n({}) L2: x := x + 1 -> L1\n");
  CHECK(hp.path.size() == 2);
  CHECK(hp.domain == "onepoint");
}

TEST_CASE("dot output") {
  auto p = sample("counting.tjit");
  auto dot = program_to_dot(p, {parse_command("L4: x := x + 3 -> L1")});
  CHECK(dot.rfind("digraph program", 0) == 0);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("style=bold") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t k = dot.find("->"); k != std::string::npos; k = dot.find("->", k + 2)) ++edges;
  CHECK(edges >= p.size());
}

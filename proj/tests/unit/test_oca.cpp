#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "ocasync/errors.hpp"
#include "ocasync/oca.hpp"
#include "ocasync/oca_io.hpp"
#include "support.hpp"

using namespace ocasync;
namespace T = ocasync::testing;

namespace {

Oca one_state(std::vector<Transition> ts) { return Oca({"s"}, {"p"}, {{}}, std::move(ts)); }

// All configurations at the end of valid transition sequences of length l,
// by plain recursion over transitions.
void enumerate_paths(const Oca& oca, const Configuration& c, int l, std::set<Configuration>& out) {
  if (l == 0) {
    out.insert(c);
    return;
  }
  for (const Transition& t : oca.transitions()) {
    if (t.src != c.state) continue;
    if (t.guard == Guard::kZero ? c.counter != 0 : c.counter == 0) continue;
    if (c.counter + t.effect < 0) continue;
    enumerate_paths(oca, {t.dst, c.counter + t.effect}, l - 1, out);
  }
}

}  // namespace

TEST_CASE("validate reports totality and zero-decrement violations") {
  CHECK(validate(one_state({{0, Guard::kZero, 0, 0}, {0, Guard::kPositive, 0, 0}})).empty());

  auto missing = validate(one_state({{0, Guard::kZero, 0, 0}}));
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].kind == Diagnostic::Kind::kMissingPositiveSuccessor);
  CHECK(missing[0].message == "missing POS-successor at s");

  auto dec = validate(one_state({{0, Guard::kZero, -1, 0}, {0, Guard::kPositive, 0, 0}}));
  bool found = false;
  for (const Diagnostic& d : dec) {
    if (d.kind == Diagnostic::Kind::kDecrementUnderZero) {
      found = true;
      CHECK(d.message.find("illegal decrement under ZERO guard") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("successors of the countdown and fork automata") {
  Oca cd = T::corpus("countdown");
  const StateId s = *cd.find_state("s"), t = *cd.find_state("t");
  CHECK(successors(cd, {s, 3}) == std::vector<Configuration>{{s, 2}});
  CHECK(successors(cd, {s, 0}) == std::vector<Configuration>{{t, 0}});

  Oca fork = T::corpus("fork");
  const StateId fs = *fork.find_state("s"), a = *fork.find_state("a"), b = *fork.find_state("b");
  auto succ = successors(fork, {fs, 5});
  CHECK(std::set<Configuration>(succ.begin(), succ.end()) == std::set<Configuration>{{a, 6}, {b, 4}});
}

TEST_CASE("successors never empty for valid automata") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Oca oca = T::random_oca(rng);
    REQUIRE(validate(oca).empty());
    for (StateId s = 0; s < oca.num_states(); ++s) {
      for (Counter v = 0; v < 5; ++v) {
        auto succ = successors(oca, {s, v});
        CHECK_FALSE(succ.empty());
        for (const Configuration& c : succ) CHECK(c.counter >= 0);
      }
    }
  }
}

TEST_CASE("level sets: countdown from (s,2)") {
  Oca cd = T::corpus("countdown");
  const StateId s = 0, t = 1;
  OracleTrace tr = level_sets(cd, {s, 2}, 5, 10);
  using L = std::vector<Configuration>;
  REQUIRE(tr.levels.size() == 6);
  CHECK(tr.levels[0] == L{{s, 2}});
  CHECK(tr.levels[1] == L{{s, 1}});
  CHECK(tr.levels[2] == L{{s, 0}});
  for (int l = 3; l <= 5; ++l) CHECK(tr.levels[l] == L{{t, 0}});
  for (bool b : tr.truncated) CHECK_FALSE(b);
}

TEST_CASE("level sets: increment loop truncates at the counter cap") {
  Oca inc = T::corpus("increment-loop");
  OracleTrace tr = level_sets(inc, {0, 0}, 4, 2);
  REQUIRE(tr.levels.size() == 5);
  CHECK(tr.levels[2] == std::vector<Configuration>{{0, 2}});
  CHECK(tr.levels[3].empty());
  CHECK(tr.levels[4].empty());
  CHECK_FALSE(tr.truncated[2]);
  CHECK(tr.truncated[3]);
  CHECK(tr.truncated[4]);
}

TEST_CASE("level sets: fork from (s,1) with counter cap 2") {
  Oca fork = T::corpus("fork");
  const StateId s = *fork.find_state("s"), a = *fork.find_state("a"), b = *fork.find_state("b");
  OracleTrace tr = level_sets(fork, {s, 1}, 3, 2);
  CHECK(tr.levels[1] == std::vector<Configuration>{{a, 2}, {b, 0}});
  // (a,3) is dropped, (b,0) moves to (s,0)
  CHECK(tr.levels[2] == std::vector<Configuration>{{s, 0}});
  CHECK(tr.truncated[2]);
}

TEST_CASE("level sets agree with recursive path enumeration") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    Oca oca = T::random_oca(rng, {4, 2, 3});
    for (StateId s = 0; s < oca.num_states(); ++s) {
      for (Counter v : {0, 1, 3}) {
        OracleTrace tr = level_sets(oca, {s, v}, 8, 1'000'000);
        for (int l = 0; l <= 8; ++l) {
          std::set<Configuration> want;
          enumerate_paths(oca, {s, v}, l, want);
          CHECK(std::set<Configuration>(tr.levels[l].begin(), tr.levels[l].end()) == want);
        }
      }
    }
  }
}

TEST_CASE("raising caps never removes configurations from exact levels") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    Oca oca = T::random_oca(rng);
    OracleTrace small = level_sets(oca, {0, 1}, 6, 3);
    OracleTrace large = level_sets(oca, {0, 1}, 9, 7);
    for (int l = 0; l <= 6; ++l) {
      if (small.truncated[l]) continue;
      std::set<Configuration> big(large.levels[l].begin(), large.levels[l].end());
      for (const Configuration& c : small.levels[l]) CHECK(big.count(c) == 1);
    }
  }
}

TEST_CASE("DSL parse, print, and JSON mirror round-trip") {
  for (const std::string& name : T::corpus_names()) {
    Oca a = T::corpus(name);
    Oca b = parse_oca_dsl(print_oca_dsl(a));
    Oca c = oca_from_json(oca_to_json(a));
    CHECK(print_oca_dsl(a) == print_oca_dsl(b));
    CHECK(print_oca_dsl(a) == print_oca_dsl(c));
    CHECK(parse_oca(oca_to_json(a).dump()).transitions() == a.transitions());
  }
}

TEST_CASE("duplicate transitions are merged") {
  Oca o = parse_oca_dsl("states: s\natoms: p\ns -[=0,0]-> s\ns -[=0,0]-> s\ns -[>0,-1]-> s\n");
  CHECK(o.transitions().size() == 2);
}

TEST_CASE("DSL errors carry a position and the expected tokens") {
  try {
    parse_oca_dsl("states: s\natoms: p\ns -[=0,+2]-> s\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  try {
    parse_oca_dsl("atoms: p\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.expected() == std::vector<std::string>{"states:"});
  }
  CHECK_THROWS_AS(parse_oca_dsl("states: s\natoms: p\ns -[=0,0]-> nowhere\n"), ParseError);
  CHECK_THROWS_AS(parse_oca("{\"states\": [\"s\"], "), ParseError);
}

TEST_CASE("successors refuse to overflow the counter") {
  Oca inc = T::corpus("increment-loop");
  CHECK_THROWS_AS(successors(inc, {0, INT64_MAX}), std::overflow_error);
}

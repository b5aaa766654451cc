#include <doctest.h>

#include <random>

#include "ocasync/errors.hpp"
#include "ocasync/mc.hpp"
#include "ocasync/oracle.hpp"
#include "support.hpp"

using namespace ocasync;
namespace T = ocasync::testing;

namespace {

bool contradicts(Tri a, Tri b) {
  return a != Tri::kUnknown && b != Tri::kUnknown && a != b;
}

Oca parity_oca() {
  // two states toggling; p labels e only
  return Oca({"e", "o"}, {"p", "q"}, {{0}, {}},
             {{0, Guard::kZero, 1, 1}, {0, Guard::kPositive, 1, 1},
              {1, Guard::kZero, 1, 0}, {1, Guard::kPositive, 1, 0}});
}

}  // namespace

TEST_CASE("three-valued connectives") {
  CHECK(tri_not(Tri::kUnknown) == Tri::kUnknown);
  CHECK(tri_not(Tri::kTrue) == Tri::kFalse);
  CHECK(tri_and(Tri::kFalse, Tri::kUnknown) == Tri::kFalse);
  CHECK(tri_and(Tri::kTrue, Tri::kUnknown) == Tri::kUnknown);
  CHECK(tri_and(Tri::kTrue, Tri::kTrue) == Tri::kTrue);
}

TEST_CASE("bounded evaluation examples") {
  Oca cd = T::corpus("countdown");
  CHECK(eval_bounded(cd, {0, 2}, parse_formula("FA p"), 10, 10) == Tri::kTrue);

  Oca inc = T::corpus("increment-loop");
  for (int cap : {0, 3, 20}) {
    CHECK(eval_bounded(inc, {0, 0}, parse_formula("FA p"), cap, cap) == Tri::kFalse);
    CHECK(eval_bounded(inc, {0, 0}, parse_formula("A true U p"), cap, cap) == Tri::kFalse);
  }

  Oca af = T::corpus("asymmetric-fork");
  const StateId r = *af.find_state("r");
  CHECK(eval_bounded(af, {r, 5}, parse_formula("FA p"), 0, 0) == Tri::kUnknown);
  CHECK(eval_bounded(af, {r, 5}, parse_formula("FA p"), 50, 50) == Tri::kFalse);
}

TEST_CASE("state formulas are exact beyond the counter cap") {
  Oca cd = T::corpus("countdown");
  BoundedEvaluator ev(cd, parse_formula("!(p & q)"), {2, 2});
  CHECK(ev.eval({0, 1000}) == Tri::kTrue);
  CHECK(ev.eval(parse_formula("p"), {1, 1000}) == Tri::kTrue);
}

TEST_CASE("mining examples") {
  Oca cd = T::corpus("countdown");
  MineResult t = mine_period(cd, parse_formula("true"), 0, 20, {});
  CHECK(t.pair == std::pair<Counter, Counter>{0, 1});

  MineResult ex = mine_period(cd, parse_formula("EX p"), 0, 20, {});
  REQUIRE(ex.table.size() == 21);
  CHECK(ex.table[0] == Tri::kTrue);
  CHECK(ex.table[1] == Tri::kFalse);
  CHECK(ex.table[2] == Tri::kFalse);
  CHECK(ex.pair == std::pair<Counter, Counter>{1, 1});

  Oca par = parity_oca();
  for (StateId s = 0; s < 2; ++s) CHECK(mine_period(par, parse_formula("p"), s, 20, {}).pair == std::pair<Counter, Counter>{0, 1});
}

TEST_CASE("least period") {
  using V = std::vector<Tri>;
  const Tri t = Tri::kTrue, f = Tri::kFalse, u = Tri::kUnknown;
  CHECK(least_period(V{t, f, t, f, t, f, t}) == std::pair<Counter, Counter>{0, 2});
  CHECK(least_period(V{f, f, t, t, t, t, t}) == std::pair<Counter, Counter>{2, 1});
  CHECK(least_period(V{u, t, t, t}) == std::pair<Counter, Counter>{1, 1});
  CHECK_FALSE(least_period(V{t, t, t, u}).has_value());
  CHECK_FALSE(least_period(V{t, f, f, t, f}).has_value());
  CHECK(table_periodic(V{t, f, t, u, t}, 0, 2));
  CHECK_FALSE(table_periodic(V{t, f, f}, 0, 2));
}

TEST_CASE("definite verdicts never flip as caps grow") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 25; ++i) {
    Oca oca = T::random_oca(rng);
    for (const std::string& text : T::formula_suite()) {
      Formula f = parse_formula(text);
      BoundedEvaluator small(oca, f, {6, 12}), large(oca, f, {25, 60});
      for (StateId s = 0; s < oca.num_states(); ++s) {
        for (Counter v = 0; v <= 8; ++v) CHECK_FALSE(contradicts(small.eval({s, v}), large.eval({s, v})));
      }
    }
  }
}

TEST_CASE("mined pairs are consistent on re-evaluation") {
  for (const std::string& name : T::corpus_names()) {
    Oca oca = T::corpus(name);
    for (const std::string& text : T::formula_suite()) {
      Formula f = parse_formula(text);
      BoundedEvaluator ev(oca, f, {40, 80});
      for (StateId s = 0; s < oca.num_states(); ++s) {
        MineResult m = mine_period(ev, f, s, 24);
        if (!m.pair) continue;
        auto [t, p] = *m.pair;
        for (Counter k = 0; k <= 2; ++k) {
          CHECK_FALSE(contradicts(ev.eval({s, t + k * p}), ev.eval({s, t + k * p + p})));
        }
      }
    }
  }
}

TEST_CASE("CTL recursion over mined child pairs is valid on the sample") {
  const Counter v_cap = 40;
  for (const std::string& name : T::corpus_names()) {
    Oca oca = T::corpus(name);
    const int k = static_cast<int>(oca.num_states());
    for (const std::string& text : T::ctl_suite()) {
      Formula f = parse_formula(text);
      BoundedEvaluator ev(oca, f, {60, 120});
      std::map<std::string, TpPair> mined;  // strict convention
      bool complete = true;
      for (const Formula& g : subformulas(f)) {
        Counter t = 0, p = 1;
        for (StateId s = 0; s < oca.num_states(); ++s) {
          MineResult m = mine_period(ev, g, s, v_cap);
          if (!m.pair) {
            complete = false;
            break;
          }
          t = std::max(t, m.pair->first);
          p = std::lcm(p, m.pair->second);
        }
        if (!complete) break;
        mined[g.text()] = {BigInt(t > 0 ? t - 1 : 0), BigInt(p)};
        if (g.children().empty()) continue;
        std::vector<TpPair> kids;
        for (const Formula& c : g.children()) kids.push_back(mined.at(c.text()));
        TpPair pair = ctl_constants(g.op(), kids, k);
        if (!fits_int64(pair.t) || !fits_int64(pair.p)) continue;
        const Counter rt = to_int64(pair.t) + 1, rp = to_int64(pair.p);
        for (StateId s = 0; s < oca.num_states(); ++s) {
          std::vector<Tri> table;
          for (Counter v = 0; v <= v_cap; ++v) table.push_back(ev.eval(g, {s, v}));
          CHECK(table_periodic(table, rt, rp));
        }
      }
    }
  }
}

TEST_CASE("uniform mining covers every subformula") {
  Oca cd = T::corpus("countdown");
  UniformMining m = mine_uniform(cd, parse_formula("A true U (q UE p)"), 30, {});
  REQUIRE(m.pair.has_value());
  CHECK(m.failures.empty());
  CHECK(m.per_subformula.size() == subformulas(parse_formula("A true U (q UE p)")).size());
  for (const auto& [text, pr] : m.per_subformula) {
    CHECK(pr.first <= m.pair->first);
    CHECK(m.pair->second % pr.second == 0);
  }
}

TEST_CASE("cross-check on TRUE agrees everywhere") {
  for (const std::string& name : T::corpus_names()) {
    Oca oca = T::corpus(name);
    std::vector<Configuration> inits;
    for (StateId s = 0; s < oca.num_states(); ++s) {
      for (Counter v = 0; v <= 10; ++v) inits.push_back({s, v});
    }
    CrossCheckReport rep = cross_check(oca, parse_formula("true"), inits, Mode::empirical(), {});
    CHECK(rep.agree == inits.size());
  }
}

TEST_CASE("level correspondences on the deterministic countdown") {
  Oca cd = T::corpus("countdown");
  ConstantBundle c = ua_constants(3, 0, 1, 1);
  Lemma11Report rep = check_lemma11(cd, c);
  CHECK(rep.below_regime);
  CHECK(rep.samples > 0);
  for (const auto& [name, groups] : rep.counts) {
    CHECK(groups[0].pass > 0);
    CHECK(groups[0].fail == 0);
  }
  // With b = 1 the segment threshold 2 is below 3b^5 P = 6, so levels just
  // past a segment start are not repetitions yet: (s,3) reaches (t,0) at
  // level 4 but only (s,1) at level 2.
  for (const Lemma11Failure& f : rep.failures) {
    CHECK(f.segment >= 1);
    CHECK_FALSE(f.slope_repetitions.empty());
    CHECK(f.repetition_threshold == c.P);
  }
}

TEST_CASE("folded shaped witnesses on small automata") {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 5; ++i) {
    Oca oca = T::random_oca(rng);
    Lemma8Report rep = check_lemma8(oca, 6, 8, 20, 6);
    CHECK(rep.facts > 0);
    CHECK(rep.misses == 0);
    CHECK(rep.max_flat_length <= 20);
    CHECK(rep.max_size <= 6);
  }
}

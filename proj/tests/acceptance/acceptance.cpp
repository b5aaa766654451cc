// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ocasync/bigint.hpp"
#include "ocasync/formula.hpp"
#include "ocasync/kripke.hpp"
#include "ocasync/lps.hpp"
#include "ocasync/mc.hpp"
#include "ocasync/oracle.hpp"
#include "ocasync/periodicity.hpp"
#include "support.hpp"

using namespace ocasync;
namespace T = ocasync::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

NodeSet atom_set(const Kripke& k, const std::string& name) {
  return label_ctl(k, Formula::atom(name), {});
}

Outcome separation() {
  Kripke a = T::fig1_tree_a();
  Kripke b = T::fig1_tree_b();
  auto holds = [](const Kripke& k, const std::string& f) {
    return label_all(k, parse_formula(f)).sat.at(parse_formula(f).text()).test(0);
  };
  bool ok = true;
  std::ostringstream d;
  auto expect = [&](bool got, bool want, const char* what) {
    if (got != want) {
      ok = false;
      d << what << " wrong; ";
    }
  };
  expect(holds(a, "A true U black"), true, "AU(a)");
  expect(holds(b, "A true U black"), true, "AU(b)");
  expect(holds(a, "FA black"), true, "UA(a)");
  expect(holds(b, "FA black"), false, "UA(b)");
  expect(holds(a, "E white U stripes"), true, "EU(a)");
  expect(holds(b, "E white U stripes"), false, "EU(b)");
  SyncResult ua = check_ua(a, 0, NodeSet(a.size(), true), atom_set(a, "black"));
  expect(ua.witness_k == std::optional<std::size_t>(3), true, "UA(a) k");
  SyncResult ue = check_ue(b, 0, atom_set(b, "white"), atom_set(b, "stripes"));
  expect(ue.holds, true, "UE(b)");
  expect(ue.witness_k == std::optional<std::size_t>(6), true, "UE(b) k");
  d << "UE(b) k=" << (ue.witness_k ? std::to_string(*ue.witness_k) : "-");
  return {ok, d.str()};
}

const OracleCaps kCaps{60, 200};

Outcome oracle_equivalence() {
  std::size_t agree = 0, disagree = 0, unknown = 0, runs = 0;
  std::ostringstream d;
  for (const std::string& name : T::corpus_names()) {
    Oca oca = T::corpus(name);
    for (const std::string& text : T::formula_suite()) {
      Formula f = parse_formula(text);
      std::vector<Configuration> inits;
      for (StateId s = 0; s < oca.num_states(); ++s) {
        for (Counter v = 0; v <= 12; ++v) inits.push_back({s, v});
      }
      CrossCheckReport r = cross_check(oca, f, inits, Mode::empirical(kCaps, 30), kCaps);
      agree += r.agree;
      unknown += r.unknown;
      ++runs;
      if (r.disagree > 0) {
        disagree += r.disagree;
        d << name << ":" << text << " ";
      }
    }
  }
  d << runs << " runs, AGREE=" << agree << " DISAGREE=" << disagree << " UNKNOWN=" << unknown;
  return {disagree == 0, d.str()};
}

// Strict-convention pair from a mined "v >= t" pair.
TpPair strict(std::pair<Counter, Counter> mined) {
  return {BigInt(static_cast<long>(std::max<Counter>(mined.first - 1, 0))),
          BigInt(static_cast<long>(mined.second))};
}

Outcome recursion_soundness() {
  const Counter v_max = 60;
  const OracleCaps caps{2 * v_max, 200};
  std::size_t violations = 0, checked = 0, vacuous = 0, unmined = 0;
  std::ostringstream d;
  for (const std::string& name : T::corpus_names()) {
    Oca oca = T::corpus(name);
    for (const std::string& text : T::ctl_suite()) {
      Formula f = parse_formula(text);
      BoundedEvaluator ev(oca, f, caps);
      for (const Formula& g : subformulas(f)) {
        if (g.op() != Op::kEX && g.op() != Op::kEU && g.op() != Op::kAU) continue;
        std::vector<TpPair> kids;
        bool mined_all = true;
        for (const Formula& c : g.children()) {
          Counter t = 0, p = 1;
          for (StateId s = 0; s < oca.num_states(); ++s) {
            MineResult m = mine_period(ev, c, s, v_max);
            if (!m.pair) {
              mined_all = false;
              break;
            }
            t = std::max(t, m.pair->first);
            p = std::lcm(p, m.pair->second);
          }
          kids.push_back(strict({t, p}));
        }
        if (!mined_all) {
          ++unmined;
          continue;
        }
        TpPair pair = ctl_constants(g.op(), kids, static_cast<int>(oca.num_states()));
        if (pair.t >= v_max) ++vacuous;
        for (StateId s = 0; s < oca.num_states(); ++s) {
          std::vector<Tri> table;
          for (Counter v = 0; v <= v_max; ++v) table.push_back(ev.eval(g, {s, v}));
          ++checked;
          if (pair.t >= v_max) continue;
          const Counter t = to_int64(pair.t);
          const BigInt& p = pair.p;
          for (Counter v = t + 1; v <= v_max; ++v) {
            for (Counter w = v + 1; w <= v_max; ++w) {
              if (BigInt(static_cast<long>(w - v)) % p != 0) continue;
              if (table[v] == Tri::kUnknown || table[w] == Tri::kUnknown) continue;
              if (table[v] != table[w]) {
                ++violations;
                d << name << ":" << g.text() << "@" << oca.state_name(s) << " v=" << v << ",w=" << w << " ";
              }
            }
          }
        }
      }
    }
  }
  d << checked << " (formula,state) tables, " << vacuous << " pairs with t >= " << v_max
    << ", " << unmined << " children without a mined pair, violations=" << violations;
  return {violations == 0 && unmined == 0, d.str()};
}

Outcome prop5_equivalence() {
  std::size_t agree = 0, disagree = 0, unknown = 0, instances = 0, skipped = 0;
  std::ostringstream d;
  for (const std::string& name : T::corpus_names()) {
    Oca oca = T::corpus(name);
    for (const std::string& text : T::formula_suite()) {
      Formula f = parse_formula(text);
      UniformMining m = mine_uniform(oca, f, 30, kCaps);
      if (!m.pair || m.pair->first + m.pair->second > 30) {
        ++skipped;
        continue;
      }
      std::vector<Configuration> inits;
      for (StateId s = 0; s < oca.num_states(); ++s) {
        for (Counter v = 0; v <= 12; ++v) inits.push_back({s, v});
      }
      CrossCheckReport r =
          cross_check(oca, f, inits, Mode::supplied(m.pair->first, m.pair->second), kCaps);
      ++instances;
      agree += r.agree;
      unknown += r.unknown;
      if (r.disagree) {
        disagree += r.disagree;
        d << name << ":" << text << " ";
      }
    }
  }
  d << instances << " instances, " << skipped << " without a pair t+p <= 30, AGREE=" << agree
    << " DISAGREE=" << disagree << " UNKNOWN=" << unknown;
  return {disagree == 0 && instances > 0, d.str()};
}

Outcome lemma8() {
  std::mt19937_64 rng(20240601);
  std::size_t facts = 0, misses = 0, folded = 0, max_flat = 0, max_size = 0;
  for (int i = 0; i < 50; ++i) {
    Oca oca = T::random_oca(rng);
    Lemma8Report r = check_lemma8(oca, 15, 15, 20, 6);
    facts += r.facts;
    misses += r.misses;
    folded += r.folded;
    max_flat = std::max(max_flat, r.max_flat_length);
    max_size = std::max(max_size, r.max_size);
  }
  std::ostringstream d;
  d << facts << " facts, misses=" << misses << ", folded=" << folded << ", max flat length "
    << max_flat << ", max size " << max_size;
  return {misses == 0, d.str()};
}

Outcome props_12_13() {
  std::vector<CycleStats> all;
  for (int b = 1; b <= 6; ++b) {
    for (int e = -b; e <= b; ++e) all.emplace_back(e, b);
  }
  std::size_t triples = 0, pairs = 0, violations = 0;
  for (int b = 1; b <= 6; ++b) {
    std::vector<CycleStats> cs;
    for (const CycleStats& c : all) {
      if (c.length <= b) cs.push_back(c);
    }
    for (const CycleStats& c1 : cs) {
      for (const CycleStats& c2 : cs) {
        for (const CycleStats& c3 : cs) {
          if (!(c1.slope() <= c2.slope() && c2.slope() <= c3.slope())) continue;
          ++triples;
          auto [k1, k3] = combine_cycles_ratio(c1, c2, c3);
          const std::int64_t ne = k1 * c1.effect + k3 * c3.effect;
          const std::int64_t nl = k1 * c1.length + k3 * c3.length;
          const bool ok = k1 >= 0 && k3 >= 0 && (k1 + k3) > 0 && ne * c2.length == nl * c2.effect &&
                          k1 <= 2 * b * b && k3 <= 2 * b * b && nl <= 2 * b * b * b;
          if (!ok) ++violations;
        }
      }
    }
    const BigInt x = lcm_range(static_cast<std::uint64_t>(2 * b * b));
    for (const CycleStats& c1 : cs) {
      for (const CycleStats& c2 : cs) {
        if (!(c1.slope() < c2.slope())) continue;
        for (int sign : {1, -1}) {
          ++pairs;
          const BigInt xs = x * sign;
          auto [k1, k2] = adjust_length(c1, c2, xs, b);
          const bool ok = k1 * c1.effect + k2 * c2.effect == 0 && k1 * c1.length + k2 * c2.length == xs;
          if (!ok) ++violations;
        }
      }
    }
  }
  std::ostringstream d;
  d << triples << " triples, " << pairs << " pairs (b <= 6), violations=" << violations;
  return {violations == 0, d.str()};
}

Outcome constants_sanity() {
  std::ostringstream d;
  bool ok = true;
  for (int n : {3, 4, 5}) {
    ConstantBundle c = ua_constants(n, 0, 1);
    const BigInt b = static_cast<long>(c.b);
    ok = ok && c.P == c.B * c.prev_p && c.sT == pow(b, 9) * c.P && c.cT == pow(b, 11) * c.P &&
         c.P > c.prev_t && c.m + 1 < c.b * c.b && c.B == lcm_range(2 * c.b * c.b * c.b);
    std::vector<std::size_t> bits;
    std::string text = "p";
    for (int depth = 1; depth <= 3; ++depth) {
      text = "FA (" + text + ")";
      auto rows = formula_constants(parse_formula(text), n, std::nullopt);
      const ConstantBundle& top = *rows.back().bundle;
      ok = ok && top.P == top.B * top.prev_p && top.P > top.prev_t;
      bits.push_back(bit_length(top.P));
    }
    // P grows by one factor B per nesting level: bit length at most linear in depth.
    const std::size_t bb = bit_length(c.B);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      ok = ok && (i == 0 || bits[i] > bits[i - 1]) && bits[i] <= (i + 1) * bb + 1;
    }
    d << "n=" << n << " b=" << c.b << " m=" << c.m << " bits(P)=" << bits[0] << "/" << bits[1] << "/"
      << bits[2] << "; ";
  }
  return {ok, d.str()};
}

// Root branching into disjoint cycles of lengths 2, 3 and 4: the level sets
// of the root only repeat after lcm(2,3,4) = 12 steps.
Kripke cycle_bundle() {
  std::vector<std::vector<NodeId>> succ{{1, 3, 6}};
  NodeId next = 1;
  for (NodeId len : {2u, 3u, 4u}) {
    for (NodeId j = 0; j < len; ++j) succ.push_back({next + (j + 1) % len});
    next += len;
  }
  std::vector<std::vector<AtomId>> labels(succ.size());
  labels[1] = {1};
  labels[3] = {1};
  return Kripke({"a", "b"}, labels, succ);
}

Outcome termination() {
  std::mt19937_64 rng(7);
  std::size_t worst = 0;
  bool ok = true;
  auto run = [&](const Kripke& k, const NodeSet& s1, const NodeSet& s2) {
    for (NodeId u = 0; u < k.size(); ++u) {
      SyncResult r = check_ua(k, u, s1, s2);
      worst = std::max(worst, r.iterations);
      if (r.iterations > (std::size_t{1} << k.size()) + 1) ok = false;
    }
  };
  for (int i = 0; i < 200; ++i) {
    Kripke k = T::random_kripke(rng, 10);
    // Half the cases never fail the invariant, so only the repetition
    // check can stop the iteration.
    NodeSet s1 = i % 2 ? NodeSet(k.size(), true) : label_ctl(k, Formula::atom("a"), {});
    NodeSet s2 = label_ctl(k, Formula::atom("b"), {});
    run(k, s1, s2);
  }
  Kripke cyc = cycle_bundle();
  run(cyc, NodeSet(cyc.size(), true), label_ctl(cyc, Formula::atom("b"), {}));
  return {ok, "200 random structures plus a 10-node cycle bundle, max iterations " + std::to_string(worst)};
}

Outcome lemma11_scaled() {
  struct Case {
    const char* name;
    std::int64_t b;
    long prev_p;
  };
  const std::vector<Case> cases{{"countdown", 1, 1},       {"increment-loop", 1, 1},
                                {"countdown", 1, 2},       {"fork", 2, 1},
                                {"asymmetric-fork", 2, 1}, {"asymmetric-fork", 2, 2}};
  std::size_t seg0_fail = 0, seg0_pass = 0, hi_pass = 0, hi_fail = 0;
  std::ostringstream d;
  for (const Case& c : cases) {
    ConstantBundle bundle = ua_constants(3, 0, c.prev_p, c.b);
    Lemma11Report r = check_lemma11(T::corpus(c.name), bundle);
    for (const auto& [impl, groups] : r.counts) {
      seg0_pass += groups[0].pass;
      seg0_fail += groups[0].fail;
      hi_pass += groups[1].pass;
      hi_fail += groups[1].fail;
    }
  }
  d << "segment 0: pass=" << seg0_pass << " fail=" << seg0_fail << "; segments >= 1 (reported): pass="
    << hi_pass << " fail=" << hi_fail;
  return {seg0_fail == 0 && seg0_pass > 0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "semantics separation on the two trees", 1, separation},
      {2, "oracle equivalence over corpus x suite", 120, oracle_equivalence},
      {3, "CTL recursion soundness from mined child pairs", 300, recursion_soundness},
      {4, "Kripke equivalence with supplied mined pairs", 120, prop5_equivalence},
      {5, "LPS-shaped witnesses for 50 random OCAs", 300, lemma8},
      {6, "cycle combination and length adjustment identities", 60, props_12_13},
      {7, "UA constant bundle sanity", 10, constants_sanity},
      {8, "UA level iteration terminates on fuzzed Kripke", 60, termination},
      {9, "scaled level correspondences, segment 0", 300, lemma11_scaled},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %d %s (%.2fs / %.0fs): %s%s\n", pass ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_s, o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ocasync/kripke.hpp"
#include "ocasync/oca.hpp"
#include "ocasync/oca_io.hpp"

namespace ocasync::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(OCASYNC_CORPUS_DIR) + "/" + name + ".oca";
}

inline std::vector<std::string> corpus_names() {
  return {"countdown", "fork", "asymmetric-fork", "increment-loop", "random-a", "random-b"};
}

inline Oca corpus(const std::string& name) { return load_oca_file(corpus_path(name)); }

// Nine core operators, nesting depth <= 2, over atoms p and q.
inline std::vector<std::string> formula_suite() {
  return {"true",
          "p",
          "!p",
          "(p & !q)",
          "EX p",
          "E !p U q",
          "A true U p",
          "FA p",
          "!q UA p",
          "FE q",
          "!p UE p",
          "EX EX p",
          "EX (FA p)",
          "A true U (q UE p)",
          "FA (EX q)",
          "(E p U q) UA p",
          "!(FE (A p U q))"};
}

// Depth <= 2 formulas built from EX/EU/AU and booleans only.
inline std::vector<std::string> ctl_suite() {
  return {"EX p",         "E !p U q",          "A true U p",         "A !q U p",
          "EX EX p",      "EX (A true U q)",   "E q U (EX p)",       "A p U (E true U q)",
          "!(EX !q) & p", "E (EX p) U (A true U q)"};
}

struct RandomOcaSpec {
  std::size_t max_states = 3;
  int max_zero = 2;  // ZERO-guarded transitions per state
  int max_pos = 3;   // POS-guarded transitions per state
};

// Total, valid OCA over atoms p, q with random labels.
inline Oca random_oca(std::mt19937_64& rng, const RandomOcaSpec& spec = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::size_t n = static_cast<std::size_t>(pick(1, static_cast<int>(spec.max_states)));
  std::vector<std::string> names;
  std::vector<std::vector<AtomId>> labels(n);
  std::vector<Transition> ts;
  for (std::size_t s = 0; s < n; ++s) {
    names.push_back("q" + std::to_string(s));
    for (AtomId a = 0; a < 2; ++a) {
      if (pick(0, 1)) labels[s].push_back(a);
    }
    const int nz = pick(1, spec.max_zero);
    for (int i = 0; i < nz; ++i) {
      ts.push_back({static_cast<StateId>(s), Guard::kZero, pick(0, 1),
                    static_cast<StateId>(pick(0, static_cast<int>(n) - 1))});
    }
    const int np = pick(1, spec.max_pos);
    for (int i = 0; i < np; ++i) {
      ts.push_back({static_cast<StateId>(s), Guard::kPositive, pick(-1, 1),
                    static_cast<StateId>(pick(0, static_cast<int>(n) - 1))});
    }
  }
  return Oca(names, {"p", "q"}, labels, ts);
}

// Total Kripke structure with up to max_nodes nodes and atoms a, b.
inline Kripke random_kripke(std::mt19937_64& rng, std::size_t max_nodes) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::size_t n = static_cast<std::size_t>(pick(1, static_cast<int>(max_nodes)));
  std::vector<std::vector<AtomId>> labels(n);
  std::vector<std::vector<NodeId>> succ(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (AtomId a = 0; a < 2; ++a) {
      if (pick(0, 1)) labels[u].push_back(a);
    }
    const int k = pick(1, 3);
    for (int i = 0; i < k; ++i) succ[u].push_back(static_cast<NodeId>(pick(0, static_cast<int>(n) - 1)));
  }
  return Kripke({"a", "b"}, labels, succ);
}

// The two computation trees of the separation example, leaves closed by
// self-loops. Atoms: black, white, stripes. Node 0 is the root.
inline Kripke fig1_tree_a() {
  // r(white) -> a1(white) -> a2(stripes) -> a3(black)*
  //          -> b1 -> b2 -> b3(black)*
  const AtomId black = 0, white = 1, stripes = 2;
  std::vector<std::vector<AtomId>> labels{{white}, {white}, {stripes}, {black}, {}, {}, {black}};
  std::vector<std::vector<NodeId>> succ{{1, 4}, {2}, {3}, {3}, {5}, {6}, {6}};
  return Kripke({"black", "white", "stripes"}, labels, succ);
}

inline Kripke fig1_tree_b() {
  // left:  r -> w -> w -> black -> . -> . -> stripes*
  // right: r -> black -> . -> w -> w -> w -> stripes*
  const AtomId black = 0, white = 1, stripes = 2;
  std::vector<std::vector<AtomId>> labels{{white}, {white}, {white},  {black}, {}, {},  {stripes},
                                          {black}, {},      {white},  {white}, {white}, {stripes}};
  std::vector<std::vector<NodeId>> succ{{1, 7}, {2}, {3}, {4}, {5}, {6}, {6},
                                        {8},    {9}, {10}, {11}, {12}, {12}};
  return Kripke({"black", "white", "stripes"}, labels, succ);
}

}  // namespace ocasync::testing

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ocasync/formula.hpp"
#include "ocasync/oca.hpp"
#include "ocasync/periodicity.hpp"
#include "ocasync/rational.hpp"

namespace ocasync {

enum class Tri : std::uint8_t { kFalse, kTrue, kUnknown };

const char* tri_name(Tri t);
Tri tri_not(Tri a);
Tri tri_and(Tri a, Tri b);
inline Tri tri_of(bool b) { return b ? Tri::kTrue : Tri::kFalse; }

struct OracleCaps {
  Counter counter_cap = 60;
  int level_cap = 200;
};

// Definitional three-valued evaluation. Tables cover every configuration
// with counter <= counter_cap; EX/EU/AU read UNKNOWN beyond it unless the
// subformula is a state formula. UA/UE walk exact level sets up to level_cap.
class BoundedEvaluator {
 public:
  BoundedEvaluator(const Oca& oca, const Formula& f, OracleCaps caps);
  ~BoundedEvaluator();
  BoundedEvaluator(const BoundedEvaluator&) = delete;
  BoundedEvaluator& operator=(const BoundedEvaluator&) = delete;

  const Formula& formula() const;
  const OracleCaps& caps() const;
  // g must be a subformula of the bound formula.
  Tri eval(const Formula& g, const Configuration& c);
  Tri eval(const Configuration& c);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Tri eval_bounded(const Oca& oca, const Configuration& c, const Formula& f, Counter counter_cap,
                 int level_cap);

struct MineResult {
  // Periodic for v >= t (repo convention).
  std::optional<std::pair<Counter, Counter>> pair;
  std::vector<Tri> table;  // v = 0..v_cap
};

MineResult mine_period(const Oca& oca, const Formula& f, StateId s, Counter v_cap,
                       OracleCaps caps);
MineResult mine_period(BoundedEvaluator& ev, const Formula& g, StateId s, Counter v_cap);
// Lexicographically least (t,p) with t + 2p <= table.size()-1 for which the
// table is definite from t on and p-periodic there.
std::optional<std::pair<Counter, Counter>> least_period(const std::vector<Tri>& table);

// One pair valid for every subformula and state: (max t, lcm p). Empty when
// some mining attempt fails.
struct UniformMining {
  std::optional<std::pair<Counter, Counter>> pair;
  std::vector<std::string> failures;  // "formula @ state"
  std::map<std::string, std::pair<Counter, Counter>> per_subformula;
};
UniformMining mine_uniform(const Oca& oca, const Formula& f, Counter v_cap, OracleCaps caps);

// Periodicity of a verdict table against a pair (t,p), comparing definite
// entries only, for v >= t.
bool table_periodic(const std::vector<Tri>& table, Counter t, Counter p);

struct Lemma11Sampling {
  std::vector<Counter> v_offsets{1, 2, 3, 5, 8};  // v = cT + offset
  int level_max = 24;
  std::size_t max_failures_reported = 8;
};

struct Lemma11Counts {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
};

struct Lemma11Failure {
  std::string implication;
  StateId state;
  Counter v;
  Counter level;
  Counter target_level;
  StateId end_state;
  Counter end_counter;
  int segment;
  // Repetitions per slope of a folded witness path; threshold is b^4 * P.
  std::map<Rational, std::int64_t> slope_repetitions;
  BigInt repetition_threshold;
};

struct Lemma11Report {
  // implication ("1a","1b","2a","2b") -> [segment 0, segments >= 1]
  std::map<std::string, std::array<Lemma11Counts, 2>> counts;
  std::vector<Lemma11Failure> failures;
  bool below_regime = false;
  std::size_t samples = 0;
};

// Throws InputError if cT or the sampled counters do not fit 64 bits.
Lemma11Report check_lemma11(const Oca& oca, const ConstantBundle& bundle,
                            const Lemma11Sampling& sampling = {});

struct Lemma8Report {
  std::size_t facts = 0;
  std::size_t misses = 0;
  std::size_t folded = 0;  // witnesses whose scheme has at least one cycle
  std::size_t max_flat_length = 0;
  std::size_t max_size = 0;
};

// Every (s,v) ~l~> (s',v') with v, v' <= v_max and l <= l_max gets a folded
// scheme within the bounds; shaped_reach must reproduce the end configuration.
Lemma8Report check_lemma8(const Oca& oca, Counter v_max, int l_max, std::size_t flat_bound,
                          std::size_t size_bound);

}  // namespace ocasync

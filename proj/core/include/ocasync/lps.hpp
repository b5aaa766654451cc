#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ocasync/bigint.hpp"
#include "ocasync/oca.hpp"
#include "ocasync/rational.hpp"

namespace ocasync {

// Sequences hold indices into Oca::transitions().
using TransitionPath = std::vector<std::size_t>;

struct LpsSegment {
  TransitionPath beta;  // simple cycle
  TransitionPath alpha;

  friend auto operator<=>(const LpsSegment&, const LpsSegment&) = default;
};

// alpha0 beta1* alpha1 ... betak* alphak
struct Lps {
  TransitionPath alpha0;
  std::vector<LpsSegment> segments;

  std::size_t size() const { return segments.size(); }
  std::size_t flat_length() const;

  friend auto operator<=>(const Lps&, const Lps&) = default;
};

struct CycleStats {
  int effect = 0;
  int length = 1;

  CycleStats() = default;
  // Throws std::invalid_argument unless 1 <= length and |effect| <= length.
  CycleStats(int e, int l);
  Rational slope() const { return Rational(effect, length); }
};

CycleStats cycle_stats(const Oca& oca, const TransitionPath& cycle);

// x/y with |x| <= y <= b, ascending, as distinct rationals.
std::vector<Rational> basic_slopes(int b);

// Nonnegative (k1, k3), not both zero, gcd-reduced, with
// (k1 e1 + k3 e3) / (k1 l1 + k3 l3) = e2 / l2.
// Throws std::invalid_argument unless slope1 <= slope2 <= slope3.
std::pair<std::int64_t, std::int64_t> combine_cycles_ratio(const CycleStats& c1,
                                                          const CycleStats& c2,
                                                          const CycleStats& c3);

// Signed repetition deltas with k1 e1 + k2 e2 = 0 and k1 l1 + k2 l2 = x.
// x > 0 lengthens, x < 0 shortens. Throws std::invalid_argument unless
// slope1 < slope2, both cycles have length <= b, and lcm[1..2b^2] divides x.
std::pair<BigInt, BigInt> adjust_length(const CycleStats& c1, const CycleStats& c2,
                                        const BigInt& x, int b);

// Invariant checks; return false on a malformed scheme.
bool is_well_formed(const Oca& oca, const Lps& scheme, StateId start, StateId end);

// Every scheme from start to end with flat length <= flat_bound and
// size <= size_bound whose cycles are simple, in lexicographic order of
// (alpha0, beta1, alpha1, ...). The visitor returns false to stop early.
void for_each_lps(const Oca& oca, StateId start, StateId end, std::size_t flat_bound,
                  std::size_t size_bound, const std::function<bool(const Lps&)>& visit);
std::vector<Lps> enumerate_lps(const Oca& oca, StateId start, StateId end,
                               std::size_t flat_bound, std::size_t size_bound);

// Ends of valid paths alpha0 beta1^e1 ... betak^ek alphak of length exactly
// target_length with every ei <= exp_cap.
std::set<Configuration> shaped_reach(const Oca& oca, const Lps& scheme, const Configuration& start,
                                     std::int64_t target_length, std::int64_t exp_cap);

// Exponent vectors realising shaped_reach, keyed by end configuration; the
// lexicographically smallest vector is kept.
std::map<Configuration, std::vector<std::int64_t>> shaped_witnesses(
    const Oca& oca, const Lps& scheme, const Configuration& start, std::int64_t target_length,
    std::int64_t exp_cap);

std::map<Rational, std::int64_t> analyze_cycle_repetitions(const Oca& oca, const Lps& scheme,
                                                           const std::vector<std::int64_t>& exponents);

// Fold a concrete transition path into a scheme by greedily turning the
// longest runs of a repeated simple cycle into starred segments, keeping the
// size <= size_bound. Returns the scheme and the exponents that re-expand it.
std::pair<Lps, std::vector<std::int64_t>> fold_path(const Oca& oca, const TransitionPath& path,
                                                    std::size_t size_bound);

// Some valid path of exactly `length` steps from `from` to `to`.
struct PathSearch {
  bool found = false;
  TransitionPath path;
};
PathSearch find_path(const Oca& oca, const Configuration& from, const Configuration& to,
                     int length);

}  // namespace ocasync

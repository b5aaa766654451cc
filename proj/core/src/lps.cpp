#include "ocasync/lps.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ocasync {

std::size_t Lps::flat_length() const {
  std::size_t n = alpha0.size();
  for (const LpsSegment& s : segments) n += s.beta.size() + s.alpha.size();
  return n;
}

CycleStats::CycleStats(int e, int l) : effect(e), length(l) {
  if (l < 1 || e < -l || e > l) throw std::invalid_argument("cycle stats need |effect| <= length");
}

CycleStats cycle_stats(const Oca& oca, const TransitionPath& cycle) {
  int e = 0;
  for (std::size_t i : cycle) e += oca.transitions().at(i).effect;
  return CycleStats(e, static_cast<int>(cycle.size()));
}

std::vector<Rational> basic_slopes(int b) {
  if (b < 1) throw std::invalid_argument("basic slopes need b >= 1");
  std::vector<Rational> out;
  for (int y = 1; y <= b; ++y) {
    for (int x = -y; x <= y; ++x) out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<std::int64_t, std::int64_t> combine_cycles_ratio(const CycleStats& c1,
                                                          const CycleStats& c2,
                                                          const CycleStats& c3) {
  Rational s1 = c1.slope(), s2 = c2.slope(), s3 = c3.slope();
  if (s1 > s2 || s2 > s3) throw std::invalid_argument("cycle slopes are not ordered");
  if (s1 == s2) return {1, 0};
  if (s2 == s3) return {0, 1};
  std::int64_t k1 = std::int64_t{c2.length} * c3.effect - std::int64_t{c3.length} * c2.effect;
  std::int64_t k3 = std::int64_t{c1.length} * c2.effect - std::int64_t{c2.length} * c1.effect;
  std::int64_t g = std::gcd(k1, k3);
  return {k1 / g, k3 / g};
}

std::pair<BigInt, BigInt> adjust_length(const CycleStats& c1, const CycleStats& c2,
                                        const BigInt& x, int b) {
  if (b < 1) throw std::invalid_argument("adjust_length needs b >= 1");
  if (c1.length > b || c2.length > b) throw std::invalid_argument("cycle longer than b");
  if (!(c1.slope() < c2.slope())) throw std::invalid_argument("cycle slopes are not increasing");
  if (x == 0) throw std::invalid_argument("length change must be non-zero");
  BigInt l = lcm_range(2ull * b * b);
  if (!mpz_divisible_p(x.get_mpz_t(), l.get_mpz_t())) {
    throw std::invalid_argument("length change not divisible by lcm[1..2b^2]");
  }
  // d > 0 by the slope order; d <= 2b^2 divides x.
  long d = static_cast<long>(c2.effect) * c1.length - static_cast<long>(c1.effect) * c2.length;
  BigInt k1 = x * static_cast<long>(c2.effect) / d;
  BigInt k2 = -x * static_cast<long>(c1.effect) / d;
  return {k1, k2};
}

bool is_well_formed(const Oca& oca, const Lps& scheme, StateId start, StateId end) {
  const auto& ts = oca.transitions();
  StateId cur = start;
  auto walk = [&](const TransitionPath& p) {
    for (std::size_t i : p) {
      if (i >= ts.size() || ts[i].src != cur) return false;
      cur = ts[i].dst;
    }
    return true;
  };
  if (!walk(scheme.alpha0)) return false;
  for (const LpsSegment& s : scheme.segments) {
    if (s.beta.empty()) return false;
    StateId anchor = cur;
    std::vector<StateId> seen;
    for (std::size_t i : s.beta) {
      if (i >= ts.size() || ts[i].src != cur) return false;
      if (std::find(seen.begin(), seen.end(), cur) != seen.end()) return false;
      seen.push_back(cur);
      cur = ts[i].dst;
    }
    if (cur != anchor) return false;
    if (!walk(s.alpha)) return false;
  }
  return cur == end;
}

namespace {

class LpsEnumerator {
 public:
  LpsEnumerator(const Oca& oca, StateId end, std::size_t flat_bound, std::size_t size_bound,
                const std::function<bool(const Lps&)>& visit)
      : oca_(oca), end_(end), flat_bound_(flat_bound), size_bound_(size_bound), visit_(visit) {}

  void run(StateId start) { alpha(0, start); }

 private:
  // Piece 0 is alpha0, piece j the alpha of segment j-1. Addressed by index
  // because nested segments reallocate the segment vector.
  TransitionPath& piece(std::size_t j) {
    return j == 0 ? scheme_.alpha0 : scheme_.segments[j - 1].alpha;
  }

  // Extends piece j; ending the piece here sorts before any extension.
  bool alpha(std::size_t j, StateId cur) {
    if (!after_alpha(cur)) return false;
    if (used_ >= flat_bound_) return true;
    for (std::size_t i : oca_.outgoing(cur)) {
      piece(j).push_back(i);
      ++used_;
      bool go = alpha(j, oca_.transitions()[i].dst);
      --used_;
      piece(j).pop_back();
      if (!go) return false;
    }
    return true;
  }

  bool after_alpha(StateId cur) {
    if (cur == end_ && !visit_(scheme_)) return false;
    if (scheme_.segments.size() >= size_bound_) return true;
    scheme_.segments.push_back({});
    std::vector<bool> on_cycle(oca_.num_states(), false);
    on_cycle[cur] = true;
    bool go = beta(cur, cur, on_cycle);
    scheme_.segments.pop_back();
    return go;
  }

  bool beta(StateId anchor, StateId cur, std::vector<bool>& on_cycle) {
    if (used_ >= flat_bound_) return true;
    for (std::size_t i : oca_.outgoing(cur)) {
      StateId dst = oca_.transitions()[i].dst;
      scheme_.segments.back().beta.push_back(i);
      ++used_;
      bool go = true;
      if (dst == anchor) {
        go = alpha(scheme_.segments.size(), anchor);
      } else if (!on_cycle[dst]) {
        on_cycle[dst] = true;
        go = beta(anchor, dst, on_cycle);
        on_cycle[dst] = false;
      }
      --used_;
      scheme_.segments.back().beta.pop_back();
      if (!go) return false;
    }
    return true;
  }

  const Oca& oca_;
  StateId end_;
  std::size_t flat_bound_;
  std::size_t size_bound_;
  const std::function<bool(const Lps&)>& visit_;
  Lps scheme_;
  std::size_t used_ = 0;
};

}  // namespace

void for_each_lps(const Oca& oca, StateId start, StateId end, std::size_t flat_bound,
                  std::size_t size_bound, const std::function<bool(const Lps&)>& visit) {
  if (start >= oca.num_states() || end >= oca.num_states()) {
    throw std::invalid_argument("unknown state");
  }
  LpsEnumerator(oca, end, flat_bound, size_bound, visit).run(start);
}

std::vector<Lps> enumerate_lps(const Oca& oca, StateId start, StateId end,
                               std::size_t flat_bound, std::size_t size_bound) {
  std::vector<Lps> out;
  for_each_lps(oca, start, end, flat_bound, size_bound, [&](const Lps& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

namespace {

// Applies p to *c; false if some step is disabled or mismatched.
bool simulate(const Oca& oca, const TransitionPath& p, Configuration* c) {
  for (std::size_t i : p) {
    const Transition& t = oca.transitions().at(i);
    if (t.src != c->state || !enabled(t, c->counter)) return false;
    c->state = t.dst;
    c->counter += t.effect;
  }
  return true;
}

class ShapedSearch {
 public:
  ShapedSearch(const Oca& oca, const Lps& scheme, std::int64_t target, std::int64_t exp_cap)
      : oca_(oca), scheme_(scheme), target_(target), exp_cap_(exp_cap) {
    tail_alpha_.assign(scheme.size() + 1, 0);
    for (std::size_t j = scheme.size(); j-- > 0;) {
      tail_alpha_[j] = tail_alpha_[j + 1] + static_cast<std::int64_t>(scheme.segments[j].alpha.size());
    }
  }

  std::map<Configuration, std::vector<std::int64_t>> run(const Configuration& start) {
    Configuration c = start;
    std::int64_t len = static_cast<std::int64_t>(scheme_.alpha0.size());
    if (len + tail_alpha_[0] <= target_ && simulate(oca_, scheme_.alpha0, &c)) segment(0, c, len);
    return std::move(found_);
  }

 private:
  void segment(std::size_t j, Configuration c, std::int64_t len) {
    if (j == scheme_.size()) {
      if (len == target_) found_.try_emplace(c, exps_);
      return;
    }
    const LpsSegment& seg = scheme_.segments[j];
    const auto beta_len = static_cast<std::int64_t>(seg.beta.size());
    const auto alpha_len = static_cast<std::int64_t>(seg.alpha.size());
    for (std::int64_t e = 0; e <= exp_cap_; ++e) {
      Configuration after = c;
      if (simulate(oca_, seg.alpha, &after)) {
        exps_.push_back(e);
        segment(j + 1, after, len + alpha_len);
        exps_.pop_back();
      }
      if (len + beta_len + tail_alpha_[j] > target_) break;
      if (!simulate(oca_, seg.beta, &c)) break;
      len += beta_len;
    }
  }

  const Oca& oca_;
  const Lps& scheme_;
  std::int64_t target_;
  std::int64_t exp_cap_;
  std::vector<std::int64_t> tail_alpha_;  // sum of |alpha_i| for segments i >= j
  std::vector<std::int64_t> exps_;
  std::map<Configuration, std::vector<std::int64_t>> found_;
};

}  // namespace

std::map<Configuration, std::vector<std::int64_t>> shaped_witnesses(
    const Oca& oca, const Lps& scheme, const Configuration& start, std::int64_t target_length,
    std::int64_t exp_cap) {
  if (target_length < 0) throw std::invalid_argument("target length must be non-negative");
  return ShapedSearch(oca, scheme, target_length, exp_cap).run(start);
}

std::set<Configuration> shaped_reach(const Oca& oca, const Lps& scheme, const Configuration& start,
                                     std::int64_t target_length, std::int64_t exp_cap) {
  std::set<Configuration> out;
  for (const auto& [c, e] : shaped_witnesses(oca, scheme, start, target_length, exp_cap)) {
    out.insert(c);
  }
  return out;
}

std::map<Rational, std::int64_t> analyze_cycle_repetitions(const Oca& oca, const Lps& scheme,
                                                           const std::vector<std::int64_t>& exponents) {
  if (exponents.size() != scheme.size()) {
    throw std::invalid_argument("one exponent per cycle expected");
  }
  std::map<Rational, std::int64_t> out;
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    out[cycle_stats(oca, scheme.segments[i].beta).slope()] += exponents[i];
  }
  return out;
}

std::pair<Lps, std::vector<std::int64_t>> fold_path(const Oca& oca, const TransitionPath& path,
                                                    std::size_t size_bound) {
  const auto& ts = oca.transitions();
  Lps scheme;
  std::vector<std::int64_t> exps;
  TransitionPath* piece = &scheme.alpha0;
  const std::size_t n = path.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t best_len = 0;
    std::size_t best_reps = 0;
    if (scheme.size() < size_bound) {
      for (std::size_t len = 1; len <= oca.num_states() && i + 2 * len <= n; ++len) {
        if (ts[path[i + len - 1]].dst != ts[path[i]].src) continue;
        std::vector<bool> seen(oca.num_states(), false);
        bool simple = true;
        for (std::size_t k = 0; k < len && simple; ++k) {
          StateId s = ts[path[i + k]].src;
          simple = !seen[s];
          seen[s] = true;
        }
        if (!simple) continue;
        std::size_t reps = 1;
        while (i + (reps + 1) * len <= n &&
               std::equal(path.begin() + i, path.begin() + i + len,
                          path.begin() + i + reps * len)) {
          ++reps;
        }
        if (reps >= 2 && len * (reps - 1) > best_len * (best_reps > 0 ? best_reps - 1 : 0)) {
          best_len = len;
          best_reps = reps;
        }
      }
    }
    if (best_reps >= 2) {
      scheme.segments.push_back(
          {TransitionPath(path.begin() + i, path.begin() + i + best_len), {}});
      exps.push_back(static_cast<std::int64_t>(best_reps));
      piece = &scheme.segments.back().alpha;
      i += best_len * best_reps;
    } else {
      piece->push_back(path[i]);
      ++i;
    }
  }
  return {scheme, exps};
}

PathSearch find_path(const Oca& oca, const Configuration& from, const Configuration& to,
                     int length) {
  PathSearch out;
  if (length < 0) return out;
  std::vector<std::set<Configuration>> levels;
  levels.push_back({from});
  for (int l = 0; l < length; ++l) {
    std::set<Configuration> next;
    for (const Configuration& c : levels.back()) {
      for (const Configuration& d : successors(oca, c)) next.insert(d);
    }
    levels.push_back(std::move(next));
  }
  if (!levels[length].count(to)) return out;
  Configuration cur = to;
  out.path.resize(length);
  for (int l = length; l > 0; --l) {
    bool stepped = false;
    for (const Configuration& prev : levels[l - 1]) {
      for (std::size_t i : oca.outgoing(prev.state)) {
        const Transition& t = oca.transitions()[i];
        if (t.dst == cur.state && enabled(t, prev.counter) && prev.counter + t.effect == cur.counter) {
          out.path[l - 1] = i;
          cur = prev;
          stepped = true;
          break;
        }
      }
      if (stepped) break;
    }
    if (!stepped) return PathSearch{};
  }
  out.found = true;
  return out;
}

}  // namespace ocasync

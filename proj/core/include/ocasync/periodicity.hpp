#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ocasync/bigint.hpp"
#include "ocasync/formula.hpp"
#include "ocasync/rational.hpp"

namespace ocasync {

// Thresholds here follow the strict convention: (t,p)-periodic means equal
// truth for v, v' > t with v = v' mod p.
struct TpPair {
  BigInt t = 0;
  BigInt p = 1;

  friend bool operator==(const TpPair&, const TpPair&) = default;
};

// k is the number of OCA states. Throws std::invalid_argument for UA/UE or an
// arity mismatch.
TpPair ctl_constants(Op op, const std::vector<TpPair>& children, int k);

struct ConstantBundle {
  std::int64_t b = 0;
  BigInt B;       // lcm[1..2b^3]
  BigInt prev_t;  // max of the children's thresholds
  BigInt prev_p;  // lcm of the children's periods
  BigInt P;       // B * prev_p
  BigInt sT;      // b^9 * P
  BigInt cT;      // b^11 * P
  std::vector<Rational> slopes;           // all basic slopes, ascending
  std::vector<Rational> negative_slopes;  // eps_1 < ... < eps_m
  int m = 0;
  // b < 3 or m + 1 >= b^2: the bundle is usable for scaled experiments only.
  bool below_regime = false;
};

std::int64_t default_b(int n);

// Throws InputError if n < 3, prev_p < 1, or P <= prev_t.
ConstantBundle ua_constants(int n, const BigInt& prev_t, const BigInt& prev_p,
                            std::optional<std::int64_t> b_override = std::nullopt);

// Segment start for 0 <= i <= m+1; nullopt stands for the infinite sentinel
// at i = m+1. Throws std::invalid_argument if i is out of range or v <= cT.
std::optional<BigInt> segment_start(int i, const BigInt& v, const ConstantBundle& c);

// The concatenation of [start_i, start_i + sT) for i = 0..m.
class Core {
 public:
  Core(const BigInt& v, const ConstantBundle& c);

  BigInt size() const;
  const std::vector<BigInt>& starts() const { return starts_; }
  BigInt at(const BigInt& index) const;
  // First index holding `level`.
  std::optional<BigInt> index_of(const BigInt& level) const;
  // Lowest segment whose core part holds `level`.
  std::optional<int> core_segment(const BigInt& level) const;
  // Highest i with start_i <= level.
  int region(const BigInt& level) const;

 private:
  std::vector<BigInt> starts_;
  BigInt length_;
};

// Throws BudgetExceeded if the core has more than `limit` elements.
std::vector<BigInt> core_levels(const BigInt& v, const ConstantBundle& c,
                                std::size_t limit = 1u << 20);

// Index correspondence core(v) -> core(v + P). Throws std::invalid_argument
// if level is not in core(v).
BigInt shift_map(const BigInt& level, const BigInt& v, const ConstantBundle& c);
// level + P / (-eps_i) inside segment i >= 1, level inside segment 0.
BigInt shift_closed_form(const BigInt& level, const BigInt& v, const ConstantBundle& c);

struct SubformulaConstants {
  Formula formula;
  TpPair pair;
  std::optional<ConstantBundle> bundle;  // UA nodes only
};

// Bottom-up recursion over subformulas(f) for an OCA with n states.
// Throws InputError for UE, which has no closed-form constants.
std::vector<SubformulaConstants> formula_constants(const Formula& f, int n,
                                                   std::optional<std::int64_t> b_override);

}  // namespace ocasync

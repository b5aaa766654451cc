#include "ocasync/periodicity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ocasync/errors.hpp"
#include "ocasync/lps.hpp"

namespace ocasync {

TpPair ctl_constants(Op op, const std::vector<TpPair>& children, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  auto need = [&](std::size_t n) {
    if (children.size() != n) throw std::invalid_argument("child pair arity mismatch");
  };
  switch (op) {
    case Op::kTrue:
    case Op::kAtom:
      need(0);
      return {0, 1};
    case Op::kNot:
      need(1);
      return children[0];
    case Op::kAnd:
      need(2);
      return {std::max(children[0].t, children[1].t), lcm(children[0].p, children[1].p)};
    case Op::kEX: {
      need(1);
      BigInt K = lcm_range(static_cast<std::uint64_t>(k));
      return {children[0].t + children[0].p, K * children[0].p};
    }
    case Op::kEU:
    case Op::kAU: {
      need(2);
      BigInt K = lcm_range(static_cast<std::uint64_t>(k));
      BigInt L = lcm(K * children[0].p, children[1].p);
      BigInt k2 = static_cast<long>(k) * static_cast<long>(k);
      return {std::max(children[0].t, children[1].t) + 2 * k2 * L, L};
    }
    case Op::kUA:
    case Op::kUE:
      break;
  }
  throw std::invalid_argument(std::string("no CTL constants for ") + op_name(op));
}

std::int64_t default_b(int n) {
  return static_cast<std::int64_t>(n) * n * n;
}

ConstantBundle ua_constants(int n, const BigInt& prev_t, const BigInt& prev_p,
                            std::optional<std::int64_t> b_override) {
  if (n < 3) throw InputError("UA constants need n >= 3");
  if (prev_p < 1) throw InputError("previous period must be positive");
  if (prev_t < 0) throw InputError("previous threshold must be non-negative");
  ConstantBundle c;
  c.b = b_override ? *b_override : default_b(n);
  if (c.b < 1) throw InputError("b must be at least 1");
  if (c.b > 1'000'000) throw BudgetExceeded("b too large for lcm[1..2b^3]");
  const auto b = static_cast<std::uint64_t>(c.b);
  c.B = lcm_range(2 * b * b * b);
  c.prev_t = prev_t;
  c.prev_p = prev_p;
  c.P = c.B * prev_p;
  const BigInt bb = static_cast<unsigned long>(b);
  c.sT = pow(bb, 9) * c.P;
  c.cT = pow(bb, 11) * c.P;
  c.slopes = basic_slopes(static_cast<int>(c.b));
  for (const Rational& r : c.slopes) {
    if (r.num < 0) c.negative_slopes.push_back(r);
  }
  c.m = static_cast<int>(c.negative_slopes.size());
  c.below_regime = c.b < 3 || static_cast<std::int64_t>(c.m) + 1 >= c.b * c.b;
  if (c.P <= c.prev_t) {
    throw InputError("P(phi) > T(phi) fails: b is too small for the child threshold");
  }
  return c;
}

std::optional<BigInt> segment_start(int i, const BigInt& v, const ConstantBundle& c) {
  if (i < 0 || i > c.m + 1) throw std::invalid_argument("segment index out of range");
  if (v <= c.cT) throw std::invalid_argument("segments are defined for v > cT only");
  if (i == 0) return BigInt(0);
  if (i == c.m + 1) return std::nullopt;
  const Rational& eps = c.negative_slopes[i - 1];
  // -1/eps = den / (-num)
  BigInt num = (v - c.prev_t) * static_cast<long>(eps.den);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), BigInt(static_cast<long>(-eps.num)).get_mpz_t());
  BigInt b8 = pow(BigInt(static_cast<long>(c.b)), 8);
  return q - b8 * c.P;
}

Core::Core(const BigInt& v, const ConstantBundle& c) : length_(c.sT) {
  for (int i = 0; i <= c.m; ++i) starts_.push_back(*segment_start(i, v, c));
}

BigInt Core::size() const { return length_ * static_cast<unsigned long>(starts_.size()); }

BigInt Core::at(const BigInt& index) const {
  if (index < 0 || index >= size()) throw std::invalid_argument("core index out of range");
  BigInt seg;
  BigInt off;
  mpz_fdiv_qr(seg.get_mpz_t(), off.get_mpz_t(), index.get_mpz_t(), length_.get_mpz_t());
  return starts_[seg.get_ui()] + off;
}

std::optional<BigInt> Core::index_of(const BigInt& level) const {
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    if (level >= starts_[i] && level < starts_[i] + length_) {
      return length_ * static_cast<unsigned long>(i) + (level - starts_[i]);
    }
  }
  return std::nullopt;
}

std::optional<int> Core::core_segment(const BigInt& level) const {
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    if (level >= starts_[i] && level < starts_[i] + length_) return static_cast<int>(i);
  }
  return std::nullopt;
}

int Core::region(const BigInt& level) const {
  int r = 0;
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    if (starts_[i] <= level) r = static_cast<int>(i);
  }
  return r;
}

std::vector<BigInt> core_levels(const BigInt& v, const ConstantBundle& c, std::size_t limit) {
  Core core(v, c);
  if (core.size() > static_cast<unsigned long>(limit)) {
    throw BudgetExceeded("core has " + to_decimal(core.size()) + " levels");
  }
  std::vector<BigInt> out;
  for (const BigInt& s : core.starts()) {
    for (BigInt l = s; l < s + c.sT; ++l) out.push_back(l);
  }
  return out;
}

BigInt shift_map(const BigInt& level, const BigInt& v, const ConstantBundle& c) {
  auto idx = Core(v, c).index_of(level);
  if (!idx) throw std::invalid_argument("level is not in the core");
  return Core(v + c.P, c).at(*idx);
}

BigInt shift_closed_form(const BigInt& level, const BigInt& v, const ConstantBundle& c) {
  auto seg = Core(v, c).core_segment(level);
  if (!seg) throw std::invalid_argument("level is not in the core");
  if (*seg == 0) return level;
  const Rational& eps = c.negative_slopes[*seg - 1];
  return level + c.P * static_cast<long>(eps.den) / static_cast<long>(-eps.num);
}

std::vector<SubformulaConstants> formula_constants(const Formula& f, int n,
                                                   std::optional<std::int64_t> b_override) {
  std::vector<SubformulaConstants> out;
  std::map<std::string, TpPair> pairs;
  for (const Formula& g : subformulas(f)) {
    std::vector<TpPair> kids;
    for (const Formula& c : g.children()) kids.push_back(pairs.at(c.text()));
    SubformulaConstants row{g, {}, std::nullopt};
    if (g.op() == Op::kUE) {
      throw InputError("no closed-form constants for UE; use supplied or empirical constants");
    }
    if (g.op() == Op::kUA) {
      ConstantBundle bundle = ua_constants(std::max(n, 3), std::max(kids[0].t, kids[1].t),
                                           lcm(kids[0].p, kids[1].p), b_override);
      row.pair = {bundle.cT, bundle.P};
      row.bundle = std::move(bundle);
    } else {
      row.pair = ctl_constants(g.op(), kids, n);
    }
    pairs[g.text()] = row.pair;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ocasync

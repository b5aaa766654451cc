#include "ocasync/upset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ocasync/errors.hpp"

namespace ocasync {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

UpSet build_upset(std::int64_t t, std::int64_t p, std::vector<bool> base,
                  std::vector<bool> residues) {
  if (t < 0 || p < 1) throw std::invalid_argument("UpSet needs t >= 0 and p >= 1");
  if (static_cast<std::int64_t>(base.size()) != t ||
      static_cast<std::int64_t>(residues.size()) != p) {
    throw std::invalid_argument("UpSet bit vectors do not match (t, p)");
  }
  UpSet u;
  u.t_ = t;
  u.p_ = p;
  u.base_ = std::move(base);
  u.residues_ = std::move(residues);
  u.normalize();
  return u;
}

UpSet::UpSet(std::int64_t t, std::int64_t p, const std::vector<std::int64_t>& base,
             const std::vector<std::int64_t>& residues) {
  if (t < 0 || p < 1) throw std::invalid_argument("UpSet needs t >= 0 and p >= 1");
  t_ = t;
  p_ = p;
  base_.assign(t, false);
  residues_.assign(p, false);
  for (std::int64_t b : base) {
    if (b < 0 || b >= t) throw std::invalid_argument("UpSet base element outside [0, t)");
    base_[b] = true;
  }
  for (std::int64_t r : residues) {
    if (r < 0 || r >= p) throw std::invalid_argument("UpSet residue outside [0, p)");
    residues_[r] = true;
  }
  normalize();
}

void UpSet::normalize() {
  // Smallest divisor d of p under which the residue pattern is d-periodic.
  for (std::int64_t d = 1; d <= p_; ++d) {
    if (p_ % d != 0) continue;
    bool ok = true;
    for (std::int64_t r = d; r < p_ && ok; ++r) ok = residues_[r] == residues_[r % d];
    if (ok) {
      residues_.resize(d);
      p_ = d;
      break;
    }
  }
  while (t_ > 0 && base_[t_ - 1] == residues_[(t_ - 1) % p_]) --t_;
  base_.resize(t_);
}

std::vector<std::int64_t> UpSet::base() const {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 0; v < t_; ++v) {
    if (base_[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> UpSet::residues() const {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < p_; ++r) {
    if (residues_[r]) out.push_back(r);
  }
  return out;
}

bool UpSet::contains(std::int64_t v) const {
  if (v < 0) return false;
  if (v < t_) return base_[v];
  return residues_[v % p_];
}

UpSet bool_op(SetOp kind, const UpSet& a, const UpSet& b) {
  auto apply = [&](std::int64_t v) {
    switch (kind) {
      case SetOp::kUnion: return a.contains(v) || b.contains(v);
      case SetOp::kIntersect: return a.contains(v) && b.contains(v);
      case SetOp::kComplement: return !a.contains(v);
    }
    return false;
  };
  std::int64_t t = a.threshold();
  std::int64_t p = a.period();
  if (kind != SetOp::kComplement) {
    t = std::max(t, b.threshold());
    p = std::lcm(p, b.period());
  }
  std::vector<bool> base(t), res(p);
  for (std::int64_t v = 0; v < t; ++v) base[v] = apply(v);
  for (std::int64_t r = 0; r < p; ++r) res[r] = apply(t + floor_mod(r - t, p));
  return build_upset(t, p, std::move(base), std::move(res));
}

UpSet set_union(const UpSet& a, const UpSet& b) { return bool_op(SetOp::kUnion, a, b); }
UpSet set_intersection(const UpSet& a, const UpSet& b) { return bool_op(SetOp::kIntersect, a, b); }
UpSet set_complement(const UpSet& a) { return bool_op(SetOp::kComplement, a); }

UpSet from_progressions(const std::vector<Progression>& progs) {
  std::int64_t t = 0;
  std::int64_t p = 1;
  for (auto [o, d] : progs) {
    if (o < 0 || d < 0) throw std::invalid_argument("progression with negative offset or stride");
    t = std::max(t, o + 1);
    if (d > 0) p = std::lcm(p, d);
  }
  auto member = [&](std::int64_t v) {
    for (auto [o, d] : progs) {
      if (d == 0 ? v == o : (v >= o && (v - o) % d == 0)) return true;
    }
    return false;
  };
  std::vector<bool> base(t), res(p);
  for (std::int64_t v = 0; v < t; ++v) base[v] = member(v);
  for (std::int64_t r = 0; r < p; ++r) res[r] = member(t + floor_mod(r - t, p));
  return build_upset(t, p, std::move(base), std::move(res));
}

std::vector<Progression> to_progressions(const UpSet& u) {
  std::vector<Progression> out;
  for (std::int64_t b : u.base()) out.emplace_back(b, 0);
  const std::int64_t t = u.threshold();
  const std::int64_t p = u.period();
  for (std::int64_t r : u.residues()) out.emplace_back(t + floor_mod(r - t, p), p);
  std::sort(out.begin(), out.end());
  return out;
}

bool tp_equivalent(std::int64_t u, std::int64_t v, std::int64_t T, std::int64_t P) {
  if (P < 1) throw std::invalid_argument("tp_equivalent needs P >= 1");
  if (u >= T && v >= T) return (u > v ? u - v : v - u) % P == 0;
  if (u < T && v < T) return u == v;
  return false;
}

bool tp_equivalent(const BigInt& u, const BigInt& v, const BigInt& T, const BigInt& P) {
  if (P < 1) throw std::invalid_argument("tp_equivalent needs P >= 1");
  if (u >= T && v >= T) {
    BigInt d = u - v;
    return mpz_divisible_p(d.get_mpz_t(), P.get_mpz_t()) != 0;
  }
  if (u < T && v < T) return u == v;
  return false;
}

nlohmann::json to_json(const UpSet& u) {
  return {{"t", u.threshold()}, {"p", u.period()}, {"base", u.base()}, {"residues", u.residues()}};
}

UpSet upset_from_json(const nlohmann::json& j) {
  try {
    return UpSet(j.at("t").get<std::int64_t>(), j.at("p").get<std::int64_t>(),
                 j.at("base").get<std::vector<std::int64_t>>(),
                 j.at("residues").get<std::vector<std::int64_t>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed UpSet JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed UpSet JSON: ") + e.what());
  }
}

}  // namespace ocasync

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ocasync/bigint.hpp"

namespace ocasync {

// Ultimately periodic subset of N:
//   member(v) = v < t ? v in base : (v mod p) in residues.
// Always held in canonical form (minimal period, then minimal threshold).
class UpSet {
 public:
  UpSet() : UpSet(0, 1, {}, {}) {}
  // base entries must lie in [0, t), residues in [0, p).
  UpSet(std::int64_t t, std::int64_t p, const std::vector<std::int64_t>& base,
        const std::vector<std::int64_t>& residues);

  static UpSet empty() { return UpSet(); }
  static UpSet full() { return UpSet(0, 1, {}, {0}); }

  std::int64_t threshold() const { return t_; }
  std::int64_t period() const { return p_; }
  std::vector<std::int64_t> base() const;
  std::vector<std::int64_t> residues() const;

  bool contains(std::int64_t v) const;

  friend bool operator==(const UpSet&, const UpSet&) = default;

 private:
  void normalize();
  friend UpSet build_upset(std::int64_t t, std::int64_t p, std::vector<bool> base,
                           std::vector<bool> residues);

  std::int64_t t_ = 0;
  std::int64_t p_ = 1;
  std::vector<bool> base_;
  std::vector<bool> residues_;
};

// Bit-vector form of the constructor; base.size() == t, residues.size() == p.
UpSet build_upset(std::int64_t t, std::int64_t p, std::vector<bool> base,
                  std::vector<bool> residues);

enum class SetOp { kUnion, kIntersect, kComplement };

// b is ignored for kComplement.
UpSet bool_op(SetOp kind, const UpSet& a, const UpSet& b = UpSet());
UpSet set_union(const UpSet& a, const UpSet& b);
UpSet set_intersection(const UpSet& a, const UpSet& b);
UpSet set_complement(const UpSet& a);

// (offset, stride); stride 0 is the singleton {offset}.
using Progression = std::pair<std::int64_t, std::int64_t>;

UpSet from_progressions(const std::vector<Progression>& progs);
// Singletons for the base, then one progression of stride p per residue with
// offset in [t, t+p).
std::vector<Progression> to_progressions(const UpSet& u);

bool tp_equivalent(std::int64_t u, std::int64_t v, std::int64_t T, std::int64_t P);
bool tp_equivalent(const BigInt& u, const BigInt& v, const BigInt& T, const BigInt& P);

nlohmann::json to_json(const UpSet& u);
UpSet upset_from_json(const nlohmann::json& j);

}  // namespace ocasync

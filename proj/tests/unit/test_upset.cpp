#include <doctest.h>

#include <numeric>
#include <random>

#include "ocasync/upset.hpp"

using namespace ocasync;

namespace {

UpSet random_upset(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int t = pick(0, 6), p = pick(1, 6);
  std::vector<bool> base(t), res(p);
  for (int i = 0; i < t; ++i) base[i] = pick(0, 1);
  for (int i = 0; i < p; ++i) res[i] = pick(0, 1);
  return build_upset(t, p, base, res);
}

std::int64_t horizon(const UpSet& a, const UpSet& b) {
  return a.threshold() + b.threshold() + 3 * std::lcm(a.period(), b.period());
}

}  // namespace

TEST_CASE("boolean operation examples") {
  CHECK(set_complement(UpSet::full()) == UpSet::empty());
  CHECK(set_union(UpSet(0, 2, {}, {0}), UpSet(0, 2, {}, {1})) == UpSet::full());

  UpSet meet = set_intersection(UpSet(2, 1, {}, {0}), UpSet(0, 3, {}, {0}));
  const std::vector<std::pair<int, bool>> want{{0, false}, {2, false}, {3, true}, {4, false}, {6, true}};
  for (auto [v, m] : want) CHECK(meet.contains(v) == m);
  for (int v = 0; v <= 20; ++v) CHECK(meet.contains(v) == (v >= 2 && v % 3 == 0));
}

TEST_CASE("progression conversions") {
  CHECK(from_progressions({{1, 0}}) == UpSet(2, 1, {1}, {}));
  CHECK(from_progressions({{0, 2}}) == UpSet(0, 2, {}, {0}));

  UpSet u(3, 4, {0, 2}, {1, 2});
  UpSet back = from_progressions(to_progressions(u));
  for (int v = 0; v <= 50; ++v) CHECK(back.contains(v) == u.contains(v));
  for (auto [off, stride] : to_progressions(u)) {
    CHECK(off < u.threshold() + u.period());
    CHECK((stride == 0 || stride == u.period()));
  }
}

TEST_CASE("progressions are extensionally faithful") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    std::vector<Progression> progs;
    const int n = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int j = 0; j < n; ++j) {
      progs.emplace_back(std::uniform_int_distribution<int>(0, 9)(rng),
                         std::uniform_int_distribution<int>(0, 5)(rng));
    }
    UpSet u = from_progressions(progs);
    for (int v = 0; v <= 80; ++v) {
      bool m = false;
      for (auto [off, stride] : progs) {
        m = m || (stride == 0 ? v == off : v >= off && (v - off) % stride == 0);
      }
      CHECK(u.contains(v) == m);
    }
  }
}

TEST_CASE("tp-equivalence") {
  CHECK(tp_equivalent(7, 13, 5, 3));
  CHECK(tp_equivalent(2, 2, 5, 3));
  CHECK_FALSE(tp_equivalent(2, 3, 5, 3));
  CHECK_FALSE(tp_equivalent(4, 7, 5, 3));
  CHECK(tp_equivalent(BigInt(7), BigInt(13), BigInt(5), BigInt(3)));
  CHECK_FALSE(tp_equivalent(BigInt(4), BigInt(7), BigInt(5), BigInt(3)));
}

TEST_CASE("canonical form is minimal and extension-preserving") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 500; ++i) {
    const int t = std::uniform_int_distribution<int>(0, 6)(rng);
    const int p = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<bool> base(t), res(p);
    for (int j = 0; j < t; ++j) base[j] = rng() & 1;
    for (int j = 0; j < p; ++j) res[j] = rng() & 1;
    UpSet u = build_upset(t, p, base, res);
    for (int v = 0; v <= t + 3 * p; ++v) {
      const bool want = v < t ? base[v] : res[v % p];
      CHECK(u.contains(v) == want);
    }
    CHECK(u.threshold() <= t);
    CHECK(p % u.period() == 0);
    // rebuilding from the canonical parameters is a fixed point
    CHECK(UpSet(u.threshold(), u.period(), u.base(), u.residues()) == u);
    CHECK(upset_from_json(to_json(u)) == u);
  }
}

TEST_CASE("boolean operations agree with pointwise semantics") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    UpSet a = random_upset(rng), b = random_upset(rng);
    UpSet u = bool_op(SetOp::kUnion, a, b);
    UpSet n = bool_op(SetOp::kIntersect, a, b);
    UpSet c = bool_op(SetOp::kComplement, a);
    for (std::int64_t v = 0; v <= horizon(a, b); ++v) {
      CHECK(u.contains(v) == (a.contains(v) || b.contains(v)));
      CHECK(n.contains(v) == (a.contains(v) && b.contains(v)));
      CHECK(c.contains(v) == !a.contains(v));
    }
    CHECK(set_complement(set_union(a, b)) ==
          set_intersection(set_complement(a), set_complement(b)));
    CHECK(set_complement(c) == a);
  }
}

TEST_CASE("members beyond the threshold repeat with the period") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    UpSet u = random_upset(rng);
    for (std::int64_t v = u.threshold(); v < u.threshold() + 20; ++v) {
      CHECK(u.contains(v) == u.contains(v + u.period()));
      CHECK(u.contains(v) == u.contains(v + 1000 * u.period()));
    }
  }
}

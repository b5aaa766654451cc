#include "ocasync/kripke.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "ocasync/bigint.hpp"
#include "ocasync/errors.hpp"

namespace ocasync {

NodeSet::NodeSet(std::size_t n, bool value)
    : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  trim();
}

void NodeSet::trim() {
  if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

std::size_t NodeSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool NodeSet::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool NodeSet::subset_of(const NodeSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~o.words_[i]) return false;
  }
  return true;
}

bool NodeSet::intersects(const NodeSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & o.words_[i]) return true;
  }
  return false;
}

bool NodeSet::intersects3(const NodeSet& a, const NodeSet& b) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & a.words_[i] & b.words_[i]) return true;
  }
  return false;
}

NodeSet NodeSet::operator&(const NodeSet& o) const {
  NodeSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

NodeSet NodeSet::operator|(const NodeSet& o) const {
  NodeSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
  return r;
}

NodeSet NodeSet::operator~() const {
  NodeSet r = *this;
  for (std::uint64_t& w : r.words_) w = ~w;
  r.trim();
  return r;
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<NodeId>(i * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t NodeSet::hash() const {
  std::size_t h = n_;
  for (std::uint64_t w : words_) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h >> 17));
  return h;
}

Kripke::Kripke(std::vector<std::string> atoms, std::vector<std::vector<AtomId>> labels,
               std::vector<std::vector<NodeId>> successors, std::vector<Provenance> provenance)
    : atoms_(std::move(atoms)),
      labels_(std::move(labels)),
      succ_(std::move(successors)),
      prov_(std::move(provenance)) {
  const std::size_t n = succ_.size();
  labels_.resize(n);
  if (!prov_.empty() && prov_.size() != n) throw std::invalid_argument("provenance size mismatch");
  pred_.assign(n, {});
  for (NodeId u = 0; u < n; ++u) {
    auto& s = succ_[u];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (NodeId v : s) {
      if (v >= n) throw std::invalid_argument("edge to a missing node");
      pred_[v].push_back(u);
    }
    for (AtomId a : labels_[u]) {
      if (a >= atoms_.size()) throw std::invalid_argument("label uses an unknown atom");
    }
  }
}

bool Kripke::holds(NodeId n, AtomId a) const {
  const auto& l = labels_[n];
  return std::find(l.begin(), l.end(), a) != l.end();
}

std::optional<AtomId> Kripke::find_atom(const std::string& name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<AtomId>(it - atoms_.begin());
}

bool Kripke::is_total() const {
  return std::all_of(succ_.begin(), succ_.end(), [](const auto& s) { return !s.empty(); });
}

NodeSet Kripke::post(const NodeSet& s) const {
  NodeSet out(size());
  for (NodeId u : s.members()) {
    for (NodeId v : succ_[u]) out.set(v);
  }
  return out;
}

NodeSet Kripke::pre(const NodeSet& s) const {
  NodeSet out(size());
  for (NodeId v : s.members()) {
    for (NodeId u : pred_[v]) out.set(u);
  }
  return out;
}

Counter counter_class(Counter v, Counter t, Counter p) {
  if (v < t + p) return v;
  return t + (v - t) % p;
}

NodeId kripke_node(const Kripke& k, StateId s, Counter u, Counter t, Counter p) {
  (void)k;
  return static_cast<NodeId>(static_cast<Counter>(s) * (t + p) + counter_class(u, t, p));
}

Kripke unfold_kripke(const Oca& oca, Counter t, Counter p, Quotient quotient,
                     std::size_t node_budget) {
  if (t < 0 || p < 1) throw std::invalid_argument("unfold needs t >= 0 and p >= 1");
  const Counter width = checked_add(t, p);
  const std::size_t n_states = oca.num_states();
  if (n_states != 0 && static_cast<std::size_t>(width) > node_budget / n_states) {
    throw BudgetExceeded("Kripke structure needs " + std::to_string(n_states) + "*" +
                         std::to_string(width) + " nodes, budget is " +
                         std::to_string(node_budget));
  }
  const std::size_t n = n_states * static_cast<std::size_t>(width);
  std::vector<std::vector<NodeId>> succ(n);
  std::vector<std::vector<AtomId>> labels(n);
  std::vector<Kripke::Provenance> prov(n);
  for (StateId s = 0; s < n_states; ++s) {
    for (Counter u = 0; u < width; ++u) {
      const NodeId id = static_cast<NodeId>(s * width + u);
      prov[id] = {s, u};
      labels[id] = oca.label(s);
      std::vector<Counter> values{u};
      if (quotient == Quotient::kUnion && u >= t) {
        values.push_back(u + p);
        values.push_back(u + 2 * p);
      }
      for (Counter v : values) {
        for (const Configuration& c : successors(oca, {s, v})) {
          succ[id].push_back(static_cast<NodeId>(c.state * width + counter_class(c.counter, t, p)));
        }
      }
    }
  }
  return Kripke(oca.atoms(), std::move(labels), std::move(succ), std::move(prov));
}

NodeSet label_ctl(const Kripke& k, const Formula& f, const std::map<std::string, NodeSet>& sub_sat) {
  const std::size_t n = k.size();
  auto child = [&](std::size_t i) -> const NodeSet& {
    auto it = sub_sat.find(f.child(i).text());
    if (it == sub_sat.end()) throw std::invalid_argument("missing child labeling");
    return it->second;
  };
  switch (f.op()) {
    case Op::kTrue:
      return NodeSet(n, true);
    case Op::kAtom: {
      NodeSet out(n);
      auto a = k.find_atom(f.atom_name());
      if (!a) throw InputError("atom '" + f.atom_name() + "' is not declared");
      for (NodeId u = 0; u < n; ++u) {
        if (k.holds(u, *a)) out.set(u);
      }
      return out;
    }
    case Op::kNot:
      return ~child(0);
    case Op::kAnd:
      return child(0) & child(1);
    case Op::kEX:
      return k.pre(child(0));
    case Op::kEU: {
      const NodeSet& s1 = child(0);
      NodeSet x = child(1);
      std::vector<NodeId> work = x.members();
      while (!work.empty()) {
        NodeId v = work.back();
        work.pop_back();
        for (NodeId u : k.predecessors(v)) {
          if (!x.test(u) && s1.test(u)) {
            x.set(u);
            work.push_back(u);
          }
        }
      }
      return x;
    }
    case Op::kAU: {
      const NodeSet& s1 = child(0);
      NodeSet x = child(1);
      std::vector<std::size_t> missing(n);
      for (NodeId u = 0; u < n; ++u) missing[u] = k.successors(u).size();
      std::vector<NodeId> work = x.members();
      while (!work.empty()) {
        NodeId v = work.back();
        work.pop_back();
        for (NodeId u : k.predecessors(v)) {
          if (x.test(u)) continue;
          if (--missing[u] == 0 && s1.test(u)) {
            x.set(u);
            work.push_back(u);
          }
        }
      }
      return x;
    }
    case Op::kUA:
    case Op::kUE:
      break;
  }
  throw std::invalid_argument("label_ctl does not handle UA/UE");
}

namespace {

void tick(std::size_t* iterations, const SyncOptions& opts, const char* what) {
  ++*iterations;
  if (opts.step_cap && *iterations > *opts.step_cap) {
    throw StepCapExceeded(std::string(what) + " step cap exceeded", *iterations - 1);
  }
}

// Orbit x_0, x_1 = f(x_0), ... stored up to its first repetition
// x_{start + period} = x_start.
struct Orbit {
  std::vector<NodeSet> xs;
  std::size_t start = 0;
  std::size_t period = 1;

  const NodeSet& at(std::size_t i) const {
    if (i < xs.size()) return xs[i];
    return xs[start + (i - start) % period];
  }
};

template <typename Step>
Orbit orbit(NodeSet x0, Step step, std::size_t* iterations, const SyncOptions& opts,
            const char* what) {
  Orbit o;
  std::unordered_map<NodeSet, std::size_t, NodeSetHash> seen;
  NodeSet x = std::move(x0);
  while (true) {
    auto [it, fresh] = seen.emplace(x, o.xs.size());
    if (!fresh) {
      o.start = it->second;
      o.period = o.xs.size() - it->second;
      return o;
    }
    o.xs.push_back(x);
    tick(iterations, opts, what);
    x = step(x);
  }
}

}  // namespace

SyncResult check_ua(const Kripke& k, NodeId init, const NodeSet& sat1, const NodeSet& sat2,
                    const SyncOptions& opts) {
  SyncResult r;
  std::unordered_map<NodeSet, std::size_t, NodeSetHash> seen;
  NodeSet level(k.size());
  level.set(init);
  for (std::size_t j = 0;; ++j) {
    bool good = opts.flip_ua_inclusion ? level.intersects(sat2) : level.subset_of(sat2);
    if (good) {
      r.holds = true;
      r.witness_k = j;
      return r;
    }
    // Every later k needs L_j ⊆ sat1.
    if (!level.subset_of(sat1)) return r;
    // A repeated level means the orbit has cycled through states already rejected.
    if (!seen.emplace(level, j).second) return r;
    tick(&r.iterations, opts, "UA");
    level = k.post(level);
  }
}

SyncResult check_ue(const Kripke& k, NodeId init, const NodeSet& sat1, const NodeSet& sat2,
                    const SyncOptions& opts) {
  SyncResult r;
  if (sat2.test(init)) {
    r.holds = true;
    r.witness_k = 0;
    return r;
  }
  NodeSet l0(k.size());
  l0.set(init);
  Orbit levels = orbit(l0, [&](const NodeSet& s) { return k.post(s); }, &r.iterations, opts, "UE");
  Orbit reach = orbit(sat2, [&](const NodeSet& s) { return k.pre(s); }, &r.iterations, opts, "UE");
  // Past 2N + 2L the truth of "k works" repeats with period L.
  const std::size_t n0 = std::max(levels.start, reach.start);
  const std::size_t lam = std::lcm(levels.period, reach.period);
  const std::size_t horizon = 2 * n0 + 2 * lam;
  for (std::size_t kk = 1; kk <= horizon; ++kk) {
    bool ok = true;
    for (std::size_t j = 0; j < kk && ok; ++j) {
      ok = levels.at(j).intersects3(sat1, reach.at(kk - j));
    }
    if (ok) {
      r.holds = true;
      r.witness_k = kk;
      return r;
    }
  }
  return r;
}

Labeling label_all(const Kripke& k, const Formula& f, const SyncOptions& opts) {
  Labeling out;
  for (const Formula& g : subformulas(f)) {
    if (g.op() == Op::kUA || g.op() == Op::kUE) {
      const NodeSet& s1 = out.sat.at(g.child(0).text());
      const NodeSet& s2 = out.sat.at(g.child(1).text());
      NodeSet sat(k.size());
      std::vector<std::optional<std::size_t>> wit(k.size());
      for (NodeId u = 0; u < k.size(); ++u) {
        SyncResult r = g.op() == Op::kUA ? check_ua(k, u, s1, s2, opts) : check_ue(k, u, s1, s2, opts);
        if (r.holds) {
          sat.set(u);
          wit[u] = r.witness_k;
        }
      }
      out.sat[g.text()] = std::move(sat);
      out.witness[g.text()] = std::move(wit);
    } else {
      out.sat[g.text()] = label_ctl(k, g, out.sat);
    }
  }
  return out;
}

}  // namespace ocasync

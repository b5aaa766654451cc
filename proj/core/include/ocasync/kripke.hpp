#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocasync/formula.hpp"
#include "ocasync/oca.hpp"

namespace ocasync {

using NodeId = std::uint32_t;

// Fixed-size bit set over Kripke nodes.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t n, bool value = false);

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool any() const;
  bool subset_of(const NodeSet& o) const;
  bool intersects(const NodeSet& o) const;
  // this & a & b nonempty
  bool intersects3(const NodeSet& a, const NodeSet& b) const;
  NodeSet operator&(const NodeSet& o) const;
  NodeSet operator|(const NodeSet& o) const;
  NodeSet operator~() const;
  std::vector<NodeId> members() const;
  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  void trim();
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const { return s.hash(); }
};

class Kripke {
 public:
  struct Provenance {
    StateId state;
    Counter counter_class;
  };

  Kripke(std::vector<std::string> atoms, std::vector<std::vector<AtomId>> labels,
         std::vector<std::vector<NodeId>> successors, std::vector<Provenance> provenance = {});

  std::size_t size() const { return succ_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<NodeId>& successors(NodeId n) const { return succ_[n]; }
  const std::vector<NodeId>& predecessors(NodeId n) const { return pred_[n]; }
  bool holds(NodeId n, AtomId a) const;
  std::optional<AtomId> find_atom(const std::string& name) const;
  bool has_provenance() const { return !prov_.empty(); }
  const Provenance& provenance(NodeId n) const { return prov_.at(n); }
  bool is_total() const;

  NodeSet post(const NodeSet& s) const;
  NodeSet pre(const NodeSet& s) const;

 private:
  std::vector<std::string> atoms_;
  std::vector<std::vector<AtomId>> labels_;
  std::vector<std::vector<NodeId>> succ_;
  std::vector<std::vector<NodeId>> pred_;
  std::vector<Provenance> prov_;
};

// kRepresentative: node (s,u) has exactly the successors of the configuration
// (s,u), each folded by counter_class. kUnion: node (s,u) with u >= t also
// collects the successors of every value it represents (u, u+p, ...).
enum class Quotient { kRepresentative, kUnion };

// v < t+p ? v : t + (v - t) mod p
Counter counter_class(Counter v, Counter t, Counter p);

// Node (s,u) has index s*(t+p) + u. Throws BudgetExceeded when
// |S|*(t+p) exceeds node_budget.
Kripke unfold_kripke(const Oca& oca, Counter t, Counter p,
                     Quotient quotient = Quotient::kRepresentative,
                     std::size_t node_budget = 1'000'000);
NodeId kripke_node(const Kripke& k, StateId s, Counter u, Counter t, Counter p);

// Labels f from the sets of its direct children, keyed by Formula::text().
// UA/UE nodes are rejected (see label_sync).
NodeSet label_ctl(const Kripke& k, const Formula& f, const std::map<std::string, NodeSet>& sub_sat);

struct SyncOptions {
  std::optional<std::size_t> step_cap;
  // Fault injection for mutation tests: UA accepts L_k ∩ sat2 ≠ ∅ instead of L_k ⊆ sat2.
  bool flip_ua_inclusion = false;
};

struct SyncResult {
  bool holds = false;
  std::optional<std::size_t> witness_k;
  std::size_t iterations = 0;
};

// Throws StepCapExceeded when the cap is hit before a decision.
SyncResult check_ua(const Kripke& k, NodeId init, const NodeSet& sat1, const NodeSet& sat2,
                    const SyncOptions& opts = {});
SyncResult check_ue(const Kripke& k, NodeId init, const NodeSet& sat1, const NodeSet& sat2,
                    const SyncOptions& opts = {});

// Every subformula labeled bottom-up; UA/UE by the per-node checks above.
struct Labeling {
  std::map<std::string, NodeSet> sat;
  std::map<std::string, std::vector<std::optional<std::size_t>>> witness;  // UA/UE only
};
Labeling label_all(const Kripke& k, const Formula& f, const SyncOptions& opts = {});

}  // namespace ocasync

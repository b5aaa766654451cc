#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ocasync {

using StateId = std::uint32_t;
using AtomId = std::uint32_t;
using Counter = std::int64_t;

enum class Guard : std::uint8_t { kZero, kPositive };

struct Transition {
  StateId src = 0;
  Guard guard = Guard::kZero;
  int effect = 0;  // -1, 0 or +1
  StateId dst = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Configuration {
  StateId state = 0;
  Counter counter = 0;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// One-counter automaton. Transitions are deduplicated and sorted on
// construction; transition indices refer to that sorted order.
class Oca {
 public:
  Oca() = default;
  // labels[s] lists atom ids holding in state s.
  // Throws InputError on out-of-range ids, bad effects, or duplicate names.
  Oca(std::vector<std::string> state_names, std::vector<std::string> atoms,
      std::vector<std::vector<AtomId>> labels, std::vector<Transition> transitions);

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_atoms() const { return atoms_.size(); }
  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<AtomId> find_atom(const std::string& name) const;

  bool holds(StateId s, AtomId a) const { return label_bits_[s * atoms_.size() + a]; }
  std::vector<AtomId> label(StateId s) const;

  const std::vector<Transition>& transitions() const { return transitions_; }
  // Indices into transitions() whose source is s, ascending.
  std::span<const std::size_t> outgoing(StateId s) const;

 private:
  std::vector<std::string> state_names_;
  std::vector<std::string> atoms_;
  std::vector<bool> label_bits_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> out_index_;
  std::vector<std::size_t> out_begin_;
};

struct Diagnostic {
  enum class Kind { kMissingZeroSuccessor, kMissingPositiveSuccessor, kDecrementUnderZero };
  Kind kind;
  StateId state;
  std::string message;
};

std::vector<Diagnostic> validate(const Oca& oca);

bool enabled(const Transition& t, Counter counter);

// Sorted, duplicate-free. Throws std::overflow_error if a counter would
// leave the 64-bit range.
std::vector<Configuration> successors(const Oca& oca, const Configuration& c);

struct OracleTrace {
  Configuration origin;
  std::vector<std::vector<Configuration>> levels;  // each sorted
  std::vector<bool> truncated;
  Counter counter_cap = 0;
  int level_cap = 0;
};

// levels[0..level_cap]; configurations above counter_cap are dropped and the
// level marked truncated. Truncation propagates to all later levels.
OracleTrace level_sets(const Oca& oca, const Configuration& c, int level_cap, Counter counter_cap);

}  // namespace ocasync

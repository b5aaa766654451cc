#include "ocasync/oca.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ocasync/bigint.hpp"
#include "ocasync/errors.hpp"

namespace ocasync {

Oca::Oca(std::vector<std::string> state_names, std::vector<std::string> atoms,
         std::vector<std::vector<AtomId>> labels, std::vector<Transition> transitions)
    : state_names_(std::move(state_names)), atoms_(std::move(atoms)) {
  const std::size_t n = state_names_.size();
  if (std::set<std::string>(state_names_.begin(), state_names_.end()).size() != n) {
    throw InputError("duplicate state name");
  }
  if (std::set<std::string>(atoms_.begin(), atoms_.end()).size() != atoms_.size()) {
    throw InputError("duplicate atom name");
  }
  if (labels.size() > n) throw InputError("label for a state that does not exist");
  label_bits_.assign(n * atoms_.size(), false);
  for (std::size_t s = 0; s < labels.size(); ++s) {
    for (AtomId a : labels[s]) {
      if (a >= atoms_.size()) throw InputError("label uses an undeclared atom");
      label_bits_[s * atoms_.size() + a] = true;
    }
  }
  for (const Transition& t : transitions) {
    if (t.src >= n || t.dst >= n) throw InputError("transition references an unknown state");
    if (t.effect < -1 || t.effect > 1) throw InputError("transition effect must be -1, 0 or +1");
  }
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  transitions_ = std::move(transitions);

  out_begin_.assign(n + 1, 0);
  for (const Transition& t : transitions_) ++out_begin_[t.src + 1];
  for (std::size_t s = 0; s < n; ++s) out_begin_[s + 1] += out_begin_[s];
  out_index_.resize(transitions_.size());
  // Sorted by src first, so indices are already grouped.
  for (std::size_t i = 0; i < transitions_.size(); ++i) out_index_[i] = i;
}

std::optional<StateId> Oca::find_state(const std::string& name) const {
  auto it = std::find(state_names_.begin(), state_names_.end(), name);
  if (it == state_names_.end()) return std::nullopt;
  return static_cast<StateId>(it - state_names_.begin());
}

std::optional<AtomId> Oca::find_atom(const std::string& name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<AtomId>(it - atoms_.begin());
}

std::vector<AtomId> Oca::label(StateId s) const {
  std::vector<AtomId> out;
  for (AtomId a = 0; a < atoms_.size(); ++a) {
    if (holds(s, a)) out.push_back(a);
  }
  return out;
}

std::span<const std::size_t> Oca::outgoing(StateId s) const {
  return std::span<const std::size_t>(out_index_).subspan(out_begin_[s],
                                                          out_begin_[s + 1] - out_begin_[s]);
}

std::vector<Diagnostic> validate(const Oca& oca) {
  std::vector<Diagnostic> out;
  for (StateId s = 0; s < oca.num_states(); ++s) {
    bool zero = false;
    bool pos = false;
    for (std::size_t i : oca.outgoing(s)) {
      const Transition& t = oca.transitions()[i];
      if (t.guard == Guard::kZero) {
        zero = true;
        if (t.effect < 0) {
          out.push_back({Diagnostic::Kind::kDecrementUnderZero, s,
                         "illegal decrement under ZERO guard at " + oca.state_name(s) + " -> " +
                             oca.state_name(t.dst)});
        }
      } else {
        pos = true;
      }
    }
    if (!zero) {
      out.push_back({Diagnostic::Kind::kMissingZeroSuccessor, s,
                     "missing ZERO-successor at " + oca.state_name(s)});
    }
    if (!pos) {
      out.push_back({Diagnostic::Kind::kMissingPositiveSuccessor, s,
                     "missing POS-successor at " + oca.state_name(s)});
    }
  }
  return out;
}

bool enabled(const Transition& t, Counter counter) {
  if (t.guard == Guard::kZero) return counter == 0 && t.effect >= 0;
  return counter > 0;
}

std::vector<Configuration> successors(const Oca& oca, const Configuration& c) {
  std::vector<Configuration> out;
  for (std::size_t i : oca.outgoing(c.state)) {
    const Transition& t = oca.transitions()[i];
    if (!enabled(t, c.counter)) continue;
    out.push_back({t.dst, checked_add(c.counter, t.effect)});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OracleTrace level_sets(const Oca& oca, const Configuration& c, int level_cap, Counter counter_cap) {
  if (level_cap < 0 || counter_cap < 0) throw std::invalid_argument("caps must be non-negative");
  OracleTrace trace;
  trace.origin = c;
  trace.counter_cap = counter_cap;
  trace.level_cap = level_cap;
  bool truncated = c.counter > counter_cap;
  std::vector<Configuration> level;
  if (!truncated) level.push_back(c);
  trace.levels.push_back(level);
  trace.truncated.push_back(truncated);
  for (int l = 1; l <= level_cap; ++l) {
    std::vector<Configuration> next;
    for (const Configuration& x : level) {
      for (const Configuration& y : successors(oca, x)) {
        if (y.counter > counter_cap) {
          truncated = true;
        } else {
          next.push_back(y);
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = next;
    trace.levels.push_back(std::move(next));
    trace.truncated.push_back(truncated);
  }
  return trace;
}

}  // namespace ocasync

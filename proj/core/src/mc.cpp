#include "ocasync/mc.hpp"

#include <algorithm>
#include <stdexcept>

#include "ocasync/errors.hpp"

namespace ocasync {

Mode Mode::paper(std::optional<std::int64_t> b) {
  Mode m;
  m.kind = ModeKind::kPaper;
  m.b_override = b;
  return m;
}

Mode Mode::supplied(Counter t, Counter p) {
  Mode m;
  m.kind = ModeKind::kSupplied;
  m.t = t;
  m.p = p;
  return m;
}

Mode Mode::empirical(OracleCaps caps, Counter v_cap) {
  Mode m;
  m.kind = ModeKind::kEmpirical;
  m.caps = caps;
  m.v_cap = v_cap;
  return m;
}

const char* mode_name(ModeKind k) {
  switch (k) {
    case ModeKind::kPaper: return "paper";
    case ModeKind::kSupplied: return "supplied";
    case ModeKind::kEmpirical: return "empirical";
  }
  return "?";
}

const char* agreement_name(Agreement a) {
  switch (a) {
    case Agreement::kAgree: return "AGREE";
    case Agreement::kDisagree: return "DISAGREE";
    case Agreement::kOracleUnknown: return "ORACLE-UNKNOWN";
  }
  return "?";
}

namespace {

Counter floor_mod(Counter a, Counter m) {
  Counter r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::string> caveats_for(const ConstantsUsed& c) {
  std::vector<std::string> out;
  if (c.mode == ModeKind::kEmpirical) {
    out.push_back("constants mined by the bounded oracle on v in [0.." +
                  std::to_string(*c.sampling_range) + "] with counter cap " +
                  std::to_string(c.sampling_caps->counter_cap) + " and level cap " +
                  std::to_string(c.sampling_caps->level_cap) +
                  "; verdicts are conditional on that sample");
  } else if (c.mode == ModeKind::kSupplied) {
    out.push_back("supplied constants are assumed to make every subformula periodic");
  }
  return out;
}

struct Unfolded {
  Kripke kripke;
  Labeling labeling;
};

Unfolded unfold_and_label(const Oca& oca, const Formula& f, const ConstantsUsed& c,
                          const CheckOptions& opts) {
  Kripke k = unfold_kripke(oca, c.t, c.p, opts.quotient, opts.node_budget);
  Labeling l = label_all(k, f, opts.sync);
  return {std::move(k), std::move(l)};
}

std::map<std::string, UpSet> read_back(const Oca& oca, const Kripke& k, const NodeSet& sat,
                                       Counter t, Counter p) {
  std::map<std::string, UpSet> out;
  for (StateId s = 0; s < oca.num_states(); ++s) {
    std::vector<bool> base(static_cast<std::size_t>(t));
    std::vector<bool> res(static_cast<std::size_t>(p));
    for (Counter u = 0; u < t; ++u) base[u] = sat.test(kripke_node(k, s, u, t, p));
    for (Counter r = 0; r < p; ++r) {
      res[r] = sat.test(kripke_node(k, s, t + floor_mod(r - t, p), t, p));
    }
    out.emplace(oca.state_name(s), build_upset(t, p, std::move(base), std::move(res)));
  }
  return out;
}

}  // namespace

ConstantsUsed resolve_constants(const Oca& oca, const Formula& f, const Mode& mode,
                                Counter max_init, const CheckOptions& opts) {
  bind_check(f, oca.atoms());
  if (max_init < 0) throw InputError("initial counter must be non-negative");
  ConstantsUsed c;
  c.mode = mode.kind;
  switch (mode.kind) {
    case ModeKind::kPaper: {
      c.closed_form = formula_constants(f, static_cast<int>(oca.num_states()), mode.b_override);
      const TpPair& top = c.closed_form.back().pair;
      // strict threshold t means periodic from t+1 on
      const BigInt t = top.t + 1;
      const BigInt width = t + top.p;
      if (!fits_int64(width) ||
          width * static_cast<unsigned long>(oca.num_states()) > BigInt(static_cast<unsigned long>(opts.node_budget))) {
        throw BudgetExceeded("closed-form constants need " + std::to_string(oca.num_states()) +
                             "*(t+p) Kripke nodes with t+p of " + std::to_string(bit_length(width)) +
                             " bits; node budget is " + std::to_string(opts.node_budget));
      }
      c.t = to_int64(t);
      c.p = to_int64(top.p);
      break;
    }
    case ModeKind::kSupplied:
      if (mode.t < 0 || mode.p < 1) throw InputError("supplied constants need t >= 0 and p >= 1");
      c.t = mode.t;
      c.p = mode.p;
      break;
    case ModeKind::kEmpirical: {
      UniformMining m = mine_uniform(oca, f, mode.v_cap, mode.caps);
      if (!m.pair) {
        std::string who = m.failures.empty() ? std::string("?") : m.failures.front();
        throw BudgetExceeded("no periodic pair found on v in [0.." + std::to_string(mode.v_cap) +
                             "] for " + who);
      }
      c.t = m.pair->first;
      c.p = m.pair->second;
      c.mined = std::move(m.per_subformula);
      c.sampling_range = mode.v_cap;
      c.sampling_caps = mode.caps;
      break;
    }
  }
  // Raising the threshold preserves periodicity and makes every initial
  // configuration its own node.
  c.t = std::max({c.t, max_init + 1, Counter{1}});
  return c;
}

CheckResult check_oca(const Oca& oca, const Formula& f, const Configuration& init,
                      const Mode& mode, const CheckOptions& opts) {
  if (init.state >= oca.num_states()) throw InputError("initial state out of range");
  CheckResult r;
  r.constants = resolve_constants(oca, f, mode, init.counter, opts);
  r.caveats = caveats_for(r.constants);
  const Counter t = r.constants.t;
  const Counter p = r.constants.p;
  Unfolded u = unfold_and_label(oca, f, r.constants, opts);
  r.kripke_nodes = u.kripke.size();
  const NodeId node = kripke_node(u.kripke, init.state, init.counter, t, p);
  const NodeSet& sat = u.labeling.sat.at(f.text());
  r.holds = sat.test(node);
  if (auto it = u.labeling.witness.find(f.text()); it != u.labeling.witness.end()) {
    r.witness_k = it->second[node];
  }
  for (const auto& [text, s] : u.labeling.sat) {
    r.per_subformula[text] = read_back(oca, u.kripke, s, t, p);
  }
  r.per_state = r.per_subformula.at(f.text());
  return r;
}

CrossCheckReport cross_check(const Oca& oca, const Formula& f,
                             const std::vector<Configuration>& inits, const Mode& mode,
                             OracleCaps caps, const CheckOptions& opts) {
  CrossCheckReport rep;
  Counter max_init = 0;
  for (const Configuration& c : inits) {
    if (c.state >= oca.num_states() || c.counter < 0) throw InputError("initial configuration out of range");
    max_init = std::max(max_init, c.counter);
  }
  rep.constants = resolve_constants(oca, f, mode, max_init, opts);
  rep.caveats = caveats_for(rep.constants);
  Unfolded u = unfold_and_label(oca, f, rep.constants, opts);
  const NodeSet& sat = u.labeling.sat.at(f.text());
  BoundedEvaluator ev(oca, f, caps);
  for (const Configuration& c : inits) {
    CrossCheckRow row{c, sat.test(kripke_node(u.kripke, c.state, c.counter, rep.constants.t,
                                              rep.constants.p)),
                      ev.eval(c), Agreement::kOracleUnknown};
    if (row.oracle == Tri::kUnknown) {
      ++rep.unknown;
    } else if ((row.oracle == Tri::kTrue) == row.checker) {
      row.agreement = Agreement::kAgree;
      ++rep.agree;
    } else {
      row.agreement = Agreement::kDisagree;
      ++rep.disagree;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ocasync

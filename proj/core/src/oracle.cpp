#include "ocasync/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ocasync/errors.hpp"
#include "ocasync/kripke.hpp"
#include "ocasync/lps.hpp"
#include "ocasync/upset.hpp"

namespace ocasync {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::kFalse: return "FALSE";
    case Tri::kTrue: return "TRUE";
    case Tri::kUnknown: return "UNKNOWN";
  }
  return "?";
}

Tri tri_not(Tri a) {
  if (a == Tri::kTrue) return Tri::kFalse;
  if (a == Tri::kFalse) return Tri::kTrue;
  return Tri::kUnknown;
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::kFalse || b == Tri::kFalse) return Tri::kFalse;
  if (a == Tri::kTrue && b == Tri::kTrue) return Tri::kTrue;
  return Tri::kUnknown;
}

namespace {

// Kleene max over T > U > F.
Tri tri_or(Tri a, Tri b) { return tri_not(tri_and(tri_not(a), tri_not(b))); }

bool eval_state_formula(const Oca& oca, const Formula& g, StateId s) {
  switch (g.op()) {
    case Op::kTrue: return true;
    case Op::kAtom: {
      auto a = oca.find_atom(g.atom_name());
      if (!a) throw InputError("formula uses undeclared atom '" + g.atom_name() + "'");
      return oca.holds(s, *a);
    }
    case Op::kNot: return !eval_state_formula(oca, g.child(0), s);
    case Op::kAnd:
      return eval_state_formula(oca, g.child(0), s) && eval_state_formula(oca, g.child(1), s);
    default: break;
  }
  throw std::logic_error("not a state formula");
}

// Configurations with counter <= cap, indexed v*|S| + s.
class Universe {
 public:
  Universe(const Oca& oca, Counter cap) : oca_(oca), cap_(cap), n_states_(oca.num_states()) {}

  std::size_t size() const { return static_cast<std::size_t>(cap_ + 1) * n_states_; }
  Counter cap() const { return cap_; }
  std::size_t index(const Configuration& c) const {
    return static_cast<std::size_t>(c.counter) * n_states_ + c.state;
  }
  Configuration config(std::size_t i) const {
    return {static_cast<StateId>(i % n_states_), static_cast<Counter>(i / n_states_)};
  }
  bool inside(const Configuration& c) const { return c.counter <= cap_; }

 private:
  const Oca& oca_;
  Counter cap_;
  std::size_t n_states_;
};

}  // namespace

struct BoundedEvaluator::Impl {
  const Oca& oca;
  Formula f;
  OracleCaps caps;
  std::size_t n_states;
  Universe window;
  // Tables are indexed by abstract node: window configurations first, then
  // HIGH(s) at window.size() + s standing for every (s,v) with v > counter_cap.
  std::size_t n_abs;
  std::map<std::string, std::vector<Tri>> tables;
  std::vector<std::vector<Configuration>> succ;  // window successor lists
  // Per abstract node, one entry per transition: the abstract nodes its
  // concrete successors can map to (two for a decrement out of HIGH).
  std::vector<std::vector<std::vector<std::size_t>>> moves;

  Impl(const Oca& o, Formula formula, OracleCaps c)
      : oca(o), f(std::move(formula)), caps(c), n_states(o.num_states()), window(o, c.counter_cap) {
    if (caps.counter_cap < 0 || caps.level_cap < 0) {
      throw std::invalid_argument("oracle caps must be non-negative");
    }
    bind_check(f, oca.atoms());
    n_abs = window.size() + n_states;
    succ.resize(window.size());
    moves.resize(n_abs);
    for (std::size_t i = 0; i < window.size(); ++i) {
      succ[i] = successors(oca, window.config(i));
      for (const Configuration& y : succ[i]) moves[i].push_back({abs_index(y)});
    }
    for (StateId s = 0; s < n_states; ++s) {
      for (std::size_t ti : oca.outgoing(s)) {
        const Transition& t = oca.transitions()[ti];
        if (t.guard != Guard::kPositive) continue;
        std::vector<std::size_t> targets{window.size() + t.dst};
        if (t.effect < 0) targets.push_back(window.index({t.dst, caps.counter_cap}));
        moves[window.size() + s].push_back(std::move(targets));
      }
    }
  }

  std::size_t abs_index(const Configuration& c) const {
    return window.inside(c) ? window.index(c) : window.size() + c.state;
  }
  StateId abs_state(std::size_t a) const {
    return a < window.size() ? window.config(a).state : static_cast<StateId>(a - window.size());
  }

  Tri val(const Formula& g, const Configuration& c) { return table(g)[abs_index(c)]; }

  const std::vector<Tri>& table(const Formula& g) {
    auto it = tables.find(g.text());
    if (it != tables.end()) return it->second;
    std::vector<Tri> t = compute(g);
    return tables.emplace(g.text(), std::move(t)).first->second;
  }

  // Some move whose every target is in A / every move has a target in A, and
  // so on. "sure" variants hold for every concrete member of the node.
  template <class Pred>
  bool ex_sure(std::size_t a, Pred in) const {
    for (const auto& m : moves[a]) {
      if (std::all_of(m.begin(), m.end(), in)) return true;
    }
    return false;
  }
  template <class Pred>
  bool ex_may(std::size_t a, Pred in) const {
    for (const auto& m : moves[a]) {
      if (std::any_of(m.begin(), m.end(), in)) return true;
    }
    return false;
  }
  template <class Pred>
  bool ax_sure(std::size_t a, Pred in) const {
    for (const auto& m : moves[a]) {
      if (!std::all_of(m.begin(), m.end(), in)) return false;
    }
    return true;
  }
  template <class Pred>
  bool ax_may(std::size_t a, Pred in) const {
    for (const auto& m : moves[a]) {
      if (!std::any_of(m.begin(), m.end(), in)) return false;
    }
    return true;
  }

  std::vector<Tri> compute(const Formula& g) {
    const std::size_t n = n_abs;
    std::vector<Tri> out(n, Tri::kUnknown);
    switch (g.op()) {
      case Op::kTrue:
      case Op::kAtom:
        for (std::size_t i = 0; i < n; ++i) out[i] = tri_of(eval_state_formula(oca, g, abs_state(i)));
        return out;
      case Op::kNot: {
        const auto& a = table(g.child(0));
        for (std::size_t i = 0; i < n; ++i) out[i] = tri_not(a[i]);
        return out;
      }
      case Op::kAnd: {
        const auto& a = table(g.child(0));
        const auto& b = table(g.child(1));
        for (std::size_t i = 0; i < n; ++i) out[i] = tri_and(a[i], b[i]);
        return out;
      }
      case Op::kEX: {
        const auto& a = table(g.child(0));
        auto is_true = [&](std::size_t j) { return a[j] == Tri::kTrue; };
        auto maybe = [&](std::size_t j) { return a[j] != Tri::kFalse; };
        for (std::size_t i = 0; i < n; ++i) {
          out[i] = ex_sure(i, is_true) ? Tri::kTrue : (ex_may(i, maybe) ? Tri::kUnknown : Tri::kFalse);
        }
        return out;
      }
      case Op::kEU:
      case Op::kAU:
        return until(g);
      case Op::kUA:
      case Op::kUE: {
        table(g.child(0));
        table(g.child(1));
        std::unique_ptr<UeContext> ctx;
        if (g.op() == Op::kUE) ctx = std::make_unique<UeContext>(*this, g, caps.counter_cap);
        for (std::size_t i = 0; i < window.size(); ++i) {
          out[i] = g.op() == Op::kUA ? ua_at(g, window.config(i)) : ue_at(*ctx, window.config(i));
        }
        // HIGH: k = 0 decides when psi is definite true, or both are definite false.
        const auto& a = table(g.child(0));
        const auto& b = table(g.child(1));
        for (std::size_t i = window.size(); i < n; ++i) {
          if (b[i] == Tri::kTrue) out[i] = Tri::kTrue;
          if (b[i] == Tri::kFalse && a[i] == Tri::kFalse) out[i] = Tri::kFalse;
        }
        return out;
      }
    }
    return out;
  }

  std::vector<Tri> until(const Formula& g) {
    const bool universal = g.op() == Op::kAU;
    const auto& phi = table(g.child(0));
    const auto& psi = table(g.child(1));
    const std::size_t n = n_abs;
    // sure: least fixpoint of definitely-true; maybe: least fixpoint of possibly-true.
    std::vector<bool> sure(n), maybe(n);
    for (std::size_t i = 0; i < n; ++i) {
      sure[i] = psi[i] == Tri::kTrue;
      maybe[i] = psi[i] != Tri::kFalse;
    }
    auto in_sure = [&](std::size_t j) { return static_cast<bool>(sure[j]); };
    auto in_maybe = [&](std::size_t j) { return static_cast<bool>(maybe[j]); };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!sure[i] && phi[i] == Tri::kTrue &&
            (universal ? ax_sure(i, in_sure) : ex_sure(i, in_sure))) {
          sure[i] = true;
          changed = true;
        }
        if (!maybe[i] && phi[i] != Tri::kFalse &&
            (universal ? ax_may(i, in_maybe) : ex_may(i, in_maybe))) {
          maybe[i] = true;
          changed = true;
        }
      }
    }
    std::vector<Tri> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = sure[i] ? Tri::kTrue : (maybe[i] ? Tri::kUnknown : Tri::kFalse);
    }
    return out;
  }

  // Abstract nodes reachable from c; over-approximates every reachable
  // configuration.
  std::vector<bool> closure(const Configuration& c) const {
    std::vector<bool> seen(n_abs, false);
    std::vector<std::size_t> work{abs_index(c)};
    seen[work.back()] = true;
    while (!work.empty()) {
      std::size_t x = work.back();
      work.pop_back();
      for (const auto& m : moves[x]) {
        for (std::size_t y : m) {
          if (!seen[y]) {
            seen[y] = true;
            work.push_back(y);
          }
        }
      }
    }
    return seen;
  }

  bool definitely_false_everywhere(const Formula& psi, const std::vector<bool>& cl) {
    const auto& tab = table(psi);
    for (std::size_t i = 0; i < n_abs; ++i) {
      if (cl[i] && tab[i] != Tri::kFalse) return false;
    }
    return true;
  }

  Tri ua_at(const Formula& g, const Configuration& c) {
    const Formula& phi = g.child(0);
    const Formula& psi = g.child(1);
    const Counter top = c.counter + caps.level_cap + 1;
    Universe uni(oca, top);
    std::vector<std::uint32_t> stamp(uni.size(), 0);
    std::uint32_t epoch = 0;

    std::vector<Configuration> level{c};
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen;  // hash -> k
    std::vector<std::vector<Configuration>> history;
    std::vector<Tri> psi_all;
    Tri prefix = Tri::kTrue;
    bool saw_unknown = false;
    for (int k = 0; k <= caps.level_cap; ++k) {
      Tri pa = Tri::kTrue;
      Tri fa = Tri::kTrue;
      for (const Configuration& x : level) {
        pa = tri_and(pa, val(psi, x));
        fa = tri_and(fa, val(phi, x));
      }
      Tri cand = tri_and(prefix, pa);
      if (cand == Tri::kTrue) return Tri::kTrue;
      if (cand == Tri::kUnknown) saw_unknown = true;
      prefix = tri_and(prefix, fa);
      if (prefix == Tri::kFalse) return saw_unknown ? Tri::kUnknown : Tri::kFalse;

      std::size_t h = level.size();
      for (const Configuration& x : level) h = h * 1000003u ^ uni.index(x);
      auto& bucket = seen[h];
      for (std::size_t prev : bucket) {
        if (history[prev] == level) {
          // The orbit cycles through levels prev..k-1; prefix is already final.
          Tri future = Tri::kFalse;
          for (std::size_t j = prev; j < history.size(); ++j) {
            future = tri_or(future, tri_and(prefix, psi_all[j]));
          }
          return (saw_unknown || future != Tri::kFalse) ? Tri::kUnknown : Tri::kFalse;
        }
      }
      bucket.push_back(history.size());
      history.push_back(level);
      psi_all.push_back(pa);

      ++epoch;
      std::vector<Configuration> next;
      for (const Configuration& x : level) {
        for (const Configuration& y : successors(oca, x)) {
          std::size_t i = uni.index(y);
          if (stamp[i] != epoch) {
            stamp[i] = epoch;
            next.push_back(y);
          }
        }
      }
      std::sort(next.begin(), next.end());
      level = std::move(next);
    }
    if (saw_unknown) return Tri::kUnknown;
    if (definitely_false_everywhere(psi, closure(c))) return Tri::kFalse;
    if (refuted_forever(psi, level)) return Tri::kFalse;
    return Tri::kUnknown;
  }

  // M_0 = last ∩ window, M_{k+1} = post(M_k) ∩ window. Each M_k lies inside
  // the level k steps after `last`; true when every M_k up to the first
  // repetition holds a configuration where psi is definitely false.
  bool refuted_forever(const Formula& psi, const std::vector<Configuration>& last) {
    const auto& tab = table(psi);
    std::vector<std::size_t> m;
    for (const Configuration& x : last) {
      if (window.inside(x)) m.push_back(window.index(x));
    }
    std::set<std::vector<std::size_t>> seen;
    std::vector<bool> mark(window.size());
    for (int step = 0; step < 100000; ++step) {
      std::sort(m.begin(), m.end());
      if (!seen.insert(m).second) return true;
      bool refuted = false;
      for (std::size_t i : m) refuted = refuted || tab[i] == Tri::kFalse;
      if (!refuted) return false;
      std::vector<std::size_t> next;
      for (std::size_t i : m) {
        for (const Configuration& y : succ[i]) {
          if (!window.inside(y)) continue;
          std::size_t j = window.index(y);
          if (!mark[j]) {
            mark[j] = true;
            next.push_back(j);
          }
        }
      }
      for (std::size_t j : next) mark[j] = false;
      m = std::move(next);
    }
    return false;
  }

  // Exact-step reachability of psi over configurations with counter <= top.
  struct UeContext {
    Universe uni;
    std::vector<std::vector<std::uint32_t>> adj;
    std::vector<bool> exits;  // some successor above top
    Formula psi;
    NodeSet phi_t, phi_p;
    std::vector<NodeSet> w_t, w_p;  // d = 0..level_cap

    UeContext(Impl& ev, const Formula& g, Counter base)
        : uni(ev.oca, base + ev.caps.level_cap + 1), psi(g.child(1)) {
      const std::size_t n = uni.size();
      adj.resize(n);
      exits.assign(n, false);
      phi_t = NodeSet(n);
      phi_p = NodeSet(n);
      NodeSet psi_t(n), psi_p(n);
      for (std::size_t i = 0; i < n; ++i) {
        Configuration c = uni.config(i);
        for (const Configuration& y : successors(ev.oca, c)) {
          if (uni.inside(y)) {
            adj[i].push_back(static_cast<std::uint32_t>(uni.index(y)));
          } else {
            exits[i] = true;
          }
        }
        Tri a = ev.val(g.child(0), c);
        Tri b = ev.val(g.child(1), c);
        if (a == Tri::kTrue) phi_t.set(i);
        if (a != Tri::kFalse) phi_p.set(i);
        if (b == Tri::kTrue) psi_t.set(i);
        if (b != Tri::kFalse) psi_p.set(i);
      }
      w_t.push_back(psi_t);
      w_p.push_back(psi_p);
      for (int d = 1; d <= ev.caps.level_cap; ++d) {
        NodeSet nt(n), np(n);
        for (std::size_t i = 0; i < n; ++i) {
          bool t = false;
          bool p = exits[i];
          for (std::uint32_t j : adj[i]) {
            t = t || w_t.back().test(j);
            p = p || w_p.back().test(j);
          }
          if (t) nt.set(i);
          if (p) np.set(i);
        }
        w_t.push_back(std::move(nt));
        w_p.push_back(std::move(np));
      }
    }
  };

  Tri ue_at(const UeContext& ctx, const Configuration& c) {
    const Universe& uni = ctx.uni;
    const std::size_t n = uni.size();
    const std::size_t i0 = uni.index(c);
    Tri first = ctx.w_t[0].test(i0) ? Tri::kTrue : (ctx.w_p[0].test(i0) ? Tri::kUnknown : Tri::kFalse);
    if (first == Tri::kTrue) return Tri::kTrue;
    bool saw_unknown = first == Tri::kUnknown;

    std::vector<NodeSet> levels;
    NodeSet l0(n);
    l0.set(i0);
    levels.push_back(l0);
    // A level without a possible phi-configuration fails every larger k.
    if (!l0.intersects(ctx.phi_p)) return first;
    for (int k = 1; k <= caps.level_cap; ++k) {
      NodeSet next(n);
      for (NodeId x : levels.back().members()) {
        for (std::uint32_t y : ctx.adj[x]) next.set(y);
      }
      levels.push_back(std::move(next));
      Tri cand = Tri::kTrue;
      for (int j = 0; j < k && cand != Tri::kFalse; ++j) {
        const NodeSet& lj = levels[j];
        if (lj.intersects3(ctx.phi_t, ctx.w_t[k - j])) continue;
        cand = lj.intersects3(ctx.phi_p, ctx.w_p[k - j]) ? Tri::kUnknown : Tri::kFalse;
      }
      if (cand == Tri::kTrue) return Tri::kTrue;
      if (cand == Tri::kUnknown) saw_unknown = true;
      if (!levels[k].intersects(ctx.phi_p)) return saw_unknown ? Tri::kUnknown : Tri::kFalse;
    }
    if (saw_unknown) return Tri::kUnknown;
    std::vector<bool> cl = closure(c);
    if (definitely_false_everywhere(ctx.psi, cl)) return Tri::kFalse;
    if (finite_and_settled(ctx, cl, levels)) return Tri::kFalse;
    return Tri::kUnknown;
  }

  // All reachable configurations lie in the window with definite values, and
  // the level/step-reachability orbits settle early enough that every k up to
  // level_cap already covers one full period past twice the preperiod.
  bool finite_and_settled(const UeContext& ctx, const std::vector<bool>& cl,
                          const std::vector<NodeSet>& levels) {
    for (StateId s = 0; s < n_states; ++s) {
      if (cl[window.size() + s]) return false;
    }
    const std::size_t n = ctx.uni.size();
    NodeSet reach(n);
    for (std::size_t i = 0; i < window.size(); ++i) {
      if (!cl[i]) continue;
      reach.set(i);  // window indices coincide with universe indices
      if (ctx.phi_t.test(i) != ctx.phi_p.test(i)) return false;
      if (ctx.w_t[0].test(i) != ctx.w_p[0].test(i)) return false;
    }
    auto period_of = [](const std::vector<NodeSet>& xs) -> std::optional<std::pair<std::size_t, std::size_t>> {
      std::unordered_map<NodeSet, std::size_t, NodeSetHash> seen;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        auto [it, fresh] = seen.emplace(xs[i], i);
        if (!fresh) return std::make_pair(it->second, i - it->second);
      }
      return std::nullopt;
    };
    std::vector<NodeSet> ws;
    for (const NodeSet& w : ctx.w_t) ws.push_back(w & reach);
    auto a = period_of(levels);
    auto b = period_of(ws);
    if (!a || !b) return false;
    std::size_t n0 = std::max(a->first, b->first);
    std::size_t lam = std::lcm(a->second, b->second);
    return 2 * n0 + 2 * lam <= static_cast<std::size_t>(caps.level_cap);
  }

  Tri eval_at(const Formula& g, const Configuration& c) {
    if (c.counter <= caps.counter_cap || is_state_formula(g)) return val(g, c);
    if (g.op() == Op::kNot) return tri_not(eval_at(g.child(0), c));
    if (g.op() == Op::kAnd) return tri_and(eval_at(g.child(0), c), eval_at(g.child(1), c));
    if (g.op() == Op::kUA) {
      table(g.child(0));
      table(g.child(1));
      return ua_at(g, c);
    }
    if (g.op() == Op::kUE) {
      table(g.child(0));
      table(g.child(1));
      UeContext ctx(*this, g, c.counter);
      return ue_at(ctx, c);
    }
    if (g.op() == Op::kEX) {
      Tri r = Tri::kFalse;
      for (const Configuration& y : successors(oca, c)) r = tri_or(r, eval_at(g.child(0), y));
      return r;
    }
    return val(g, c);
  }
};

BoundedEvaluator::BoundedEvaluator(const Oca& oca, const Formula& f, OracleCaps caps)
    : impl_(std::make_unique<Impl>(oca, f, caps)) {}
BoundedEvaluator::~BoundedEvaluator() = default;

const Formula& BoundedEvaluator::formula() const { return impl_->f; }
const OracleCaps& BoundedEvaluator::caps() const { return impl_->caps; }

Tri BoundedEvaluator::eval(const Formula& g, const Configuration& c) {
  if (c.state >= impl_->n_states || c.counter < 0) {
    throw std::invalid_argument("configuration outside the automaton");
  }
  return impl_->eval_at(g, c);
}

Tri BoundedEvaluator::eval(const Configuration& c) { return eval(impl_->f, c); }

Tri eval_bounded(const Oca& oca, const Configuration& c, const Formula& f, Counter counter_cap,
                 int level_cap) {
  BoundedEvaluator ev(oca, f, {counter_cap, level_cap});
  return ev.eval(c);
}

bool table_periodic(const std::vector<Tri>& table, Counter t, Counter p) {
  const auto n = static_cast<Counter>(table.size());
  for (Counter v = t; v + p < n; ++v) {
    Tri a = table[v];
    Tri b = table[v + p];
    if (a != Tri::kUnknown && b != Tri::kUnknown && a != b) return false;
  }
  return true;
}

std::optional<std::pair<Counter, Counter>> least_period(const std::vector<Tri>& table) {
  const auto v_cap = static_cast<Counter>(table.size()) - 1;
  // last_unknown: largest v with an UNKNOWN entry
  Counter last_unknown = -1;
  for (Counter v = 0; v <= v_cap; ++v) {
    if (table[v] == Tri::kUnknown) last_unknown = v;
  }
  for (Counter t = last_unknown + 1; t <= v_cap; ++t) {
    for (Counter p = 1; t + 2 * p <= v_cap; ++p) {
      if (table_periodic(table, t, p)) return std::make_pair(t, p);
    }
  }
  return std::nullopt;
}

MineResult mine_period(BoundedEvaluator& ev, const Formula& g, StateId s, Counter v_cap) {
  if (v_cap < 2) throw std::invalid_argument("mining needs v_cap >= 2");
  MineResult r;
  for (Counter v = 0; v <= v_cap; ++v) r.table.push_back(ev.eval(g, {s, v}));
  r.pair = least_period(r.table);
  return r;
}

MineResult mine_period(const Oca& oca, const Formula& f, StateId s, Counter v_cap,
                       OracleCaps caps) {
  BoundedEvaluator ev(oca, f, caps);
  return mine_period(ev, f, s, v_cap);
}

UniformMining mine_uniform(const Oca& oca, const Formula& f, Counter v_cap, OracleCaps caps) {
  BoundedEvaluator ev(oca, f, caps);
  UniformMining out;
  Counter t = 0;
  Counter p = 1;
  for (const Formula& g : subformulas(f)) {
    Counter gt = 0;
    Counter gp = 1;
    for (StateId s = 0; s < oca.num_states(); ++s) {
      MineResult m = mine_period(ev, g, s, v_cap);
      if (!m.pair) {
        out.failures.push_back(g.text() + " @ " + oca.state_name(s));
        continue;
      }
      gt = std::max(gt, m.pair->first);
      gp = std::lcm(gp, m.pair->second);
    }
    out.per_subformula[g.text()] = {gt, gp};
    t = std::max(t, gt);
    p = std::lcm(p, gp);
  }
  if (out.failures.empty()) out.pair = std::make_pair(t, p);
  return out;
}

namespace {

// Per level, per state: counters below T exactly, residues mod P above.
struct LevelIndex {
  std::vector<std::vector<std::set<Counter>>> low;
  std::vector<std::vector<std::set<Counter>>> res;
};

LevelIndex index_levels(const OracleTrace& tr, std::size_t n_states, Counter T, Counter P) {
  LevelIndex ix;
  for (const auto& level : tr.levels) {
    std::vector<std::set<Counter>> low(n_states), res(n_states);
    for (const Configuration& c : level) {
      if (c.counter < T) {
        low[c.state].insert(c.counter);
      } else {
        res[c.state].insert(c.counter % P);
      }
    }
    ix.low.push_back(std::move(low));
    ix.res.push_back(std::move(res));
  }
  return ix;
}

bool has_equivalent(const LevelIndex& ix, std::size_t level, const Configuration& c, Counter T,
                    Counter P) {
  if (c.counter < T) return ix.low[level][c.state].count(c.counter) > 0;
  return ix.res[level][c.state].count(c.counter % P) > 0;
}

}  // namespace

Lemma11Report check_lemma11(const Oca& oca, const ConstantBundle& bundle,
                            const Lemma11Sampling& sampling) {
  for (const BigInt* x : {&bundle.cT, &bundle.P, &bundle.prev_t, &bundle.prev_p}) {
    if (!fits_int64(*x)) throw InputError("bundle constants exceed 64 bits; use a smaller b");
  }
  const Counter cT = to_int64(bundle.cT);
  const Counter P = to_int64(bundle.P);
  const Counter T = to_int64(bundle.prev_t);
  const Counter Pp = to_int64(bundle.prev_p);
  const Counter max_shift = checked_mul(P, bundle.b);
  const Counter L = sampling.level_max;
  if (checked_add(cT, checked_add(P, checked_add(max_shift, L + 1000))) < 0) {
    throw InputError("sampled counters exceed 64 bits");
  }
  Lemma11Report rep;
  rep.below_regime = bundle.below_regime;
  for (const char* name : {"1a", "1b", "2a", "2b"}) rep.counts[name] = {};
  const BigInt threshold = pow(BigInt(static_cast<long>(bundle.b)), 4) * bundle.P;
  const std::size_t n = oca.num_states();
  const bool shift_feasible = max_shift + L <= 200000;

  auto record_failure = [&](const std::string& impl, StateId s, Counter v, Counter from_level,
                            Counter to_level, const Configuration& end, int seg,
                            const Configuration& origin) {
    if (rep.failures.size() >= sampling.max_failures_reported) return;
    Lemma11Failure f{impl, s, v, from_level, to_level, end.state, end.counter, seg, {}, threshold};
    PathSearch ps = find_path(oca, origin, end, static_cast<int>(from_level));
    if (ps.found) {
      auto [scheme, exps] = fold_path(oca, ps.path, 6);
      f.slope_repetitions = analyze_cycle_repetitions(oca, scheme, exps);
    }
    rep.failures.push_back(std::move(f));
  };

  for (StateId s = 0; s < n; ++s) {
    for (Counter off : sampling.v_offsets) {
      if (off < 1) throw InputError("v offsets must be positive (v > cT)");
      const Counter v = cT + off;
      ++rep.samples;
      OracleTrace a = level_sets(oca, {s, v}, static_cast<int>(L), v + L + 1);
      LevelIndex ia = index_levels(a, n, T, Pp);
      OracleTrace b;
      LevelIndex ib;
      if (shift_feasible) {
        b = level_sets(oca, {s, v + P}, static_cast<int>(L + max_shift), v + P + L + max_shift + 1);
        ib = index_levels(b, n, T, Pp);
      }
      const Core core(BigInt(static_cast<long>(v)), bundle);
      for (Counter l = 0; l <= L; ++l) {
        const BigInt bl = static_cast<long>(l);
        auto in_core = core.core_segment(bl);
        if (!in_core) {
          const int group = core.region(bl) == 0 ? 0 : 1;
          if (l < P) {
            rep.counts["1a"][group].skipped += a.levels[l].size();
            rep.counts["1b"][group].skipped += 1;
            continue;
          }
          for (const Configuration& c : a.levels[l]) {
            auto& cnt = rep.counts["1a"][group];
            if (has_equivalent(ia, l - P, c, T, Pp)) {
              ++cnt.pass;
            } else {
              ++cnt.fail;
              record_failure("1a", s, v, l, l - P, c, core.region(bl), {s, v});
            }
          }
          for (const Configuration& c : a.levels[l - P]) {
            auto& cnt = rep.counts["1b"][group];
            if (has_equivalent(ia, l, c, T, Pp)) {
              ++cnt.pass;
            } else {
              ++cnt.fail;
              record_failure("1b", s, v, l - P, l, c, core.region(bl), {s, v});
            }
          }
          continue;
        }
        const int group = *in_core == 0 ? 0 : 1;
        if (!shift_feasible) {
          rep.counts["2a"][group].skipped += 1;
          rep.counts["2b"][group].skipped += 1;
          continue;
        }
        const Counter sh = to_int64(shift_map(bl, BigInt(static_cast<long>(v)), bundle));
        const BigInt closed = shift_closed_form(bl, BigInt(static_cast<long>(v)), bundle);
        if (closed != sh) throw InvariantViolation("shift closed form disagrees with index map");
        for (const Configuration& c : b.levels[sh]) {
          auto& cnt = rep.counts["2a"][group];
          if (has_equivalent(ia, l, c, T, Pp)) {
            ++cnt.pass;
          } else {
            ++cnt.fail;
            record_failure("2a", s, v, sh, l, c, *in_core, {s, v + P});
          }
        }
        for (const Configuration& c : a.levels[l]) {
          auto& cnt = rep.counts["2b"][group];
          if (has_equivalent(ib, sh, c, T, Pp)) {
            ++cnt.pass;
          } else {
            ++cnt.fail;
            record_failure("2b", s, v, l, sh, c, *in_core, {s, v});
          }
        }
      }
    }
  }
  return rep;
}

Lemma8Report check_lemma8(const Oca& oca, Counter v_max, int l_max, std::size_t flat_bound,
                          std::size_t size_bound) {
  Lemma8Report rep;
  const std::size_t n = oca.num_states();
  for (StateId s = 0; s < n; ++s) {
    for (Counter v = 0; v <= v_max; ++v) {
      const Configuration origin{s, v};
      // parent[l][c] = (predecessor at l-1, transition index)
      std::vector<std::map<Configuration, std::pair<Configuration, std::size_t>>> parent(l_max + 1);
      parent[0][origin] = {origin, 0};
      for (int l = 1; l <= l_max; ++l) {
        for (const auto& [c, unused] : parent[l - 1]) {
          for (std::size_t ti : oca.outgoing(c.state)) {
            const Transition& t = oca.transitions()[ti];
            if (!enabled(t, c.counter)) continue;
            parent[l].try_emplace(Configuration{t.dst, c.counter + t.effect}, c, ti);
          }
        }
      }
      std::map<std::pair<Lps, int>, std::set<Configuration>> memo;
      for (int l = 0; l <= l_max; ++l) {
        for (const auto& [end, unused] : parent[l]) {
          if (end.counter > v_max) continue;
          ++rep.facts;
          TransitionPath path(l);
          Configuration cur = end;
          for (int k = l; k > 0; --k) {
            const auto& [prev, ti] = parent[k].at(cur);
            path[k - 1] = ti;
            cur = prev;
          }
          auto [scheme, exps] = fold_path(oca, path, size_bound);
          rep.max_flat_length = std::max(rep.max_flat_length, scheme.flat_length());
          rep.max_size = std::max(rep.max_size, scheme.size());
          if (scheme.size() > 0) ++rep.folded;
          if (scheme.flat_length() > flat_bound || scheme.size() > size_bound ||
              !is_well_formed(oca, scheme, s, end.state)) {
            ++rep.misses;
            continue;
          }
          auto key = std::make_pair(scheme, l);
          auto it = memo.find(key);
          if (it == memo.end()) {
            it = memo.emplace(key, shaped_reach(oca, scheme, origin, l, l)).first;
          }
          if (!it->second.count(end)) ++rep.misses;
        }
      }
    }
  }
  return rep;
}

}  // namespace ocasync

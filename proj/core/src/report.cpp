#include "ocasync/report.hpp"

namespace ocasync {

using nlohmann::json;

json big_to_json(const BigInt& x) {
  json j;
  j["bits"] = bit_length(x);
  if (bit_length(x) <= kMaxPrintedBits) j["value"] = to_decimal(x);
  return j;
}

json config_to_json(const Oca& oca, const Configuration& c) {
  return {{"state", oca.state_name(c.state)}, {"counter", c.counter}};
}

json tp_to_json(const TpPair& p) { return {{"t", big_to_json(p.t)}, {"p", big_to_json(p.p)}}; }

json bundle_to_json(const ConstantBundle& b) {
  json slopes = json::array();
  for (const Rational& r : b.negative_slopes) slopes.push_back(r.str());
  return {{"b", b.b},
          {"B", big_to_json(b.B)},
          {"prev_t", big_to_json(b.prev_t)},
          {"prev_p", big_to_json(b.prev_p)},
          {"P", big_to_json(b.P)},
          {"sT", big_to_json(b.sT)},
          {"cT", big_to_json(b.cT)},
          {"m", b.m},
          {"basic_slope_count", b.slopes.size()},
          {"negative_slopes", slopes},
          {"below_regime", b.below_regime}};
}

json constants_used_to_json(const ConstantsUsed& c) {
  json j{{"mode", mode_name(c.mode)}, {"t", c.t}, {"p", c.p}};
  if (!c.closed_form.empty()) {
    json rows = json::array();
    for (const SubformulaConstants& row : c.closed_form) {
      json r{{"formula", row.formula.text()}, {"pair", tp_to_json(row.pair)}};
      if (row.bundle) r["bundle"] = bundle_to_json(*row.bundle);
      rows.push_back(std::move(r));
    }
    j["closed_form"] = std::move(rows);
  }
  if (!c.mined.empty()) {
    json m = json::object();
    for (const auto& [text, tp] : c.mined) m[text] = {{"t", tp.first}, {"p", tp.second}};
    j["mined"] = std::move(m);
  }
  if (c.sampling_range) j["sampling_range"] = {0, *c.sampling_range};
  if (c.sampling_caps) {
    j["sampling_caps"] = {{"counter_cap", c.sampling_caps->counter_cap},
                          {"level_cap", c.sampling_caps->level_cap}};
  }
  return j;
}

json check_result_to_json(const CheckResult& r) {
  json per_state = json::object();
  for (const auto& [s, u] : r.per_state) per_state[s] = to_json(u);
  json j{{"holds", r.holds},
         {"perState", per_state},
         {"constantsUsed", constants_used_to_json(r.constants)},
         {"caveats", r.caveats},
         {"kripkeNodes", r.kripke_nodes}};
  if (r.witness_k) j["witnessK"] = *r.witness_k;
  return j;
}

json cross_check_to_json(const Oca& oca, const CrossCheckReport& r) {
  json rows = json::array();
  for (const CrossCheckRow& row : r.rows) {
    rows.push_back({{"init", config_to_json(oca, row.init)},
                    {"checker", row.checker},
                    {"oracle", tri_name(row.oracle)},
                    {"result", agreement_name(row.agreement)}});
  }
  return {{"rows", rows},
          {"agree", r.agree},
          {"disagree", r.disagree},
          {"oracle_unknown", r.unknown},
          {"constantsUsed", constants_used_to_json(r.constants)},
          {"caveats", r.caveats}};
}

namespace {

json path_to_json(const Oca& oca, const TransitionPath& path) {
  json out = json::array();
  for (std::size_t i : path) {
    const Transition& t = oca.transitions()[i];
    out.push_back({{"src", oca.state_name(t.src)},
                   {"guard", t.guard == Guard::kZero ? "=0" : ">0"},
                   {"effect", t.effect},
                   {"dst", oca.state_name(t.dst)}});
  }
  return out;
}

}  // namespace

json lps_to_json(const Oca& oca, const Lps& scheme) {
  json segs = json::array();
  for (const LpsSegment& s : scheme.segments) {
    CycleStats st = cycle_stats(oca, s.beta);
    segs.push_back({{"beta", path_to_json(oca, s.beta)},
                    {"alpha", path_to_json(oca, s.alpha)},
                    {"effect", st.effect},
                    {"length", st.length},
                    {"slope", st.slope().str()}});
  }
  return {{"alpha0", path_to_json(oca, scheme.alpha0)},
          {"segments", segs},
          {"size", scheme.size()},
          {"flat_length", scheme.flat_length()}};
}

json lemma11_to_json(const Oca& oca, const Lemma11Report& r) {
  json counts = json::object();
  for (const auto& [name, groups] : r.counts) {
    json g = json::object();
    const char* keys[2] = {"segment0", "segments_ge1"};
    for (int i = 0; i < 2; ++i) {
      g[keys[i]] = {{"pass", groups[i].pass}, {"fail", groups[i].fail}, {"skipped", groups[i].skipped}};
    }
    counts[name] = std::move(g);
  }
  json fails = json::array();
  for (const Lemma11Failure& f : r.failures) {
    json reps = json::object();
    for (const auto& [slope, n] : f.slope_repetitions) reps[slope.str()] = n;
    fails.push_back({{"implication", f.implication},
                     {"state", oca.state_name(f.state)},
                     {"v", f.v},
                     {"level", f.level},
                     {"target_level", f.target_level},
                     {"end", config_to_json(oca, {f.end_state, f.end_counter})},
                     {"segment", f.segment},
                     {"slope_repetitions", reps},
                     {"repetition_threshold", big_to_json(f.repetition_threshold)}});
  }
  return {{"counts", counts},
          {"failures", fails},
          {"below_regime", r.below_regime},
          {"samples", r.samples}};
}

json diagnostics_to_json(const std::vector<Diagnostic>& ds) {
  json out = json::array();
  for (const Diagnostic& d : ds) {
    const char* kind = d.kind == Diagnostic::Kind::kMissingZeroSuccessor       ? "missing_zero"
                       : d.kind == Diagnostic::Kind::kMissingPositiveSuccessor ? "missing_pos"
                                                                               : "zero_decrement";
    out.push_back({{"kind", kind}, {"state", d.state}, {"message", d.message}});
  }
  return out;
}

json tri_table_to_json(const std::vector<Tri>& table) {
  json out = json::array();
  for (Tri t : table) out.push_back(tri_name(t));
  return out;
}

}  // namespace ocasync

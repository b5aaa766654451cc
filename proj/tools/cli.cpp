#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ocasync/errors.hpp"
#include "ocasync/formula.hpp"
#include "ocasync/lps.hpp"
#include "ocasync/mc.hpp"
#include "ocasync/oca_io.hpp"
#include "ocasync/oracle.hpp"
#include "ocasync/periodicity.hpp"
#include "ocasync/report.hpp"

namespace ocasync::cli {

namespace {

using nlohmann::json;

// Values gathered from flags and an optional --job file; flags win.
struct Inputs {
  std::string oca_path;
  std::string formula;
  std::string init;
  std::string mode = "empirical";
  std::string job;
  std::optional<std::size_t> budget;
  std::optional<std::int64_t> b;
  Counter counter_cap = 60;
  int level_cap = 200;
  Counter v_cap = 30;
  std::string quotient = "representative";
};

void apply_job(Inputs& in) {
  if (in.job.empty()) return;
  std::ifstream f(in.job);
  if (!f) throw InputError("cannot open job file '" + in.job + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError("job file '" + in.job + "': " + e.what());
  }
  if (!j.is_object()) throw InputError("job file must hold a JSON object");
  auto dir = std::filesystem::path(in.job).parent_path();
  try {
    if (in.oca_path.empty() && j.contains("oca")) {
      std::filesystem::path p = j.at("oca").get<std::string>();
      in.oca_path = (p.is_absolute() ? p : dir / p).string();
    }
    if (in.formula.empty() && j.contains("formula")) in.formula = j.at("formula").get<std::string>();
    if (in.init.empty() && j.contains("init")) in.init = j.at("init").get<std::string>();
    if (j.contains("mode")) in.mode = j.at("mode").get<std::string>();
    if (!in.budget && j.contains("budget")) in.budget = j.at("budget").get<std::size_t>();
    if (!in.b && j.contains("b")) in.b = j.at("b").get<std::int64_t>();
  } catch (const json::exception& e) {
    throw InputError(std::string("job file: ") + e.what());
  }
}

Oca load(const Inputs& in) {
  if (in.oca_path.empty()) throw InputError("--oca is required");
  return load_oca_file(in.oca_path);
}

Formula formula(const Inputs& in, const Oca& oca) {
  if (in.formula.empty()) throw InputError("--formula is required");
  Formula f = parse_formula(in.formula);
  bind_check(f, oca.atoms());
  return f;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != s.size()) throw InputError(what + ": '" + s + "' is not an integer");
  return v;
}

Configuration parse_init(const Oca& oca, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("--init expects 'state,counter'");
  std::string name = text.substr(0, comma);
  auto s = oca.find_state(name);
  if (!s) throw InputError("unknown state '" + name + "'");
  Counter v = parse_int(text.substr(comma + 1), "--init counter");
  if (v < 0) throw InputError("--init counter must be non-negative");
  return {*s, v};
}

std::size_t node_budget(const Inputs& in) {
  if (in.budget) return *in.budget;
  if (const char* env = std::getenv("OCASYNC_BUDGET")) {
    auto v = parse_int(env, "OCASYNC_BUDGET");
    if (v < 1) throw InputError("OCASYNC_BUDGET must be positive");
    return static_cast<std::size_t>(v);
  }
  return CheckOptions{}.node_budget;
}

OracleCaps caps(const Inputs& in) {
  if (in.counter_cap < 0 || in.level_cap < 0) throw InputError("caps must be non-negative");
  return {in.counter_cap, in.level_cap};
}

Mode parse_mode(const Inputs& in) {
  const std::string& m = in.mode;
  if (m == "paper") return Mode::paper(in.b);
  if (m == "empirical") {
    if (in.v_cap < 2) throw InputError("--v-cap must be at least 2");
    return Mode::empirical(caps(in), in.v_cap);
  }
  const std::string prefix = "supplied:";
  if (m.rfind(prefix, 0) == 0) {
    std::string rest = m.substr(prefix.size());
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw InputError("--mode supplied:t,p expects two integers");
    Counter t = parse_int(rest.substr(0, comma), "supplied t");
    Counter p = parse_int(rest.substr(comma + 1), "supplied p");
    if (t < 0 || p < 1) throw InputError("supplied constants need t >= 0 and p >= 1");
    return Mode::supplied(t, p);
  }
  throw InputError("--mode must be paper, supplied:t,p or empirical");
}

CheckOptions check_options(const Inputs& in) {
  CheckOptions o;
  o.node_budget = node_budget(in);
  if (in.quotient == "representative") {
    o.quotient = Quotient::kRepresentative;
  } else if (in.quotient == "union") {
    o.quotient = Quotient::kUnion;
  } else {
    throw InputError("--quotient must be representative or union");
  }
  return o;
}

void add_oca(CLI::App* app, Inputs& in) {
  app->add_option("--oca", in.oca_path, "OCA file (DSL or JSON)");
  app->add_option("--job", in.job, "JSON job file with oca/formula/init/mode keys");
}

void add_formula(CLI::App* app, Inputs& in) { app->add_option("--formula", in.formula, "CTL+Sync formula"); }

void add_caps(CLI::App* app, Inputs& in) {
  app->add_option("--counter-cap", in.counter_cap, "oracle counter cap");
  app->add_option("--level-cap", in.level_cap, "oracle level cap");
}

void add_mode(CLI::App* app, Inputs& in) {
  app->add_option("--mode", in.mode, "paper | supplied:t,p | empirical");
  app->add_option("--budget", in.budget, "Kripke node budget (default: OCASYNC_BUDGET or 1000000)");
  app->add_option("--b", in.b, "UA bundle parameter for paper mode");
  app->add_option("--v-cap", in.v_cap, "mining range for empirical mode");
  app->add_option("--quotient", in.quotient, "representative | union");
  add_caps(app, in);
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checking CTL+Sync over one-counter automata", "ocasync"};
  app.require_subcommand(1);
  Inputs in;
  std::function<json()> action;
  int verdict_exit = kOk;

  auto* check = app.add_subcommand("check", "Decide a formula at an initial configuration");
  add_oca(check, in);
  add_formula(check, in);
  check->add_option("--init", in.init, "initial configuration 'state,counter'");
  add_mode(check, in);
  check->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      Formula f = formula(in, oca);
      if (in.init.empty()) throw InputError("--init is required");
      Configuration init = parse_init(oca, in.init);
      CheckResult r = check_oca(oca, f, init, parse_mode(in), check_options(in));
      json j = check_result_to_json(r);
      j["formula"] = f.text();
      j["init"] = config_to_json(oca, init);
      return j;
    };
  });

  auto* constants = app.add_subcommand("constants", "Closed-form periodicity constants per subformula");
  add_oca(constants, in);
  add_formula(constants, in);
  constants->add_option("--b", in.b, "UA bundle parameter");
  constants->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      Formula f = formula(in, oca);
      json rows = json::array();
      for (const SubformulaConstants& row :
           formula_constants(f, static_cast<int>(oca.num_states()), in.b)) {
        json r{{"formula", row.formula.text()}, {"pair", tp_to_json(row.pair)}};
        if (row.bundle) r["bundle"] = bundle_to_json(*row.bundle);
        rows.push_back(std::move(r));
      }
      return json{{"formula", f.text()}, {"states", oca.num_states()}, {"rows", rows}};
    };
  });

  auto* sat = app.add_subcommand("sat-sets", "Per-state satisfaction sets of every subformula");
  add_oca(sat, in);
  add_formula(sat, in);
  add_mode(sat, in);
  sat->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      Formula f = formula(in, oca);
      CheckResult r = check_oca(oca, f, {0, 0}, parse_mode(in), check_options(in));
      json subs = json::object();
      for (const auto& [text, per_state] : r.per_subformula) {
        json ps = json::object();
        for (const auto& [s, u] : per_state) ps[s] = to_json(u);
        subs[text] = std::move(ps);
      }
      return json{{"formula", f.text()},
                  {"subformulas", subs},
                  {"constantsUsed", constants_used_to_json(r.constants)},
                  {"caveats", r.caveats}};
    };
  });

  auto* oracle = app.add_subcommand("oracle", "Three-valued bounded evaluation");
  add_oca(oracle, in);
  add_formula(oracle, in);
  oracle->add_option("--init", in.init, "configuration 'state,counter'");
  add_caps(oracle, in);
  oracle->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      Formula f = formula(in, oca);
      if (in.init.empty()) throw InputError("--init is required");
      Configuration init = parse_init(oca, in.init);
      OracleCaps c = caps(in);
      Tri v = eval_bounded(oca, init, f, c.counter_cap, c.level_cap);
      return json{{"formula", f.text()},
                  {"init", config_to_json(oca, init)},
                  {"verdict", tri_name(v)},
                  {"caps", {{"counter_cap", c.counter_cap}, {"level_cap", c.level_cap}}}};
    };
  });

  std::string mine_state;
  auto* mine = app.add_subcommand("mine-period", "Least (t,p) consistent with the oracle's verdict table");
  add_oca(mine, in);
  add_formula(mine, in);
  mine->add_option("--state", mine_state, "state (default: all)");
  mine->add_option("--v-cap", in.v_cap, "largest sampled counter");
  add_caps(mine, in);
  mine->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      Formula f = formula(in, oca);
      if (in.v_cap < 2) throw InputError("--v-cap must be at least 2");
      BoundedEvaluator ev(oca, f, caps(in));
      json states = json::object();
      for (StateId s = 0; s < oca.num_states(); ++s) {
        if (!mine_state.empty() && oca.state_name(s) != mine_state) continue;
        MineResult m = mine_period(ev, f, s, in.v_cap);
        json pair = m.pair ? json{{"t", m.pair->first}, {"p", m.pair->second}} : json(nullptr);
        states[oca.state_name(s)] = {{"pair", pair}, {"table", tri_table_to_json(m.table)}};
      }
      if (states.empty()) throw InputError("unknown state '" + mine_state + "'");
      return json{{"formula", f.text()}, {"v_cap", in.v_cap}, {"states", states}};
    };
  });

  Counter init_lo = 0;
  Counter init_hi = 12;
  bool flip_ua = false;
  auto* cross = app.add_subcommand("cross-check", "Compare the checker with the oracle on many inits");
  add_oca(cross, in);
  add_formula(cross, in);
  add_mode(cross, in);
  cross->add_option("--from", init_lo, "smallest initial counter");
  cross->add_option("--to", init_hi, "largest initial counter");
  cross->add_flag("--flip-ua-inclusion", flip_ua, "fault injection: weaken the UA inclusion test");
  cross->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      Formula f = formula(in, oca);
      if (init_lo < 0 || init_hi < init_lo) throw InputError("need 0 <= --from <= --to");
      std::vector<Configuration> inits;
      for (StateId s = 0; s < oca.num_states(); ++s) {
        for (Counter v = init_lo; v <= init_hi; ++v) inits.push_back({s, v});
      }
      CheckOptions opts = check_options(in);
      opts.sync.flip_ua_inclusion = flip_ua;
      CrossCheckReport r = cross_check(oca, f, inits, parse_mode(in), caps(in), opts);
      if (r.disagree > 0) verdict_exit = kInvariantFailure;
      json j = cross_check_to_json(oca, r);
      j["formula"] = f.text();
      return j;
    };
  });

  std::string prev_t = "0";
  std::string prev_p = "1";
  std::vector<Counter> offsets;
  int level_max = Lemma11Sampling{}.level_max;
  auto* lemma = app.add_subcommand("check-lemma11", "Sample the level correspondences of a scaled UA bundle");
  add_oca(lemma, in);
  lemma->add_option("--b", in.b, "bundle parameter (default 1)");
  lemma->add_option("--prev-t", prev_t, "child threshold");
  lemma->add_option("--prev-p", prev_p, "child period");
  lemma->add_option("--offsets", offsets, "sampled v - cT values");
  lemma->add_option("--level-max", level_max, "largest sampled level");
  lemma->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      ConstantBundle bundle =
          ua_constants(3, BigInt(parse_int(prev_t, "--prev-t")), BigInt(parse_int(prev_p, "--prev-p")),
                       in.b.value_or(1));
      Lemma11Sampling sampling;
      if (!offsets.empty()) sampling.v_offsets = offsets;
      if (level_max < 0) throw InputError("--level-max must be non-negative");
      sampling.level_max = level_max;
      Lemma11Report r = check_lemma11(oca, bundle, sampling);
      json j = lemma11_to_json(oca, r);
      j["bundle"] = bundle_to_json(bundle);
      return j;
    };
  });

  std::string from_state;
  std::string to_state;
  std::size_t flat_bound = 6;
  std::size_t size_bound = 2;
  std::size_t limit = 100;
  auto* lps = app.add_subcommand("lps", "Enumerate linear path schemes between two states");
  add_oca(lps, in);
  lps->add_option("--from", from_state, "start state")->required();
  lps->add_option("--to", to_state, "end state")->required();
  lps->add_option("--flat-bound", flat_bound, "largest flat length");
  lps->add_option("--size-bound", size_bound, "largest number of starred cycles");
  lps->add_option("--limit", limit, "largest number of schemes listed");
  lps->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      auto s = oca.find_state(from_state);
      auto t = oca.find_state(to_state);
      if (!s || !t) throw InputError("unknown state in --from/--to");
      json schemes = json::array();
      std::size_t total = 0;
      for_each_lps(oca, *s, *t, flat_bound, size_bound, [&](const Lps& scheme) {
        if (total < limit) schemes.push_back(lps_to_json(oca, scheme));
        ++total;
        return true;
      });
      return json{{"from", from_state},
                  {"to", to_state},
                  {"flat_bound", flat_bound},
                  {"size_bound", size_bound},
                  {"count", total},
                  {"schemes", schemes}};
    };
  });

  auto* validate_cmd = app.add_subcommand("validate", "Check the automaton's well-formedness");
  add_oca(validate_cmd, in);
  validate_cmd->callback([&] {
    action = [&] {
      apply_job(in);
      Oca oca = load(in);
      auto ds = validate(oca);
      if (!ds.empty()) verdict_exit = kInputError;
      return json{{"valid", ds.empty()},
                  {"states", oca.num_states()},
                  {"diagnostics", diagnostics_to_json(ds)}};
    };
  });

  std::vector<const char*> argv{"ocasync"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    out << error_json("usage", e.what()).dump(2) << "\n";
    return kInputError;
  }

  try {
    json j = action();
    j["command"] = app.get_subcommands().front()->get_name();
    out << j.dump(2) << "\n";
    return verdict_exit;
  } catch (const ParseError& e) {
    json j = error_json("parse", e.what());
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
    j["error"]["expected"] = e.expected();
    err << e.what() << "\n";
    out << j.dump(2) << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << e.what() << "\n";
    out << error_json("input", e.what()).dump(2) << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    out << error_json("budget", e.what()).dump(2) << "\n";
    return kBudgetExceeded;
  } catch (const StepCapExceeded& e) {
    err << e.what() << "\n";
    json j = error_json("step_cap", e.what());
    j["error"]["horizon"] = e.horizon();
    out << j.dump(2) << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    out << error_json("internal", e.what()).dump(2) << "\n";
    return kInvariantFailure;
  }
}

}  // namespace ocasync::cli

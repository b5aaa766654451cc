#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocasync/formula.hpp"
#include "ocasync/kripke.hpp"
#include "ocasync/oca.hpp"
#include "ocasync/oracle.hpp"
#include "ocasync/periodicity.hpp"
#include "ocasync/upset.hpp"

namespace ocasync {

enum class ModeKind { kPaper, kSupplied, kEmpirical };

struct Mode {
  ModeKind kind = ModeKind::kEmpirical;
  // kSupplied: periodic for v >= t.
  Counter t = 0;
  Counter p = 1;
  // kEmpirical: oracle caps and the mined range v in [0..v_cap].
  OracleCaps caps{};
  Counter v_cap = 30;
  // kPaper: UA bundle parameter.
  std::optional<std::int64_t> b_override;

  static Mode paper(std::optional<std::int64_t> b = std::nullopt);
  static Mode supplied(Counter t, Counter p);
  static Mode empirical(OracleCaps caps = {}, Counter v_cap = 30);
};

const char* mode_name(ModeKind k);

struct CheckOptions {
  std::size_t node_budget = 1'000'000;
  Quotient quotient = Quotient::kRepresentative;
  SyncOptions sync{};
};

struct ConstantsUsed {
  ModeKind mode = ModeKind::kEmpirical;
  // Pair the Kripke structure was unfolded at (v >= t convention, after
  // raising t above the initial counter).
  Counter t = 0;
  Counter p = 1;
  // kPaper: closed-form rows (strict convention). Left empty otherwise.
  std::vector<SubformulaConstants> closed_form;
  // kEmpirical: mined pair per subformula text.
  std::map<std::string, std::pair<Counter, Counter>> mined;
  std::optional<Counter> sampling_range;
  std::optional<OracleCaps> sampling_caps;
};

struct CheckResult {
  bool holds = false;
  std::optional<std::size_t> witness_k;  // top-level UA/UE only
  std::map<std::string, UpSet> per_state;  // state name -> Sat of the formula
  // subformula text -> state name -> Sat
  std::map<std::string, std::map<std::string, UpSet>> per_subformula;
  ConstantsUsed constants;
  std::vector<std::string> caveats;
  std::size_t kripke_nodes = 0;
};

// Throws InputError on unbound atoms or unusable constants, BudgetExceeded
// when the unfolding exceeds the node budget or mining finds no pair.
CheckResult check_oca(const Oca& oca, const Formula& f, const Configuration& init,
                      const Mode& mode, const CheckOptions& opts = {});

// The pair check_oca would unfold at for initial counters up to max_init.
ConstantsUsed resolve_constants(const Oca& oca, const Formula& f, const Mode& mode,
                                Counter max_init, const CheckOptions& opts = {});

enum class Agreement { kAgree, kDisagree, kOracleUnknown };
const char* agreement_name(Agreement a);

struct CrossCheckRow {
  Configuration init;
  bool checker = false;
  Tri oracle = Tri::kUnknown;
  Agreement agreement = Agreement::kOracleUnknown;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t unknown = 0;
  ConstantsUsed constants;
  std::vector<std::string> caveats;
};

// One unfolding covers every init; the oracle runs at `caps`.
CrossCheckReport cross_check(const Oca& oca, const Formula& f,
                             const std::vector<Configuration>& inits, const Mode& mode,
                             OracleCaps caps, const CheckOptions& opts = {});

}  // namespace ocasync

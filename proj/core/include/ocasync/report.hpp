#pragma once

#include <nlohmann/json.hpp>

#include "ocasync/bigint.hpp"
#include "ocasync/lps.hpp"
#include "ocasync/mc.hpp"
#include "ocasync/oca.hpp"
#include "ocasync/oracle.hpp"
#include "ocasync/periodicity.hpp"

namespace ocasync {

// JSON encoders shared by the command-line reports. Objects use sorted keys.

inline constexpr std::size_t kMaxPrintedBits = 4096;

// {"bits": n, "value": "<decimal>"}; value omitted above kMaxPrintedBits.
nlohmann::json big_to_json(const BigInt& x);
nlohmann::json config_to_json(const Oca& oca, const Configuration& c);
nlohmann::json tp_to_json(const TpPair& p);
nlohmann::json bundle_to_json(const ConstantBundle& b);
nlohmann::json constants_used_to_json(const ConstantsUsed& c);
nlohmann::json check_result_to_json(const CheckResult& r);
nlohmann::json cross_check_to_json(const Oca& oca, const CrossCheckReport& r);
nlohmann::json lps_to_json(const Oca& oca, const Lps& scheme);
nlohmann::json lemma11_to_json(const Oca& oca, const Lemma11Report& r);
nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& ds);
nlohmann::json tri_table_to_json(const std::vector<Tri>& table);

}  // namespace ocasync

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ocasync/oca.hpp"

namespace ocasync {

// Text format:
//   states: s, t
//   atoms: p, q
//   label t = {p}
//   s -[>0,-1]-> s
//   s -[=0,0]-> t
// '#' starts a comment. Throws ParseError with a 1-based position.
Oca parse_oca_dsl(const std::string& text);
std::string print_oca_dsl(const Oca& oca);

// {"states":[..], "atoms":[..], "labels":{"t":["p"]},
//  "transitions":[{"src":"s","guard":"=0","effect":0,"dst":"t"}]}
Oca oca_from_json(const nlohmann::json& j);
nlohmann::json oca_to_json(const Oca& oca);

// Picks JSON when the first non-blank character is '{'.
Oca parse_oca(const std::string& text);
Oca load_oca_file(const std::string& path);

}  // namespace ocasync

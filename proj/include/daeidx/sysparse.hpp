#pragma once

#include <string>

#include <json.hpp>

#include "daeidx/sysmodel.hpp"

namespace daeidx {

// Expression grammar (whitespace-insensitive except inside literals):
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' INT)?                 -- bare non-negative integer
//   atom   := NUMBER | jetvar | '(' expr ')'
//   jetvar := IDENT ('\''* | '^(' INT ')')    -- u1'', u1^(4)
//   NUMBER := digits ('/' digits)?            -- rational literal, no spaces
// No implicit multiplication. Over Q(t) the identifier t is the field
// generator; elsewhere it is reserved. Errors carry 1-based positions.
DiffPoly parse_expression(const std::string& text, const DaeSystem& sys, bool allow_y = false);

// a single jet variable in the same syntax (for CLI --target/--basis)
JetVar parse_jetvar(const std::string& text, const DaeSystem& sys, bool allow_y = true);

// system files: {"format_version":1, "field":"Q"|"Q(t)", "x":[...], "u":[...],
// "f":[...], "g":[...]} with an optional "parameters" list
DaeSystem load_system(const std::string& json_text);
DaeSystem load_system_file(const std::string& path);
nlohmann::ordered_json emit_system(const DaeSystem& sys);

}  // namespace daeidx

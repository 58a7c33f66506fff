#pragma once

#include <string>

#include "bei/families.hpp"

namespace bei {

// Expression language:
//   expr    := atom | ('circ' | 'star') '(' operand ',' operand ')'
//   operand := expr ('@' INT)?
//   atom    := 'K' '(' INT ')' | 'path' '(' INT ')' | 'Fp' '(' INT ')'
//            | 'fan' '(' INT (';' key '=' value)* ')'
// Fan keys: W (list of lists of base vertices), a (list of lists of clique
// sizes, required together with W), marks (list of leaf labels). Whitespace is
// free. Parse errors carry "line L col C: ..." messages.
ExprPtr parse_expr(const std::string& text);

// Canonical text form; parsing it back reproduces the expression, and
// re-emitting yields the identical string.
std::string emit_expr(const ExprPtr& expr);

} // namespace bei

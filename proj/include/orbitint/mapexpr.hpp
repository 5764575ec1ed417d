#pragma once

#include <string>

#include "orbitint/ratmap.hpp"

namespace orbitint {

// Parses an arithmetic expression over the rational function field Q(z) and
// normalizes it into a rational_map.  Grammar: integer literals, the variable
// z, binary + - * /, ^ with a nonnegative integer exponent, parentheses, and
// unary sign; whitespace is ignored.  Rational coefficients are written with
// the division operator (e.g. "z^2/3 + 1/2").
//
// Errors: syntax_error with the byte offset of the offending token in
// error::index(); division_by_zero_polynomial (a divisor that is identically
// zero); degree_too_low / zero_map when the reduced map is not a self-map of
// degree >= 2 (e.g. "z^2/z" reduces to z).
rational_map parse_map_expr(const std::string& text);

}  // namespace orbitint

#pragma once

#include <string>

#include "invk/poly.hpp"

namespace invk {

// Grammar: sums and differences of products of powers of integer literals,
// declared variables and parenthesized subexpressions. Division is allowed
// only by an integer literal (rational coefficients). No implicit
// multiplication; exponents are nonnegative integer literals.
Poly parse_poly(const std::string& text, const PolyRing& ring);

// Order spec: "grevlex" | "lex" | "glex" (all variables in declared order) or
// a ';'-separated list of blocks KIND(v1,v2,...), earlier blocks dominating.
MonomialOrder parse_order(const std::string& spec, const std::vector<std::string>& names);

}  // namespace invk

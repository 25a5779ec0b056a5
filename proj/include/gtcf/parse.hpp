#pragma once

#include "gtcf/poly.hpp"

#include <string>

namespace gtcf::algebra {

// Parses "3/4*x^2*y - (zeta + 1)*z + 2" style expressions over the ring's
// variables. Supported syntax: rational literals a/b, '^' with nonnegative
// integer exponents, '+', '-', '*', parentheses, variable identifiers and the
// literal 'zeta' over cyclotomic fields. Throws ValidationError with a
// position on malformed input or unknown identifiers.
Poly parse_poly(const RingPtr& ring, const std::string& text);

} // namespace gtcf::algebra

#pragma once

#include <string>

#include "coxglue/fp.hpp"
#include "coxglue/laurent.hpp"
#include "coxglue/ratfunc.hpp"

namespace coxglue {

// Literal grammar shared by files and the CLI: rationals like "-3/2" and
// Laurent polynomials like "u^-1 + 2 - u^3" (terms joined by +/-, caret
// exponents, implicit coefficient 1, optional '*').  The unicode minus sign
// is accepted as '-'.
LaurentPoly parse_laurent(const std::string& text);
Rat parse_rational(const std::string& text);

// Coercions into the concrete field kinds.
Rat to_rational(const LaurentPoly& p);      // requires a constant
Fp to_prime_field(const LaurentPoly& p, std::int64_t prime);
RatFunc to_rational_function(const LaurentPoly& p);

std::string rat_str(const Rat& q);

}  // namespace coxglue

#pragma once

#include <random>
#include <vector>

#include "coxglue/fp.hpp"
#include "coxglue/numeric.hpp"

namespace coxglue {

// Dense polynomial over a prime field: coefficient of x^i at index i, and no
// trailing zero (the zero polynomial is the empty vector).
using FpPoly = std::vector<Fp>;

FpPoly fp_poly_trim(FpPoly f);
int fp_poly_deg(const FpPoly& f);  // -1 for the zero polynomial
FpPoly fp_poly_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_poly_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_poly_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_poly_monic(const FpPoly& f);
// Remainder of a modulo b (b nonzero).
FpPoly fp_poly_mod(const FpPoly& a, const FpPoly& b);
// Exact quotient a / b; fails if the division leaves a remainder.
FpPoly fp_poly_div_exact(const FpPoly& a, const FpPoly& b);
FpPoly fp_poly_gcd(FpPoly a, FpPoly b);  // monic (or zero)
FpPoly fp_poly_derivative(const FpPoly& f);
// base^e modulo m, with an arbitrarily large exponent.
FpPoly fp_poly_powmod(const FpPoly& base, Int e, const FpPoly& m);

// Full factorization into monic irreducibles with multiplicities
// (squarefree split, distinct-degree split, Cantor--Zassenhaus equal-degree
// split).  Requires an odd modulus.  Deterministic for a fixed generator
// state.
std::vector<std::pair<FpPoly, int>> fp_poly_factor(const FpPoly& f,
                                                   std::mt19937& rng);

}  // namespace coxglue

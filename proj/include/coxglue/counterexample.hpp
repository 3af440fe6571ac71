#pragma once

#include <optional>
#include <string>

#include "coxglue/coxeter.hpp"
#include "coxglue/laurent.hpp"
#include "coxglue/matrix.hpp"

namespace coxglue {

// The sixth cyclotomic polynomial u^2 - u + 1; all root-of-unity residues
// below are taken modulo this.
LaurentPoly phi6();

// |W| x |W| matrix with entry (w, w') = (-u)^{l(w' w^{-1})}, rows and
// columns indexed by element order.  Always symmetric, diagonal all 1.
Matrix<LaurentPoly> length_sign_matrix(const CoxeterSystem& sys);

// Poincare polynomial sum_w u^{l(w)}, or the signed variant
// sum_w (-u)^{l(w)}.
LaurentPoly poincare_poly(const CoxeterSystem& sys, bool use_sign);

// Poincare polynomial prod_i (1 - u^{e_i}) of the ambient reductive group,
// from the built-in exponent table (order 2: exponents {2}; order 6:
// exponents {2, 3}).  Empty for any other group.
std::optional<LaurentPoly> group_poincare(const CoxeterSystem& sys);

// Outcome of the divisibility and residue analysis of the matrix equation
// M * E = p * I over Z[u, 1/u], where M is the length-sign matrix and E is
// an unknown integral matrix.
struct ObstructionReport {
  std::string label;            // human-readable system description
  LaurentPoly poincare;         // sum_w u^{l(w)}
  LaurentPoly signed_poincare;  // sum_w (-u)^{l(w)}
  LaurentPoly det_m;            // determinant of the length-sign matrix
  bool divisible_by_poincare = false;
  bool divisible_by_signed = false;
  // det_m / (poincare * signed_poincare) when both divide, zero otherwise.
  LaurentPoly residual_factor;
  LaurentPoly det_mod_phi6;
  std::optional<LaurentPoly> group_poly;      // p, when known or supplied
  std::optional<LaurentPoly> group_mod_phi6;  // residue of p
  // False when the residues rule the equation out (det_m vanishes mod phi6
  // while p does not); true when this obstruction is absent; empty when no
  // group polynomial is available.
  std::optional<bool> solvable;
};

// Builds the length-sign matrix, takes its determinant, divides out the two
// character factors (the unsigned and signed Poincare polynomials), and
// reduces both the determinant and the group polynomial modulo phi6.  The
// group polynomial comes from the built-in table unless supplied.
// Throws CapExceeded when the group order exceeds 48.
ObstructionReport divisibility_analysis(
    const CoxeterSystem& sys,
    std::optional<LaurentPoly> group_poly = std::nullopt);

// True iff M * e_table == p * I for the length-sign matrix M of sys.
// Throws SizeMismatch unless e_table is square of size the group order.
bool euler_consistency(const CoxeterSystem& sys,
                       const Matrix<LaurentPoly>& e_table,
                       const LaurentPoly& p);

}  // namespace coxglue

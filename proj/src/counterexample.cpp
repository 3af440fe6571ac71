#include "coxglue/counterexample.hpp"

#include <cstdint>
#include <utility>
#include <vector>

#include "coxglue/error.hpp"

namespace coxglue {

LaurentPoly phi6() {
  return LaurentPoly::u(2) - LaurentPoly::u(1) + LaurentPoly(1);
}

namespace {

// (-u)^l
LaurentPoly signed_power(int l) {
  return LaurentPoly::u(l, l % 2 == 0 ? Rat(1) : Rat(-1));
}

}  // namespace

Matrix<LaurentPoly> length_sign_matrix(const CoxeterSystem& sys) {
  const std::size_t n = sys.order();
  Matrix<LaurentPoly> m = Matrix<LaurentPoly>::zero_like(n, n, LaurentPoly());
  for (std::size_t r = 0; r < n; ++r) {
    const Elt winv = sys.inv(sys.element(static_cast<std::uint32_t>(r)));
    for (std::size_t c = 0; c < n; ++c) {
      const Elt g = sys.mul(sys.element(static_cast<std::uint32_t>(c)), winv);
      m(r, c) = signed_power(sys.length(g));
    }
  }
  return m;
}

LaurentPoly poincare_poly(const CoxeterSystem& sys, bool use_sign) {
  LaurentPoly p;
  for (std::size_t i = 0; i < sys.order(); ++i) {
    const int l = sys.length(sys.element(static_cast<std::uint32_t>(i)));
    p += use_sign ? signed_power(l) : LaurentPoly::u(l);
  }
  return p;
}

std::optional<LaurentPoly> group_poincare(const CoxeterSystem& sys) {
  std::vector<int> exponents;
  if (sys.order() == 2) {
    exponents = {2};
  } else if (sys.order() == 6) {
    exponents = {2, 3};
  } else {
    return std::nullopt;
  }
  LaurentPoly p(1);
  for (int e : exponents) p *= LaurentPoly(1) - LaurentPoly::u(e);
  return p;
}

ObstructionReport divisibility_analysis(
    const CoxeterSystem& sys, std::optional<LaurentPoly> group_poly) {
  require(sys.order() <= 48, "CapExceeded",
          "determinant analysis is capped at group order 48, got order " +
              std::to_string(sys.order()));
  ObstructionReport rep;
  rep.label = "rank " + std::to_string(sys.rank()) + ", order " +
              std::to_string(sys.order());
  rep.poincare = poincare_poly(sys, false);
  rep.signed_poincare = poincare_poly(sys, true);
  rep.det_m = det(length_sign_matrix(sys));

  const auto [q1, r1] = poly_divrem(rep.det_m, rep.poincare);
  rep.divisible_by_poincare = r1.is_zero();
  if (rep.divisible_by_poincare) {
    const auto [q2, r2] = poly_divrem(q1, rep.signed_poincare);
    rep.divisible_by_signed = r2.is_zero();
    if (rep.divisible_by_signed) rep.residual_factor = q2;
  } else {
    rep.divisible_by_signed = poly_divides(rep.signed_poincare, rep.det_m);
  }

  rep.det_mod_phi6 = reduce_mod(rep.det_m, phi6());
  if (!group_poly) group_poly = group_poincare(sys);
  if (group_poly) {
    rep.group_poly = *group_poly;
    rep.group_mod_phi6 = reduce_mod(*group_poly, phi6());
    // A solution E would force det(M) * det(E) = p^|W| with det(E) integral,
    // which is impossible exactly when phi6 divides det(M) but not p.
    rep.solvable =
        !(rep.det_mod_phi6.is_zero() && !rep.group_mod_phi6->is_zero());
  }
  return rep;
}

bool euler_consistency(const CoxeterSystem& sys,
                       const Matrix<LaurentPoly>& e_table,
                       const LaurentPoly& p) {
  const std::size_t n = sys.order();
  require(e_table.rows() == n && e_table.cols() == n, "SizeMismatch",
          "candidate table must be " + std::to_string(n) + " x " +
              std::to_string(n));
  const Matrix<LaurentPoly> m = length_sign_matrix(sys);
  const Matrix<LaurentPoly> want =
      p * Matrix<LaurentPoly>::identity(n, LaurentPoly());
  return m * e_table == want;
}

}  // namespace coxglue

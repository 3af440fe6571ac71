#include "coxglue/ratfunc.hpp"

namespace coxglue {

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  // Push unit factors u^k into the numerator.
  const int k = num_.low() - den_.low();
  LaurentPoly n = num_.shifted(-num_.low());
  LaurentPoly d = den_.shifted(-den_.low());
  LaurentPoly g = poly_gcd(n, d);
  if (g != LaurentPoly(1)) {
    n = poly_divrem(n, g).first;
    d = poly_divrem(d, g).first;
  }
  const Rat lead = d.coeff(d.high());
  if (lead != 1) {
    LaurentPoly inv(Rat(1) / lead);
    n *= inv;
    d *= inv;
  }
  num_ = n.shifted(k);
  den_ = d;
}

Rat RatFunc::evaluate(const Rat& q) const {
  auto eval = [&](const LaurentPoly& p) {
    Rat acc(0);
    for (auto& [e, c] : p.terms()) {
      require(e >= 0 || q != 0, "DivisionByZero", "negative power at u=0");
      Rat t = c;
      int n = e >= 0 ? e : -e;
      for (int i = 0; i < n; ++i) t = e >= 0 ? t * q : t / q;
      acc += t;
    }
    return acc;
  };
  Rat d = eval(den_);
  require(d != 0, "SpecializationPole", "denominator vanishes at u=" + q.str());
  return eval(num_) / d;
}

}  // namespace coxglue

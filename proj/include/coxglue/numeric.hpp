#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "coxglue/error.hpp"

namespace coxglue {

namespace mp = boost::multiprecision;

// Arbitrary-precision integers and rationals. Expression templates are kept
// off so values behave like ordinary scalars inside generic code.
using Int = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rat = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

// boost's (num, den) constructor rejects negative denominators; division
// normalizes (gcd reduced, denominator positive), so always build through it.
inline Rat make_rat(const Int& num, const Int& den) {
  require(den != 0, "ZeroDenominator", "rational with zero denominator");
  return Rat(num) / Rat(den);
}

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline Int int_gcd(const Int& a, const Int& b) { return mp::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return mp::lcm(a, b); }

}  // namespace coxglue

#pragma once

#include <map>
#include <string>
#include <utility>

#include "coxglue/error.hpp"
#include "coxglue/numeric.hpp"

namespace coxglue {

// Laurent polynomial in one variable u with rational coefficients.
// Support is finite, exponents may be negative, and no zero coefficient is
// ever stored, so equality is structural.
class LaurentPoly {
public:
  LaurentPoly() = default;
  /*implicit*/ LaurentPoly(const Rat& c) {
    if (c != 0) c_[0] = c;
  }
  /*implicit*/ LaurentPoly(long n) : LaurentPoly(Rat(n)) {}

  static LaurentPoly u(int exp = 1, const Rat& coeff = Rat(1)) {
    LaurentPoly p;
    if (coeff != 0) p.c_[exp] = coeff;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
  }
  bool is_ordinary() const { return c_.empty() || c_.begin()->first >= 0; }

  // lowest/highest exponent with nonzero coefficient; zero poly has none.
  int low() const {
    require(!c_.empty(), "EmptySupport", "low() of zero polynomial");
    return c_.begin()->first;
  }
  int high() const {
    require(!c_.empty(), "EmptySupport", "high() of zero polynomial");
    return c_.rbegin()->first;
  }

  Rat coeff(int exp) const {
    auto it = c_.find(exp);
    return it == c_.end() ? Rat(0) : it->second;
  }
  Rat constant_value() const {
    require(is_constant(), "NotConstant", "polynomial is not a constant");
    return coeff(0);
  }
  const std::map<int, Rat>& terms() const { return c_; }

  // u^k * this
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (auto& [e, c] : c_) r.c_[e + k] = c;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (auto& [e, c] : b.c_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (auto& [e, c] : b.c_) r.add_term(e, -c);
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (auto& [e, c] : c_) r.c_[e] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [ea, ca] : a.c_)
      for (auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }

  std::string str() const;

private:
  void add_term(int e, const Rat& c) {
    auto it = c_.find(e);
    if (it == c_.end()) {
      if (c != 0) c_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  std::map<int, Rat> c_;
};

// a = q*b + r where, once both sides are shifted to ordinary polynomials,
// deg r < deg b.  q and r stay in the Laurent ring (u^k factors of a and b
// are units and end up in q).
std::pair<LaurentPoly, LaurentPoly> poly_divrem(const LaurentPoly& a,
                                                const LaurentPoly& b);

// Monic representative of gcd, computed on the ordinary parts (u^k factors
// are units and are dropped).  gcd(0,0) = 0.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

// True iff b divides a in the Laurent ring (zero remainder).
bool poly_divides(const LaurentPoly& b, const LaurentPoly& a);

// Canonical residue of a modulo the ordinary polynomial m, of degree
// < deg m.  Negative powers of a are cleared by u^k first; this is only
// possible when u is invertible mod m, i.e. m(0) != 0, and the residue is
// then mapped back through u^{-k} so it represents a itself.
LaurentPoly reduce_mod(const LaurentPoly& a, const LaurentPoly& m);

}  // namespace coxglue

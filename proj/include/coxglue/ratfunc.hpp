#pragma once

#include <string>

#include "coxglue/laurent.hpp"

namespace coxglue {

// Element of Q(u), stored as num/den with den an ordinary monic polynomial,
// den(0) != 0 (powers of u are units and live in num), and gcd(num,den) = 1.
// The representation is canonical, so equality is structural.
class RatFunc {
public:
  RatFunc() = default;
  /*implicit*/ RatFunc(const LaurentPoly& p) : num_(p), den_(1) {}
  /*implicit*/ RatFunc(const Rat& c) : num_(c), den_(1) {}
  /*implicit*/ RatFunc(long n) : num_(Rat(n)), den_(1) {}
  RatFunc(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
    require(!den.is_zero(), "DivisionByZero", "rational function with zero denominator");
    normalize();
  }

  static RatFunc u(int exp = 1) { return RatFunc(LaurentPoly::u(exp)); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == LaurentPoly(1); }

  static RatFunc zero(const RatFunc&) { return RatFunc(); }
  static RatFunc one(const RatFunc&) { return RatFunc(1); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    require(!b.is_zero(), "DivisionByZero", "rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const { return RatFunc(1) / *this; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // Evaluation at u = q.  Fails on poles and on q = 0 with negative powers.
  Rat evaluate(const Rat& q) const;

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

private:
  void normalize();

  LaurentPoly num_;
  LaurentPoly den_{1};
};

}  // namespace coxglue

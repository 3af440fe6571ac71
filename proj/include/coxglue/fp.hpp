#pragma once

#include <cstdint>
#include <string>

#include "coxglue/error.hpp"
#include "coxglue/numeric.hpp"

namespace coxglue {

// Prime field element. Each value carries its modulus; a default-constructed
// element is a modulus-free zero that adopts the modulus of whatever it meets,
// which lets generic matrix code build zeros without a field context.
class Fp {
public:
  Fp() = default;
  Fp(std::int64_t value, std::int64_t p) : p_(p) {
    require(p > 1, "BadModulus", "modulus must exceed 1");
    v_ = value % p;
    if (v_ < 0) v_ += p;
  }

  static bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  static Fp zero(const Fp& like) { return like.p_ ? Fp(0, like.p_) : Fp(); }
  static Fp one(const Fp& like) {
    require(like.p_ != 0, "BadModulus", "cannot make 1 without a modulus");
    return Fp(1, like.p_);
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::int64_t p = joint(a, b);
    if (!p) return Fp();
    std::int64_t s = a.v_ + b.v_;
    if (s >= p) s -= p;
    return Fp(s, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::int64_t p = joint(a, b);
    if (!p) return Fp();
    std::int64_t s = a.v_ - b.v_;
    if (s < 0) s += p;
    return Fp(s, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::int64_t p = joint(a, b);
    if (!p) return Fp();
    return Fp(static_cast<std::int64_t>(
                  (static_cast<__int128>(a.v_) * b.v_) % p),
              p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return p_ ? Fp(p_ - v_, p_) : Fp(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp inverse() const {
    require(p_ != 0 && v_ != 0, "DivisionByZero", "inverse of 0 mod p");
    // extended Euclid
    std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
    while (a > 1) {
      std::int64_t q = a / m;
      std::int64_t t = a % m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    // a == gcd(v, p) == 1 since p is prime and v != 0
    std::int64_t r = x0 % p_;
    if (r < 0) r += p_;
    return Fp(r, p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.v_ == 0 && b.v_ == 0) return true;
    return joint(a, b) && a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  std::string str() const { return std::to_string(v_); }

private:
  static std::int64_t joint(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_) {
      require(a.p_ == b.p_, "KindMismatch", "mixed prime fields");
      return a.p_;
    }
    return a.p_ ? a.p_ : b.p_;
  }

  std::int64_t v_{0};
  std::int64_t p_{0};
};

}  // namespace coxglue

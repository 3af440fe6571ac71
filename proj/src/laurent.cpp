#include "coxglue/laurent.hpp"

#include <sstream>
#include <vector>

namespace coxglue {

namespace {

// Dense ordinary-polynomial view: coefficients[0..deg], trailing zeros trimmed.
std::vector<Rat> dense(const LaurentPoly& p) {
  std::vector<Rat> c;
  if (p.is_zero()) return c;
  c.assign(static_cast<size_t>(p.high() - p.low()) + 1, Rat(0));
  for (auto& [e, v] : p.terms()) c[static_cast<size_t>(e - p.low())] = v;
  return c;
}

LaurentPoly from_dense(const std::vector<Rat>& c, int shift) {
  LaurentPoly r;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) r += LaurentPoly::u(static_cast<int>(i) + shift, c[i]);
  return r;
}

void trim(std::vector<Rat>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Ordinary long division A = Q*B + R, deg R < deg B.
void divrem_dense(std::vector<Rat> a, const std::vector<Rat>& b,
                  std::vector<Rat>& q, std::vector<Rat>& r) {
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  const Rat lead = b.back();
  while (a.size() >= b.size()) {
    Rat f = a.back() / lead;
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();  // leading term cancelled exactly
    trim(a);
    if (a.empty()) break;
  }
  r = a;
  trim(q);
}

// Dense view anchored at exponent 0; requires an ordinary polynomial.
std::vector<Rat> dense_from_zero(const LaurentPoly& p) {
  std::vector<Rat> c;
  if (p.is_zero()) return c;
  c.assign(static_cast<size_t>(p.high()) + 1, Rat(0));
  for (auto& [e, v] : p.terms()) c[static_cast<size_t>(e)] = v;
  return c;
}

// True ordinary-polynomial remainder: no unit factors stripped from either side.
LaurentPoly ordinary_mod(const LaurentPoly& a, const LaurentPoly& m) {
  if (a.is_zero()) return LaurentPoly();
  std::vector<Rat> A = dense_from_zero(a), M = dense_from_zero(m), Q, R;
  divrem_dense(A, M, Q, R);
  return from_dense(R, 0);
}

}  // namespace

std::pair<LaurentPoly, LaurentPoly> poly_divrem(const LaurentPoly& a,
                                                const LaurentPoly& b) {
  require(!b.is_zero(), "DivisionByZero", "poly_divrem by zero");
  if (a.is_zero()) return {LaurentPoly(), LaurentPoly()};
  const int alpha = a.low(), beta = b.low();
  std::vector<Rat> A = dense(a), B = dense(b), Q, R;
  divrem_dense(A, B, Q, R);
  // a = u^alpha A = u^(alpha-beta) Q * b + u^alpha R
  return {from_dense(Q, alpha - beta), from_dense(R, alpha)};
}

bool poly_divides(const LaurentPoly& b, const LaurentPoly& a) {
  if (a.is_zero()) return true;
  return poly_divrem(a, b).second.is_zero();
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  std::vector<Rat> A = dense(a), B = dense(b);
  while (!B.empty()) {
    std::vector<Rat> Q, R;
    divrem_dense(A, B, Q, R);
    A = std::move(B);
    B = std::move(R);
  }
  if (A.empty()) return LaurentPoly();
  Rat lead = A.back();
  for (auto& c : A) c /= lead;
  return from_dense(A, 0);
}

LaurentPoly reduce_mod(const LaurentPoly& a, const LaurentPoly& m) {
  require(!m.is_zero(), "ZeroModulus", "reduction modulo zero");
  require(m.low() >= 0, "BadModulus", "modulus must be an ordinary polynomial");
  if (a.is_zero()) return LaurentPoly();

  const int k = a.low() < 0 ? -a.low() : 0;
  LaurentPoly r = ordinary_mod(a.shifted(k), m);  // u^k a mod m
  if (k > 0) {
    // Map back through u^{-k}.  u is invertible mod m iff m(0) != 0, and then
    // u * (-(m - m(0)) / (u m(0))) = 1 mod m since m = 0 in the quotient.
    const Rat m0 = m.coeff(0);
    require(m0 != 0, "UnitObstruction",
            "negative powers present but u is not invertible mod m");
    LaurentPoly uinv = (m.coeff(0) - m).shifted(-1) * LaurentPoly(Rat(1) / m0);
    for (int i = 0; i < k; ++i) r = ordinary_mod(r * uinv, m);
  }
  return r;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto& [e, c] : c_) {
    Rat v = c;
    if (first) {
      if (v < 0) {
        out << "-";
        v = -v;
      }
    } else {
      out << (v < 0 ? "-" : "+");
      if (v < 0) v = -v;
    }
    first = false;
    const bool unit_coeff = (v == 1 && e != 0);
    if (!unit_coeff) {
      out << rat_num(v);
      if (rat_den(v) != 1) out << "/" << rat_den(v);
    }
    if (e != 0) {
      out << "u";
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

}  // namespace coxglue

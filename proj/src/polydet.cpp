#include "coxglue/matrix.hpp"

namespace coxglue {

namespace {

// Ordinary integer polynomial, dense coefficients, no trailing zeros.
using ZPoly = std::vector<Int>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

// Exact division in Z[u]; the quotient is known to be integral (Bareiss
// entries are minors), so every coefficient step divides exactly.
ZPoly zdiv_exact(ZPoly a, const ZPoly& b) {
  require(!b.empty(), "DivisionByZero", "exact division by zero polynomial");
  if (a.empty()) return {};
  require(a.size() >= b.size(), "Internal", "non-exact polynomial division");
  ZPoly q(a.size() - b.size() + 1, Int(0));
  while (a.size() >= b.size()) {
    Int c = a.back() / b.back();
    require(c * b.back() == a.back(), "Internal", "non-exact coefficient division");
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    require(a.back() == 0, "Internal", "non-exact polynomial division");
    a.pop_back();
    ztrim(a);
    if (a.empty()) break;
  }
  require(a.empty(), "Internal", "non-exact polynomial division");
  return q;
}

}  // namespace

LaurentPoly det(const Matrix<LaurentPoly>& m) {
  require(m.rows() == m.cols(), "NotSquare", "determinant of non-square matrix");
  const size_t n = m.rows();
  if (n == 0) fail("EmptyMatrix", "determinant of 0x0 matrix");

  // Clear each row to Z[u]: factor out u^(min exponent) and the lcm of the
  // coefficient denominators, tracking the combined unit so Bareiss can run
  // fraction-free over plain integer polynomials.
  int ushift = 0;
  Rat scale(1);
  std::vector<std::vector<ZPoly>> a(n, std::vector<ZPoly>(n));
  for (size_t i = 0; i < n; ++i) {
    bool all_zero = true;
    int emin = 0;
    Int den(1);
    for (size_t j = 0; j < n; ++j) {
      const LaurentPoly& e = m(i, j);
      if (e.is_zero()) continue;
      emin = all_zero ? e.low() : std::min(emin, e.low());
      all_zero = false;
      for (auto& [exp, c] : e.terms()) den = int_lcm(den, rat_den(c));
    }
    if (all_zero) return LaurentPoly();
    ushift += emin;
    scale /= Rat(den);
    for (size_t j = 0; j < n; ++j) {
      const LaurentPoly& e = m(i, j);
      if (e.is_zero()) continue;
      ZPoly p(static_cast<size_t>(e.high() - emin) + 1, Int(0));
      for (auto& [exp, c] : e.terms()) {
        Rat v = c * Rat(den);
        p[static_cast<size_t>(exp - emin)] = rat_num(v);
      }
      a[i][j] = p;
    }
  }

  bool negate = false;
  ZPoly prev{Int(1)};
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].empty()) {
      size_t swap_with = n;
      for (size_t i = k + 1; i < n && swap_with == n; ++i)
        if (!a[i][k].empty()) swap_with = i;
      if (swap_with == n) return LaurentPoly();
      std::swap(a[k], a[swap_with]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        ZPoly num = zsub(zmul(a[k][k], a[i][j]), zmul(a[i][k], a[k][j]));
        a[i][j] = num.empty() ? num : zdiv_exact(std::move(num), prev);
      }
      a[i][k].clear();
    }
    prev = a[k][k];
  }

  LaurentPoly d;
  const ZPoly& last = a[n - 1][n - 1];
  for (size_t i = 0; i < last.size(); ++i)
    if (last[i] != 0)
      d += LaurentPoly::u(static_cast<int>(i), Rat(last[i]));
  d = d.shifted(ushift) * LaurentPoly(negate ? -scale : scale);
  return d;
}

}  // namespace coxglue

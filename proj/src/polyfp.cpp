#include "coxglue/polyfp.hpp"

#include <algorithm>
#include <utility>

#include "coxglue/error.hpp"

namespace coxglue {

FpPoly fp_poly_trim(FpPoly f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  return f;
}

int fp_poly_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly fp_poly_add(const FpPoly& a, const FpPoly& b) {
  FpPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += b[i];
  }
  return fp_poly_trim(std::move(out));
}

FpPoly fp_poly_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] -= b[i];
  }
  return fp_poly_trim(std::move(out));
}

FpPoly fp_poly_mul(const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, Fp::zero(a[0] + b[0]));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return fp_poly_trim(std::move(out));
}

FpPoly fp_poly_monic(const FpPoly& f) {
  if (f.empty()) return f;
  const Fp inv = f.back().inverse();
  FpPoly out = f;
  for (Fp& c : out) c *= inv;
  return out;
}

namespace {

// In-place remainder; returns the quotient.
FpPoly divmod_in_place(FpPoly& a, const FpPoly& b) {
  require(!b.empty(), "DivisionByZero", "polynomial division by zero");
  if (a.size() < b.size()) return {};
  const Fp lead_inv = b.back().inverse();
  FpPoly q(a.size() - b.size() + 1, Fp::zero(b.back()));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Fp c = a[k + b.size() - 1] * lead_inv;
    if (c.is_zero()) continue;
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  a = fp_poly_trim(std::move(a));
  return fp_poly_trim(std::move(q));
}

}  // namespace

FpPoly fp_poly_mod(const FpPoly& a, const FpPoly& b) {
  FpPoly r = a;
  divmod_in_place(r, b);
  return r;
}

FpPoly fp_poly_div_exact(const FpPoly& a, const FpPoly& b) {
  FpPoly r = a;
  FpPoly q = divmod_in_place(r, b);
  require(r.empty(), "Internal", "polynomial division was not exact");
  return q;
}

FpPoly fp_poly_gcd(FpPoly a, FpPoly b) {
  a = fp_poly_trim(std::move(a));
  b = fp_poly_trim(std::move(b));
  while (!b.empty()) {
    FpPoly r = fp_poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_poly_monic(a);
}

FpPoly fp_poly_derivative(const FpPoly& f) {
  if (f.size() < 2) return {};
  FpPoly out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i)
    out[i - 1] = f[i] * Fp(static_cast<std::int64_t>(i), f[i].modulus());
  return fp_poly_trim(std::move(out));
}

FpPoly fp_poly_powmod(const FpPoly& base, Int e, const FpPoly& m) {
  require(e >= 0, "BadIndex", "negative exponent");
  FpPoly acc = {Fp::one(m.back())};
  FpPoly b = fp_poly_mod(base, m);
  while (e > 0) {
    if ((e & 1) != 0) acc = fp_poly_mod(fp_poly_mul(acc, b), m);
    b = fp_poly_mod(fp_poly_mul(b, b), m);
    e >>= 1;
  }
  return acc;
}

namespace {

Int int_pow(std::int64_t base, int e) {
  Int out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

FpPoly random_poly(int max_deg, const Fp& like, std::mt19937& rng) {
  const std::int64_t p = like.modulus();
  FpPoly out(static_cast<std::size_t>(max_deg) + 1);
  for (Fp& c : out)
    c = Fp(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p)), p);
  return fp_poly_trim(std::move(out));
}

// Splits a squarefree monic product of irreducibles of the same degree d.
void equal_degree(const FpPoly& f, int d, std::mt19937& rng,
                  std::vector<FpPoly>& out) {
  if (fp_poly_deg(f) == d) {
    out.push_back(f);
    return;
  }
  const Fp like = f.back();
  const Int half = (int_pow(like.modulus(), d) - 1) / 2;
  for (;;) {
    FpPoly a = random_poly(fp_poly_deg(f) - 1, like, rng);
    if (fp_poly_deg(a) < 1) continue;
    FpPoly g = fp_poly_gcd(a, f);
    if (fp_poly_deg(g) == 0) {
      FpPoly b = fp_poly_powmod(a, half, f);
      if (b.empty())
        g = {};
      else {
        b[0] -= Fp::one(like);
        g = fp_poly_gcd(fp_poly_trim(std::move(b)), f);
      }
    }
    const int dg = fp_poly_deg(g);
    if (dg <= 0 || dg == fp_poly_deg(f)) continue;
    equal_degree(g, d, rng, out);
    equal_degree(fp_poly_div_exact(f, g), d, rng, out);
    return;
  }
}

// Distinct irreducible factors of a squarefree monic polynomial.
std::vector<FpPoly> squarefree_factor(FpPoly f, std::mt19937& rng) {
  std::vector<FpPoly> out;
  const Fp like = f.back();
  const std::int64_t p = like.modulus();
  FpPoly x = {Fp::zero(like), Fp::one(like)};
  FpPoly h = x;
  for (int d = 1; 2 * d <= fp_poly_deg(f); ++d) {
    h = fp_poly_powmod(h, Int(p), f);
    FpPoly g = fp_poly_gcd(fp_poly_sub(h, x), f);
    if (fp_poly_deg(g) > 0) {
      equal_degree(g, d, rng, out);
      f = fp_poly_div_exact(f, g);
      h = fp_poly_mod(h, f);
    }
  }
  if (fp_poly_deg(f) > 0) out.push_back(f);
  return out;
}

void factor_rec(const FpPoly& f, int mult,
                std::vector<std::pair<FpPoly, int>>& out, std::mt19937& rng) {
  if (fp_poly_deg(f) < 1) return;
  const Fp like = f.back();
  const std::int64_t p = like.modulus();
  FpPoly d = fp_poly_derivative(f);
  if (d.empty()) {
    // f = g(x^p) = g(x)^p over the prime field.
    FpPoly g((f.size() - 1) / static_cast<std::size_t>(p) + 1, Fp::zero(like));
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = f[i * static_cast<std::size_t>(p)];
    factor_rec(fp_poly_trim(std::move(g)), mult * static_cast<int>(p), out,
               rng);
    return;
  }
  FpPoly s = fp_poly_div_exact(f, fp_poly_gcd(f, d));
  FpPoly rest = f;
  for (const FpPoly& q : squarefree_factor(std::move(s), rng)) {
    int m = 0;
    for (;;) {
      FpPoly r = rest;
      FpPoly quo = divmod_in_place(r, q);
      if (!r.empty()) break;
      rest = std::move(quo);
      ++m;
    }
    out.emplace_back(q, mult * m);
  }
  factor_rec(rest, mult, out, rng);
}

}  // namespace

std::vector<std::pair<FpPoly, int>> fp_poly_factor(const FpPoly& f,
                                                   std::mt19937& rng) {
  FpPoly g = fp_poly_trim(f);
  require(!g.empty(), "DivisionByZero", "cannot factor the zero polynomial");
  require(g.back().modulus() % 2 == 1, "FieldTooSmall",
          "equal-degree splitting needs an odd modulus");
  std::vector<std::pair<FpPoly, int>> out;
  factor_rec(fp_poly_monic(g), 1, out, rng);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) {
              if (a.first.size() != b.first.size())
                return a.first.size() < b.first.size();
              for (std::size_t i = a.first.size(); i-- > 0;) {
                if (a.first[i].value() != b.first[i].value())
                  return a.first[i].value() < b.first[i].value();
              }
              return a.second < b.second;
            });
  return out;
}

}  // namespace coxglue

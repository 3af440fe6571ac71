#include "coxglue/algebra.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "coxglue/subspace.hpp"

namespace coxglue {

std::vector<Fp> Algebra::mul(const std::vector<Fp>& x,
                             const std::vector<Fp>& y) const {
  require(x.size() == dim && y.size() == dim, "BadShape",
          "element has the wrong length");
  std::vector<Fp> out(dim, Fp::zero(like));
  for (std::size_t a = 0; a < dim; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      if (y[b].is_zero()) continue;
      const Fp f = x[a] * y[b];
      for (std::size_t c = 0; c < dim; ++c) out[c] += f * table[a][b][c];
    }
  }
  return out;
}

Matrix<Fp> Algebra::left_mult(const std::vector<Fp>& x) const {
  Matrix<Fp> m = Matrix<Fp>::zero_like(dim, dim, like);
  for (std::size_t a = 0; a < dim; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c) m(c, b) += x[a] * table[a][b][c];
  }
  return m;
}

Matrix<Fp> Algebra::right_mult(const std::vector<Fp>& x) const {
  Matrix<Fp> m = Matrix<Fp>::zero_like(dim, dim, like);
  for (std::size_t b = 0; b < dim; ++b) {
    if (x[b].is_zero()) continue;
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t c = 0; c < dim; ++c) m(c, a) += x[b] * table[a][b][c];
  }
  return m;
}

Matrix<Fp> Algebra::basis_left_mult(std::size_t a) const {
  Matrix<Fp> m = Matrix<Fp>::zero_like(dim, dim, like);
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t c = 0; c < dim; ++c) m(c, b) = table[a][b][c];
  return m;
}

Matrix<Fp> Algebra::basis_right_mult(std::size_t a) const {
  Matrix<Fp> m = Matrix<Fp>::zero_like(dim, dim, like);
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t c = 0; c < dim; ++c) m(c, b) = table[b][a][c];
  return m;
}

Algebra Algebra::field(const Fp& like) {
  Algebra a;
  a.like = Fp::zero(like);
  a.dim = 1;
  a.table = {{{Fp::one(like)}}};
  a.unit = {Fp::one(like)};
  return a;
}

void check_algebra(const Algebra& alg) {
  require(alg.like.modulus() > 1, "BadModulus", "algebra needs a modulus");
  require(alg.table.size() == alg.dim && alg.unit.size() == alg.dim,
          "BadShape", "structure constants have the wrong shape");
  for (const auto& row : alg.table) {
    require(row.size() == alg.dim, "BadShape", "structure-constant row");
    for (const auto& v : row)
      require(v.size() == alg.dim, "BadShape", "structure-constant entry");
  }
  const Matrix<Fp> id = Matrix<Fp>::identity(alg.dim, alg.like);
  require(alg.left_mult(alg.unit) == id && alg.right_mult(alg.unit) == id,
          "DatumInvariant", "the unit does not act as the identity");
  std::vector<Matrix<Fp>> lm(alg.dim);
  for (std::size_t a = 0; a < alg.dim; ++a) lm[a] = alg.basis_left_mult(a);
  for (std::size_t a = 0; a < alg.dim; ++a)
    for (std::size_t b = 0; b < alg.dim; ++b) {
      Matrix<Fp> want = Matrix<Fp>::zero_like(alg.dim, alg.dim, alg.like);
      for (std::size_t c = 0; c < alg.dim; ++c) {
        if (alg.table[a][b][c].is_zero()) continue;
        for (std::size_t r = 0; r < alg.dim; ++r)
          for (std::size_t s = 0; s < alg.dim; ++s)
            want(r, s) += alg.table[a][b][c] * lm[c](r, s);
      }
      require(lm[a] * lm[b] == want, "AssociativityFailure",
              "basis product " + std::to_string(a) + "," + std::to_string(b) +
                  " is not associative");
    }
}

namespace {

// Incremental echelon span of row vectors.
class RowSpan {
public:
  explicit RowSpan(std::size_t width, const Fp& like)
      : width_(width), like_(like) {}

  std::size_t dim() const { return rows_.size(); }

  // Reduces v against the span; if a nonzero remainder survives, adds it and
  // returns true.
  bool add(std::vector<Fp> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Fp f = v[piv_[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < width_; ++j) v[j] -= f * rows_[i][j];
    }
    for (std::size_t j = 0; j < width_; ++j) {
      if (v[j].is_zero()) continue;
      const Fp inv = v[j].inverse();
      for (std::size_t k = 0; k < width_; ++k) v[k] *= inv;
      rows_.push_back(std::move(v));
      piv_.push_back(j);
      return true;
    }
    return false;
  }

  bool contains(std::vector<Fp> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Fp f = v[piv_[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < width_; ++j) v[j] -= f * rows_[i][j];
    }
    for (const Fp& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  const std::vector<std::vector<Fp>>& rows() const { return rows_; }

private:
  std::size_t width_;
  Fp like_;
  std::vector<std::vector<Fp>> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace

std::vector<std::size_t> generator_indices(const Algebra& alg) {
  RowSpan span(alg.dim, alg.like);
  span.add(alg.unit);
  std::vector<std::size_t> gens;
  for (std::size_t g = 0; g < alg.dim; ++g) {
    std::vector<Fp> e(alg.dim, Fp::zero(alg.like));
    e[g] = Fp::one(alg.like);
    if (span.contains(e)) continue;
    gens.push_back(g);
    // Close the span under products with the new element.
    std::vector<std::vector<Fp>> fresh = {e};
    span.add(e);
    while (!fresh.empty()) {
      std::vector<std::vector<Fp>> next;
      for (const auto& x : fresh) {
        const std::size_t upto = span.rows().size();
        for (std::size_t yi = 0; yi < upto; ++yi) {
          const std::vector<Fp> y = span.rows()[yi];
          for (std::vector<Fp> prod : {alg.mul(x, y), alg.mul(y, x)}) {
            if (span.add(prod)) next.push_back(std::move(prod));
          }
        }
      }
      fresh = std::move(next);
    }
  }
  return gens;
}

Matrix<Fp> AModule::act_of(const std::vector<Fp>& x) const {
  require(x.size() == alg->dim, "BadShape", "element has the wrong length");
  Matrix<Fp> m = Matrix<Fp>::zero_like(dim, dim, alg->like);
  for (std::size_t a = 0; a < alg->dim; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) += x[a] * act[a](r, c);
  }
  return m;
}

void check_module(const AModule& m) {
  require(m.alg != nullptr && m.act.size() == m.alg->dim, "BadShape",
          "one action matrix per algebra basis element");
  for (const Matrix<Fp>& a : m.act)
    require(a.rows() == m.dim && a.cols() == m.dim, "BadShape",
            "action matrix shape");
  require(m.act_of(m.alg->unit) == Matrix<Fp>::identity(m.dim, m.alg->like),
          "DatumInvariant", "the unit does not act as the identity");
  for (std::size_t a = 0; a < m.alg->dim; ++a)
    for (std::size_t b = 0; b < m.alg->dim; ++b)
      require(m.act[a] * m.act[b] == m.act_of(m.alg->table[a][b]),
              "DatumInvariant", "action is not multiplicative");
}

AModule regular_module(const Algebra& alg) {
  AModule m;
  m.alg = &alg;
  m.dim = alg.dim;
  for (std::size_t a = 0; a < alg.dim; ++a)
    m.act.push_back(alg.basis_left_mult(a));
  return m;
}

Matrix<Fp> spin(const AModule& m, const Matrix<Fp>& seed_cols,
                const std::vector<std::size_t>& gens) {
  RowSpan span(m.dim, m.alg->like);
  std::vector<std::vector<Fp>> fresh;
  for (std::size_t c = 0; c < seed_cols.cols(); ++c) {
    std::vector<Fp> v(m.dim, Fp::zero(m.alg->like));
    for (std::size_t r = 0; r < m.dim; ++r) v[r] = seed_cols(r, c);
    if (span.add(v)) fresh.push_back(std::move(v));
  }
  while (!fresh.empty()) {
    std::vector<std::vector<Fp>> next;
    for (const auto& v : fresh)
      for (std::size_t g : gens) {
        std::vector<Fp> w = m.act[g].apply(v);
        if (span.add(w)) next.push_back(std::move(w));
      }
    fresh = std::move(next);
  }
  Matrix<Fp> out = Matrix<Fp>::zero_like(m.dim, span.dim(), m.alg->like);
  for (std::size_t c = 0; c < span.dim(); ++c)
    for (std::size_t r = 0; r < m.dim; ++r) out(r, c) = span.rows()[c][r];
  return out;
}

AModule submodule(const AModule& m, const Matrix<Fp>& basis_cols) {
  AModule out;
  out.alg = m.alg;
  out.dim = basis_cols.cols();
  for (std::size_t a = 0; a < m.alg->dim; ++a) {
    auto sol = solve_matrix(basis_cols, m.act[a] * basis_cols);
    require(sol.has_value(), "Internal", "column span is not a submodule");
    out.act.push_back(std::move(*sol));
  }
  return out;
}

AModule quotient_module(const AModule& m, const Matrix<Fp>& basis_cols) {
  const Subspace<Fp> sub =
      Subspace<Fp>::from_rows(m.dim, basis_cols.transpose());
  const Matrix<Fp> q = sub.quotient_map();
  auto lift = solve_matrix(q, Matrix<Fp>::identity(q.rows(), m.alg->like));
  require(lift.has_value(), "Internal", "quotient map has no section");
  AModule out;
  out.alg = m.alg;
  out.dim = q.rows();
  for (std::size_t a = 0; a < m.alg->dim; ++a) {
    require((q * (m.act[a] * basis_cols)).is_zero(), "Internal",
            "column span is not invariant");
    out.act.push_back(q * m.act[a] * *lift);
  }
  return out;
}

Matrix<Fp> hom_space(const AModule& a, const AModule& b) {
  require(a.alg == b.alg, "KindMismatch", "modules over different algebras");
  const std::vector<std::size_t> gens = generator_indices(*a.alg);
  const Fp like = a.alg->like;
  const std::size_t unknowns = a.dim * b.dim;  // F(i, c), row-major
  Matrix<Fp> sys =
      Matrix<Fp>::zero_like(gens.size() * unknowns, unknowns, like);
  std::size_t row = 0;
  for (std::size_t g : gens) {
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j) {
        for (std::size_t c = 0; c < a.dim; ++c)
          sys(row, i * a.dim + c) += a.act[g](c, j);
        for (std::size_t r = 0; r < b.dim; ++r)
          sys(row, r * a.dim + j) -= b.act[g](i, r);
        ++row;
      }
  }
  return kernel(sys);
}

bool simple_isomorphic(const AModule& a, const AModule& b) {
  if (a.alg != b.alg || a.dim != b.dim) return false;
  for (std::size_t g = 0; g < a.alg->dim; ++g) {
    Fp ta = Fp::zero(a.alg->like), tb = ta;
    for (std::size_t i = 0; i < a.dim; ++i) {
      ta += a.act[g](i, i);
      tb += b.act[g](i, i);
    }
    if (ta != tb) return false;
  }
  return hom_space(a, b).rows() > 0;
}

FpPoly minimal_polynomial(const Matrix<Fp>& m) {
  require(m.rows() == m.cols(), "NotSquare", "minimal polynomial");
  const Fp like = m.sample();
  const Fp one = Fp::one(like);
  const std::size_t d = m.rows();
  const std::size_t width = d * d;
  // Echelonized flattened powers, each remembering its polynomial recipe.
  std::vector<std::vector<Fp>> rows;
  std::vector<std::size_t> piv;
  std::vector<FpPoly> recipe;
  Matrix<Fp> power = Matrix<Fp>::identity(d, like);
  for (std::size_t k = 0;; ++k) {
    std::vector<Fp> v(width, Fp::zero(like));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) v[r * d + c] = power(r, c);
    FpPoly p(k + 1, Fp::zero(like));
    p[k] = one;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Fp f = v[piv[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < width; ++j) v[j] -= f * rows[i][j];
      FpPoly scaled = recipe[i];
      for (Fp& c : scaled) c *= f;
      p = fp_poly_sub(p, scaled);
      p.resize(k + 1, Fp::zero(like));
    }
    std::size_t lead = width;
    for (std::size_t j = 0; j < width; ++j)
      if (!v[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == width) return fp_poly_monic(fp_poly_trim(std::move(p)));
    const Fp inv = v[lead].inverse();
    for (Fp& x : v) x *= inv;
    for (Fp& c : p) c *= inv;
    rows.push_back(std::move(v));
    piv.push_back(lead);
    recipe.push_back(fp_poly_trim(std::move(p)));
    power = power * m;
    require(k <= width, "Internal", "minimal polynomial did not terminate");
  }
}

namespace {

Matrix<Fp> eval_at(const FpPoly& p, const Matrix<Fp>& m) {
  const Fp like = m.sample();
  Matrix<Fp> out = Matrix<Fp>::zero_like(m.rows(), m.rows(), like);
  for (std::size_t i = p.size(); i-- > 0;) {
    out = out * m;
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, r) += p[i];
  }
  return out;
}

Matrix<Fp> first_kernel_column(const Matrix<Fp>& m) {
  const Matrix<Fp> ker = kernel(m);  // rows = basis
  require(ker.rows() > 0, "Internal", "expected a nonzero kernel");
  Matrix<Fp> col = Matrix<Fp>::zero_like(m.cols(), 1, m.sample());
  for (std::size_t j = 0; j < m.cols(); ++j) col(j, 0) = ker(0, j);
  return col;
}

// One proper nonzero submodule (as a column basis), or nullopt when the
// module is certified irreducible.
std::optional<Matrix<Fp>> try_split(const AModule& m,
                                    const std::vector<std::size_t>& gens,
                                    std::mt19937& rng) {
  const Fp like = m.alg->like;
  const std::int64_t p = like.modulus();
  AModule mt;  // transpose module, used by the irreducibility certificate
  mt.alg = m.alg;
  mt.dim = m.dim;
  mt.act.resize(m.alg->dim, Matrix<Fp>::zero_like(0, 0, like));
  for (std::size_t g : gens) mt.act[g] = m.act[g].transpose();

  constexpr int kAttempts = 60;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    // Random element of the image of the algebra: a combination of the
    // generator actions, occasionally a product of two of them.
    auto coeff = [&]() {
      return Fp(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p)),
                p);
    };
    Matrix<Fp> theta = Matrix<Fp>::zero_like(m.dim, m.dim, like);
    for (std::size_t g : gens) theta = theta + coeff() * m.act[g];
    if (attempt % 3 == 2) {
      Matrix<Fp> combo = Matrix<Fp>::zero_like(m.dim, m.dim, like);
      for (std::size_t g : gens) combo = combo + coeff() * m.act[g];
      theta = theta * combo;
    }

    const FpPoly mp = minimal_polynomial(theta);
    for (const auto& [f, mult] : fp_poly_factor(mp, rng)) {
      const Matrix<Fp> ft = eval_at(f, theta);
      const Matrix<Fp> ker = kernel(ft);  // rows
      const std::size_t nullity = ker.rows();
      require(nullity > 0, "Internal", "factor of the minimal polynomial");
      for (std::size_t pick = 0; pick < std::min<std::size_t>(nullity, 3);
           ++pick) {
        Matrix<Fp> v = Matrix<Fp>::zero_like(m.dim, 1, like);
        for (std::size_t j = 0; j < m.dim; ++j) v(j, 0) = ker(pick, j);
        const Matrix<Fp> span = spin(m, v, gens);
        if (span.cols() < m.dim) return span;
      }
      if (nullity == static_cast<std::size_t>(fp_poly_deg(f))) {
        // Nullity equals the factor degree, and the kernel vector spins to
        // everything; the transpose side decides irreducibility.
        const Matrix<Fp> w = first_kernel_column(ft.transpose());
        const Matrix<Fp> tspan = spin(mt, w, gens);
        if (tspan.cols() == m.dim) return std::nullopt;  // irreducible
        // The annihilator of a proper transpose submodule is a proper
        // nonzero submodule.
        const Matrix<Fp> ann = kernel(tspan.transpose());  // rows
        require(ann.rows() > 0 && ann.rows() < m.dim, "Internal",
                "annihilator of a proper transpose submodule");
        return ann.transpose();
      }
    }
  }
  fail(p < 13 ? "FieldTooSmall" : "Internal",
       "could not split the module or certify irreducibility; a larger "
       "coefficient field may be needed");
}

void factors_rec(const AModule& m, const std::vector<std::size_t>& gens,
                 std::mt19937& rng, std::vector<AModule>& out) {
  if (m.dim == 0) return;
  const auto split = try_split(m, gens, rng);
  if (!split) {
    out.push_back(m);
    return;
  }
  factors_rec(submodule(m, *split), gens, rng, out);
  factors_rec(quotient_module(m, *split), gens, rng, out);
}

}  // namespace

std::vector<AModule> composition_factors(const AModule& m, std::mt19937& rng) {
  std::vector<AModule> out;
  factors_rec(m, generator_indices(*m.alg), rng, out);
  std::size_t total = 0;
  for (const AModule& f : out) total += f.dim;
  require(total == m.dim, "Internal", "composition factors lost dimensions");
  return out;
}

std::vector<AModule> simple_modules(const Algebra& alg, std::size_t dim_cap,
                                    std::uint32_t seed) {
  require(alg.dim <= dim_cap, "CapExceeded",
          "algebra dimension exceeds the configured cap");
  require(Fp::is_prime(alg.like.modulus()), "BadModulus",
          "coefficients must form a prime field");
  require(alg.like.modulus() >= 5, "FieldTooSmall",
          "splitting needs a modulus of at least 5");
  std::mt19937 rng(seed);
  const AModule reg = regular_module(alg);
  std::vector<AModule> simples;
  std::size_t accounted = 0;
  for (AModule& f : composition_factors(reg, rng)) {
    accounted += f.dim;
    bool known = false;
    for (const AModule& s : simples)
      if (simple_isomorphic(s, f)) {
        known = true;
        break;
      }
    if (!known) simples.push_back(std::move(f));
  }
  require(accounted == alg.dim, "Internal",
          "dimension accounting of the regular module did not close");
  return simples;
}

}  // namespace coxglue

#include "coxglue/gluing.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace coxglue {
namespace {

std::string pos(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}
std::string pos(int i, int j, int k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " +
         std::to_string(k) + ")";
}

Matrix<Fp> kron(const Matrix<Fp>& a, const Matrix<Fp>& b) {
  Matrix<Fp> p = Matrix<Fp>::zero_like(a.rows() * b.rows(), a.cols() * b.cols(),
                                       a.sample());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      if (scalar_is_zero(a(ra, ca))) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          p(ra * b.rows() + rb, ca * b.cols() + cb) = a(ra, ca) * b(rb, cb);
    }
  return p;
}

std::vector<Fp> column(const Matrix<Fp>& m, std::size_t j) {
  std::vector<Fp> c(m.rows(), scalar_zero(m.sample()));
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

// Action of a coordinate vector through per-basis-element matrices.
Matrix<Fp> combine(const std::vector<Matrix<Fp>>& mats,
                   const std::vector<Fp>& x, std::size_t dim, const Fp& like) {
  Matrix<Fp> s = Matrix<Fp>::zero_like(dim, dim, like);
  for (std::size_t a = 0; a < mats.size(); ++a)
    if (!x[a].is_zero()) s = s + x[a] * mats[a];
  return s;
}

// Row-major flattening of an r x c matrix.
std::vector<Fp> vec_of(const Matrix<Fp>& m) {
  std::vector<Fp> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

Matrix<Fp> mat_of(const std::vector<Fp>& v, std::size_t r, std::size_t c,
                  const Fp& like) {
  Matrix<Fp> m = Matrix<Fp>::zero_like(r, c, like);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = v[i * c + j];
  return m;
}

// Checks the two-sided module axioms of one bimodule slot.
void check_bimodule(const GluingDatum& d, int i, int j) {
  const Bimodule& m = d.at(i, j);
  const Algebra& ri = d.site[static_cast<std::size_t>(i)];
  const Algebra& rj = d.site[static_cast<std::size_t>(j)];
  require(m.left.size() == ri.dim && m.right.size() == rj.dim,
          "DatumInvariant", "bimodule " + pos(i, j) + " action count");
  for (const auto& l : m.left)
    require(l.rows() == m.dim && l.cols() == m.dim, "BadShape",
            "bimodule " + pos(i, j) + " left action shape");
  for (const auto& r : m.right)
    require(r.rows() == m.dim && r.cols() == m.dim, "BadShape",
            "bimodule " + pos(i, j) + " right action shape");
  const Matrix<Fp> id = Matrix<Fp>::identity(m.dim, d.like);
  require(combine(m.left, ri.unit, m.dim, d.like) == id, "DatumInvariant",
          "bimodule " + pos(i, j) + " left unit");
  require(combine(m.right, rj.unit, m.dim, d.like) == id, "DatumInvariant",
          "bimodule " + pos(i, j) + " right unit");
  for (std::size_t a = 0; a < ri.dim; ++a)
    for (std::size_t b = 0; b < ri.dim; ++b)
      require(m.left[a] * m.left[b] ==
                  combine(m.left, ri.table[a][b], m.dim, d.like),
              "DatumInvariant", "bimodule " + pos(i, j) + " left action");
  for (std::size_t a = 0; a < rj.dim; ++a)
    for (std::size_t b = 0; b < rj.dim; ++b)
      require(m.right[b] * m.right[a] ==
                  combine(m.right, rj.table[a][b], m.dim, d.like),
              "DatumInvariant", "bimodule " + pos(i, j) + " right action");
  for (const auto& l : m.left)
    for (const auto& r : m.right)
      require(l * r == r * l, "DatumInvariant",
              "bimodule " + pos(i, j) + " actions do not commute");
}

// The composition tensor forced by a repeated index: with j == i it must be
// the left action of R_i, with j == k the right action of R_k.
Matrix<Fp> forced_nu(const GluingDatum& d, int i, int j, int k) {
  const Bimodule& m = d.at(i, k);
  if (i == j) {
    const std::size_t da = d.site[static_cast<std::size_t>(i)].dim;
    Matrix<Fp> t = Matrix<Fp>::zero_like(m.dim, da * m.dim, d.like);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t v = 0; v < m.dim; ++v)
        for (std::size_t r = 0; r < m.dim; ++r)
          t(r, a * m.dim + v) = m.left[a](r, v);
    return t;
  }
  const std::size_t db = d.site[static_cast<std::size_t>(k)].dim;
  Matrix<Fp> t = Matrix<Fp>::zero_like(m.dim, m.dim * db, d.like);
  for (std::size_t u = 0; u < m.dim; ++u)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t r = 0; r < m.dim; ++r)
        t(r, u * db + b) = m.right[b](r, u);
  return t;
}

std::vector<Fp> basis_vec(std::size_t dim, std::size_t at, const Fp& like) {
  std::vector<Fp> v(dim, scalar_zero(like));
  v[at] = scalar_one(like);
  return v;
}

// Left multiplication by the basis element u of M_ij, as a map on the column
// (+)_i M_ik of the glued algebra.
Matrix<Fp> left_on_column(const GluingDatum& d, int i, int j, std::size_t u,
                          int k, const std::vector<std::size_t>& goff,
                          std::size_t gdim) {
  Matrix<Fp> lb = Matrix<Fp>::zero_like(gdim, gdim, d.like);
  const Matrix<Fp>& nu = d.nu_at(i, j, k);
  const std::size_t djk = d.mdim(j, k);
  for (std::size_t r = 0; r < d.mdim(i, k); ++r)
    for (std::size_t w = 0; w < djk; ++w)
      lb(goff[static_cast<std::size_t>(i)] + r,
         goff[static_cast<std::size_t>(j)] + w) = nu(r, u * djk + w);
  return lb;
}

// Right multiplication by the basis element u of M_ij, as a map on the row
// (+)_j M_kj of the glued algebra.
Matrix<Fp> right_on_row(const GluingDatum& d, int i, int j, std::size_t u,
                        int k, const std::vector<std::size_t>& hoff,
                        std::size_t hdim) {
  Matrix<Fp> rb = Matrix<Fp>::zero_like(hdim, hdim, d.like);
  const Matrix<Fp>& nu = d.nu_at(k, i, j);
  const std::size_t dij = d.mdim(i, j);
  for (std::size_t r = 0; r < d.mdim(k, j); ++r)
    for (std::size_t v = 0; v < d.mdim(k, i); ++v)
      rb(hoff[static_cast<std::size_t>(j)] + r,
         hoff[static_cast<std::size_t>(i)] + v) = nu(r, v * dij + u);
  return rb;
}

std::vector<Int> decompose_into(const AModule& x,
                                const std::vector<AModule>& simples,
                                std::mt19937& rng) {
  std::vector<Int> counts(simples.size(), Int(0));
  if (x.dim == 0) return counts;
  for (const AModule& f : composition_factors(x, rng)) {
    bool found = false;
    for (std::size_t t = 0; t < simples.size(); ++t)
      if (simple_isomorphic(f, simples[t])) {
        counts[t] += Int(1);
        found = true;
        break;
      }
    require(found, "Internal", "composition factor matches no known simple");
  }
  return counts;
}

}  // namespace

void seal_datum(GluingDatum& d) {
  require(d.n >= 1, "BadIndex", "datum needs at least one site");
  require(d.site.size() == static_cast<std::size_t>(d.n), "BadShape",
          "datum needs one algebra per site");
  const std::size_t n = static_cast<std::size_t>(d.n);
  d.mod.resize(n * n);
  d.nu.resize(n * n * n);
  for (int i = 0; i < d.n; ++i) {
    Bimodule reg;
    const Algebra& r = d.site[static_cast<std::size_t>(i)];
    reg.dim = r.dim;
    for (std::size_t a = 0; a < r.dim; ++a) {
      reg.left.push_back(r.basis_left_mult(a));
      reg.right.push_back(r.basis_right_mult(a));
    }
    d.mod[d.idx(i, i)] = reg;
  }
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      Bimodule& m = d.mod[d.idx(i, j)];
      if (m.left.empty() && m.dim == 0)
        m.left.assign(d.site[static_cast<std::size_t>(i)].dim,
                      Matrix<Fp>::zero_like(0, 0, d.like));
      if (m.right.empty() && m.dim == 0)
        m.right.assign(d.site[static_cast<std::size_t>(j)].dim,
                       Matrix<Fp>::zero_like(0, 0, d.like));
    }
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k) {
        Matrix<Fp>& t = d.nu[d.idx3(i, j, k)];
        if (i == j || j == k) {
          t = forced_nu(d, i, j, k);
          continue;
        }
        if (t.rows() == 0 && t.cols() == 0)
          t = Matrix<Fp>::zero_like(d.mdim(i, k), d.mdim(i, j) * d.mdim(j, k),
                                    d.like);
      }
  check_datum(d);
}

void check_datum(const GluingDatum& d) {
  require(d.n >= 1, "BadIndex", "datum needs at least one site");
  const std::size_t n = static_cast<std::size_t>(d.n);
  require(d.site.size() == n && d.mod.size() == n * n &&
              d.nu.size() == n * n * n,
          "BadShape", "datum slot counts");
  require(d.like.modulus() > 1, "BadModulus", "datum needs a prime field");
  for (const Algebra& r : d.site) {
    require(r.like.modulus() == d.like.modulus(), "KindMismatch",
            "site algebras must share the datum field");
    check_algebra(r);
  }
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) check_bimodule(d, i, j);
  for (int i = 0; i < d.n; ++i) {
    const Bimodule& m = d.at(i, i);
    const Algebra& r = d.site[static_cast<std::size_t>(i)];
    require(m.dim == r.dim, "DatumInvariant",
            "diagonal bimodule " + pos(i, i) + " must be the site algebra");
    for (std::size_t a = 0; a < r.dim; ++a)
      require(m.left[a] == r.basis_left_mult(a) &&
                  m.right[a] == r.basis_right_mult(a),
              "DatumInvariant",
              "diagonal bimodule " + pos(i, i) + " must be the site algebra");
  }
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k) {
        const Matrix<Fp>& t = d.nu_at(i, j, k);
        require(t.rows() == d.mdim(i, k) &&
                    t.cols() == d.mdim(i, j) * d.mdim(j, k),
                "BadShape", "composition tensor " + pos(i, j, k) + " shape");
        if (i == j || j == k)
          require(t == forced_nu(d, i, j, k), "DatumInvariant",
                  "composition tensor " + pos(i, j, k) +
                      " must be the module action");
      }
  // Linearity over the outer sites and balance over the middle one.
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k) {
        const Matrix<Fp>& t = d.nu_at(i, j, k);
        const Bimodule& mij = d.at(i, j);
        const Bimodule& mjk = d.at(j, k);
        const Bimodule& mik = d.at(i, k);
        const Matrix<Fp> idl = Matrix<Fp>::identity(mij.dim, d.like);
        const Matrix<Fp> idr = Matrix<Fp>::identity(mjk.dim, d.like);
        for (std::size_t a = 0; a < d.site[static_cast<std::size_t>(i)].dim;
             ++a)
          require(mik.left[a] * t == t * kron(mij.left[a], idr),
                  "DatumInvariant",
                  "composition tensor " + pos(i, j, k) + " left linearity");
        for (std::size_t b = 0; b < d.site[static_cast<std::size_t>(k)].dim;
             ++b)
          require(mik.right[b] * t == t * kron(idl, mjk.right[b]),
                  "DatumInvariant",
                  "composition tensor " + pos(i, j, k) + " right linearity");
        for (std::size_t b = 0; b < d.site[static_cast<std::size_t>(j)].dim;
             ++b)
          require(t * kron(mij.right[b], idr) == t * kron(idl, mjk.left[b]),
                  "DatumInvariant",
                  "composition tensor " + pos(i, j, k) + " balance");
      }
  // Associativity across every quadruple of sites.
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k)
        for (int l = 0; l < d.n; ++l) {
          const Matrix<Fp> lhs =
              d.nu_at(i, j, l) *
              kron(Matrix<Fp>::identity(d.mdim(i, j), d.like),
                   d.nu_at(j, k, l));
          const Matrix<Fp> rhs =
              d.nu_at(i, k, l) *
              kron(d.nu_at(i, j, k),
                   Matrix<Fp>::identity(d.mdim(k, l), d.like));
          require(lhs == rhs, "AssociativityFailure",
                  "composition tensors disagree on sites (" +
                      std::to_string(i) + ", " + std::to_string(j) + ", " +
                      std::to_string(k) + ", " + std::to_string(l) + ")");
        }
}

GluingDatum product_datum(std::vector<Algebra> sites) {
  require(!sites.empty(), "BadIndex", "datum needs at least one site");
  GluingDatum d;
  d.n = static_cast<int>(sites.size());
  d.like = sites[0].like;
  d.site = std::move(sites);
  seal_datum(d);
  return d;
}

GluingDatum triangular_datum(const Fp& like) {
  GluingDatum d;
  d.n = 2;
  d.like = like;
  d.site = {Algebra::field(like), Algebra::field(like)};
  d.mod.resize(4);
  Bimodule line;
  line.dim = 1;
  line.left = {Matrix<Fp>::identity(1, like)};
  line.right = {Matrix<Fp>::identity(1, like)};
  d.mod[d.idx(0, 1)] = line;
  seal_datum(d);
  return d;
}

GluingDatum w_gluing_datum(const CoxeterSystem& sys, const Fp& q) {
  GluingDatum d;
  d.n = static_cast<int>(sys.order());
  d.like = q;
  for (int i = 0; i < d.n; ++i) d.site.push_back(Algebra::field(q));
  const std::size_t n = static_cast<std::size_t>(d.n);
  d.mod.resize(n * n);
  Bimodule line;
  line.dim = 1;
  line.left = {Matrix<Fp>::identity(1, q)};
  line.right = {Matrix<Fp>::identity(1, q)};
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      if (i != j) d.mod[d.idx(i, j)] = line;
  d.nu.resize(n * n * n);
  // The length defect of composing the translations x_i x_j^{-1} and
  // x_j x_k^{-1} is even; half of it is the exponent of q.
  auto g = [&](int i, int j) {
    return sys.mul(sys.element(static_cast<std::uint32_t>(i)),
                   sys.inv(sys.element(static_cast<std::uint32_t>(j))));
  };
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k) {
        if (i == j || j == k) continue;
        const int defect = sys.length(g(i, j)) + sys.length(g(j, k)) -
                           sys.length(g(i, k));
        require(defect >= 0 && defect % 2 == 0, "Internal",
                "length defect must be a nonnegative even number");
        Fp value = Fp::one(q);
        for (int e = 0; e < defect / 2; ++e) value = value * q;
        Matrix<Fp> t = Matrix<Fp>::zero_like(1, 1, q);
        t(0, 0) = value;
        d.nu[d.idx3(i, j, k)] = t;
      }
  seal_datum(d);
  return d;
}

GluingAlgebra assemble(const GluingDatum& d) {
  check_datum(d);
  const std::size_t n = static_cast<std::size_t>(d.n);
  GluingAlgebra g;
  g.n = d.n;
  g.off.assign(n * n, 0);
  std::size_t total = 0;
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      g.off[d.idx(i, j)] = total;
      total += d.mdim(i, j);
    }
  Algebra alg;
  alg.like = d.like;
  alg.dim = total;
  const Fp zero = Fp::zero(d.like);
  alg.table.assign(total, std::vector<std::vector<Fp>>(
                              total, std::vector<Fp>(total, zero)));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k)
        for (int l = 0; l < d.n; ++l) {
          if (j != k) continue;
          const Matrix<Fp>& t = d.nu_at(i, j, l);
          const std::size_t djl = d.mdim(j, l);
          for (std::size_t u = 0; u < d.mdim(i, j); ++u)
            for (std::size_t v = 0; v < djl; ++v) {
              std::vector<Fp>& out =
                  alg.table[g.off[d.idx(i, j)] + u][g.off[d.idx(j, l)] + v];
              for (std::size_t r = 0; r < d.mdim(i, l); ++r)
                out[g.off[d.idx(i, l)] + r] = t(r, u * djl + v);
            }
        }
  alg.unit.assign(total, zero);
  for (int i = 0; i < d.n; ++i) {
    const Algebra& r = d.site[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < r.dim; ++a)
      alg.unit[g.off[d.idx(i, i)] + a] = r.unit[a];
  }
  g.alg = alg;
  check_algebra(g.alg);
  for (int i = 0; i < d.n; ++i) {
    std::vector<Fp> e(total, zero);
    const Algebra& r = d.site[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < r.dim; ++a)
      e[g.off[d.idx(i, i)] + a] = r.unit[a];
    g.idem.push_back(e);
  }
  // The idempotents must cut the algebra into exactly the bimodule blocks.
  for (int a = 0; a < d.n; ++a)
    for (int b = 0; b < d.n; ++b)
      for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j)
          for (std::size_t u = 0; u < d.mdim(i, j); ++u) {
            const std::vector<Fp> basis =
                basis_vec(total, g.off[d.idx(i, j)] + u, d.like);
            const std::vector<Fp> cut =
                g.alg.mul(g.idem[static_cast<std::size_t>(a)],
                          g.alg.mul(basis, g.idem[static_cast<std::size_t>(b)]));
            const bool hit = (a == i && b == j);
            for (std::size_t c = 0; c < total; ++c)
              require(cut[c] == (hit ? basis[c] : zero), "Internal",
                      "idempotents do not cut the expected blocks");
          }
  return g;
}

void braverman_check(const GluingDatum& d, const GluingAlgebra& g) {
  const std::size_t total = g.alg.dim;
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      const Bimodule& m = d.at(i, j);
      const std::size_t base = g.block_offset(i, j);
      // Left action of R_i through the glued product.
      for (std::size_t a = 0; a < d.site[static_cast<std::size_t>(i)].dim;
           ++a) {
        const Matrix<Fp> lm = g.alg.basis_left_mult(g.block_offset(i, i) + a);
        for (std::size_t v = 0; v < m.dim; ++v)
          for (std::size_t r = 0; r < total; ++r) {
            const Fp want = (r >= base && r < base + m.dim)
                                ? m.left[a](r - base, v)
                                : Fp::zero(d.like);
            require(lm(r, base + v) == want, "DatumInvariant",
                    "block " + pos(i, j) +
                        " does not reproduce the left action");
          }
      }
      // Right action of R_j through the glued product.
      for (std::size_t b = 0; b < d.site[static_cast<std::size_t>(j)].dim;
           ++b) {
        const Matrix<Fp> rm = g.alg.basis_right_mult(g.block_offset(j, j) + b);
        for (std::size_t v = 0; v < m.dim; ++v)
          for (std::size_t r = 0; r < total; ++r) {
            const Fp want = (r >= base && r < base + m.dim)
                                ? m.right[b](r - base, v)
                                : Fp::zero(d.like);
            require(rm(r, base + v) == want, "DatumInvariant",
                    "block " + pos(i, j) +
                        " does not reproduce the right action");
          }
      }
    }
}

TensorOverR balanced_tensor(const std::vector<Matrix<Fp>>& right_on_m,
                            std::size_t mdim,
                            const std::vector<Matrix<Fp>>& act_on_a,
                            std::size_t adim, const Fp& like) {
  require(right_on_m.size() == act_on_a.size(), "BadShape",
          "tensor factors live over different algebras");
  const std::size_t ambient = mdim * adim;
  const std::size_t rdim = right_on_m.size();
  std::vector<std::vector<Fp>> rows;
  const Fp zero = Fp::zero(like);
  for (std::size_t b = 0; b < rdim; ++b)
    for (std::size_t u = 0; u < mdim; ++u)
      for (std::size_t w = 0; w < adim; ++w) {
        std::vector<Fp> row(ambient, zero);
        for (std::size_t v = 0; v < mdim; ++v)
          row[v * adim + w] += right_on_m[b](v, u);
        for (std::size_t wp = 0; wp < adim; ++wp)
          row[u * adim + wp] -= act_on_a[b](wp, w);
        rows.push_back(row);
      }
  Subspace<Fp> rel =
      rows.empty() ? Subspace<Fp>(ambient, like)
                   : Subspace<Fp>::from_rows(ambient, Matrix<Fp>::from_rows(rows));
  Matrix<Fp> q = rel.quotient_map();
  auto lift = solve_matrix(q, Matrix<Fp>::identity(q.rows(), like));
  require(lift.has_value(), "Internal", "quotient map has no section");
  return TensorOverR{q, *lift, rel};
}

Matrix<Fp> descend_endo(const TensorOverR& t, const Matrix<Fp>& f) {
  const Matrix<Fp> moved = t.q * (f * t.rel.basis().transpose());
  require(moved.is_zero(), "Internal",
          "map does not preserve the balance relations");
  return t.q * f * t.lift;
}

bool right_projective(const Algebra& r, const Bimodule& m) {
  if (m.dim == 0) return true;
  const Fp like = r.like;
  const std::size_t fdim = m.dim * r.dim;
  // Free cover F = M (x) R with evaluation down to M; a splitting of the
  // evaluation is a right-linear section.
  std::vector<Matrix<Fp>> right_f;
  const Matrix<Fp> idm = Matrix<Fp>::identity(m.dim, like);
  for (std::size_t b = 0; b < r.dim; ++b)
    right_f.push_back(kron(idm, r.basis_right_mult(b)));
  Matrix<Fp> pi = Matrix<Fp>::zero_like(m.dim, fdim, like);
  for (std::size_t u = 0; u < m.dim; ++u)
    for (std::size_t s = 0; s < r.dim; ++s)
      for (std::size_t row = 0; row < m.dim; ++row)
        pi(row, u * r.dim + s) = m.right[s](row, u);
  // Unknown section sigma: fdim x m.dim, flattened row-major.
  const std::size_t vars = fdim * m.dim;
  const Fp zero = Fp::zero(like);
  std::vector<std::vector<Fp>> rows;
  std::vector<Fp> rhs;
  for (std::size_t b = 0; b < r.dim; ++b)
    for (std::size_t p = 0; p < fdim; ++p)
      for (std::size_t qc = 0; qc < m.dim; ++qc) {
        std::vector<Fp> row(vars, zero);
        for (std::size_t c = 0; c < m.dim; ++c)
          row[p * m.dim + c] += m.right[b](c, qc);
        for (std::size_t c = 0; c < fdim; ++c)
          row[c * m.dim + qc] -= right_f[b](p, c);
        rows.push_back(row);
        rhs.push_back(zero);
      }
  const Fp one = Fp::one(like);
  for (std::size_t x = 0; x < m.dim; ++x)
    for (std::size_t qc = 0; qc < m.dim; ++qc) {
      std::vector<Fp> row(vars, zero);
      for (std::size_t p = 0; p < fdim; ++p) row[p * m.dim + qc] += pi(x, p);
      rows.push_back(row);
      rhs.push_back(x == qc ? one : zero);
    }
  return solve(Matrix<Fp>::from_rows(rows), rhs).has_value();
}

AModule restrict_site(const GluingAlgebra& g, const GluingDatum& d,
                      const AModule& m, int k) {
  require(m.alg == &g.alg, "KindMismatch",
          "module does not live over this glued algebra");
  require(k >= 0 && k < d.n, "BadIndex", "site index out of range");
  const Matrix<Fp> p = m.act_of(g.idem[static_cast<std::size_t>(k)]);
  const Matrix<Fp> c = image(p).basis().transpose();
  AModule out;
  out.alg = &d.site[static_cast<std::size_t>(k)];
  out.dim = c.cols();
  for (std::size_t b = 0; b < d.site[static_cast<std::size_t>(k)].dim; ++b) {
    const Matrix<Fp>& act = m.act[g.block_offset(k, k) + b];
    auto x = solve_matrix(c, act * c);
    require(x.has_value(), "Internal", "site component is not invariant");
    out.act.push_back(*x);
  }
  check_module(out);
  return out;
}

ShriekModule extend_shriek(const GluingAlgebra& g, const GluingDatum& d,
                           const AModule& a, int k) {
  require(k >= 0 && k < d.n, "BadIndex", "site index out of range");
  require(a.alg == &d.site[static_cast<std::size_t>(k)], "KindMismatch",
          "module does not live over the chosen site");
  const std::size_t n = static_cast<std::size_t>(d.n);
  std::vector<std::size_t> goff(n, 0);
  std::size_t gdim = 0;
  for (int i = 0; i < d.n; ++i) {
    goff[static_cast<std::size_t>(i)] = gdim;
    gdim += d.mdim(i, k);
  }
  const std::size_t rk = d.site[static_cast<std::size_t>(k)].dim;
  std::vector<Matrix<Fp>> right_col;
  for (std::size_t b = 0; b < rk; ++b) {
    Matrix<Fp> rm = Matrix<Fp>::zero_like(gdim, gdim, d.like);
    for (int i = 0; i < d.n; ++i) {
      const Matrix<Fp>& blk = d.at(i, k).right[b];
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c)
          rm(goff[static_cast<std::size_t>(i)] + r,
             goff[static_cast<std::size_t>(i)] + c) = blk(r, c);
    }
    right_col.push_back(rm);
  }
  TensorOverR tensor = balanced_tensor(right_col, gdim, a.act, a.dim, d.like);
  const Matrix<Fp> ida = Matrix<Fp>::identity(a.dim, d.like);
  AModule mod;
  mod.alg = &g.alg;
  mod.dim = tensor.q.rows();
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (std::size_t u = 0; u < d.mdim(i, j); ++u) {
        const Matrix<Fp> lb = left_on_column(d, i, j, u, k, goff, gdim);
        mod.act.push_back(descend_endo(tensor, kron(lb, ida)));
      }
  check_module(mod);
  return ShriekModule{mod, gdim, goff, a.dim, tensor};
}

StarModule extend_star(const GluingAlgebra& g, const GluingDatum& d,
                       const AModule& a, int k) {
  require(k >= 0 && k < d.n, "BadIndex", "site index out of range");
  require(a.alg == &d.site[static_cast<std::size_t>(k)], "KindMismatch",
          "module does not live over the chosen site");
  const std::size_t n = static_cast<std::size_t>(d.n);
  std::vector<std::size_t> hoff(n, 0);
  std::size_t hdim = 0;
  for (int j = 0; j < d.n; ++j) {
    hoff[static_cast<std::size_t>(j)] = hdim;
    hdim += d.mdim(k, j);
  }
  const std::size_t rk = d.site[static_cast<std::size_t>(k)].dim;
  const Fp zero = Fp::zero(d.like);
  // Solve for left-linear maps X : e_k G -> A, i.e. X L_b = act_b X.
  const std::size_t vars = a.dim * hdim;
  std::vector<std::vector<Fp>> rows;
  for (std::size_t b = 0; b < rk; ++b) {
    Matrix<Fp> lm = Matrix<Fp>::zero_like(hdim, hdim, d.like);
    for (int j = 0; j < d.n; ++j) {
      const Matrix<Fp>& blk = d.at(k, j).left[b];
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c)
          lm(hoff[static_cast<std::size_t>(j)] + r,
             hoff[static_cast<std::size_t>(j)] + c) = blk(r, c);
    }
    for (std::size_t p = 0; p < a.dim; ++p)
      for (std::size_t qc = 0; qc < hdim; ++qc) {
        std::vector<Fp> row(vars, zero);
        for (std::size_t c = 0; c < hdim; ++c)
          row[p * hdim + c] += lm(c, qc);
        for (std::size_t r = 0; r < a.dim; ++r)
          row[r * hdim + qc] -= a.act[b](p, r);
        rows.push_back(row);
      }
  }
  Matrix<Fp> basis =
      rows.empty() ? Matrix<Fp>::identity(vars, d.like)
                   : kernel(Matrix<Fp>::from_rows(rows));
  AModule mod;
  mod.alg = &g.alg;
  mod.dim = basis.rows();
  const Matrix<Fp> basis_t = basis.transpose();
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (std::size_t u = 0; u < d.mdim(i, j); ++u) {
        const Matrix<Fp> rb = right_on_row(d, i, j, u, k, hoff, hdim);
        Matrix<Fp> act = Matrix<Fp>::zero_like(mod.dim, mod.dim, d.like);
        for (std::size_t t = 0; t < mod.dim; ++t) {
          const Matrix<Fp> xt = mat_of(basis.row(t), a.dim, hdim, d.like);
          auto coords = solve(basis_t, vec_of(xt * rb));
          require(coords.has_value(), "Internal",
                  "translated map left the solution space");
          for (std::size_t r = 0; r < mod.dim; ++r) act(r, t) = (*coords)[r];
        }
        mod.act.push_back(act);
      }
  check_module(mod);
  return StarModule{mod, hdim, hoff, a.dim, basis};
}

Matrix<Fp> mu_matrix(const GluingAlgebra& g, const GluingDatum& d,
                     const AModule& a, int k, const ShriekModule& sh,
                     const StarModule& st) {
  const std::size_t amb_sh = sh.gdim * sh.adim;
  const Matrix<Fp> basis_t = st.basis.transpose();
  Matrix<Fp> to_star =
      Matrix<Fp>::zero_like(st.mod.dim, amb_sh, d.like);
  for (int i = 0; i < d.n; ++i)
    for (std::size_t u = 0; u < d.mdim(i, k); ++u)
      for (std::size_t w = 0; w < sh.adim; ++w) {
        // The pure tensor (basis u of M_ik) (x) a_w maps x to (x gamma) a.
        Matrix<Fp> x = Matrix<Fp>::zero_like(sh.adim, st.hdim, d.like);
        const Matrix<Fp>& nu = d.nu_at(k, i, k);
        const std::size_t dik = d.mdim(i, k);
        for (std::size_t v = 0; v < d.mdim(k, i); ++v) {
          const Matrix<Fp> act = a.act_of(column(nu, v * dik + u));
          for (std::size_t r = 0; r < sh.adim; ++r)
            x(r, st.hoff[static_cast<std::size_t>(i)] + v) = act(r, w);
        }
        auto coords = solve(basis_t, vec_of(x));
        require(coords.has_value(), "Internal",
                "canonical map produced a non-linear image");
        const std::size_t col =
            (sh.goff[static_cast<std::size_t>(i)] + u) * sh.adim + w;
        for (std::size_t r = 0; r < st.mod.dim; ++r)
          to_star(r, col) = (*coords)[r];
      }
  const Matrix<Fp> moved = to_star * sh.tensor.rel.basis().transpose();
  require(moved.is_zero(), "Internal",
          "canonical map does not kill the balance relations");
  const Matrix<Fp> mu = to_star * sh.tensor.lift;
  for (std::size_t h = 0; h < g.alg.dim; ++h)
    require(mu * sh.mod.act[h] == st.mod.act[h] * mu, "Internal",
            "canonical map is not equivariant");
  return mu;
}

AModule middle_extension(const GluingAlgebra& g, const GluingDatum& d,
                         const AModule& a, int k) {
  const ShriekModule sh = extend_shriek(g, d, a, k);
  const StarModule st = extend_star(g, d, a, k);
  const Matrix<Fp> mu = mu_matrix(g, d, a, k, sh, st);
  const Matrix<Fp> cols = image(mu).basis().transpose();
  return submodule(st.mod, cols);
}

K0Report k0_verify(const GluingDatum& d, std::size_t dim_cap,
                   std::uint32_t seed) {
  check_datum(d);
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      if (i == j) continue;
      require(right_projective(d.site[static_cast<std::size_t>(j)], d.at(i, j)),
              "DerivedCorrectionRequired",
              "bimodule " + pos(i, j) +
                  " is not projective on the right; the class-group "
                  "comparison needs the plain tensor functors to be exact");
    }
  std::mt19937 rng(seed);
  const std::size_t n = static_cast<std::size_t>(d.n);
  std::vector<std::vector<AModule>> site_simples;
  for (int i = 0; i < d.n; ++i)
    site_simples.push_back(
        simple_modules(d.site[static_cast<std::size_t>(i)], dim_cap, seed));
  K0Report rep;
  std::vector<std::size_t> c_off(n, 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    rep.site_counts.push_back(site_simples[i].size());
    c_off[i] = total;
    total += site_simples[i].size();
  }
  const GluingAlgebra g = assemble(d);
  const std::vector<AModule> glued = simple_modules(g.alg, dim_cap, seed);
  std::vector<std::vector<Int>> class_rows;
  for (const AModule& s : glued) {
    rep.glued_simple_dims.push_back(s.dim);
    std::vector<Int> row(total, Int(0));
    for (int i = 0; i < d.n; ++i) {
      const AModule res = restrict_site(g, d, s, i);
      const std::vector<Int> counts =
          decompose_into(res, site_simples[static_cast<std::size_t>(i)], rng);
      Int sum(0);
      for (const Int& c : counts) sum += c;
      require(sum <= Int(1), "Internal",
              "restriction of a simple module must be simple or zero");
      for (std::size_t t = 0; t < counts.size(); ++t)
        row[c_off[static_cast<std::size_t>(i)] + t] = counts[t];
    }
    class_rows.push_back(row);
  }
  rep.classes = Matrix<Int>::from_rows(class_rows);
  // Class-group matrices of the tensor functors, one column per simple.
  rep.phi.clear();
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      const std::size_t ci = site_simples[static_cast<std::size_t>(i)].size();
      const std::size_t cj = site_simples[static_cast<std::size_t>(j)].size();
      Matrix<Int> block = Matrix<Int>::zero_like(ci, cj, Int(0));
      for (std::size_t t = 0; t < cj; ++t) {
        const AModule& s = site_simples[static_cast<std::size_t>(j)][t];
        const Bimodule& m = d.at(i, j);
        const TensorOverR tensor =
            balanced_tensor(m.right, m.dim, s.act, s.dim, d.like);
        const Matrix<Fp> ida = Matrix<Fp>::identity(s.dim, d.like);
        AModule out;
        out.alg = &d.site[static_cast<std::size_t>(i)];
        out.dim = tensor.q.rows();
        for (std::size_t ab = 0;
             ab < d.site[static_cast<std::size_t>(i)].dim; ++ab)
          out.act.push_back(descend_endo(tensor, kron(m.left[ab], ida)));
        check_module(out);
        const std::vector<Int> counts = decompose_into(
            out, site_simples[static_cast<std::size_t>(i)], rng);
        for (std::size_t r = 0; r < ci; ++r) block(r, t) = counts[r];
        if (i == j)
          for (std::size_t r = 0; r < ci; ++r)
            require(block(r, t) == (r == t ? Int(1) : Int(0)), "Internal",
                    "tensoring with the diagonal bimodule must be trivial");
      }
      rep.phi.push_back(block);
    }
  // Which site simples are killed by the round trip through site j.
  rep.in_c.assign(n, std::vector<std::vector<bool>>(n));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      std::vector<bool> flags;
      if (i == j) {
        rep.in_c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            flags;
        continue;
      }
      const Matrix<Fp>& nu = d.nu_at(i, j, i);
      const std::size_t dji = d.mdim(j, i);
      for (const AModule& s : site_simples[static_cast<std::size_t>(i)]) {
        bool killed = true;
        for (std::size_t u = 0; u < d.mdim(i, j) && killed; ++u)
          for (std::size_t v = 0; v < dji && killed; ++v)
            if (!s.act_of(column(nu, u * dji + v)).is_zero()) killed = false;
        flags.push_back(killed);
      }
      rep.in_c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          flags;
    }
  // The lattice of site-class tuples compatible with the tensor functors:
  // away from the killed simples, applying phi_ij and restricting must agree.
  std::vector<std::vector<Int>> constraints;
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      if (i == j) continue;
      const Matrix<Int>& block = rep.phi[d.idx(i, j)];
      const auto& flags =
          rep.in_c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (std::size_t t = 0; t < flags.size(); ++t) {
        if (flags[t]) continue;
        std::vector<Int> row(total, Int(0));
        for (std::size_t s = 0; s < block.cols(); ++s)
          row[c_off[static_cast<std::size_t>(j)] + s] = block(t, s);
        row[c_off[static_cast<std::size_t>(i)] + t] -= Int(1);
        constraints.push_back(row);
      }
    }
  rep.simple_span = IntegerLattice::from_rows(total, rep.classes);
  rep.k_phi = constraints.empty()
                  ? IntegerLattice::full(total)
                  : IntegerLattice::from_rows(
                        total, int_kernel(Matrix<Int>::from_rows(constraints)));
  rep.equal = (rep.simple_span == rep.k_phi);
  rep.injective = (rep.simple_span.rank() == glued.size());
  return rep;
}

SupportReport support_scan(const GluingDatum& d, const CoxeterSystem& sys,
                           std::size_t dim_cap, std::uint32_t seed) {
  require(static_cast<std::uint32_t>(d.n) == sys.order(), "KindMismatch",
          "datum must have one site per group element");
  check_datum(d);
  auto elt = [&](int i) { return sys.element(static_cast<std::uint32_t>(i)); };
  auto trans = [&](int i, int j) { return sys.mul(elt(i), sys.inv(elt(j))); };
  // Where the two translations compose without cancellation, the composition
  // tensor must be invertible on the balanced tensor product.
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k) {
        if (i == j || j == k) continue;
        if (sys.length(trans(i, j)) + sys.length(trans(j, k)) !=
            sys.length(trans(i, k)))
          continue;
        const Bimodule& mij = d.at(i, j);
        const Bimodule& mjk = d.at(j, k);
        const TensorOverR tensor = balanced_tensor(
            mij.right, mij.dim, mjk.left, mjk.dim, d.like);
        const Matrix<Fp> induced = d.nu_at(i, j, k) * tensor.lift;
        require(tensor.q.rows() == d.mdim(i, k) &&
                    rank(induced) == d.mdim(i, k),
                "DatumInvariant",
                "composition tensor " + pos(i, j, k) +
                    " must be invertible when the translation lengths add");
      }
  const GluingAlgebra g = assemble(d);
  const std::vector<AModule> glued = simple_modules(g.alg, dim_cap, seed);
  SupportReport rep;
  for (const AModule& s : glued) {
    SimpleSupport info;
    info.dim = s.dim;
    for (int w = 0; w < d.n; ++w)
      if (rank(s.act_of(g.idem[static_cast<std::size_t>(w)])) > 0)
        info.supp.push_back(static_cast<std::uint32_t>(w));
    info.full = (info.supp.size() == static_cast<std::size_t>(d.n));
    std::vector<Elt> pts;
    for (std::uint32_t w : info.supp) pts.push_back(sys.element(w));
    info.convex = is_convex(sys, pts);
    if (info.full) {
      info.matches_intersection = true;
    } else {
      // Intersect every one-generator half-set translate containing the
      // support; the support must be exactly that intersection.
      std::vector<bool> acc(static_cast<std::size_t>(d.n), true);
      std::vector<bool> in_supp(static_cast<std::size_t>(d.n), false);
      for (std::uint32_t w : info.supp) in_supp[w] = true;
      for (int gen = 0; gen < sys.rank(); ++gen)
        for (int x = 0; x < d.n; ++x) {
          std::vector<bool> half(static_cast<std::size_t>(d.n), false);
          bool covers = true;
          for (int w = 0; w < d.n; ++w) {
            half[static_cast<std::size_t>(w)] =
                !sys.is_descent(trans(w, x), gen, Side::Left);
            if (in_supp[static_cast<std::size_t>(w)] &&
                !half[static_cast<std::size_t>(w)])
              covers = false;
          }
          if (!covers) continue;
          for (int w = 0; w < d.n; ++w)
            acc[static_cast<std::size_t>(w)] =
                acc[static_cast<std::size_t>(w)] &&
                half[static_cast<std::size_t>(w)];
        }
      info.matches_intersection = (acc == in_supp);
    }
    rep.simples.push_back(info);
  }
  return rep;
}

}  // namespace coxglue

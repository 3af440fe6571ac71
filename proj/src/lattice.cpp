#include "coxglue/lattice.hpp"

namespace coxglue {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void add_row_multiple(Matrix<Int>& m, size_t dst, size_t src, const Int& f) {
  if (f == 0) return;
  for (size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void swap_rows(Matrix<Int>& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void negate_row(Matrix<Int>& m, size_t i) {
  for (size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

// Shared HNF sweep; ops are mirrored onto *u when given.
void hnf_sweep(Matrix<Int>& h, Matrix<Int>* u) {
  const size_t rows = h.rows(), cols = h.cols();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    // Euclidean elimination below row r until one nonzero remains.
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        if (best == rows ||
            mp::abs(h(i, col)) < mp::abs(h(best, col)))
          best = i;
      }
      if (best == rows) break;  // column clear below r
      swap_rows(h, r, best);
      if (u) swap_rows(*u, r, best);
      bool others = false;
      for (size_t i = r + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        Int q = -(h(i, col) / h(r, col));
        add_row_multiple(h, i, r, q);
        if (u) add_row_multiple(*u, i, r, q);
        if (h(i, col) != 0) others = true;
      }
      if (!others) break;
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      negate_row(h, r);
      if (u) negate_row(*u, r);
    }
    for (size_t i = 0; i < r; ++i) {
      Int q = -floor_div(h(i, col), h(r, col));
      add_row_multiple(h, i, r, q);
      if (u) add_row_multiple(*u, i, r, q);
    }
    ++r;
  }
}

}  // namespace

Matrix<Int> hnf(Matrix<Int> a) {
  if (a.rows() == 0) return a;
  hnf_sweep(a, nullptr);
  size_t live = 0;
  for (size_t i = 0; i < a.rows(); ++i) {
    bool nonzero = false;
    for (size_t j = 0; j < a.cols() && !nonzero; ++j) nonzero = a(i, j) != 0;
    if (nonzero) ++live;
  }
  Matrix<Int> h = Matrix<Int>::zero_like(live, a.cols(), Int(0));
  for (size_t i = 0; i < live; ++i)
    for (size_t j = 0; j < a.cols(); ++j) h(i, j) = a(i, j);
  return h;
}

std::pair<Matrix<Int>, Matrix<Int>> hnf_with_transform(Matrix<Int> a) {
  Matrix<Int> u = Matrix<Int>::identity(a.rows(), Int(0));
  if (a.rows()) hnf_sweep(a, &u);
  return {a, u};
}

Matrix<Int> int_kernel(const Matrix<Int>& a) {
  // Row-reduce A^T with a unimodular transform; rows of U that map to zero
  // rows of H are exactly the integer vectors x with Ax = 0.
  auto [h, u] = hnf_with_transform(a.transpose());
  Matrix<Int> ker = Matrix<Int>::zero_like(0, a.cols(), Int(0));
  for (size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (size_t j = 0; j < h.cols() && zero; ++j) zero = h(i, j) == 0;
    if (!zero) continue;
    Matrix<Int> row = Matrix<Int>::zero_like(1, a.cols(), Int(0));
    for (size_t j = 0; j < a.cols(); ++j) row(0, j) = u(i, j);
    ker = ker.stacked(row);
  }
  return ker;
}

bool IntegerLattice::contains(const std::vector<Int>& v) const {
  require(v.size() == ambient_, "AmbientMismatch", "vector width");
  std::vector<Int> w = v;
  for (size_t i = 0; i < basis_.rows(); ++i) {
    size_t p = 0;
    while (p < ambient_ && basis_(i, p) == 0) ++p;
    if (w[p] == 0) continue;
    if (w[p] % basis_(i, p) != 0) return false;
    Int q = w[p] / basis_(i, p);
    for (size_t j = 0; j < ambient_; ++j) w[j] -= q * basis_(i, j);
  }
  for (auto& x : w)
    if (x != 0) return false;
  return true;
}

std::optional<Int> IntegerLattice::index_in_ambient() const {
  if (rank() != ambient_) return std::nullopt;
  Int d(1);
  for (size_t i = 0; i < ambient_; ++i) d *= basis_(i, i);
  return d;
}

IntegerLattice lattice_image(const Matrix<Int>& m) {
  return IntegerLattice::from_rows(m.rows(), m.transpose());
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  require(a.ambient() == b.ambient(), "AmbientMismatch", "lattice sum");
  return IntegerLattice::from_rows(a.ambient(), a.basis().stacked(b.basis()));
}

IntegerLattice lattice_intersect(const IntegerLattice& a,
                                 const IntegerLattice& b) {
  require(a.ambient() == b.ambient(), "AmbientMismatch", "lattice intersect");
  const size_t ka = a.rank(), kb = b.rank();
  if (ka == 0 || kb == 0) return IntegerLattice(a.ambient());
  // x in both iff x = p*Ba = q*Bb; the relations (p, q) with p*Ba - q*Bb = 0
  // form the kernel of the stacked basis acting by left multiplication.
  Matrix<Int> stacked = a.basis().stacked(b.basis());  // (ka+kb) x n
  Matrix<Int> rel = int_kernel(stacked.transpose());   // rows (p | q)
  Matrix<Int> gens = Matrix<Int>::zero_like(rel.rows(), a.ambient(), Int(0));
  for (size_t i = 0; i < rel.rows(); ++i)
    for (size_t t = 0; t < ka; ++t)
      for (size_t j = 0; j < a.ambient(); ++j)
        gens(i, j) += rel(i, t) * a.basis()(t, j);
  return IntegerLattice::from_rows(a.ambient(), gens);
}

bool lattice_membership(const IntegerLattice& l, const std::vector<Int>& v) {
  return l.contains(v);
}

IntegerLattice lattice_preimage_condition(const Matrix<Int>& m,
                                          const IntegerLattice& l) {
  require(l.ambient() == m.rows(), "AmbientMismatch",
          "condition lattice must live in the codomain");
  const size_t a = m.cols(), b = m.rows();
  // (x, y) with Mx - y in L is spanned by (e_i, M e_i) and (0, basis of L).
  Matrix<Int> gens = Matrix<Int>::zero_like(a + l.rank(), a + b, Int(0));
  for (size_t i = 0; i < a; ++i) {
    gens(i, i) = 1;
    for (size_t r = 0; r < b; ++r) gens(i, a + r) = m(r, i);
  }
  for (size_t i = 0; i < l.rank(); ++i)
    for (size_t j = 0; j < b; ++j) gens(a + i, a + j) = l.basis()(i, j);
  return IntegerLattice::from_rows(a + b, gens);
}

IntegerLattice lattice_preimage(const Matrix<Int>& a, const IntegerLattice& l) {
  require(l.ambient() == a.rows(), "AmbientMismatch",
          "condition lattice must live in the codomain");
  const size_t n = a.cols(), k = l.rank();
  // Ax = B^T t for integer t; take the x-part of the kernel of [A | -B^T].
  Matrix<Int> sys = Matrix<Int>::zero_like(a.rows(), n + k, Int(0));
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) sys(i, j) = a(i, j);
    for (size_t t = 0; t < k; ++t) sys(i, n + t) = -l.basis()(t, i);
  }
  Matrix<Int> ker = int_kernel(sys);
  Matrix<Int> gens = Matrix<Int>::zero_like(ker.rows(), n, Int(0));
  for (size_t i = 0; i < ker.rows(); ++i)
    for (size_t j = 0; j < n; ++j) gens(i, j) = ker(i, j);
  return IntegerLattice::from_rows(n, gens);
}

}  // namespace coxglue

#pragma once

#include <vector>

#include "coxglue/matrix.hpp"

namespace coxglue {

// Subspace of K^n in canonical form: basis rows in reduced row echelon form,
// no zero rows.  Equal subspaces have identical representations.
template <class K>
class Subspace {
public:
  Subspace(size_t ambient, const K& like)
      : ambient_(ambient), basis_(Matrix<K>::zero_like(0, ambient, like)) {}

  static Subspace from_rows(size_t ambient, Matrix<K> rows) {
    require(rows.rows() == 0 || rows.cols() == ambient, "AmbientMismatch",
            "spanning rows have wrong width");
    Subspace s(ambient, rows.sample());
    if (rows.rows() == 0) return s;
    std::vector<size_t> piv = rref_in_place(rows);
    Matrix<K> b = Matrix<K>::zero_like(piv.size(), ambient, rows.sample());
    for (size_t i = 0; i < piv.size(); ++i)
      for (size_t j = 0; j < ambient; ++j) b(i, j) = rows(i, j);
    s.basis_ = b;
    return s;
  }

  static Subspace full(size_t ambient, const K& like) {
    return from_rows(ambient, Matrix<K>::identity(ambient, like));
  }

  size_t ambient() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  const Matrix<K>& basis() const { return basis_; }
  const K& sample() const { return basis_.sample(); }

  bool contains(const std::vector<K>& v) const {
    require(v.size() == ambient_, "AmbientMismatch", "vector has wrong width");
    // Reduce v against the echelon basis; membership iff it reduces to zero.
    std::vector<K> w = v;
    for (size_t i = 0; i < basis_.rows(); ++i) {
      size_t p = pivot_col(i);
      if (scalar_is_zero(w[p])) continue;
      const K f = w[p];
      for (size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_(i, j);
    }
    for (auto& x : w)
      if (!scalar_is_zero(x)) return false;
    return true;
  }

  bool contains_subspace(const Subspace& o) const {
    require(o.ambient_ == ambient_, "AmbientMismatch", "ambient mismatch");
    for (size_t i = 0; i < o.basis_.rows(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  friend Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require(a.ambient_ == b.ambient_, "AmbientMismatch", "ambient mismatch");
    return from_rows(a.ambient_, a.basis_.stacked(b.basis_));
  }

  // Zassenhaus: reduce [A|A; B|0]; rows with zero left half carry a basis of
  // the intersection in their right half.
  friend Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    require(a.ambient_ == b.ambient_, "AmbientMismatch", "ambient mismatch");
    const size_t n = a.ambient_;
    const K like = a.sample();
    Matrix<K> big =
        Matrix<K>::zero_like(a.dim() + b.dim(), 2 * n, like);
    for (size_t i = 0; i < a.dim(); ++i)
      for (size_t j = 0; j < n; ++j)
        big(i, j) = big(i, n + j) = a.basis_(i, j);
    for (size_t i = 0; i < b.dim(); ++i)
      for (size_t j = 0; j < n; ++j) big(a.dim() + i, j) = b.basis_(i, j);
    rref_in_place(big);
    Matrix<K> rows = Matrix<K>::zero_like(0, n, like);
    for (size_t i = 0; i < big.rows(); ++i) {
      bool left_zero = true;
      for (size_t j = 0; j < n && left_zero; ++j)
        left_zero = scalar_is_zero(big(i, j));
      if (!left_zero) continue;
      Matrix<K> r = Matrix<K>::zero_like(1, n, like);
      bool nonzero = false;
      for (size_t j = 0; j < n; ++j) {
        r(0, j) = big(i, n + j);
        nonzero = nonzero || !scalar_is_zero(r(0, j));
      }
      if (nonzero) rows = rows.stacked(r);
    }
    return from_rows(a.ambient_, rows);
  }

  friend bool subspace_eq(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  // Surjection K^n -> K^(n-dim) whose kernel is exactly this subspace; used
  // to turn "x in V_s" conditions into linear equations.
  Matrix<K> quotient_map() const {
    if (dim() == 0) return Matrix<K>::identity(ambient_, sample());
    return kernel(basis_);
  }

private:
  size_t pivot_col(size_t i) const {
    for (size_t j = 0; j < ambient_; ++j)
      if (!scalar_is_zero(basis_(i, j))) return j;
    fail("Internal", "zero row in canonical basis");
  }

  size_t ambient_;
  Matrix<K> basis_;
};

// Column space of m as a subspace of K^rows.
template <class K>
Subspace<K> image(const Matrix<K>& m) {
  return Subspace<K>::from_rows(m.rows(), m.transpose());
}

// Kernel of m as a subspace of K^cols.
template <class K>
Subspace<K> kernel_space(const Matrix<K>& m) {
  return Subspace<K>::from_rows(m.cols(), kernel(m));
}

}  // namespace coxglue

#pragma once

#include <optional>
#include <vector>

#include "coxglue/error.hpp"
#include "coxglue/fp.hpp"
#include "coxglue/laurent.hpp"
#include "coxglue/numeric.hpp"
#include "coxglue/ratfunc.hpp"

namespace coxglue {

// Scalar glue so generic code can make constants.  Fp needs a sample value to
// know its modulus; the other kinds ignore it.
inline Rat scalar_zero(const Rat&) { return Rat(0); }
inline Rat scalar_one(const Rat&) { return Rat(1); }
inline bool scalar_is_zero(const Rat& x) { return x == 0; }

inline Int scalar_zero(const Int&) { return Int(0); }
inline Int scalar_one(const Int&) { return Int(1); }
inline bool scalar_is_zero(const Int& x) { return x == 0; }

inline LaurentPoly scalar_zero(const LaurentPoly&) { return LaurentPoly(); }
inline LaurentPoly scalar_one(const LaurentPoly&) { return LaurentPoly(1); }
inline bool scalar_is_zero(const LaurentPoly& x) { return x.is_zero(); }

inline RatFunc scalar_zero(const RatFunc&) { return RatFunc(); }
inline RatFunc scalar_one(const RatFunc&) { return RatFunc(1); }
inline bool scalar_is_zero(const RatFunc& x) { return x.is_zero(); }

inline Fp scalar_zero(const Fp& like) { return Fp::zero(like); }
inline Fp scalar_one(const Fp& like) { return Fp::one(like); }
inline bool scalar_is_zero(const Fp& x) { return x.is_zero(); }

// Dense row-major matrix.  Vectors are columns: a matrix represents a linear
// map K^cols -> K^rows.
template <class K>
class Matrix {
public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const K& fill)
      : r_(rows), c_(cols), a_(rows * cols, fill), like_(fill) {}

  static Matrix zero_like(size_t rows, size_t cols, const K& like) {
    return Matrix(rows, cols, scalar_zero(like));
  }
  static Matrix identity(size_t n, const K& like) {
    Matrix m = zero_like(n, n, like);
    for (size_t i = 0; i < n; ++i) m(i, i) = scalar_one(like);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    require(!rows.empty(), "EmptyMatrix", "from_rows needs at least one row");
    Matrix m(rows.size(), rows[0].size(), rows[0][0]);
    for (size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == m.c_, "DimensionMismatch", "ragged rows");
      for (size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool empty() const { return a_.empty(); }

  K& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const K& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  // Scalar sample used by generic code to build constants (Fp needs to know
  // its modulus).  Recorded at construction so zero-row matrices work too.
  const K& sample() const { return like_; }

  std::vector<K> row(size_t i) const {
    return std::vector<K>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  void set_row(size_t i, const std::vector<K>& v) {
    require(v.size() == c_, "DimensionMismatch", "row size");
    std::copy(v.begin(), v.end(), a_.begin() + i * c_);
  }

  Matrix transpose() const {
    Matrix t = zero_like(c_, r_, sample());
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.c_ == b.r_, "DimensionMismatch", "matrix product shape");
    Matrix p = zero_like(a.r_, b.c_, a.empty() ? b.sample() : a.sample());
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const K& aik = a(i, k);
        if (scalar_is_zero(aik)) continue;
        for (size_t j = 0; j < b.c_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, "DimensionMismatch", "matrix sum shape");
    Matrix s = a;
    for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += b.a_[i];
    return s;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.r_ == b.r_ && a.c_ == b.c_, "DimensionMismatch", "matrix diff shape");
    Matrix s = a;
    for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] -= b.a_[i];
    return s;
  }
  friend Matrix operator*(const K& c, const Matrix& m) {
    Matrix s = m;
    for (auto& x : s.a_) x = c * x;
    return s;
  }

  std::vector<K> apply(const std::vector<K>& x) const {
    require(x.size() == c_, "DimensionMismatch", "matrix-vector shape");
    std::vector<K> y(r_, scalar_zero(sample()));
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j)
        if (!scalar_is_zero((*this)(i, j))) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero() const {
    for (auto& x : a_)
      if (!scalar_is_zero(x)) return false;
    return true;
  }

  // Stack b below this matrix.
  Matrix stacked(const Matrix& b) const {
    if (r_ == 0 && (c_ == 0 || c_ == b.c_)) return b.r_ ? b : *this;
    if (b.r_ == 0) return *this;
    require(c_ == b.c_, "DimensionMismatch", "stack widths");
    Matrix s = zero_like(r_ + b.r_, c_, sample());
    s.a_ = a_;
    s.a_.insert(s.a_.end(), b.a_.begin(), b.a_.end());
    s.r_ = r_ + b.r_;
    return s;
  }

private:
  size_t r_{0}, c_{0};
  std::vector<K> a_;
  K like_{};
};

// In-place reduced row echelon form.  Returns the pivot columns.  Field
// scalars only (needs division).
template <class K>
std::vector<size_t> rref_in_place(Matrix<K>& m) {
  std::vector<size_t> pivots;
  size_t prow = 0;
  for (size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
    size_t sel = prow;
    while (sel < m.rows() && scalar_is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != prow)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(prow, j));
    const K inv = scalar_one(m.sample()) / m(prow, col);
    for (size_t j = col; j < m.cols(); ++j) m(prow, j) = inv * m(prow, j);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == prow || scalar_is_zero(m(i, col))) continue;
      const K f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(prow, j);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

template <class K>
size_t rank(const Matrix<K>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Matrix<K> c = m;
  return rref_in_place(c).size();
}

// Basis of {x : Mx = 0}, one vector per row of the result.  The result may
// have zero rows (trivial kernel) but always reports the right width.
template <class K>
Matrix<K> kernel(const Matrix<K>& m) {
  Matrix<K> c = m;
  std::vector<size_t> piv = rref_in_place(c);
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t p : piv) is_piv[p] = true;
  const size_t k = m.cols() - piv.size();
  Matrix<K> ker = Matrix<K>::zero_like(k, m.cols(), m.sample());
  size_t out = 0;
  for (size_t freec = 0; freec < m.cols(); ++freec) {
    if (is_piv[freec]) continue;
    ker(out, freec) = scalar_one(m.sample());
    for (size_t i = 0; i < piv.size(); ++i)
      ker(out, piv[i]) = scalar_zero(m.sample()) - c(i, freec);
    ++out;
  }
  return ker;
}

// One solution of Mx = b if consistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& m, const std::vector<K>& b) {
  require(b.size() == m.rows(), "DimensionMismatch", "solve rhs size");
  Matrix<K> aug = Matrix<K>::zero_like(m.rows(), m.cols() + 1, m.sample());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<size_t> piv = rref_in_place(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;  // 0 = 1 row
  std::vector<K> x(m.cols(), scalar_zero(m.sample()));
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
  return x;
}

// Solve MX = B column by column; nullopt if any column is inconsistent.
template <class K>
std::optional<Matrix<K>> solve_matrix(const Matrix<K>& m, const Matrix<K>& b) {
  require(b.rows() == m.rows(), "DimensionMismatch", "solve rhs rows");
  Matrix<K> x = Matrix<K>::zero_like(m.cols(), b.cols(), m.sample());
  for (size_t j = 0; j < b.cols(); ++j) {
    std::vector<K> col(b.rows(), scalar_zero(m.sample()));
    for (size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    auto s = solve(m, col);
    if (!s) return std::nullopt;
    for (size_t i = 0; i < m.cols(); ++i) x(i, j) = (*s)[i];
  }
  return x;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
  require(m.rows() == m.cols(), "NotSquare", "inverse of non-square matrix");
  const size_t n = m.rows();
  Matrix<K> aug = Matrix<K>::zero_like(n, 2 * n, m.sample());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = scalar_one(m.sample());
  }
  std::vector<size_t> piv = rref_in_place(aug);
  require(piv.size() == n && (n == 0 || piv.back() == n - 1), "SingularMatrix",
          "matrix is not invertible");
  Matrix<K> inv = Matrix<K>::zero_like(n, n, m.sample());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Field determinant by Gaussian elimination with exact division.
template <class K>
K det(const Matrix<K>& m) {
  require(m.rows() == m.cols(), "NotSquare", "determinant of non-square matrix");
  if (m.rows() == 0) fail("EmptyMatrix", "determinant of 0x0 matrix");
  Matrix<K> a = m;
  K d = scalar_one(a.sample());
  const size_t n = a.rows();
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && scalar_is_zero(a(sel, col))) ++sel;
    if (sel == n) return scalar_zero(a.sample());
    if (sel != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      d = scalar_zero(a.sample()) - d;
    }
    d = d * a(col, col);
    const K inv = scalar_one(a.sample()) / a(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      if (scalar_is_zero(a(i, col))) continue;
      const K f = inv * a(i, col);
      for (size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return d;
}

// Fraction-free determinant for Laurent-polynomial matrices (Bareiss after
// clearing denominators and powers of u per row).  Defined in polydet.cpp.
LaurentPoly det(const Matrix<LaurentPoly>& m);

}  // namespace coxglue

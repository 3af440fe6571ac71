#pragma once

#include <optional>
#include <vector>

#include "coxglue/matrix.hpp"

namespace coxglue {

// Row-style Hermite normal form: pivot columns strictly increase, pivots are
// positive, entries above a pivot lie in [0, pivot), zero rows are dropped.
Matrix<Int> hnf(Matrix<Int> a);

// Returns (H, U) with U unimodular, U*A = H', where H' is A's full row-op
// reduction (zero rows kept so U stays square).
std::pair<Matrix<Int>, Matrix<Int>> hnf_with_transform(Matrix<Int> a);

// Basis of {x : Ax = 0} over the integers, one vector per row.
Matrix<Int> int_kernel(const Matrix<Int>& a);

// Subgroup of Z^n in canonical HNF representation.
class IntegerLattice {
public:
  explicit IntegerLattice(size_t ambient)
      : ambient_(ambient), basis_(Matrix<Int>::zero_like(0, ambient, Int(0))) {}

  static IntegerLattice from_rows(size_t ambient, const Matrix<Int>& rows) {
    require(rows.rows() == 0 || rows.cols() == ambient, "AmbientMismatch",
            "generators have wrong width");
    IntegerLattice l(ambient);
    if (rows.rows()) l.basis_ = hnf(rows);
    return l;
  }

  static IntegerLattice full(size_t ambient) {
    return from_rows(ambient, Matrix<Int>::identity(ambient, Int(0)));
  }

  size_t ambient() const { return ambient_; }
  size_t rank() const { return basis_.rows(); }
  const Matrix<Int>& basis() const { return basis_; }

  bool contains(const std::vector<Int>& v) const;

  // For full-rank lattices, the index [Z^n : L]; otherwise empty.
  std::optional<Int> index_in_ambient() const;

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const IntegerLattice& a, const IntegerLattice& b) {
    return !(a == b);
  }

private:
  size_t ambient_;
  Matrix<Int> basis_;
};

// Lattice generated by the columns of m (m as a map Z^cols -> Z^rows).
IntegerLattice lattice_image(const Matrix<Int>& m);

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b);
bool lattice_membership(const IntegerLattice& l, const std::vector<Int>& v);

// {(x, y) : Mx - y in L} as a sublattice of Z^(cols(M) + rows(M)).
IntegerLattice lattice_preimage_condition(const Matrix<Int>& m,
                                          const IntegerLattice& l);

// {x : Ax in L} as a sublattice of Z^cols(A).
IntegerLattice lattice_preimage(const Matrix<Int>& a, const IntegerLattice& l);

}  // namespace coxglue

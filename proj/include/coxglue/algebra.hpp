#pragma once

#include <cstdint>
#include <vector>

#include "coxglue/matrix.hpp"
#include "coxglue/polyfp.hpp"

namespace coxglue {

// Finite-dimensional associative unital algebra over a prime field, given by
// structure constants: table[a][b] holds the coordinates of e_a * e_b.
struct Algebra {
  Fp like;  // carries the modulus
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<Fp>>> table;
  std::vector<Fp> unit;

  std::vector<Fp> mul(const std::vector<Fp>& x, const std::vector<Fp>& y) const;
  Matrix<Fp> left_mult(const std::vector<Fp>& x) const;   // y -> x*y
  Matrix<Fp> right_mult(const std::vector<Fp>& x) const;  // y -> y*x
  Matrix<Fp> basis_left_mult(std::size_t a) const;
  Matrix<Fp> basis_right_mult(std::size_t a) const;

  static Algebra field(const Fp& like);  // the 1-dimensional algebra
};

// Unit laws and associativity on all basis triples (checked through
// left-multiplication matrices).
void check_algebra(const Algebra& alg);

// A small generating set of basis indices: together with the unit they
// generate the whole algebra under products and spans.  Module-theoretic
// scans (spinning, Hom spaces) only need equivariance for these.
std::vector<std::size_t> generator_indices(const Algebra& alg);

// Finite-dimensional left module: one action matrix per algebra basis
// element.
struct AModule {
  const Algebra* alg = nullptr;
  std::size_t dim = 0;
  std::vector<Matrix<Fp>> act;

  Matrix<Fp> act_of(const std::vector<Fp>& x) const;  // sum of x_a act[a]
};

// Module axioms: the unit acts as the identity and act is multiplicative on
// all basis pairs.
void check_module(const AModule& m);

AModule regular_module(const Algebra& alg);

// Column basis of the smallest submodule containing the given columns.
Matrix<Fp> spin(const AModule& m, const Matrix<Fp>& seed_cols,
                const std::vector<std::size_t>& gens);

// Module structures induced on an invariant column span and on its quotient.
AModule submodule(const AModule& m, const Matrix<Fp>& basis_cols);
AModule quotient_module(const AModule& m, const Matrix<Fp>& basis_cols);

// Basis of the space of module maps a -> b, one map per row, flattened
// row-major as a (dim b) x (dim a) matrix.
Matrix<Fp> hom_space(const AModule& a, const AModule& b);

// Isomorphism test for SIMPLE modules (nonzero Hom between simples is an
// isomorphism).
bool simple_isomorphic(const AModule& a, const AModule& b);

FpPoly minimal_polynomial(const Matrix<Fp>& m);

// Composition factors of m (with multiplicity), found by MeatAxe-style
// splitting: random elements in the image of the acting algebra, kernels of
// irreducible factors of their minimal polynomials, submodule spinning, and
// the nullity-equals-degree certificate (checked on the module and its
// transpose) for irreducibility.
std::vector<AModule> composition_factors(const AModule& m, std::mt19937& rng);

// All simple modules of the algebra, pairwise non-isomorphic: the
// composition factors of the regular module, deduplicated.  The factor
// dimensions (with multiplicity) must add up to dim(alg), which certifies
// that the accounting closed.
std::vector<AModule> simple_modules(const Algebra& alg, std::size_t dim_cap = 64,
                                    std::uint32_t seed = 2026u);

}  // namespace coxglue

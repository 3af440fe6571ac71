#pragma once

#include <cstdint>
#include <vector>

#include "coxglue/algebra.hpp"
#include "coxglue/coxeter.hpp"
#include "coxglue/lattice.hpp"
#include "coxglue/subspace.hpp"

namespace coxglue {

// Bimodule over a pair of site algebras: left and right action matrices, one
// per basis element of the respective algebra.
struct Bimodule {
  std::size_t dim = 0;
  std::vector<Matrix<Fp>> left;
  std::vector<Matrix<Fp>> right;
};

// Gluing datum on n sites: site algebras R_i, bimodules M_ij (left R_i,
// right R_j, with M_ii = R_i), and composition tensors
// nu_ijk : M_ij (x) M_jk -> M_ik, stored as a (dim M_ik) x (dim M_ij * dim
// M_jk) matrix whose column u * dim(M_jk) + v is the image of e_u (x) e_v.
struct GluingDatum {
  int n = 0;
  Fp like;
  std::vector<Algebra> site;
  std::vector<Bimodule> mod;   // n*n entries, (i, j) at i*n + j
  std::vector<Matrix<Fp>> nu;  // n*n*n entries, (i, j, k) at (i*n + j)*n + k

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(j);
  }
  std::size_t idx3(int i, int j, int k) const {
    return idx(i, j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k);
  }
  const Bimodule& at(int i, int j) const { return mod[idx(i, j)]; }
  std::size_t mdim(int i, int j) const { return mod[idx(i, j)].dim; }
  const Matrix<Fp>& nu_at(int i, int j, int k) const { return nu[idx3(i, j, k)]; }
};

// Fills in everything the caller may leave implicit — diagonal bimodules
// (the regular bimodule of each site), empty off-diagonal slots (zero
// bimodules), and the composition tensors with a repeated index (which are
// forced to be the action maps) — then validates the whole datum:
// site algebras, bimodule axioms, linearity and balance of each nu, the
// forced identities, and the associativity equation on every quadruple of
// sites (AssociativityFailure names the quadruple).
void seal_datum(GluingDatum& d);
void check_datum(const GluingDatum& d);

// Ready-made datums.
GluingDatum product_datum(std::vector<Algebra> sites);      // all M_ij = 0
GluingDatum triangular_datum(const Fp& like);               // M_12 = k, M_21 = 0
// One-dimensional sites indexed by the elements of W, every bimodule k, and
// nu scaled by q^((l(w) + l(w') - l(ww'))/2); q = 1 collapses to a matrix
// algebra, q = 0 keeps only the length-additive compositions.
GluingDatum w_gluing_datum(const CoxeterSystem& sys, const Fp& q);

// The algebra (+)_{i,j} M_ij with multiplication through nu, its block
// layout, and the site idempotents (1 = sum of them; e_i G e_j = M_ij).
struct GluingAlgebra {
  int n = 0;
  Algebra alg;
  std::vector<std::size_t> off;        // block offsets, indexed like mod
  std::vector<std::vector<Fp>> idem;   // e_i coordinates

  std::size_t block_offset(int i, int j) const {
    return off[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j)];
  }
};

GluingAlgebra assemble(const GluingDatum& d);

// Reconstructs each bimodule from the assembled algebra (the block
// e_i G e_j with its corner actions) and checks it matches the datum.
void braverman_check(const GluingDatum& d, const GluingAlgebra& g);

// Quotient presentation of M (x)_R A, where the pure-tensor coordinate of
// (u, w) is u * dim(A) + w.
struct TensorOverR {
  Matrix<Fp> q;      // quotient map out of the plain tensor product
  Matrix<Fp> lift;   // right inverse of q
  Subspace<Fp> rel;  // span of the balance relations
};
TensorOverR balanced_tensor(const std::vector<Matrix<Fp>>& right_on_m,
                            std::size_t mdim,
                            const std::vector<Matrix<Fp>>& act_on_a,
                            std::size_t adim, const Fp& like);
// q * f * lift, asserting that f preserves the relation span.
Matrix<Fp> descend_endo(const TensorOverR& t, const Matrix<Fp>& f);

// Is the bimodule projective as a right module over r (the site algebra of
// its right action)?  Decided by splitting the evaluation map from a free
// right module.
bool right_projective(const Algebra& r, const Bimodule& m);

// The site component e_k m as a module over R_k.
AModule restrict_site(const GluingAlgebra& g, const GluingDatum& d,
                      const AModule& m, int k);

// G e_k (x)_{R_k} A with its quotient presentation.
struct ShriekModule {
  AModule mod;          // over the glued algebra
  std::size_t gdim = 0; // dim G e_k
  std::vector<std::size_t> goff;  // block offsets of (i, k) inside G e_k
  std::size_t adim = 0;
  TensorOverR tensor;
};
ShriekModule extend_shriek(const GluingAlgebra& g, const GluingDatum& d,
                           const AModule& a, int k);

// Left-R_k module maps e_k G -> A, with G acting by right translation.
struct StarModule {
  AModule mod;
  std::size_t hdim = 0;  // dim e_k G
  std::vector<std::size_t> hoff;  // block offsets of (k, j) inside e_k G
  std::size_t adim = 0;
  Matrix<Fp> basis;  // one flattened (adim x hdim) map per row
};
StarModule extend_star(const GluingAlgebra& g, const GluingDatum& d,
                       const AModule& a, int k);

// The canonical map from the shriek to the star extension: a pure tensor
// gamma (x) a goes to the map x -> (x gamma) a.
Matrix<Fp> mu_matrix(const GluingAlgebra& g, const GluingDatum& d,
                     const AModule& a, int k, const ShriekModule& sh,
                     const StarModule& st);

// Image of mu as a submodule of the star extension.
AModule middle_extension(const GluingAlgebra& g, const GluingDatum& d,
                         const AModule& a, int k);

// Class-group comparison: classes of the simple glued modules inside the sum
// of the site class groups versus the lattice cut out by the condition
// phi_ij c_j - c_i in K_ij.
struct K0Report {
  std::vector<std::size_t> site_counts;       // simples per site
  std::vector<std::size_t> glued_simple_dims;
  Matrix<Int> classes;        // one row per glued simple
  std::vector<Matrix<Int>> phi;  // n*n blocks, phi_ij on site class groups
  std::vector<std::vector<std::vector<bool>>> in_c;  // in_c[i][j][t]
  IntegerLattice simple_span{0};
  IntegerLattice k_phi{0};
  bool equal = false;
  bool injective = false;  // classes of distinct simples are independent
};
K0Report k0_verify(const GluingDatum& d, std::size_t dim_cap = 64,
                   std::uint32_t seed = 2026u);

// Support of each simple glued module over a W-indexed datum: either all of
// W or an intersection of one-generator half-set translates (and convex).
struct SimpleSupport {
  std::size_t dim = 0;
  std::vector<std::uint32_t> supp;  // element indices, ascending
  bool full = false;
  bool matches_intersection = false;  // meaningful when !full
  bool convex = false;
};
struct SupportReport {
  std::vector<SimpleSupport> simples;
};
SupportReport support_scan(const GluingDatum& d, const CoxeterSystem& sys,
                           std::size_t dim_cap = 64,
                           std::uint32_t seed = 2026u);

}  // namespace coxglue

// Acceptance gate: one line per criterion, exit 0 only if every criterion
// passes.  Each check is exact (no tolerances); randomized pieces use fixed
// seeds.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coxglue/algebra.hpp"
#include "coxglue/braidrep.hpp"
#include "coxglue/counterexample.hpp"
#include "coxglue/coxeter.hpp"
#include "coxglue/gluing.hpp"
#include "coxglue/kwspace.hpp"
#include "coxglue/simplicial.hpp"

using namespace coxglue;

namespace {

// --- small helpers ---------------------------------------------------------

LaurentPoly from_coeffs(const std::vector<long>& coeffs) {
  LaurentPoly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    p = p + LaurentPoly::u(static_cast<int>(i), Rat(coeffs[i]));
  return p;
}

Matrix<Rat> direct_sum(const std::vector<Matrix<Rat>>& blocks) {
  std::size_t n = 0;
  for (const Matrix<Rat>& b : blocks) n += b.rows();
  Matrix<Rat> out = Matrix<Rat>::zero_like(n, n, Rat(0));
  std::size_t off = 0;
  for (const Matrix<Rat>& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(off + r, off + c) = b(r, c);
    off += b.rows();
  }
  return out;
}

BraidRep<Rat> sum_rep(const CoxeterSystem& sys,
                      const std::vector<BraidRep<Rat>>& parts) {
  std::vector<Matrix<Rat>> gens;
  for (int s = 0; s < sys.rank(); ++s) {
    std::vector<Matrix<Rat>> blocks;
    for (const BraidRep<Rat>& p : parts) blocks.push_back(p.gen(s));
    gens.push_back(direct_sum(blocks));
  }
  return BraidRep<Rat>(&sys, gens);
}

BraidRep<Rat> scalar_rep(const CoxeterSystem& sys,
                         const std::vector<Rat>& values) {
  std::vector<Matrix<Rat>> gens;
  for (int s = 0; s < sys.rank(); ++s)
    gens.push_back(Matrix<Rat>::from_rows({{values[static_cast<std::size_t>(s)]}}));
  return BraidRep<Rat>(&sys, gens);
}

// --- 1: determinant obstruction for the order-6 system ----------------------

bool c1_obstruction() {
  const CoxeterSystem sys = CoxeterSystem::from_label("A", 2);
  const ObstructionReport r = divisibility_analysis(sys, std::nullopt);
  bool ok = r.poincare == from_coeffs({1, 2, 2, 1});
  ok = ok && r.signed_poincare == from_coeffs({1, -2, 2, -1});
  ok = ok && r.divisible_by_poincare && r.divisible_by_signed;
  ok = ok && r.det_mod_phi6.is_zero();
  ok = ok && r.group_mod_phi6.has_value() && !r.group_mod_phi6->is_zero();
  ok = ok && r.group_mod_phi6.has_value() &&
       *r.group_mod_phi6 == from_coeffs({4, -2});
  ok = ok && r.solvable.has_value() && !*r.solvable;
  return ok;
}

// --- 2: goodness across the shipped families --------------------------------

bool c2_goodness() {
  // (a) 100 random invertible one-generator representations over Q, dim <= 6.
  const CoxeterSystem a1 = CoxeterSystem::from_label("A", 1);
  std::mt19937 rng(2026u);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 6);
    Matrix<Rat> g = Matrix<Rat>::zero_like(d, d, Rat(0));
    do {
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          g(r, c) = Rat(static_cast<long>(rng() % 7u) - 3);
    } while (rank(g) < d);
    const BraidRep<Rat> rep(&a1, {g});
    if (!is_good(rep).good) return false;
  }

  // (b) regular Hecke modules at q = 2.
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  const CoxeterSystem b2 = CoxeterSystem::from_label("B", 2);
  if (!is_good(hecke_regular_rep(a2, Rat(2))).good) return false;
  if (!is_good(hecke_regular_rep(b2, Rat(2))).good) return false;

  // (c) three-strand cubic representations at q = 2: direct sums of
  // validated one- and two-dimensional blocks.
  {
    const std::vector<BraidRep<Rat>> blocks = {
        scalar_rep(a2, {Rat(2), Rat(2)}),
        scalar_rep(a2, {Rat(1), Rat(1)}),
        scalar_rep(a2, {Rat(-1), Rat(-1)}),
        rank2_two_dim_rep(a2, Rat(2), Rat(1)),
        rank2_two_dim_rep(a2, Rat(2), Rat(-1)),
        rank2_two_dim_rep(a2, Rat(1), Rat(-1))};
    for (const BraidRep<Rat>& b : blocks)
      if (!validate(b).ok || !check_cubic(b, Rat(2))) return false;
    const std::vector<std::vector<std::size_t>> sums = {
        {0, 3}, {3, 4}, {1, 2, 3}, {5, 0}, {0, 1, 4}};
    for (const std::vector<std::size_t>& pick : sums) {
      std::vector<BraidRep<Rat>> parts;
      for (const std::size_t i : pick) parts.push_back(blocks[i]);
      const BraidRep<Rat> rep = sum_rep(a2, parts);
      if (!validate(rep).ok || !check_cubic(rep, Rat(2))) return false;
      if (!is_good(rep).good) return false;
    }
  }

  // (d) four-strand-relation (m = 4) cubic representations at q = 2.
  {
    const std::vector<BraidRep<Rat>> blocks = {
        scalar_rep(b2, {Rat(2), Rat(2)}),
        scalar_rep(b2, {Rat(2), Rat(-1)}),
        scalar_rep(b2, {Rat(1), Rat(2)}),
        rank2_two_dim_rep(b2, Rat(2), Rat(1)),
        rank2_two_dim_rep(b2, Rat(2), Rat(-1))};
    for (const BraidRep<Rat>& b : blocks)
      if (!validate(b).ok || !check_cubic(b, Rat(2))) return false;
    const std::vector<std::vector<std::size_t>> sums = {
        {0, 3}, {3, 4}, {1, 2, 4}, {0, 1, 3}};
    for (const std::vector<std::size_t>& pick : sums) {
      std::vector<BraidRep<Rat>> parts;
      for (const std::size_t i : pick) parts.push_back(blocks[i]);
      const BraidRep<Rat> rep = sum_rep(b2, parts);
      if (!validate(rep).ok || !check_cubic(rep, Rat(2))) return false;
      if (!is_good(rep).good) return false;
    }
  }
  return true;
}

// --- 3: element subspaces are word independent, top one is the augmentation -

bool c3_ideals() {
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  const CoxeterSystem b2 = CoxeterSystem::from_label("B", 2);
  const CoxeterSystem a3 = CoxeterSystem::from_label("A", 3);

  std::vector<BraidRep<Rat>> reps;
  reps.push_back(hecke_regular_rep(a2, Rat(2)));
  reps.push_back(rank2_two_dim_rep(a2, Rat(2), Rat(1)));
  reps.push_back(scalar_rep(a2, {Rat(2), Rat(2)}));
  reps.push_back(hecke_regular_rep(b2, Rat(2)));
  reps.push_back(rank2_two_dim_rep(b2, Rat(2), Rat(3)));
  reps.push_back(hecke_regular_rep(a3, Rat(2)));

  for (const BraidRep<Rat>& rep : reps) {
    if (!validate(rep).ok) return false;
    const CoxeterSystem& sys = rep.system();
    // v_w recomputes the subspace from every reduced word and requires the
    // results to agree, so running it over all of W is the whole check.
    for (std::uint32_t i = 0; i < sys.order(); ++i) v_w(rep, sys.element(i));
    if (!augmentation_check(rep)) return false;
  }
  return true;
}

// --- 4: coset complex identities --------------------------------------------

bool c4_complex_identities() {
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  const CoxeterSystem b2 = CoxeterSystem::from_label("B", 2);
  std::vector<BraidRep<Rat>> reps;
  reps.push_back(hecke_regular_rep(a2, Rat(2)));
  reps.push_back(rank2_two_dim_rep(a2, Rat(2), Rat(1)));
  reps.push_back(scalar_rep(a2, {Rat(2), Rat(2)}));
  reps.push_back(hecke_regular_rep(b2, Rat(2)));
  reps.push_back(rank2_two_dim_rep(b2, Rat(2), Rat(3)));

  for (const BraidRep<Rat>& rep : reps) {
    if (!euler_identity_check(rep)) return false;
    for (int i = 0; i < rep.system().rank(); ++i)
      if (!half_identity_check(rep, i)) return false;
  }
  return true;
}

// --- 5: interval systems resolve; a crafted violation is caught -------------

bool c5_interval_resolutions() {
  std::mt19937 rng(20260817u);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4u);
    const std::size_t t_count = rng() % 7u;
    std::vector<unsigned> upper(t_count), lower(t_count);
    std::vector<std::size_t> dims(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
      do {
        upper[t] = rng() % (1u << n);
        lower[t] = rng() % (1u << n);
      } while (upper[t] == lower[t]);
      dims[t] = rng() % 4u;
    }
    std::vector<std::vector<int>> t1(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> t2(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (std::size_t t = 0; t < t_count; ++t) {
        if (upper[t] & (1u << i))
          t1[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
        if (!(lower[t] & (1u << i)))
          t2[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
      }
    const CoefficientSystem<Rat> sys =
        build_homlem_instance(t_count, n, t1, t2, dims, Rat(0));
    std::size_t expect = 0;
    for (std::size_t t = 0; t < t_count; ++t)
      if (lower[t] == 0u) expect += dims[t];
    const std::vector<std::size_t> h = homology(chain_complex(sys, false));
    if ((h.empty() ? 0 : h.at(0)) != expect) return false;
    for (std::size_t i = 1; i < h.size(); ++i)
      if (h[i] != 0) return false;
    for (const std::size_t x : homology(chain_complex(sys, true)))
      if (x != 0) return false;
  }

  // Control: one space living only on the full two-vertex subset cannot come
  // from index intervals, and the complex must detect it (top homology).
  CoefficientSystem<Rat> bad;
  bad.n = 2;
  bad.like = Rat(0);
  bad.dims = {0, 0, 0, 1};
  bad.cover.resize(4);
  bad.cover[1] = {Matrix<Rat>::zero_like(0, 0, Rat(0))};
  bad.cover[2] = {Matrix<Rat>::zero_like(0, 0, Rat(0))};
  bad.cover[3] = {Matrix<Rat>::zero_like(0, 1, Rat(0)),
                  Matrix<Rat>::zero_like(0, 1, Rat(0))};
  check_coherent(bad);
  const std::vector<std::size_t> h = homology(chain_complex(bad, false));
  bool violated = false;
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] != 0) violated = true;
  return violated;
}

// --- 6: half-set convexity, factor witnesses, supports, geodesics -----------

bool c6_combinatorics() {
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  const CoxeterSystem a3 = CoxeterSystem::from_label("A", 3);
  const CoxeterSystem b2 = CoxeterSystem::from_label("B", 2);
  const CoxeterSystem i26 = CoxeterSystem::from_label("I2", 6);

  for (const CoxeterSystem* sys : {&a2, &a3, &b2, &i26})
    for (int i = 0; i < sys->rank(); ++i)
      if (!is_convex(*sys, half_set(*sys, i, Side::Right))) return false;

  // Witness factorization for every (s, w) with s w = w s' lengthening w.
  for (const CoxeterSystem* sys : {&a3, &b2})
    for (int s = 0; s < sys->rank(); ++s)
      for (std::uint32_t i = 1; i < sys->order(); ++i) {
        const Elt w = sys->element(i);
        const Elt sw = sys->left(s, w);
        if (sys->length(sw) != sys->length(w) + 1) continue;
        bool commutes = false;
        for (int s2 = 0; s2 < sys->rank() && !commutes; ++s2)
          if (sys->right(w, s2) == sw) commutes = true;
        if (!commutes) continue;
        const SizigWitness wit = sizig3_witness(s, w);
        if (!(sys->mul(wit.w_rank2, wit.w_rest) == w)) return false;
        if (sys->length(w) !=
            sys->length(wit.w_rank2) + sys->length(wit.w_rest))
          return false;
      }

  // Support of a conjugate reflection vs maximal-parabolic membership.
  for (int i = 0; i < a3.rank(); ++i) {
    const Elt si = a3.simple(i);
    for (const Elt y : half_set(a3, i, Side::Right)) {
      const Elt r = a3.mul(a3.mul(y, si), a3.inv(y));
      std::vector<int> lhs = simple_support(r);
      std::sort(lhs.begin(), lhs.end());
      std::vector<int> rhs;
      for (int j = 0; j < a3.rank(); ++j) {
        std::vector<int> J;
        for (int s = 0; s < a3.rank(); ++s)
          if (s != j) J.push_back(s);
        if (coset_in_half(J, y, i)) rhs.push_back(j);
      }
      if (lhs != rhs) return false;
    }
  }

  // Geodesic obstruction, exhaustively over both systems.
  for (const CoxeterSystem* sys : {&a2, &b2})
    for (int i = 0; i < sys->rank(); ++i) {
      const Elt si = sys->simple(i);
      for (std::uint32_t yi = 0; yi < sys->order(); ++yi) {
        const Elt y = sys->element(yi);
        const Elt ry = sys->mul(sys->mul(y, si), sys->inv(y));
        for (std::uint32_t wi = 0; wi < sys->order(); ++wi) {
          const Elt w = sys->element(wi);
          const Elt rw = sys->mul(sys->mul(w, si), sys->inv(w));
          if (sys->length(ry) <= sys->length(rw)) continue;
          if (!geodesic_obstruction_check(y, w, i)) return false;
        }
      }
    }
  return true;
}

// --- 7: class groups and extension round trips ------------------------------

bool c7_class_groups() {
  const Fp like(0, 101);
  const CoxeterSystem a1 = CoxeterSystem::from_label("A", 1);
  std::vector<GluingDatum> data;
  data.push_back(product_datum({Algebra::field(like), Algebra::field(like)}));
  data.push_back(triangular_datum(like));
  // Two sites with both connecting bimodules nonzero.
  data.push_back(w_gluing_datum(a1, Fp(1, 101)));

  std::mt19937 rng(20260817u);
  for (const GluingDatum& d : data) {
    const K0Report k = k0_verify(d);
    if (!k.equal || !k.injective) return false;

    const GluingAlgebra g = assemble(d);
    const std::vector<AModule> glued = simple_modules(g.alg);
    if (glued.empty()) return false;
    for (const AModule& s : glued)
      for (int site = 0; site < d.n; ++site) {
        const AModule res = restrict_site(g, d, s, site);
        if (res.dim == 0) continue;
        if (composition_factors(res, rng).size() != 1) return false;
      }

    for (int site = 0; site < d.n; ++site)
      for (const AModule& a : simple_modules(d.site[static_cast<std::size_t>(site)])) {
        const AModule mid = middle_extension(g, d, a, site);
        if (mid.dim == 0) return false;
        if (composition_factors(mid, rng).size() != 1) return false;
        const AModule back = restrict_site(g, d, mid, site);
        if (!simple_isomorphic(back, a)) return false;
      }
  }
  return true;
}

// --- 8: supports of simples over the degenerate group datum ------------------

bool c8_supports() {
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  // Scale zero kills every composite that drops length, so the double steps
  // degenerate to zero maps.
  const GluingDatum d = w_gluing_datum(a2, Fp(0, 101));
  const SupportReport s = support_scan(d, a2);
  if (s.simples.empty()) return false;
  for (const SimpleSupport& sim : s.simples) {
    if (!(sim.full || sim.matches_intersection)) return false;
    if (!sim.convex) return false;
  }
  return true;
}

// --- 9: the dual pairing is nonsingular and adjoint --------------------------

bool c9_pairing() {
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  const CoxeterSystem b2 = CoxeterSystem::from_label("B", 2);
  std::vector<BraidRep<Rat>> reps;
  reps.push_back(hecke_regular_rep(a2, Rat(2)));
  reps.push_back(hecke_regular_rep(b2, Rat(2)));
  reps.push_back(scalar_rep(a2, {Rat(2), Rat(2)}));

  for (const BraidRep<Rat>& rep : reps) {
    const CoxeterSystem& sys = rep.system();
    std::vector<Matrix<Rat>> dgens;
    for (int s = 0; s < sys.rank(); ++s)
      dgens.push_back(rep.gen_inv(s).transpose());
    const BraidRep<Rat> dual(&sys, dgens);
    // chi_pairing verifies the adjunction identity on every basis vector and
    // refuses singular Gram matrices; re-check the rank here regardless.
    const Matrix<Rat> gram = chi_pairing(rep, dual);
    if (gram.rows() == 0 || rank(gram) != gram.rows()) return false;
  }
  return true;
}

// --- 10: scalar induction validates and preserves goodness -------------------

bool c10_induction() {
  const CoxeterSystem a2 = CoxeterSystem::from_label("A", 2);
  const CoxeterSystem a1 = CoxeterSystem::from_label("A", 1);
  const std::vector<Rat> values = {Rat(2),  Rat(1),      Rat(-1),
                                   Rat(3),  Rat(-2),     Rat(1) / 2,
                                   Rat(-5), Rat(7) / 3,  Rat(-1) / 4,
                                   Rat(10), Rat(-9) / 7, Rat(6)};
  for (const Rat& q : values) {
    const Matrix<Rat> one = Matrix<Rat>::from_rows({{q}});
    const BraidRep<Rat> sub(&a1, {one});
    const bool input_good = is_good(sub).good;
    const BraidRep<Rat> big = induce(a2, {0}, 1, {one}, Rat(1));
    if (!validate(big).ok) return false;
    if (input_good && !is_good(big).good) return false;
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
      {"determinant obstruction at the sixth root of unity", c1_obstruction},
      {"goodness across the shipped families", c2_goodness},
      {"word-independent element subspaces and augmentation", c3_ideals},
      {"coset complex identities", c4_complex_identities},
      {"interval resolutions with a violating control", c5_interval_resolutions},
      {"half-set convexity, witnesses, supports, geodesics", c6_combinatorics},
      {"class-group comparison and extension round trips", c7_class_groups},
      {"simple supports over the degenerate group datum", c8_supports},
      {"dual pairing nonsingular and adjoint", c9_pairing},
      {"scalar induction preserves goodness", c10_induction},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string note;
    try {
      pass = criteria[i].second();
    } catch (const std::exception& e) {
      note = std::string("  (") + e.what() + ")";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1
              << "  " << criteria[i].first << "  [" << std::fixed
              << std::setprecision(2) << secs << "s]" << note << "\n";
    all = all && pass;
  }
  std::cout << (all ? "acceptance: all criteria passed"
                    : "acceptance: FAILURES above")
            << "\n";
  return all ? 0 : 1;
}

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include "coxglue/braidrep.hpp"
#include "coxglue/coxeter.hpp"
#include "coxglue/fp.hpp"
#include "coxglue/matrix.hpp"
#include "coxglue/subspace.hpp"

namespace coxglue {

// Image of a subspace under a linear map.
template <class K>
Subspace<K> map_subspace(const Matrix<K>& m, const Subspace<K>& v) {
  require(v.ambient() == m.cols(), "AmbientMismatch", "map/subspace shapes");
  return image(m * v.basis().transpose());
}

// V_s = (s^2 - 1)V.
template <class K>
Subspace<K> v_s(const BraidRep<K>& rep, int s) {
  const Matrix<K>& g = rep.gen(s);
  const Matrix<K> id = Matrix<K>::identity(rep.dim(), rep.like());
  return image(g * g - id);
}

namespace detail {

// V along one reduced word, by V_{w1 w2} = V_{w1} + tau(w1) V_{w2} unrolled
// left to right.
template <class K>
Subspace<K> v_along(const BraidRep<K>& rep, const Word& word) {
  Subspace<K> acc(rep.dim(), rep.like());
  Matrix<K> prefix = Matrix<K>::identity(rep.dim(), rep.like());
  for (int s : word) {
    acc = subspace_sum(acc, map_subspace(prefix, v_s(rep, s)));
    prefix = prefix * rep.gen(s);
  }
  return acc;
}

}  // namespace detail

// The right ideal subspace V_w.  The recursion is run along every reduced
// word of w (two words beyond the length cap) and the results must agree;
// they do for any representation satisfying the braid relations.
template <class K>
Subspace<K> v_w(const BraidRep<K>& rep, Elt w) {
  const CoxeterSystem& sys = rep.system();
  sys.check_elt(w);
  constexpr int kAllWordsLengthCap = 8;
  constexpr std::size_t kWordCountCap = 2000;
  const std::size_t limit =
      sys.length(w) <= kAllWordsLengthCap ? kWordCountCap : 2;
  const std::vector<Word> words = sys.reduced_words(w, limit);
  Subspace<K> out = detail::v_along(rep, words.at(0));
  for (std::size_t i = 1; i < words.size(); ++i)
    require(subspace_eq(out, detail::v_along(rep, words[i])),
            "WellDefinednessFailure",
            "V_w differs between reduced words; the generators do not "
            "satisfy the braid relations");
  return out;
}

// V_{w0} equals the span of (rho(p) - 1)V over the pure braid generators p,
// i.e. the representation-level image of the augmentation ideal of the pure
// braid subgroup.
template <class K>
bool augmentation_check(const BraidRep<K>& rep) {
  const CoxeterSystem& sys = rep.system();
  const Matrix<K> id = Matrix<K>::identity(rep.dim(), rep.like());
  Subspace<K> aug(rep.dim(), rep.like());
  for (const BraidWord& p : pure_braid_generators(sys))
    aug = subspace_sum(aug, image(rep.act(p) - id));
  return subspace_eq(v_w(rep, sys.longest()), aug);
}

// tau(z) for every z, indexed by element number.  Each element extends its
// ShortLex parent by one letter, so the whole table costs one matrix product
// per element.
template <class K>
std::vector<Matrix<K>> tau_table(const BraidRep<K>& rep) {
  const CoxeterSystem& sys = rep.system();
  std::vector<Matrix<K>> t;
  t.reserve(sys.order());
  t.push_back(Matrix<K>::identity(rep.dim(), rep.like()));
  for (std::uint32_t i = 1; i < sys.order(); ++i) {
    Elt w = sys.element(i);
    const int s = sys.word(w).back();
    Elt parent = sys.right(w, s);
    t.push_back(t[parent.idx] * rep.gen(s));
  }
  return t;
}

// Tuples (x_w) over the listed elements, subject to x_{sw} - rho(s) x_w in
// V_s for the listed generators.  The full glued space uses all of W and all
// of S; a coset space uses one right coset W_J x and the generators in J.
template <class K>
struct KWSpace {
  const BraidRep<K>* rep = nullptr;
  std::vector<int> cond_gens;  // conditions imposed for these generators
  std::vector<Elt> elements;   // tuple components, ascending element order
  Subspace<K> basis;           // subspace of K^{elements.size() * dim}

  std::size_t block(Elt w) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), w);
    require(it != elements.end() && *it == w, "BadIndex",
            "element is not a tuple component");
    return static_cast<std::size_t>(it - elements.begin());
  }
  bool is_full() const {
    return rep != nullptr && elements.size() == rep->system().order() &&
           cond_gens.size() == static_cast<std::size_t>(rep->system().rank());
  }
};

namespace detail {

// The section with target components (tau(w y^{-1}) v)_w, as a matrix
// V -> K^{elements * dim}.  No membership assertions here; callers add them.
template <class K>
Matrix<K> section_matrix(const BraidRep<K>& rep,
                         const std::vector<Matrix<K>>& tau,
                         const std::vector<Elt>& elements, Elt y) {
  const CoxeterSystem& sys = rep.system();
  const std::size_t d = rep.dim();
  Matrix<K> m = Matrix<K>::zero_like(elements.size() * d, d, rep.like());
  const Elt yinv = sys.inv(y);
  for (std::size_t b = 0; b < elements.size(); ++b) {
    const Matrix<K>& t = tau[sys.mul(elements[b], yinv).idx];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(b * d + r, c) = t(r, c);
  }
  return m;
}

template <class K>
bool columns_inside(const Subspace<K>& space, const Matrix<K>& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<K> col(m.rows(), scalar_zero(m.sample()));
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, j);
    if (!space.contains(col)) return false;
  }
  return true;
}

}  // namespace detail

// Glued space over one right coset W_J x: the defining conditions are
// imposed for the generators in J, whose left action preserves the coset.
// The basis is one kernel computation: stack, per (s, w), the block row
// (quotient by V_s) o (component sw - rho(s) o component w).
template <class K>
KWSpace<K> kw_space_coset(const BraidRep<K>& rep, std::vector<int> J, Elt x) {
  const CoxeterSystem& sys = rep.system();
  sys.check_elt(x);
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (int s : J) sys.check_gen(s);

  KWSpace<K> out{&rep, J, {}, Subspace<K>(0, rep.like())};
  for (Elt u : sys.parabolic_elements(J)) out.elements.push_back(sys.mul(u, x));
  std::sort(out.elements.begin(), out.elements.end());

  const std::size_t d = rep.dim();
  const std::size_t nblk = out.elements.size();
  const std::size_t ambient = nblk * d;

  std::vector<Matrix<K>> quot;  // quotient map by V_s, for s in J
  std::size_t total_rows = 0;
  for (int s : J) {
    quot.push_back(v_s(rep, s).quotient_map());
    total_rows += quot.back().rows() * nblk;
  }

  Matrix<K> cond = Matrix<K>::zero_like(total_rows, ambient, rep.like());
  std::size_t at = 0;
  for (std::size_t si = 0; si < J.size(); ++si) {
    const Matrix<K>& q = quot[si];
    const Matrix<K> qg = q * rep.gen(J[si]);
    for (std::size_t b = 0; b < nblk; ++b) {
      const std::size_t b2 = out.block(sys.left(J[si], out.elements[b]));
      for (std::size_t r = 0; r < q.rows(); ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          cond(at + r, b2 * d + c) += q(r, c);
          cond(at + r, b * d + c) -= qg(r, c);
        }
      }
      at += q.rows();
    }
  }
  out.basis = kernel_space(cond);

  // The space contains every section image i_y(V), y a tuple component.
  const std::vector<Matrix<K>> tau = tau_table(rep);
  for (Elt y : out.elements)
    require(detail::columns_inside(
                out.basis, detail::section_matrix(rep, tau, out.elements, y)),
            "Internal", "a section image escapes the glued space");
  return out;
}

// The full glued space K_W(V).
template <class K>
KWSpace<K> kw_space(const BraidRep<K>& rep) {
  std::vector<int> all(static_cast<std::size_t>(rep.system().rank()));
  for (std::size_t s = 0; s < all.size(); ++s) all[s] = static_cast<int>(s);
  return kw_space_coset(rep, all, rep.system().identity());
}

// i_y : V -> K_W(V), v |-> (tau(w y^{-1}) v)_w.  The y component is v
// itself, so extracting coordinate y is a left inverse.
template <class K>
Matrix<K> section_i(const KWSpace<K>& kw, Elt y) {
  const BraidRep<K>& rep = *kw.rep;
  rep.system().check_elt(y);
  const std::size_t d = rep.dim();
  const std::size_t yb = kw.block(y);
  const std::vector<Matrix<K>> tau = tau_table(rep);
  Matrix<K> m = detail::section_matrix(rep, tau, kw.elements, y);
  const K one = scalar_one(rep.like());
  const K zero = scalar_zero(rep.like());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      require(scalar_is_zero(m(yb * d + r, c) - (r == c ? one : zero)),
              "Internal", "p_y o i_y must be the identity");
  require(detail::columns_inside(kw.basis, m), "Internal",
          "section image escapes the glued space");
  return m;
}

// Section of the projection onto a coset block of components: the w
// component of the image is tau(n(w)) v_{p(w)}, where w = n(w) p(w) is the
// factorization through the unique closest coset member p(w).
template <class K>
Matrix<K> coset_section(const KWSpace<K>& full, const KWSpace<K>& coset) {
  require(full.rep == coset.rep, "PreconditionFailed",
          "both spaces must come from one representation");
  require(full.is_full(), "PreconditionFailed",
          "the target must be the full glued space");
  const BraidRep<K>& rep = *full.rep;
  const CoxeterSystem& sys = rep.system();
  const std::size_t d = rep.dim();
  const std::vector<Matrix<K>> tau = tau_table(rep);
  const Elt x = coset.elements.at(0);

  Matrix<K> m = Matrix<K>::zero_like(full.elements.size() * d,
                                     coset.elements.size() * d, rep.like());
  for (std::size_t b = 0; b < full.elements.size(); ++b) {
    const CosetPointer cp = coset_pointer(coset.cond_gens, x, full.elements[b]);
    const std::size_t pb = coset.block(cp.p);
    const Matrix<K>& t = tau[cp.n.idx];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(b * d + r, pb * d + c) = t(r, c);
  }

  // Restricting back to the coset components recovers the input exactly.
  const K one = scalar_one(rep.like());
  const K zero = scalar_zero(rep.like());
  for (std::size_t cb = 0; cb < coset.elements.size(); ++cb) {
    const std::size_t fb = full.block(coset.elements[cb]);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < coset.elements.size() * d; ++c) {
        const K& want = (c == cb * d + r) ? one : zero;
        require(scalar_is_zero(m(fb * d + r, c) - want), "Internal",
                "coset projection o coset section must be the identity");
      }
  }
  // The coset space is carried into the full space.
  const Matrix<K> carried = m * coset.basis.basis().transpose();
  require(detail::columns_inside(full.basis, carried), "Internal",
          "coset section escapes the glued space");
  return m;
}

// Projection of the full glued space onto the components of one coset.
template <class K>
Matrix<K> coset_projection(const KWSpace<K>& full, const KWSpace<K>& coset) {
  require(full.rep == coset.rep, "PreconditionFailed",
          "both spaces must come from one representation");
  require(full.is_full(), "PreconditionFailed",
          "the source must be the full glued space");
  const BraidRep<K>& rep = *full.rep;
  const std::size_t d = rep.dim();
  Matrix<K> m = Matrix<K>::zero_like(coset.elements.size() * d,
                                     full.elements.size() * d, rep.like());
  for (std::size_t cb = 0; cb < coset.elements.size(); ++cb) {
    const std::size_t fb = full.block(coset.elements[cb]);
    for (std::size_t r = 0; r < d; ++r)
      m(cb * d + r, fb * d + r) = scalar_one(rep.like());
  }
  // Tuples satisfying all conditions satisfy the coset subset of them.
  const Matrix<K> carried = m * full.basis.basis().transpose();
  require(detail::columns_inside(coset.basis, carried), "Internal",
          "projection of the glued space escapes the coset space");
  return m;
}

// The involution iota(v)_w = tau(w0) v_{w0 w}.  Its square acts on every
// component by pi = tau(w0)^2, which is central.
template <class K>
Matrix<K> iota(const KWSpace<K>& kw) {
  require(kw.is_full(), "PreconditionFailed",
          "the involution lives on the full glued space");
  const BraidRep<K>& rep = *kw.rep;
  const CoxeterSystem& sys = rep.system();
  const std::size_t d = rep.dim();
  const std::size_t nblk = kw.elements.size();
  const Matrix<K> t0 = rep.tau(sys.longest());
  const Matrix<K> pi = rep.central();

  Matrix<K> m = Matrix<K>::zero_like(nblk * d, nblk * d, rep.like());
  for (std::size_t b = 0; b < nblk; ++b) {
    const std::size_t src = kw.block(sys.mul(sys.longest(), kw.elements[b]));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(b * d + r, src * d + c) = t0(r, c);
  }

  Matrix<K> sq = m * m;
  Matrix<K> blockpi = Matrix<K>::zero_like(nblk * d, nblk * d, rep.like());
  for (std::size_t b = 0; b < nblk; ++b)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) blockpi(b * d + r, b * d + c) = pi(r, c);
  require(sq == blockpi, "Internal",
          "iota squared must act componentwise by tau(w0)^2");

  const Matrix<K> carried = m * kw.basis.basis().transpose();
  require(detail::columns_inside(kw.basis, carried), "Internal",
          "iota must preserve the glued space");
  return m;
}

namespace detail {

// Accumulate sign * (section after projection) for one right coset W_J x
// into acc.  The composite has one nonzero block per component row w:
// block(w, p(w)) = tau(n(w)).  Rows and columns are restricted to the
// elements listed in layout (with their positions), so the same routine
// serves the full space and the half-set space.
template <class K>
void add_coset_composite(const BraidRep<K>& rep,
                         const std::vector<Matrix<K>>& tau,
                         const std::vector<Elt>& layout,
                         const std::vector<int>& J, Elt x, bool negative,
                         Matrix<K>& acc) {
  const CoxeterSystem& sys = rep.system();
  const std::size_t d = rep.dim();
  for (std::size_t b = 0; b < layout.size(); ++b) {
    const CosetPointer cp = coset_pointer(J, x, layout[b]);
    const auto it = std::lower_bound(layout.begin(), layout.end(), cp.p);
    require(it != layout.end() && *it == cp.p, "Internal",
            "coset member missing from the component layout");
    const std::size_t pb = static_cast<std::size_t>(it - layout.begin());
    const Matrix<K>& t = tau[cp.n.idx];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        if (negative)
          acc(b * d + r, pb * d + c) -= t(r, c);
        else
          acc(b * d + r, pb * d + c) += t(r, c);
      }
  }
}

}  // namespace detail

// The alternating sum of the coset composites over proper subsets J of S
// and all right cosets W_J x equals iota + (-1)^{n-1}, as linear maps on the
// glued space (n = rank).
template <class K>
bool euler_identity_check(const BraidRep<K>& rep) {
  const CoxeterSystem& sys = rep.system();
  const int n = sys.rank();
  const std::size_t d = rep.dim();
  const std::size_t N = sys.order() * d;
  const KWSpace<K> kw = kw_space(rep);
  const std::vector<Matrix<K>> tau = tau_table(rep);

  Matrix<K> acc = Matrix<K>::zero_like(N, N, rep.like());
  const unsigned full_mask = (1u << n) - 1u;
  for (unsigned mask = 0; mask < full_mask; ++mask) {
    std::vector<int> J;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) J.push_back(s);
    const bool negative = (std::popcount(mask) % 2) == 1;
    std::vector<char> used(sys.order(), 0);
    for (std::uint32_t y0 = 0; y0 < sys.order(); ++y0) {
      if (used[y0]) continue;
      const Elt x = sys.element(y0);
      for (Elt u : sys.parabolic_elements(J)) used[sys.mul(u, x).idx] = 1;
      detail::add_coset_composite(rep, tau, kw.elements, J, x, negative, acc);
    }
  }

  Matrix<K> rhs = iota(kw);
  const Matrix<K> id = Matrix<K>::identity(N, rep.like());
  rhs = (n % 2 == 1) ? rhs + id : rhs - id;

  const Matrix<K> basis_cols = kw.basis.basis().transpose();
  return acc * basis_cols == rhs * basis_cols;
}

// On the half-set space (tuples over P_i with the conditions imposed for
// pairs staying inside P_i), the sum of (-1)^{|J|-1} coset composites over
// nonempty J and cosets W_{S-J} x whose widenings W_{S-{j}} x stay inside
// P_i is the identity.
template <class K>
bool half_identity_check(const BraidRep<K>& rep, int i) {
  const CoxeterSystem& sys = rep.system();
  sys.check_gen(i);
  const int n = sys.rank();
  const std::size_t d = rep.dim();

  const std::vector<Elt> half = half_set(sys, i, Side::Right);
  std::vector<char> in_half(sys.order(), 0);
  for (Elt w : half) in_half[w.idx] = 1;
  const std::size_t Np = half.size() * d;

  // Conditions of the glued space restricted to pairs w, sw inside P_i.
  std::vector<Matrix<K>> quot;
  for (int s = 0; s < n; ++s) quot.push_back(v_s(rep, s).quotient_map());
  std::size_t total_rows = 0;
  for (int s = 0; s < n; ++s)
    for (Elt w : half)
      if (in_half[sys.left(s, w).idx]) total_rows += quot[s].rows();

  auto pos_of = [&](Elt w) {
    const auto it = std::lower_bound(half.begin(), half.end(), w);
    require(it != half.end() && *it == w, "Internal", "element outside P_i");
    return static_cast<std::size_t>(it - half.begin());
  };

  Matrix<K> cond = Matrix<K>::zero_like(total_rows, Np, rep.like());
  std::size_t at = 0;
  for (int s = 0; s < n; ++s) {
    const Matrix<K>& q = quot[s];
    const Matrix<K> qg = q * rep.gen(s);
    for (std::size_t b = 0; b < half.size(); ++b) {
      const Elt sw = sys.left(s, half[b]);
      if (!in_half[sw.idx]) continue;
      const std::size_t b2 = pos_of(sw);
      for (std::size_t r = 0; r < q.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) {
          cond(at + r, b2 * d + c) += q(r, c);
          cond(at + r, b * d + c) -= qg(r, c);
        }
      at += q.rows();
    }
  }
  const Subspace<K> basis0 = kernel_space(cond);
  const std::vector<Matrix<K>> tau = tau_table(rep);

  Matrix<K> acc = Matrix<K>::zero_like(Np, Np, rep.like());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> J, Jc;
    for (int s = 0; s < n; ++s)
      (mask & (1u << s) ? J : Jc).push_back(s);
    const bool negative = ((std::popcount(mask) - 1) % 2) == 1;
    std::vector<char> used(sys.order(), 0);
    for (std::uint32_t y0 = 0; y0 < sys.order(); ++y0) {
      if (used[y0]) continue;
      const Elt x = sys.element(y0);
      for (Elt u : sys.parabolic_elements(Jc)) used[sys.mul(u, x).idx] = 1;
      // x is the shortest member, so the coset sits inside P_i only if x
      // does; the widened cosets must stay inside P_i too.
      if (!in_half[x.idx]) continue;
      bool admissible = true;
      for (int j : J) {
        std::vector<int> Sj;
        for (int s = 0; s < n; ++s)
          if (s != j) Sj.push_back(s);
        if (!coset_in_half(Sj, x, i)) {
          admissible = false;
          break;
        }
      }
      if (!admissible) continue;
      detail::add_coset_composite(rep, tau, half, Jc, x, negative, acc);
    }
  }

  const Matrix<K> basis_cols = basis0.basis().transpose();
  return acc * basis_cols == basis_cols;
}

template <class K>
struct is_prime_field : std::false_type {};
template <>
struct is_prime_field<Fp> : std::true_type {};

struct GoodnessReport {
  std::size_t dim_v = 0;
  std::size_t dim_kw = 0;
  std::size_t dim_span_sections = 0;
  std::size_t cokernel_dim = 0;
  bool good = false;
  // Rank of the span of the section images after each element, in element
  // order; the last entry is dim_span_sections.
  std::vector<std::size_t> cumulative_ranks;
  std::vector<std::string> notes;
};

// A representation is good when the section images i_y(V) span the whole
// glued space.
template <class K>
GoodnessReport is_good(const BraidRep<K>& rep) {
  const CoxeterSystem& sys = rep.system();
  const KWSpace<K> kw = kw_space(rep);
  const std::vector<Matrix<K>> tau = tau_table(rep);

  GoodnessReport g;
  g.dim_v = rep.dim();
  g.dim_kw = kw.basis.dim();

  Subspace<K> span(kw.elements.size() * rep.dim(), rep.like());
  for (Elt y : kw.elements) {
    span = subspace_sum(
        span, image(detail::section_matrix(rep, tau, kw.elements, y)));
    g.cumulative_ranks.push_back(span.dim());
  }
  g.dim_span_sections = span.dim();
  require(kw.basis.contains_subspace(span), "Internal",
          "section span escapes the glued space");
  g.cokernel_dim = g.dim_kw - g.dim_span_sections;
  g.good = g.dim_span_sections == g.dim_kw;
  if (sys.rank() == 1)
    g.notes.push_back("rank 1: every representation is good");
  if (is_prime_field<K>::value)
    g.notes.push_back(
        "unconditional computation over a prime field; root-of-unity "
        "hypotheses unchecked");
  return g;
}

// Gram matrix of the pairing between K_W(V) and K_W(V*), where V* acts by
// the inverse transposes.  For k = sum_y i_y(v_y) and k' in K_W(V*), the
// pairing is sum_y <v_y, k'_y>; goodness of both sides makes the lifts
// exist and the kernel check below makes the value independent of them.
template <class K>
Matrix<K> chi_pairing(const BraidRep<K>& rep, const BraidRep<K>& rep_dual) {
  const CoxeterSystem& sys = rep.system();
  require(&sys == &rep_dual.system(), "PreconditionFailed",
          "both representations must share one Coxeter system");
  require(rep_dual.dim() == rep.dim(), "PreconditionFailed",
          "dual representation dimension mismatch");
  for (int s = 0; s < sys.rank(); ++s)
    require(rep_dual.gen(s) == rep.gen_inv(s).transpose(), "PreconditionFailed",
            "dual generators must be the inverse transposes");
  require(is_good(rep).good && is_good(rep_dual).good, "NotGood",
          "the pairing is computed through section lifts, which need both "
          "representations to be good");

  const KWSpace<K> kw = kw_space(rep);
  const KWSpace<K> kwd = kw_space(rep_dual);
  const std::size_t d = rep.dim();
  const std::size_t N = sys.order() * d;
  const std::vector<Matrix<K>> tau = tau_table(rep);

  // All sections side by side: column group y holds i_y.
  Matrix<K> stacked = Matrix<K>::zero_like(N, N, rep.like());
  for (Elt y : kw.elements) {
    const Matrix<K> sec = detail::section_matrix(rep, tau, kw.elements, y);
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < d; ++c)
        stacked(r, y.idx * d + c) = sec(r, c);
  }

  const Matrix<K> basis_cols = kw.basis.basis().transpose();  // N x k
  const auto lifts = solve_matrix(stacked, basis_cols);
  require(lifts.has_value(), "Internal",
          "good representations must admit section lifts");

  const Matrix<K>& dual_rows = kwd.basis.basis();  // k' x N
  // Lift independence: lifts of zero pair to zero against the dual space.
  const Matrix<K> zero_lifts = kernel(stacked);
  for (std::size_t z = 0; z < zero_lifts.rows(); ++z)
    for (std::size_t b = 0; b < dual_rows.rows(); ++b) {
      K dot = scalar_zero(rep.like());
      for (std::size_t t = 0; t < N; ++t)
        dot += zero_lifts(z, t) * dual_rows(b, t);
      require(scalar_is_zero(dot), "Internal",
              "the pairing fails to descend to the glued spaces");
    }

  const std::size_t k = kw.basis.dim();
  const std::size_t kd = kwd.basis.dim();
  require(k == kd, "SingularPairing",
          "glued spaces of unequal dimension cannot pair nonsingularly");
  Matrix<K> gram = Matrix<K>::zero_like(k, kd, rep.like());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < kd; ++b) {
      K dot = scalar_zero(rep.like());
      for (std::size_t t = 0; t < N; ++t) dot += (*lifts)(t, a) * dual_rows(b, t);
      gram(a, b) = dot;
    }
  require(rank(gram) == k, "SingularPairing", "the pairing matrix is singular");

  // Adjunction: pairing i_y(e_j) against k' extracts the y component of k'.
  for (Elt y : kw.elements) {
    const Matrix<K> sec = detail::section_matrix(rep, tau, kw.elements, y);
    const auto coords = solve_matrix(basis_cols, sec);  // k x d
    require(coords.has_value(), "Internal",
            "section image must lie in the glued space");
    const Matrix<K> lhs = coords->transpose() * gram;  // d x k'
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t b = 0; b < kd; ++b)
        require(lhs(j, b) == dual_rows(b, y.idx * d + j), "Internal",
                "adjunction identity failed");
  }
  return gram;
}

struct GlueReport {
  std::size_t dim_k = 0;
  std::size_t dim_k_phi = 0;
  std::size_t dim_v_phi = 0;
  std::size_t dim_k_h = 0;
  bool v_phi_in_k_h = false;
  bool k_in_k_phi = false;
  bool k_phi_in_k = false;
  bool k_equals_k_phi = false;
  bool v_phi_equals_k_h = false;
  // The two equality verdicts agree: K = K(phi) exactly when V_phi = K^h.
  bool consistent = false;
};

// Gluing consistency for a subspace K of V0 + V1 with sections i0, i1 of its
// coordinate projections: build the odd operator phi from the cross
// components, then compare K with K(phi) = {x : phi(x) - x in V_phi} and
// V_phi = (phi^2 - 1)(V0 + V1) with K^h = (K n V0) + (K n V1).
template <class K>
GlueReport gluecheck(std::size_t d0, std::size_t d1, const Subspace<K>& ksub,
                     const Matrix<K>& i0, const Matrix<K>& i1) {
  const std::size_t N = d0 + d1;
  require(ksub.ambient() == N, "AmbientMismatch", "K must live in V0 + V1");
  require(i0.rows() == N && i0.cols() == d0, "BadShape", "i0 must map V0 into V0 + V1");
  require(i1.rows() == N && i1.cols() == d1, "BadShape", "i1 must map V1 into V0 + V1");
  const K like = ksub.sample();
  const K one = scalar_one(like);

  // Sections: the straight component is the identity and the image lies in K.
  for (std::size_t r = 0; r < d0; ++r)
    for (std::size_t c = 0; c < d0; ++c)
      require((i0(r, c) == (r == c ? one : scalar_zero(like))), "NotASection",
              "p0 o i0 must be the identity");
  for (std::size_t r = 0; r < d1; ++r)
    for (std::size_t c = 0; c < d1; ++c)
      require((i1(d0 + r, c) == (r == c ? one : scalar_zero(like))),
              "NotASection", "p1 o i1 must be the identity");
  require(detail::columns_inside(ksub, i0) && detail::columns_inside(ksub, i1),
          "NotASection", "section images must lie inside K");

  Matrix<K> phi = Matrix<K>::zero_like(N, N, like);
  for (std::size_t r = 0; r < d0; ++r)  // p0 o i1: V1 -> V0
    for (std::size_t c = 0; c < d1; ++c) phi(r, d0 + c) = i1(r, c);
  for (std::size_t r = 0; r < d1; ++r)  // p1 o i0: V0 -> V1
    for (std::size_t c = 0; c < d0; ++c) phi(d0 + r, c) = i0(d0 + r, c);

  const Matrix<K> id = Matrix<K>::identity(N, like);
  const Subspace<K> v_phi = image(phi * phi - id);

  Matrix<K> ax0 = Matrix<K>::zero_like(d0, N, like);
  for (std::size_t r = 0; r < d0; ++r) ax0(r, r) = one;
  Matrix<K> ax1 = Matrix<K>::zero_like(d1, N, like);
  for (std::size_t r = 0; r < d1; ++r) ax1(r, d0 + r) = one;
  const Subspace<K> k_h = subspace_sum(
      subspace_intersect(ksub, Subspace<K>::from_rows(N, ax0)),
      subspace_intersect(ksub, Subspace<K>::from_rows(N, ax1)));

  const Subspace<K> k_phi = kernel_space(v_phi.quotient_map() * (phi - id));

  GlueReport rep;
  rep.dim_k = ksub.dim();
  rep.dim_k_phi = k_phi.dim();
  rep.dim_v_phi = v_phi.dim();
  rep.dim_k_h = k_h.dim();
  rep.v_phi_in_k_h = k_h.contains_subspace(v_phi);
  rep.k_in_k_phi = k_phi.contains_subspace(ksub);
  rep.k_phi_in_k = ksub.contains_subspace(k_phi);
  rep.k_equals_k_phi = subspace_eq(ksub, k_phi);
  rep.v_phi_equals_k_h = subspace_eq(v_phi, k_h);
  rep.consistent = rep.k_equals_k_phi == rep.v_phi_equals_k_h;
  return rep;
}

}  // namespace coxglue

#pragma once

#include <optional>
#include <vector>

#include "coxglue/coxeter.hpp"
#include "coxglue/matrix.hpp"

namespace coxglue {

struct BraidLetter {
  int gen = 0;       // 0-based generator index
  bool inverse = false;
};
using BraidWord = std::vector<BraidLetter>;

struct RelationCheck {
  int s, t, m;
  bool pass;
};

struct ValidationReport {
  bool ok = true;
  std::vector<RelationCheck> relations;
  std::vector<int> non_invertible;
  bool tau_word_independent = true;
};

// A matrix representation of the generalized braid group of (W, S): one
// invertible matrix per simple generator, braid relations checked by
// validate().  tau(w) folds the generators over a reduced word of w; by
// Matsumoto's theorem the result is word-independent once the braid
// relations hold.
template <class K>
class BraidRep {
 public:
  BraidRep(const CoxeterSystem* sys, std::vector<Matrix<K>> gens)
      : sys_(sys), gens_(std::move(gens)) {
    require(sys_ != nullptr, "Internal", "representation needs a system");
    require(static_cast<int>(gens_.size()) == sys_->rank(), "BadShape",
            "one generator matrix per simple generator required");
    require(!gens_.empty(), "BadShape", "rank must be positive");
    d_ = gens_[0].rows();
    for (const auto& g : gens_) {
      require(g.rows() == d_ && g.cols() == d_, "BadShape",
              "generator matrices must be square of equal size");
    }
    invs_.resize(gens_.size());
    for (size_t s = 0; s < gens_.size(); ++s) {
      try {
        invs_[s] = inverse(gens_[s]);
      } catch (const Error&) {
        invs_[s] = std::nullopt;
      }
    }
  }

  const CoxeterSystem& system() const { return *sys_; }
  std::size_t dim() const { return d_; }
  K like() const { return gens_[0].sample(); }

  const Matrix<K>& gen(int s) const {
    sys_->check_gen(s);
    return gens_[static_cast<size_t>(s)];
  }
  const Matrix<K>& gen_inv(int s) const {
    sys_->check_gen(s);
    const auto& inv = invs_[static_cast<size_t>(s)];
    require(inv.has_value(), "NotInvertible", "generator has no inverse");
    return *inv;
  }
  bool invertible(int s) const { return invs_[static_cast<size_t>(s)].has_value(); }

  Matrix<K> act(const BraidWord& w) const {
    Matrix<K> out = Matrix<K>::identity(d_, like());
    for (const BraidLetter& l : w) {
      require(l.gen >= 0 && l.gen < sys_->rank(), "BadIndex",
              "braid letter out of range");
      out = out * (l.inverse ? gen_inv(l.gen) : gen(l.gen));
    }
    return out;
  }

  Matrix<K> tau(Elt w) const {
    sys_->check_elt(w);
    Matrix<K> out = Matrix<K>::identity(d_, like());
    for (int s : sys_->word(w)) out = out * gens_[static_cast<size_t>(s)];
    return out;
  }

  // tau(w0)^2, the canonical central element; commutation is asserted.
  Matrix<K> central() const {
    Matrix<K> t = tau(sys_->longest());
    Matrix<K> pi = t * t;
    for (const auto& g : gens_)
      require(pi * g == g * pi, "NotCentral",
              "tau(w0)^2 does not commute with the generators");
    return pi;
  }

 private:
  const CoxeterSystem* sys_;
  std::vector<Matrix<K>> gens_;
  std::vector<std::optional<Matrix<K>>> invs_;
  std::size_t d_ = 0;
};

template <class K>
ValidationReport validate(const BraidRep<K>& rep) {
  const CoxeterSystem& sys = rep.system();
  ValidationReport r;
  for (int s = 0; s < sys.rank(); ++s)
    if (!rep.invertible(s)) {
      r.non_invertible.push_back(s);
      r.ok = false;
    }
  for (int s = 0; s < sys.rank(); ++s)
    for (int t = s + 1; t < sys.rank(); ++t) {
      const int m = sys.m(s, t);
      Matrix<K> lhs = Matrix<K>::identity(rep.dim(), rep.like());
      Matrix<K> rhs = lhs;
      for (int k = 0; k < m; ++k) {
        lhs = lhs * rep.gen(k % 2 == 0 ? s : t);
        rhs = rhs * rep.gen(k % 2 == 0 ? t : s);
      }
      const bool pass = lhs == rhs;
      r.relations.push_back({s, t, m, pass});
      r.ok = r.ok && pass;
    }
  // Word-independence of tau: fold a second reduced word when one exists.
  // Guarded by a cost bound so validation of huge representations stays
  // usable; the braid relations above are the real gate.
  const double cost = static_cast<double>(sys.order()) * static_cast<double>(rep.dim()) *
                      static_cast<double>(rep.dim()) * static_cast<double>(rep.dim());
  if (r.ok && cost <= 2e8) {
    for (std::uint32_t i = 0; i < sys.order() && r.tau_word_independent; ++i) {
      Elt w = sys.element(i);
      auto words = sys.reduced_words(w, 2);
      if (words.size() < 2) continue;
      Matrix<K> a = Matrix<K>::identity(rep.dim(), rep.like());
      Matrix<K> b = a;
      for (int s : words[0]) a = a * rep.gen(s);
      for (int s : words[1]) b = b * rep.gen(s);
      if (!(a == b)) {
        r.tau_word_independent = false;
        r.ok = false;
      }
    }
  }
  return r;
}

template <class K>
bool check_cubic(const BraidRep<K>& rep, const K& q) {
  const Matrix<K> id = Matrix<K>::identity(rep.dim(), rep.like());
  for (int s = 0; s < rep.system().rank(); ++s) {
    const Matrix<K>& g = rep.gen(s);
    if (!((g - q * id) * (g * g - id)).is_zero()) return false;
  }
  return true;
}

template <class K>
bool check_quadratic(const BraidRep<K>& rep, const K& q) {
  const Matrix<K> id = Matrix<K>::identity(rep.dim(), rep.like());
  for (int s = 0; s < rep.system().rank(); ++s) {
    const Matrix<K>& g = rep.gen(s);
    if (!((g - q * id) * (g + id)).is_zero()) return false;
  }
  return true;
}

template <class K>
struct TransportResult {
  BraidRep<K> rep;  // s -> -gen(s)^{-1}
  K u;              // (s + u)(s^2 - 1) = 0 holds for the new generators
};

// From (s - q)(s + 1) = 0 to the cubic family: s -> -s^{-1} satisfies
// (s + u)(s^2 - 1) = 0 with u = 1/q.
template <class K>
TransportResult<K> cubic_to_quadratic_transport(const BraidRep<K>& rep, const K& q) {
  require(check_quadratic(rep, q), "PreconditionFailed",
          "input must satisfy (s - q)(s + 1) = 0");
  std::vector<Matrix<K>> gens;
  for (int s = 0; s < rep.system().rank(); ++s) {
    Matrix<K> zero = Matrix<K>::zero_like(rep.dim(), rep.dim(), rep.like());
    gens.push_back(zero - rep.gen_inv(s));
  }
  BraidRep<K> out(&rep.system(), std::move(gens));
  const K one = scalar_one(rep.like());
  const K u = one / q;
  // (s + u)(s^2 - 1) = (s - (-u))(s^2 - 1)
  K minus_u = scalar_zero(rep.like()) - u;
  require(check_cubic(out, minus_u), "RelationFailed",
          "transported generators do not satisfy the cubic relation");
  return {std::move(out), u};
}

// Induction along the parabolic subgroup W_J: blocks indexed by the minimal
// representatives of the cosets w W_J; the generator s sends block w to
// block rep(s w), acting by tau(w^{-1} s w) when that element stays in W_J
// and by the identity otherwise.
template <class K>
BraidRep<K> induce(const CoxeterSystem& big, std::vector<int> J,
                   std::size_t dim0, const std::vector<Matrix<K>>& subgens,
                   const K& like) {
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (int s : J) big.check_gen(s);
  require(subgens.size() == J.size(), "BadShape",
          "need one generator matrix per member of J");

  std::optional<CoxeterSystem> subsys;
  std::optional<BraidRep<K>> rep0;
  if (!J.empty()) {
    std::vector<std::vector<int>> sm(J.size(), std::vector<int>(J.size()));
    for (size_t a = 0; a < J.size(); ++a)
      for (size_t b = 0; b < J.size(); ++b) sm[a][b] = big.m(J[a], J[b]);
    subsys.emplace(CoxeterSystem::from_matrix(sm));
    rep0.emplace(&*subsys, subgens);
    require(rep0->dim() == dim0, "BadShape", "dim0 disagrees with the matrices");
  }

  // Minimal representatives of w W_J: no right descent inside J.
  std::vector<std::uint32_t> reps;
  std::vector<std::int32_t> block_of(big.order(), -1);
  for (std::uint32_t i = 0; i < big.order(); ++i) {
    Elt w = big.element(i);
    bool minimal = true;
    for (int j : J)
      if (big.is_descent(w, j, Side::Right)) minimal = false;
    if (minimal) {
      block_of[i] = static_cast<std::int32_t>(reps.size());
      reps.push_back(i);
    }
  }
  auto coset_block = [&](Elt x) {
    while (block_of[x.idx] == -1) {
      for (int j : J)
        if (big.is_descent(x, j, Side::Right)) {
          x = big.right(x, j);
          break;
        }
    }
    return static_cast<size_t>(block_of[x.idx]);
  };

  const size_t nb = reps.size();
  const size_t dim = nb * dim0;
  std::vector<Matrix<K>> gens;
  for (int s = 0; s < big.rank(); ++s) {
    Matrix<K> g = Matrix<K>::zero_like(dim, dim, like);
    for (size_t c = 0; c < nb; ++c) {
      Elt w = big.element(reps[c]);
      Elt t = big.mul(big.mul(big.inv(w), big.simple(s)), w);  // w^{-1} s w
      if (!J.empty() && big.in_parabolic(J, t)) {
        Word sub;
        for (int letter : big.word(t))
          sub.push_back(static_cast<int>(
              std::lower_bound(J.begin(), J.end(), letter) - J.begin()));
        Matrix<K> block = rep0->tau(subsys->from_word(sub));
        for (size_t r = 0; r < dim0; ++r)
          for (size_t cc = 0; cc < dim0; ++cc)
            g(c * dim0 + r, c * dim0 + cc) = block(r, cc);
      } else {
        size_t c2 = coset_block(big.left(s, w));
        for (size_t r = 0; r < dim0; ++r)
          g(c2 * dim0 + r, c * dim0 + r) = scalar_one(like);
      }
    }
    gens.push_back(std::move(g));
  }
  BraidRep<K> out(&big, std::move(gens));
  require(validate(out).ok, "ValidationFailed",
          "induced representation failed validation");
  return out;
}

template <class K>
BraidRep<K> induce(const CoxeterSystem& big, const std::vector<int>& J,
                   const BraidRep<K>& rep0) {
  std::vector<Matrix<K>> subgens;
  for (int s = 0; s < rep0.system().rank(); ++s) subgens.push_back(rep0.gen(s));
  return induce(big, J, rep0.dim(), subgens, rep0.like());
}

// The left regular representation of the Hecke algebra at parameter q:
// basis indexed by W, T_s T_w = T_{sw} upward and (q-1) T_w + q T_{sw}
// downward.  Satisfies (T_s - q)(T_s + 1) = 0.
template <class K>
BraidRep<K> hecke_regular_rep(const CoxeterSystem& sys, const K& q) {
  const K one = scalar_one(q);
  std::vector<Matrix<K>> gens;
  for (int s = 0; s < sys.rank(); ++s) {
    Matrix<K> g = Matrix<K>::zero_like(sys.order(), sys.order(), q);
    for (std::uint32_t w = 0; w < sys.order(); ++w) {
      Elt e = sys.element(w);
      std::uint32_t sw = sys.left(s, e).idx;
      if (sys.length(sys.element(sw)) > sys.length(e)) {
        g(sw, w) = one;
      } else {
        g(w, w) = q - one;
        g(sw, w) = q;
      }
    }
    gens.push_back(std::move(g));
  }
  return BraidRep<K>(&sys, std::move(gens));
}

// Two-dimensional families over rank-2 systems (m = 3 or 4):
//   a = [[l, 1], [0, m]],  b = [[m, 0], [c*l*m, l]]  with c = -1 (braid
//   relation aba = bab) or c = -2 (abab = baba).
template <class K>
BraidRep<K> rank2_two_dim_rep(const CoxeterSystem& sys, const K& lambda, const K& mu) {
  require(sys.rank() == 2, "BadShape", "two generators expected");
  const int m = sys.m(0, 1);
  require(m == 3 || m == 4, "UnsupportedLabel",
          "the two-dimensional family needs m = 3 or 4");
  const K zero = scalar_zero(lambda);
  const K one = scalar_one(lambda);
  K c = zero - lambda * mu;
  if (m == 4) c = c + c;
  Matrix<K> a = Matrix<K>::from_rows({{lambda, one}, {zero, mu}});
  Matrix<K> b = Matrix<K>::from_rows({{mu, zero}, {c, lambda}});
  return BraidRep<K>(&sys, {a, b});
}

// Generating words tau(w) s^2 tau(w)^{-1} of the pure braid group, one per
// (element, generator) pair.
std::vector<BraidWord> pure_braid_generators(const CoxeterSystem& sys);

}  // namespace coxglue

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <vector>

#include "coxglue/matrix.hpp"

namespace coxglue {

// Homological coefficient system on the simplex with vertex set [0, n): one
// space per subset of vertices, together with maps B(K) -> B(K - {j})
// dropping one member.  Composites along any removal order must agree
// (checked by check_coherent), so dropping several members at once is well
// defined.
template <class K>
struct CoefficientSystem {
  int n = 0;
  K like{};
  std::vector<std::size_t> dims;  // indexed by subset bitmask, size 1 << n
  // cover[mask][p] drops the p-th smallest member of mask (so the inner
  // vector runs over the set bits of mask in ascending order).
  std::vector<std::vector<Matrix<K>>> cover;

  const Matrix<K>& cover_map(unsigned mask, int j) const {
    require(j >= 0 && j < n && (mask & (1u << j)), "BadIndex",
            "j must be a member of the subset");
    const unsigned below = mask & ((1u << j) - 1u);
    return cover[mask][std::popcount(below)];
  }

  // The composed map B(super) -> B(sub) for sub inside super; members are
  // dropped largest-first, and coherence makes any other order equal.
  Matrix<K> transition(unsigned sub, unsigned super) const {
    require((sub & ~super) == 0, "BadIndex", "sub must be inside super");
    Matrix<K> m = Matrix<K>::identity(dims[super], like);
    unsigned cur = super;
    for (int j = n - 1; j >= 0; --j) {
      const unsigned bit = 1u << j;
      if ((super & bit) && !(sub & bit)) {
        m = cover_map(cur, j) * m;
        cur &= ~bit;
      }
    }
    return m;
  }
};

// Shape and commuting-square checks: for j != j' in a subset, dropping j
// then j' must equal dropping j' then j.
template <class K>
void check_coherent(const CoefficientSystem<K>& sys) {
  const unsigned total = 1u << sys.n;
  require(sys.dims.size() == total && sys.cover.size() == total,
          "IncoherentSystem", "one space and one cover list per subset");
  for (unsigned mask = 0; mask < total; ++mask) {
    require(sys.cover[mask].size() ==
                static_cast<std::size_t>(std::popcount(mask)),
            "IncoherentSystem", "one cover map per member of the subset");
    for (int j = 0; j < sys.n; ++j) {
      if (!(mask & (1u << j))) continue;
      const Matrix<K>& m = sys.cover_map(mask, j);
      require(m.rows() == sys.dims[mask & ~(1u << j)] &&
                  m.cols() == sys.dims[mask],
              "IncoherentSystem", "cover map has the wrong shape");
    }
  }
  for (unsigned mask = 0; mask < total; ++mask)
    for (int j = 0; j < sys.n; ++j) {
      if (!(mask & (1u << j))) continue;
      for (int j2 = j + 1; j2 < sys.n; ++j2) {
        if (!(mask & (1u << j2))) continue;
        const Matrix<K> a =
            sys.cover_map(mask & ~(1u << j), j2) * sys.cover_map(mask, j);
        const Matrix<K> b =
            sys.cover_map(mask & ~(1u << j2), j) * sys.cover_map(mask, j2);
        require(a == b, "IncoherentSystem",
                "cover maps fail to commute on a square");
      }
    }
}

// Coefficient system with B(J) the direct sum of B_t over the t whose index
// interval covers J: t contributes exactly when lower[t] <= J <= upper[t]
// (as sets).  Transitions project away the t that leave and embed the rest.
//
// The inputs are the two families of subsets: t1[i] lists the t with i in
// upper[t] (t survives adding i), t2[i] lists the t with i NOT in lower[t]
// (t survives removing i).
template <class K>
CoefficientSystem<K> build_homlem_instance(
    std::size_t t_count, int n, const std::vector<std::vector<int>>& t1,
    const std::vector<std::vector<int>>& t2,
    const std::vector<std::size_t>& dims, const K& like) {
  require(n >= 0 && n < 31, "BadIndex", "vertex count out of range");
  require(t1.size() == static_cast<std::size_t>(n) &&
              t2.size() == static_cast<std::size_t>(n),
          "BadShape", "one subset family member per vertex");
  require(dims.size() == t_count, "BadShape", "one dimension per t");

  // upper[t] = {i : t in t1[i]},  lower[t] = {i : t not in t2[i]}.
  std::vector<unsigned> upper(t_count, 0), lower(t_count, 0);
  for (int i = 0; i < n; ++i) {
    for (int t : t1[static_cast<std::size_t>(i)]) {
      require(t >= 0 && static_cast<std::size_t>(t) < t_count, "BadIndex",
              "family member outside T");
      upper[static_cast<std::size_t>(t)] |= 1u << i;
    }
    std::vector<char> in2(t_count, 0);
    for (int t : t2[static_cast<std::size_t>(i)]) {
      require(t >= 0 && static_cast<std::size_t>(t) < t_count, "BadIndex",
              "family member outside T");
      in2[static_cast<std::size_t>(t)] = 1;
    }
    for (std::size_t t = 0; t < t_count; ++t)
      if (!in2[t]) lower[t] |= 1u << i;
  }

  const unsigned total = 1u << n;
  auto members = [&](unsigned mask) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < t_count; ++t)
      if ((lower[t] & ~mask) == 0 && (mask & ~upper[t]) == 0) out.push_back(t);
    return out;
  };

  CoefficientSystem<K> sys;
  sys.n = n;
  sys.like = like;
  sys.dims.assign(total, 0);
  sys.cover.resize(total);
  std::vector<std::vector<std::size_t>> mem(total);
  for (unsigned mask = 0; mask < total; ++mask) {
    mem[mask] = members(mask);
    for (std::size_t t : mem[mask]) sys.dims[mask] += dims[t];
  }
  for (unsigned mask = 0; mask < total; ++mask) {
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const unsigned sub = mask & ~(1u << j);
      Matrix<K> m = Matrix<K>::zero_like(sys.dims[sub], sys.dims[mask], like);
      std::size_t roff = 0;
      for (std::size_t tr : mem[sub]) {
        std::size_t coff = 0;
        for (std::size_t tc : mem[mask]) {
          if (tc == tr)
            for (std::size_t r = 0; r < dims[tr]; ++r)
              m(roff + r, coff + r) = scalar_one(like);
          coff += dims[tc];
        }
        roff += dims[tr];
      }
      sys.cover[mask].push_back(std::move(m));
    }
  }
  return sys;
}

// Chain complex of the system over the simplex.  Without the empty subset,
// degree i collects the B(J) with |J| = i + 1 (degrees 0 .. n-1); with it,
// degree i collects |J| = i and degree 0 is B(empty).  boundary[i] maps
// degree i to degree i - 1; boundary[0] is the empty map out of degree 0.
template <class K>
struct ChainComplex {
  std::vector<std::size_t> degrees;
  std::vector<Matrix<K>> boundary;
};

template <class K>
ChainComplex<K> chain_complex(const CoefficientSystem<K>& sys,
                              bool include_empty) {
  check_coherent(sys);
  const unsigned total = 1u << sys.n;
  const int lowest = include_empty ? 0 : 1;  // |J| at degree 0

  // Masks of each size, ascending, with their block offsets per level.
  std::vector<std::vector<unsigned>> level(static_cast<std::size_t>(sys.n) + 1);
  for (unsigned mask = 0; mask < total; ++mask)
    level[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);

  ChainComplex<K> cx;
  for (int size = lowest; size <= sys.n; ++size) {
    std::size_t dim = 0;
    for (unsigned mask : level[static_cast<std::size_t>(size)])
      dim += sys.dims[mask];
    cx.degrees.push_back(dim);
  }
  if (cx.degrees.empty()) return cx;

  auto offsets = [&](int size) {
    std::vector<std::size_t> off;
    std::size_t at = 0;
    for (unsigned mask : level[static_cast<std::size_t>(size)]) {
      off.push_back(at);
      at += sys.dims[mask];
    }
    return off;
  };
  auto block_of = [&](int size, unsigned mask) {
    const auto& lv = level[static_cast<std::size_t>(size)];
    return static_cast<std::size_t>(
        std::lower_bound(lv.begin(), lv.end(), mask) - lv.begin());
  };

  cx.boundary.push_back(Matrix<K>::zero_like(0, cx.degrees[0], sys.like));
  for (int size = lowest + 1; size <= sys.n; ++size) {
    const std::size_t deg = static_cast<std::size_t>(size - lowest);
    Matrix<K> d = Matrix<K>::zero_like(cx.degrees[deg - 1], cx.degrees[deg],
                                       sys.like);
    const auto src_off = offsets(size);
    const auto dst_off = offsets(size - 1);
    const auto& src = level[static_cast<std::size_t>(size)];
    for (std::size_t b = 0; b < src.size(); ++b) {
      const unsigned mask = src[b];
      int pos = 0;
      for (int j = 0; j < sys.n; ++j) {
        if (!(mask & (1u << j))) continue;
        const unsigned sub = mask & ~(1u << j);
        const Matrix<K>& f = sys.cover_map(mask, j);
        const std::size_t r0 = dst_off[block_of(size - 1, sub)];
        const std::size_t c0 = src_off[b];
        const bool negative = (pos % 2) == 1;
        for (std::size_t r = 0; r < f.rows(); ++r)
          for (std::size_t c = 0; c < f.cols(); ++c) {
            if (negative)
              d(r0 + r, c0 + c) -= f(r, c);
            else
              d(r0 + r, c0 + c) += f(r, c);
          }
        ++pos;
      }
    }
    cx.boundary.push_back(std::move(d));
  }

  for (std::size_t i = 2; i < cx.boundary.size(); ++i)
    require((cx.boundary[i - 1] * cx.boundary[i]).is_zero(), "Internal",
            "the boundary does not square to zero");
  return cx;
}

// Homology dimensions per degree: dim C_i - rank d_i - rank d_{i+1}.
template <class K>
std::vector<std::size_t> homology(const ChainComplex<K>& cx) {
  std::vector<std::size_t> ranks(cx.boundary.size() + 1, 0);
  for (std::size_t i = 0; i < cx.boundary.size(); ++i)
    ranks[i] = rank(cx.boundary[i]);
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < cx.degrees.size(); ++i)
    h.push_back(cx.degrees[i] - ranks[i] - ranks[i + 1]);
  return h;
}

}  // namespace coxglue

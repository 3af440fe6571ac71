#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <vector>

#include "coxglue/simplicial.hpp"

using namespace coxglue;

using M = Matrix<Rat>;
using Sys = CoefficientSystem<Rat>;

namespace {

struct Interval {
  unsigned upper = 0;  // the t survives adding any vertex in here
  unsigned lower = 0;  // the t survives removing any vertex outside here
};

// Instance from per-t index intervals: t lives on the subsets J with
// lower <= J <= upper.
Sys from_intervals(int n, const std::vector<Interval>& ts,
                   const std::vector<std::size_t>& dims) {
  std::vector<std::vector<int>> t1(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> t2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (std::size_t t = 0; t < ts.size(); ++t) {
      if (ts[t].upper & (1u << i)) t1[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
      if (!(ts[t].lower & (1u << i))) t2[static_cast<std::size_t>(i)].push_back(static_cast<int>(t));
    }
  return build_homlem_instance(ts.size(), n, t1, t2, dims, Rat(0));
}

std::vector<std::size_t> hom(const Sys& sys, bool include_empty) {
  return homology(chain_complex(sys, include_empty));
}

}  // namespace

TEST_CASE("constant singleton system is contractible") {
  // One object alive on every subset; all transitions are the identity.
  const Sys sys = from_intervals(3, {{0b111u, 0u}}, {2});
  for (unsigned mask = 0; mask < 8u; ++mask) CHECK(sys.dims[mask] == 2);
  CHECK(sys.transition(0b001u, 0b111u) == M::identity(2, Rat(0)));
  CHECK(sys.transition(0b010u, 0b011u) == M::identity(2, Rat(0)));
  CHECK(sys.transition(0b101u, 0b101u) == M::identity(2, Rat(0)));

  CHECK(hom(sys, false) == std::vector<std::size_t>{2, 0, 0});
  CHECK(hom(sys, true) == std::vector<std::size_t>{0, 0, 0, 0});
}

TEST_CASE("two objects with distinct intervals") {
  // Only a reaches the empty subset, so degree-zero homology sees exactly a.
  const Sys sys = from_intervals(2, {{0b11u, 0u}, {0b11u, 0b01u}}, {3, 2});
  CHECK(sys.dims[0b00u] == 3);
  CHECK(sys.dims[0b01u] == 5);
  CHECK(sys.dims[0b10u] == 3);
  CHECK(sys.dims[0b11u] == 5);
  CHECK(hom(sys, false) == std::vector<std::size_t>{3, 0});
  CHECK(hom(sys, true) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("empty object set gives the zero complex") {
  const Sys sys = from_intervals(2, {}, {});
  const ChainComplex<Rat> cx = chain_complex(sys, false);
  CHECK(cx.degrees == std::vector<std::size_t>{0, 0});
  CHECK(hom(sys, false) == std::vector<std::size_t>{0, 0});
  CHECK(hom(sys, true) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("degenerate interval leaves higher homology") {
  // a lives on the top subset alone (upper == lower), so it cannot cancel
  // and survives in the top degree.  b is there to keep the rest nonempty.
  const Sys sys = from_intervals(2, {{0b11u, 0b11u}, {0b11u, 0u}}, {1, 1});
  CHECK(hom(sys, false) == std::vector<std::size_t>{1, 1});
  CHECK(hom(sys, true) == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("boundary squares to zero and matches the sign rule") {
  const Sys sys = from_intervals(3, {{0b111u, 0u}, {0b110u, 0b010u}}, {1, 2});
  const ChainComplex<Rat> cx = chain_complex(sys, true);
  for (std::size_t i = 2; i < cx.boundary.size(); ++i)
    CHECK((cx.boundary[i - 1] * cx.boundary[i]).is_zero());

  // Top boundary on the first object's coordinate: faces of {0,1,2} in
  // increasing order get signs +, -, +.
  const ChainComplex<Rat> d = chain_complex(from_intervals(3, {{0b111u, 0u}}, {1}), false);
  REQUIRE(d.degrees == std::vector<std::size_t>{3, 3, 1});
  const M& top = d.boundary[2];
  // Level-1 blocks are the two-vertex subsets in ascending mask order:
  // {0,1}, {0,2}, {1,2}; dropping vertex 0/1/2 hits them with sign +/-/+ in
  // that face order ({1,2} first, then {0,2}, then {0,1}).
  CHECK(top(2, 0) == Rat(1));   // drop 0 -> {1,2}
  CHECK(top(1, 0) == Rat(-1));  // drop 1 -> {0,2}
  CHECK(top(0, 0) == Rat(1));   // drop 2 -> {0,1}
}

TEST_CASE("incoherent cover maps are rejected") {
  Sys sys;
  sys.n = 2;
  sys.like = Rat(0);
  sys.dims = {1, 1, 1, 1};
  sys.cover.resize(4);
  const M one = M::from_rows({{Rat(1)}});
  const M two = M::from_rows({{Rat(2)}});
  sys.cover[0b01] = {one};
  sys.cover[0b10] = {two};
  sys.cover[0b11] = {one, one};
  try {
    check_coherent(sys);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "IncoherentSystem");
  }

  sys.cover[0b10] = {M::from_rows({{Rat(1), Rat(0)}})};  // wrong shape
  try {
    check_coherent(sys);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "IncoherentSystem");
  }
}

TEST_CASE("random instances with distinct intervals are resolutions") {
  std::mt19937 rng(20260817u);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4u);
    const std::size_t t_count = rng() % 7u;
    std::vector<Interval> ts;
    std::vector<std::size_t> dims;
    for (std::size_t t = 0; t < t_count; ++t) {
      Interval iv;
      do {
        iv.upper = rng() % (1u << n);
        iv.lower = rng() % (1u << n);
      } while (iv.upper == iv.lower);
      ts.push_back(iv);
      dims.push_back(rng() % 4u);
    }
    const Sys sys = from_intervals(n, ts, dims);

    // Degree zero carries exactly the objects whose interval reaches the
    // empty subset; everything above vanishes.
    std::size_t expect = 0;
    for (std::size_t t = 0; t < t_count; ++t)
      if (ts[t].lower == 0u) expect += dims[t];
    const auto h = hom(sys, false);
    CHECK(h.at(0) == expect);
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] == 0);
    for (std::size_t x : hom(sys, true)) CHECK(x == 0);

    // Euler characteristic agrees between the complex and its homology,
    // and with the alternating subset sum.
    const ChainComplex<Rat> cx = chain_complex(sys, false);
    std::int64_t chi_c = 0, chi_h = 0, chi_s = 0;
    for (std::size_t i = 0; i < cx.degrees.size(); ++i) {
      const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
      chi_c += sign * static_cast<std::int64_t>(cx.degrees[i]);
      chi_h += sign * static_cast<std::int64_t>(h[i]);
    }
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      const std::int64_t sign = (std::popcount(mask) % 2 == 1) ? 1 : -1;
      chi_s += sign * static_cast<std::int64_t>(sys.dims[mask]);
    }
    CHECK(chi_c == chi_h);
    CHECK(chi_c == chi_s);

    // Composites along different removal orders agree with transition().
    if (n >= 2 && (rng() % 4u) == 0u) {
      const unsigned super = rng() % (1u << n);
      unsigned sub = super & (rng() % (1u << n));
      M step = M::identity(sys.dims[super], Rat(0));
      unsigned cur = super;
      for (int j = 0; j < n; ++j) {
        const unsigned bit = 1u << j;
        if ((super & bit) && !(sub & bit)) {
          step = sys.cover_map(cur, j) * step;
          cur &= ~bit;
        }
      }
      CHECK(step == sys.transition(sub, super));
    }
  }
}

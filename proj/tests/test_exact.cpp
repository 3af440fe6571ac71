#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coxglue/lattice.hpp"
#include "coxglue/matrix.hpp"
#include "coxglue/scalar_io.hpp"
#include "coxglue/subspace.hpp"

using namespace coxglue;

namespace {

LaurentPoly P(const std::string& s) { return parse_laurent(s); }

std::mt19937 rng(0xc0ffee);

Rat random_rat() {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  return make_rat(Int(num(rng)), Int(den(rng)));
}

LaurentPoly random_laurent() {
  std::uniform_int_distribution<int> exp(-3, 3), nterms(0, 4);
  LaurentPoly p;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) p += LaurentPoly::u(exp(rng), random_rat());
  return p;
}

Fp random_fp() {
  std::uniform_int_distribution<std::int64_t> v(0, 100);
  return Fp(v(rng), 101);
}

// Cofactor expansion, the independent determinant route for small sizes.
LaurentPoly det_by_expansion(const Matrix<LaurentPoly>& m) {
  const size_t n = m.rows();
  if (n == 1) return m(0, 0);
  LaurentPoly acc;
  for (size_t i = 0; i < n; ++i) {
    if (m(i, 0).is_zero()) continue;
    Matrix<LaurentPoly> minor(n - 1, n - 1, LaurentPoly());
    for (size_t r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (size_t c = 1; c < n; ++c) minor(rr, c - 1) = m(r, c);
      ++rr;
    }
    LaurentPoly term = m(i, 0) * det_by_expansion(minor);
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

TEST_CASE("laurent parse and print round-trip") {
  CHECK(P("u^-1 + 2 - u^3").str() == "u^-1+2-u^3");
  CHECK(P("-3/2").constant_value() == make_rat(Int(-3), Int(2)));
  CHECK(P("0").is_zero());
  CHECK(P("4-2u").str() == "4-2u");
  CHECK(P("1+2u+2u^2+u^3") == P("u^3 + 2u^2 + 2u + 1"));
  CHECK_THROWS_AS(parse_laurent("u +* 3"), Error);
  CHECK_THROWS_AS(parse_rational("1+u"), Error);
}

TEST_CASE("poly_divrem matches the shifted-ordinary contract") {
  // (u^3+1) = (u+1)(u^2-u+1) exactly.
  auto [q, r] = poly_divrem(P("u^3+1"), P("u^2-u+1"));
  CHECK(q == P("u+1"));
  CHECK(r.is_zero());

  auto [q2, r2] = poly_divrem(P("u^2+3"), P("u^2+3"));
  CHECK(q2 == P("1"));
  CHECK(r2.is_zero());

  CHECK_THROWS_AS(poly_divrem(P("u"), LaurentPoly()), Error);

  // Laurent inputs: the identity a = q*b + r must hold verbatim.
  for (int t = 0; t < 200; ++t) {
    LaurentPoly a = random_laurent(), b = random_laurent();
    if (b.is_zero()) continue;
    auto [qq, rr] = poly_divrem(a, b);
    CHECK(a == qq * b + rr);
    if (!rr.is_zero()) {
      int deg_r = rr.high() - rr.low();
      int deg_b = b.high() - b.low();
      CHECK(deg_r < deg_b);
    }
  }
}

TEST_CASE("poly_gcd is monic and maximal") {
  // Euclid by hand: 1-u^3 = u*(1-u^2) + (1-u); 1-u^2 = (1+u)(1-u) + 0,
  // so the monic gcd is u-1.
  LaurentPoly g = poly_gcd(P("1-u^2"), P("1-u^3"));
  CHECK(g == P("u-1"));
  CHECK(poly_divides(g, P("1-u^2")));
  CHECK(poly_divides(g, P("1-u^3")));
  // The quotients share no further factor.
  LaurentPoly qa = poly_divrem(P("1-u^2"), g).first;
  LaurentPoly qb = poly_divrem(P("1-u^3"), g).first;
  CHECK(poly_gcd(qa, qb) == P("1"));

  CHECK(poly_gcd(LaurentPoly(), LaurentPoly()).is_zero());
  // u is a unit here, so 3u^2 generates the whole ring: canonical gcd 1.
  CHECK(poly_gcd(P("3u^2"), LaurentPoly()) == P("1"));
}

TEST_CASE("reduce_mod clears negative powers through the unit u") {
  const LaurentPoly phi6 = P("u^2-u+1");
  // u^3 = -1 mod phi6, so 1 - u^3 = 2.
  CHECK(reduce_mod(P("1-u^3"), phi6) == P("2"));
  // 1 - 2u + 2u^2 - u^3 = 1 - 2u + 2(u-1) + 1 = 0.
  CHECK(reduce_mod(P("1-2u+2u^2-u^3"), phi6).is_zero());
  CHECK(reduce_mod(LaurentPoly(), phi6).is_zero());
  // Residues are faithful: a - reduce(a) is divisible by m even for Laurent a.
  for (int t = 0; t < 100; ++t) {
    LaurentPoly a = random_laurent();
    LaurentPoly r = reduce_mod(a, phi6);
    int k = a.is_zero() || a.low() >= 0 ? 0 : -a.low();
    CHECK(poly_divides(phi6, (a - r).shifted(k)));
  }
  CHECK_THROWS_AS(reduce_mod(P("u"), LaurentPoly()), Error);
  // m(0) = 0 blocks clearing of negative exponents.
  CHECK_THROWS_AS(reduce_mod(P("u^-1"), P("u^2-u")), Error);
  // ...but ordinary inputs reduce fine modulo such m.
  CHECK(reduce_mod(P("u^2"), P("u^2-u")) == P("u"));
}

TEST_CASE("ring axioms hold for every scalar kind") {
  for (int t = 0; t < 120; ++t) {
    LaurentPoly a = random_laurent(), b = random_laurent(), c = random_laurent();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + (-a) == LaurentPoly());

    Rat x = random_rat(), y = random_rat(), z = random_rat();
    CHECK(x * (y + z) == x * y + x * z);

    Fp f = random_fp(), g = random_fp(), h = random_fp();
    CHECK(f * (g + h) == f * g + f * h);
    if (!g.is_zero()) CHECK((f / g) * g == f);

    RatFunc ra(a), rb(b);
    RatFunc sum = ra + rb;
    CHECK(sum - rb == ra);
    if (!rb.is_zero()) CHECK((ra / rb) * rb == ra);
  }
}

TEST_CASE("rational functions normalize to a canonical form") {
  RatFunc f(P("u^2-1"), P("u-1"));
  CHECK(f.is_polynomial());
  CHECK(f.num() == P("u+1"));
  RatFunc g(P("2u"), P("2u^2"));   // = u^-1
  CHECK(g == RatFunc(P("u^-1")));
  CHECK(g.den() == P("1"));
  RatFunc h(P("1"), P("2u-2"));    // denominator becomes monic
  CHECK(h.den() == P("u-1"));
  CHECK(h.num() == P("1/2"));
  CHECK(h.evaluate(Rat(3)) == make_rat(Int(1), Int(4)));
  CHECK_THROWS_AS(h.evaluate(Rat(1)), Error);
}

TEST_CASE("field determinants and the trivial anchors") {
  Matrix<Rat> id = Matrix<Rat>::identity(4, Rat(0));
  CHECK(det(id) == Rat(1));
  Matrix<Rat> m(2, 2, Rat(0));
  m(0, 0) = Rat(1); m(0, 1) = Rat(2); m(1, 0) = Rat(2); m(1, 1) = Rat(1);
  CHECK(det(m) == Rat(-3));
}

TEST_CASE("bareiss equals cofactor expansion on random laurent matrices") {
  std::uniform_int_distribution<size_t> dim(1, 4);
  for (int t = 0; t < 60; ++t) {
    size_t n = dim(rng);
    Matrix<LaurentPoly> m(n, n, LaurentPoly());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = random_laurent();
    CHECK(det(m) == det_by_expansion(m));
  }
}

TEST_CASE("kernel image solve rank basics") {
  Matrix<Rat> z(2, 2, Rat(0));
  CHECK(kernel_space(z).dim() == 2);

  Matrix<RatFunc> m(2, 2, RatFunc());
  m(0, 0) = RatFunc(1);       m(0, 1) = RatFunc::u();
  m(1, 0) = RatFunc::u();     m(1, 1) = RatFunc::u() * RatFunc::u();
  CHECK(rank(m) == 1);

  Matrix<Rat> a(1, 1, Rat(2));
  auto x = solve(a, std::vector<Rat>{Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == make_rat(Int(1), Int(2)));

  // rank-nullity on random matrices over F_101
  std::uniform_int_distribution<size_t> dim(1, 6);
  for (int t = 0; t < 40; ++t) {
    size_t r = dim(rng), c = dim(rng);
    Matrix<Fp> f(r, c, Fp(0, 101));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) f(i, j) = random_fp();
    CHECK(rank(f) + kernel(f).rows() == c);
    // kernel rows really solve Mx = 0
    Matrix<Fp> k = kernel(f);
    for (size_t i = 0; i < k.rows(); ++i) {
      auto y = f.apply(k.row(i));
      for (auto& v : y) CHECK(v.is_zero());
    }
  }
}

TEST_CASE("subspace lattice operations") {
  const Rat like(0);
  auto e = Matrix<Rat>::identity(2, like);
  Subspace<Rat> e1 = Subspace<Rat>::from_rows(2, Matrix<Rat>::from_rows({{Rat(1), Rat(0)}}));
  Subspace<Rat> e2 = Subspace<Rat>::from_rows(2, Matrix<Rat>::from_rows({{Rat(0), Rat(1)}}));
  Subspace<Rat> zero(2, like);

  CHECK(subspace_eq(subspace_sum(e1, zero), e1));
  CHECK(subspace_intersect(e1, e2).dim() == 0);
  auto plane = Subspace<Rat>::from_rows(
      2, Matrix<Rat>::from_rows({{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}));
  CHECK(plane.dim() == 2);
  CHECK(subspace_eq(plane, Subspace<Rat>::full(2, like)));

  // Grassmann identity + eq<->mutual containment on random subspaces.
  std::uniform_int_distribution<size_t> dim(0, 3);
  for (int t = 0; t < 60; ++t) {
    auto rnd_space = [&]() {
      size_t k = dim(rng);
      Matrix<Rat> rows(k, 4, Rat(0));
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < 4; ++j) rows(i, j) = random_rat();
      return k ? Subspace<Rat>::from_rows(4, rows) : Subspace<Rat>(4, Rat(0));
    };
    Subspace<Rat> A = rnd_space(), B = rnd_space();
    auto S = subspace_sum(A, B), I = subspace_intersect(A, B);
    CHECK(S.dim() + I.dim() == A.dim() + B.dim());
    CHECK(A.contains_subspace(I));
    CHECK(B.contains_subspace(I));
    CHECK(S.contains_subspace(A));
    bool eq = subspace_eq(A, B);
    CHECK(eq == (A.contains_subspace(B) && B.contains_subspace(A)));
  }
}

TEST_CASE("quotient maps vanish exactly on the subspace") {
  for (int t = 0; t < 30; ++t) {
    Matrix<Rat> rows(2, 4, Rat(0));
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 4; ++j) rows(i, j) = random_rat();
    Subspace<Rat> s = Subspace<Rat>::from_rows(4, rows);
    Matrix<Rat> q = s.quotient_map();
    CHECK(rank(q) == 4 - s.dim());
    for (size_t i = 0; i < s.basis().rows(); ++i) {
      auto y = q.apply(s.basis().row(i));
      for (auto& v : y) CHECK(v == 0);
    }
  }
}

TEST_CASE("integer lattices in hermite normal form") {
  CHECK(lattice_image(Matrix<Int>::identity(3, Int(0))) == IntegerLattice::full(3));

  // 2Z intersect 3Z = 6Z.
  auto two = IntegerLattice::from_rows(1, Matrix<Int>::from_rows({{Int(2)}}));
  auto three = IntegerLattice::from_rows(1, Matrix<Int>::from_rows({{Int(3)}}));
  auto six = lattice_intersect(two, three);
  CHECK(six.basis()(0, 0) == 6);
  CHECK(lattice_sum(two, three) == IntegerLattice::full(1));

  // {(x,y) : 2x - y in 3Z}: enumerating residues mod 3 gives pairs
  // (0,0),(1,2),(2,1), i.e. 3 of the 9 classes, so the index is 3.
  int classes = 0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if ((2 * x - y) % 3 == 0) ++classes;
  CHECK(classes == 3);
  Matrix<Int> m2(1, 1, Int(2));
  auto cond = lattice_preimage_condition(m2, IntegerLattice::from_rows(
                                                 1, Matrix<Int>::from_rows({{Int(3)}})));
  REQUIRE(cond.index_in_ambient().has_value());
  CHECK(*cond.index_in_ambient() == 9 / classes);
  CHECK(cond.contains({Int(1), Int(2)}));
  CHECK(cond.contains({Int(1), Int(-1)}));
  CHECK(!cond.contains({Int(1), Int(1)}));

  // HNF idempotence on random generators.
  std::uniform_int_distribution<int> val(-9, 9);
  std::uniform_int_distribution<size_t> dim(1, 4);
  for (int t = 0; t < 60; ++t) {
    size_t r = dim(rng), c = dim(rng);
    Matrix<Int> g(r, c, Int(0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) g(i, j) = val(rng);
    auto l = IntegerLattice::from_rows(c, g);
    auto l2 = IntegerLattice::from_rows(c, l.basis());
    CHECK(l == l2);
    // every generator is a member
    for (size_t i = 0; i < r; ++i) CHECK(l.contains(g.row(i)));
  }
}

TEST_CASE("integer kernels and preimages") {
  // kernel of [1 2 3] = rank-2 lattice; check A x = 0 for all basis rows.
  Matrix<Int> a = Matrix<Int>::from_rows({{Int(1), Int(2), Int(3)}});
  Matrix<Int> k = int_kernel(a);
  CHECK(k.rows() == 2);
  for (size_t i = 0; i < k.rows(); ++i) {
    auto y = a.apply(k.row(i));
    CHECK(y[0] == 0);
  }

  // preimage of 2Z under x -> 3x is 2Z (3 invertible mod 2).
  Matrix<Int> three(1, 1, Int(3));
  auto pre = lattice_preimage(three, IntegerLattice::from_rows(
                                         1, Matrix<Int>::from_rows({{Int(2)}})));
  CHECK(pre.basis()(0, 0) == 2);
}

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "coxglue/error.hpp"

namespace coxglue {

// Generator indices are 0-based internally; serialization is 1-based.
using Word = std::vector<int>;

class CoxeterSystem;

// Handle into a system's element table.  Indices follow ShortLex order of
// normal forms, so idx 0 is the identity and idx n-1 the longest element.
struct Elt {
  std::uint32_t idx = 0;
  const CoxeterSystem* sys = nullptr;
  friend auto operator<=>(const Elt&, const Elt&) = default;
};

enum class Side { Left, Right };

class CoxeterSystem {
 public:
  static CoxeterSystem from_matrix(const std::vector<std::vector<int>>& m,
                                   std::size_t cap = 50000);
  // type: "A" (n<=5), "B" (n<=4), "D" (n=4), "I2" (n = m(s1,s2) <= 12).
  static CoxeterSystem from_label(const std::string& type, int n,
                                  std::size_t cap = 50000);

  int rank() const { return rank_; }
  std::size_t order() const { return n_; }
  int m(int s, int t) const { return mat_[static_cast<size_t>(s)][static_cast<size_t>(t)]; }
  const std::vector<std::vector<int>>& matrix() const { return mat_; }

  Elt identity() const { return {0, this}; }
  Elt simple(int s) const;
  Elt element(std::uint32_t i) const;
  Elt longest() const { return {static_cast<std::uint32_t>(n_ - 1), this}; }

  Elt right(Elt a, int s) const;  // a*s
  Elt left(int s, Elt a) const;   // s*a
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;
  int length(Elt a) const;
  const Word& word(Elt a) const;  // ShortLex-least reduced word
  Elt from_word(const Word& w) const;

  std::vector<Word> reduced_words(Elt w,
                                  std::size_t limit = static_cast<std::size_t>(-1)) const;
  bool is_length_additive(Elt a, Elt b) const;
  bool is_descent(Elt w, int s, Side side) const;

  bool is_reflection(Elt r) const;

  // Distance in the graph with edges w -- s*w.
  int distance(Elt a, Elt b) const;

  // The standard parabolic subgroup W_J, sorted by element index.
  std::vector<Elt> parabolic_elements(const std::vector<int>& J) const;
  bool in_parabolic(const std::vector<int>& J, Elt w) const;

  void check_elt(Elt a) const;
  void check_gen(int s) const;

 private:
  CoxeterSystem() = default;
  void build(const std::vector<std::vector<int>>& m, std::size_t cap);
  std::uint32_t rt(std::uint32_t x, int s) const {
    return rt_[x * static_cast<std::uint32_t>(rank_) + static_cast<std::uint32_t>(s)];
  }
  std::uint32_t lt(int s, std::uint32_t x) const {
    return lt_[static_cast<std::size_t>(s) * n_ + x];
  }
  std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const;

  int rank_ = 0;
  std::size_t n_ = 0;
  std::vector<std::vector<int>> mat_;
  std::vector<std::uint32_t> rt_, lt_, inv_;
  std::vector<int> len_;
  std::vector<Word> words_;
  std::vector<std::uint32_t> mul_;  // full product table when n_ is small
  std::vector<char> refl_;
};

// The coset W_J x holds p, the member closest to a query element w, and
// n = w p^{-1}, the unique shortest element with n p = w.
struct CosetPointer {
  std::vector<int> J;
  Elt x;  // ShortLex-least member of W_J x
  Elt p;
  Elt n;
};

CosetPointer coset_pointer(const std::vector<int>& J, Elt x, Elt w);

std::vector<Elt> half_set(const CoxeterSystem& sys, int i, Side side);

// All minimal paths a -> b (vertex lists, endpoints included) in the graph
// with edges w -- s*w.  Throws PathExplosion past the cap.
std::vector<std::vector<Elt>> geodesics(Elt a, Elt b, std::size_t cap = 100000);

bool is_convex(const CoxeterSystem& sys, const std::vector<Elt>& pts);

struct SizigWitness {
  int s2;      // second generator of the dihedral factor
  Elt w_rank2; // s * longest(<s, s2>)
  Elt w_rest;  // w = w_rank2 * w_rest, lengths additive
};
SizigWitness sizig3_witness(int s, Elt w);

bool coset_in_half(const std::vector<int>& J, Elt y, int i);

std::vector<int> simple_support(Elt r);

bool geodesic_obstruction_check(Elt y, Elt w, int i);

}  // namespace coxglue

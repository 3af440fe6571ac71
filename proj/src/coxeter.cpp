#include "coxglue/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace coxglue {

namespace {

// Coset enumeration over the trivial subgroup.  All generators are
// involutions, so the table is its own inverse table and backward scans use
// the same edges as forward ones.
struct Enumerator {
  int rank;
  std::size_t cap;
  std::vector<Word> relators;
  std::vector<std::int32_t> tab;  // row-major, -1 = undefined
  std::vector<std::int32_t> uf;
  std::size_t live = 0;
  std::deque<std::pair<std::int32_t, std::int32_t>> pending;

  int find(int x) {
    while (uf[static_cast<size_t>(x)] != x) {
      uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
      x = uf[static_cast<size_t>(x)];
    }
    return x;
  }
  std::int32_t& raw(int c, int s) {
    return tab[static_cast<size_t>(c) * static_cast<size_t>(rank) + static_cast<size_t>(s)];
  }
  int get(int c, int s) {
    std::int32_t t = raw(c, s);
    return t < 0 ? -1 : find(t);
  }
  int fresh() {
    require(live < cap, "InfiniteGroup",
            "group enumeration exceeded the element cap");
    tab.insert(tab.end(), static_cast<size_t>(rank), -1);
    uf.push_back(static_cast<std::int32_t>(uf.size()));
    ++live;
    return static_cast<int>(uf.size()) - 1;
  }
  void settle() {
    while (!pending.empty()) {
      auto [px, py] = pending.front();
      pending.pop_front();
      int x = find(px), y = find(py);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      uf[static_cast<size_t>(y)] = x;
      --live;
      for (int s = 0; s < rank; ++s) {
        std::int32_t d = raw(y, s);
        if (d < 0) continue;
        int dd = find(d);
        int e = get(x, s);
        if (e == -1) raw(x, s) = dd;
        else if (e != dd) pending.emplace_back(e, dd);
        // stale mirrors at dd resolve through find() on read
      }
    }
  }
  void join(int a, int s, int b) {  // connect a --s-- b, a and b live
    int ta = get(a, s);
    if (ta == -1) raw(a, s) = b;
    else if (ta != b) pending.emplace_back(ta, b);
    int tb = get(b, s);
    if (tb == -1) raw(b, s) = a;
    else if (tb != a) pending.emplace_back(tb, a);
    settle();
  }
  void scan_fill(int c, const Word& w) {
    std::size_t i = 0, j = w.size();
    int f = c, b = c;
    while (true) {
      while (i < j) {
        int t = get(f, w[i]);
        if (t == -1) break;
        f = t;
        ++i;
      }
      if (i == j) {
        if (f != b) {
          pending.emplace_back(f, b);
          settle();
        }
        return;
      }
      while (j > i + 1) {
        int t = get(b, w[j - 1]);
        if (t == -1) break;
        b = t;
        --j;
      }
      if (j == i + 1) {
        join(f, w[i], b);
        return;
      }
      // gap of two or more: define the next forward edge and keep scanning
      int d = fresh();
      join(f, w[i], d);  // both slots empty, so no coincidence possible
      f = d;
      ++i;
    }
  }
  void run() {
    fresh();  // coset of the identity
    for (int c = 0; c < static_cast<int>(uf.size()); ++c) {
      if (find(c) != c) continue;
      for (const Word& r : relators) {
        scan_fill(c, r);
        if (find(c) != c) break;
      }
    }
  }
};

}  // namespace

void CoxeterSystem::build(const std::vector<std::vector<int>>& m, std::size_t cap) {
  const size_t r = m.size();
  require(r > 0, "InvalidMatrix", "empty matrix");
  for (size_t i = 0; i < r; ++i) {
    require(m[i].size() == r, "InvalidMatrix", "matrix is not square");
    require(m[i][i] == 1, "InvalidMatrix", "diagonal entries must be 1");
    for (size_t j = 0; j < r; ++j) {
      require(m[i][j] == m[j][i], "InvalidMatrix", "matrix is not symmetric");
      if (i != j)
        require(m[i][j] >= 2, "InvalidMatrix", "off-diagonal entries must be >= 2");
    }
  }
  rank_ = static_cast<int>(r);
  mat_ = m;

  Enumerator en;
  en.rank = rank_;
  en.cap = cap;
  for (int s = 0; s < rank_; ++s) en.relators.push_back({s, s});
  for (int s = 0; s < rank_; ++s)
    for (int t = s + 1; t < rank_; ++t) {
      Word w;
      for (int k = 0; k < 2 * mat_[static_cast<size_t>(s)][static_cast<size_t>(t)]; ++k)
        w.push_back(k % 2 == 0 ? s : t);
      en.relators.push_back(std::move(w));
    }
  en.run();

  // Compact live cosets, then renumber by breadth-first search with
  // generators taken in ascending order: the visit order is then exactly
  // ShortLex order of normal forms, and parent words are those normal forms.
  std::vector<std::int32_t> tmp_of(en.uf.size(), -1);
  std::vector<int> reps;
  for (int c = 0; c < static_cast<int>(en.uf.size()); ++c)
    if (en.find(c) == c) {
      tmp_of[static_cast<size_t>(c)] = static_cast<std::int32_t>(reps.size());
      reps.push_back(c);
    }
  const std::uint32_t n = static_cast<std::uint32_t>(reps.size());
  std::vector<std::uint32_t> ctab(static_cast<size_t>(n) * static_cast<size_t>(rank_));
  for (std::uint32_t i = 0; i < n; ++i)
    for (int s = 0; s < rank_; ++s) {
      int t = en.get(reps[i], s);
      require(t != -1, "Internal", "incomplete table after enumeration");
      ctab[i * static_cast<std::uint32_t>(rank_) + static_cast<std::uint32_t>(s)] =
          static_cast<std::uint32_t>(tmp_of[static_cast<size_t>(t)]);
    }

  std::vector<std::int32_t> order_of(n, -1);
  std::vector<std::uint32_t> bfs;
  bfs.reserve(n);
  const std::uint32_t root = static_cast<std::uint32_t>(tmp_of[static_cast<size_t>(en.find(0))]);
  order_of[root] = 0;
  bfs.push_back(root);
  std::vector<std::uint32_t> parent(n, 0);
  std::vector<int> plast(n, -1);
  for (std::uint32_t head = 0; head < bfs.size(); ++head) {
    std::uint32_t x = bfs[head];
    for (int s = 0; s < rank_; ++s) {
      std::uint32_t y = ctab[x * static_cast<std::uint32_t>(rank_) + static_cast<std::uint32_t>(s)];
      if (order_of[y] != -1) continue;
      order_of[y] = static_cast<std::int32_t>(bfs.size());
      parent[y] = x;
      plast[y] = s;
      bfs.push_back(y);
    }
  }
  require(bfs.size() == n, "Internal", "enumerated table is not transitive");

  n_ = n;
  rt_.assign(static_cast<size_t>(n) * static_cast<size_t>(rank_), 0);
  len_.assign(n, 0);
  words_.assign(n, Word{});
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t x = bfs[i];  // element with new index i
    for (int s = 0; s < rank_; ++s)
      rt_[i * static_cast<std::uint32_t>(rank_) + static_cast<std::uint32_t>(s)] =
          static_cast<std::uint32_t>(
              order_of[ctab[x * static_cast<std::uint32_t>(rank_) + static_cast<std::uint32_t>(s)]]);
    if (i > 0) {
      std::uint32_t p = static_cast<std::uint32_t>(order_of[parent[x]]);
      len_[i] = len_[p] + 1;
      words_[i] = words_[p];
      words_[i].push_back(plast[x]);
    }
  }
  for (std::uint32_t x = 0; x < n; ++x)
    for (int s = 0; s < rank_; ++s)
      require(rt(rt(x, s), s) == x, "Internal", "generator edges are not involutive");
  require(n < 2 || (len_[n - 1] > len_[n - 2]), "Internal",
          "longest element is not unique");

  lt_.assign(static_cast<size_t>(rank_) * n, 0);
  for (int s = 0; s < rank_; ++s) lt_[static_cast<size_t>(s) * n] = rt(0, s);
  for (std::uint32_t x = 1; x < n; ++x) {
    std::uint32_t p = 0;
    for (size_t k = 0; k + 1 < words_[x].size(); ++k) p = rt(p, words_[x][k]);
    int t = words_[x].back();
    for (int s = 0; s < rank_; ++s)
      lt_[static_cast<size_t>(s) * n + x] = rt(lt_[static_cast<size_t>(s) * n + p], t);
  }

  inv_.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t y = 0;
    for (auto it = words_[x].rbegin(); it != words_[x].rend(); ++it) y = rt(y, *it);
    inv_[x] = y;
  }

  if (n <= 2048) {
    mul_.assign(static_cast<size_t>(n) * n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) {
        std::uint32_t y = a;
        for (int s : words_[b]) y = rt(y, s);
        mul_[static_cast<size_t>(a) * n + b] = y;
      }
  }

  refl_.assign(n, 0);
  for (std::uint32_t y = 0; y < n; ++y)
    for (int s = 0; s < rank_; ++s)
      refl_[mul_idx(rt(y, s), inv_[y])] = 1;  // y s y^{-1}
}

std::uint32_t CoxeterSystem::mul_idx(std::uint32_t a, std::uint32_t b) const {
  if (!mul_.empty()) return mul_[static_cast<size_t>(a) * n_ + b];
  std::uint32_t y = a;
  for (int s : words_[b]) y = rt(y, s);
  return y;
}

CoxeterSystem CoxeterSystem::from_matrix(const std::vector<std::vector<int>>& m,
                                         std::size_t cap) {
  CoxeterSystem sys;
  sys.build(m, cap);
  return sys;
}

CoxeterSystem CoxeterSystem::from_label(const std::string& type, int n,
                                        std::size_t cap) {
  auto chain = [](int r) {
    std::vector<std::vector<int>> m(static_cast<size_t>(r),
                                    std::vector<int>(static_cast<size_t>(r), 2));
    for (int i = 0; i < r; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int i = 0; i + 1 < r; ++i)
      m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] =
          m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = 3;
    return m;
  };
  if (type == "A") {
    require(n >= 1 && n <= 5, "UnsupportedLabel", "A supports rank 1..5");
    return from_matrix(chain(n), cap);
  }
  if (type == "B") {
    require(n >= 2 && n <= 4, "UnsupportedLabel", "B supports rank 2..4");
    auto m = chain(n);
    m[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] =
        m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 2)] = 4;
    return from_matrix(m, cap);
  }
  if (type == "D") {
    require(n == 4, "UnsupportedLabel", "D supports rank 4");
    std::vector<std::vector<int>> m(4, std::vector<int>(4, 2));
    for (int i = 0; i < 4; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int i : {0, 1, 3})
      m[static_cast<size_t>(i)][2] = m[2][static_cast<size_t>(i)] = 3;
    return from_matrix(m, cap);
  }
  if (type == "I2") {
    require(n >= 2 && n <= 12, "UnsupportedLabel", "I2 supports m = 2..12");
    return from_matrix({{1, n}, {n, 1}}, cap);
  }
  fail("UnsupportedLabel", "unknown type tag: " + type);
}

void CoxeterSystem::check_elt(Elt a) const {
  require(a.sys == this, "MixedSystems", "element belongs to a different system");
  require(a.idx < n_, "Internal", "element index out of range");
}

void CoxeterSystem::check_gen(int s) const {
  require(s >= 0 && s < rank_, "InvalidGenerator", "generator index out of range");
}

Elt CoxeterSystem::simple(int s) const {
  check_gen(s);
  return {rt(0, s), this};
}

Elt CoxeterSystem::element(std::uint32_t i) const {
  require(i < n_, "InvalidElement", "element index out of range");
  return {i, this};
}

Elt CoxeterSystem::right(Elt a, int s) const {
  check_elt(a);
  check_gen(s);
  return {rt(a.idx, s), this};
}

Elt CoxeterSystem::left(int s, Elt a) const {
  check_elt(a);
  check_gen(s);
  return {lt(s, a.idx), this};
}

Elt CoxeterSystem::mul(Elt a, Elt b) const {
  check_elt(a);
  check_elt(b);
  return {mul_idx(a.idx, b.idx), this};
}

Elt CoxeterSystem::inv(Elt a) const {
  check_elt(a);
  return {inv_[a.idx], this};
}

int CoxeterSystem::length(Elt a) const {
  check_elt(a);
  return len_[a.idx];
}

const Word& CoxeterSystem::word(Elt a) const {
  check_elt(a);
  return words_[a.idx];
}

Elt CoxeterSystem::from_word(const Word& w) const {
  std::uint32_t y = 0;
  for (int s : w) {
    check_gen(s);
    y = rt(y, s);
  }
  return {y, this};
}

std::vector<Word> CoxeterSystem::reduced_words(Elt w, std::size_t limit) const {
  check_elt(w);
  std::vector<Word> out;
  Word prefix;
  // Left descents in ascending order yield ShortLex-sorted output.
  auto rec = [&](auto&& self, std::uint32_t x) -> void {
    if (out.size() >= limit) return;
    if (x == 0) {
      out.push_back(prefix);
      return;
    }
    for (int s = 0; s < rank_; ++s) {
      std::uint32_t sx = lt(s, x);
      if (len_[sx] < len_[x]) {
        prefix.push_back(s);
        self(self, sx);
        prefix.pop_back();
        if (out.size() >= limit) return;
      }
    }
  };
  rec(rec, w.idx);
  return out;
}

bool CoxeterSystem::is_length_additive(Elt a, Elt b) const {
  check_elt(a);
  check_elt(b);
  return len_[mul_idx(a.idx, b.idx)] == len_[a.idx] + len_[b.idx];
}

bool CoxeterSystem::is_descent(Elt w, int s, Side side) const {
  check_elt(w);
  check_gen(s);
  std::uint32_t y = side == Side::Right ? rt(w.idx, s) : lt(s, w.idx);
  return len_[y] < len_[w.idx];
}

bool CoxeterSystem::is_reflection(Elt r) const {
  check_elt(r);
  return refl_[r.idx] != 0;
}

int CoxeterSystem::distance(Elt a, Elt b) const {
  check_elt(a);
  check_elt(b);
  return len_[mul_idx(b.idx, inv_[a.idx])];
}

std::vector<Elt> CoxeterSystem::parabolic_elements(const std::vector<int>& J) const {
  for (int s : J) check_gen(s);
  std::vector<char> seen(n_, 0);
  std::vector<std::uint32_t> bfs{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < bfs.size(); ++head)
    for (int s : J) {
      std::uint32_t y = rt(bfs[head], s);
      if (!seen[y]) {
        seen[y] = 1;
        bfs.push_back(y);
      }
    }
  std::sort(bfs.begin(), bfs.end());
  std::vector<Elt> out;
  out.reserve(bfs.size());
  for (auto i : bfs) out.push_back({i, this});
  return out;
}

bool CoxeterSystem::in_parabolic(const std::vector<int>& J, Elt w) const {
  check_elt(w);
  for (int s : words_[w.idx])
    if (std::find(J.begin(), J.end(), s) == J.end()) return false;
  return true;
}

CosetPointer coset_pointer(const std::vector<int>& J, Elt x, Elt w) {
  const CoxeterSystem& sys = *x.sys;
  sys.check_elt(x);
  sys.check_elt(w);
  std::vector<Elt> members;
  for (Elt j : sys.parabolic_elements(J)) members.push_back(sys.mul(j, x));
  std::sort(members.begin(), members.end());
  Elt best_p = members[0];
  Elt best_n = sys.mul(w, sys.inv(best_p));
  int ties = 1;
  for (std::size_t k = 1; k < members.size(); ++k) {
    Elt n = sys.mul(w, sys.inv(members[k]));
    if (sys.length(n) < sys.length(best_n)) {
      best_p = members[k];
      best_n = n;
      ties = 1;
    } else if (sys.length(n) == sys.length(best_n)) {
      ++ties;
    }
  }
  require(ties == 1, "Internal", "closest coset member is not unique");
  return {J, members[0], best_p, best_n};
}

std::vector<Elt> half_set(const CoxeterSystem& sys, int i, Side side) {
  sys.check_gen(i);
  std::vector<Elt> out;
  for (std::uint32_t x = 0; x < sys.order(); ++x) {
    Elt w = sys.element(x);
    if (!sys.is_descent(w, i, side)) out.push_back(w);
  }
  return out;
}

std::vector<std::vector<Elt>> geodesics(Elt a, Elt b, std::size_t cap) {
  const CoxeterSystem& sys = *a.sys;
  sys.check_elt(a);
  sys.check_elt(b);
  Elt z = sys.mul(b, sys.inv(a));
  std::vector<Word> rws = sys.reduced_words(z, cap + 1);
  require(rws.size() <= cap, "PathExplosion", "too many minimal paths");
  std::vector<std::vector<Elt>> paths;
  paths.reserve(rws.size());
  for (const Word& rw : rws) {
    std::vector<Elt> path{a};
    // The path applies letters right to left: z * a = w[0]...w[k-1] * a.
    for (auto it = rw.rbegin(); it != rw.rend(); ++it)
      path.push_back(sys.left(*it, path.back()));
    paths.push_back(std::move(path));
  }
  return paths;
}

bool is_convex(const CoxeterSystem& sys, const std::vector<Elt>& pts) {
  std::vector<char> in(sys.order(), 0);
  for (Elt p : pts) {
    sys.check_elt(p);
    in[p.idx] = 1;
  }
  std::vector<std::uint32_t> outside;
  for (std::uint32_t v = 0; v < sys.order(); ++v)
    if (!in[v]) outside.push_back(v);
  // v lies on some minimal a -> b path iff d(a,v) + d(v,b) = d(a,b).
  for (Elt a : pts)
    for (Elt b : pts) {
      int dab = sys.distance(a, b);
      for (std::uint32_t v : outside) {
        Elt ev = sys.element(v);
        if (sys.distance(a, ev) + sys.distance(ev, b) == dab) return false;
      }
    }
  return true;
}

SizigWitness sizig3_witness(int s, Elt w) {
  const CoxeterSystem& sys = *w.sys;
  sys.check_elt(w);
  sys.check_gen(s);
  require(w.idx != 0, "PreconditionFailed", "w must not be the identity");
  Elt sw = sys.left(s, w);
  require(sys.length(sw) == sys.length(w) + 1, "PreconditionFailed",
          "s*w must go up in length");
  Elt sprime = sys.mul(sys.inv(w), sw);  // s*w = w*s' forces s' = w^{-1} s w
  require(sys.length(sprime) == 1, "PreconditionFailed",
          "w^{-1} s w must be a simple generator");
  for (int s2 = 0; s2 < sys.rank(); ++s2) {
    if (s2 == s) continue;
    Word alt;
    for (int k = 0; k < sys.m(s, s2); ++k) alt.push_back(k % 2 == 0 ? s : s2);
    Elt w0st = sys.from_word(alt);  // longest element of <s, s2>
    Elt w_rank2 = sys.left(s, w0st);
    Elt w_rest = sys.mul(sys.inv(w_rank2), w);
    if (sys.length(w_rank2) + sys.length(w_rest) == sys.length(w))
      return {s2, w_rank2, w_rest};
  }
  fail("WitnessNotFound", "no dihedral factorization found");
}

bool coset_in_half(const std::vector<int>& J, Elt y, int i) {
  const CoxeterSystem& sys = *y.sys;
  sys.check_elt(y);
  sys.check_gen(i);
  require(!sys.is_descent(y, i, Side::Right), "PreconditionFailed",
          "y must lie in the right half-set of i");
  Elt r = sys.mul(sys.right(y, i), sys.inv(y));  // y s_i y^{-1}
  return !sys.in_parabolic(J, r);
}

std::vector<int> simple_support(Elt r) {
  const CoxeterSystem& sys = *r.sys;
  sys.check_elt(r);
  require(sys.is_reflection(r), "NotAReflection",
          "support is defined for reflections");
  std::set<int> letters(sys.word(r).begin(), sys.word(r).end());
  return {letters.begin(), letters.end()};
}

bool geodesic_obstruction_check(Elt y, Elt w, int i) {
  const CoxeterSystem& sys = *y.sys;
  sys.check_elt(y);
  sys.check_elt(w);
  sys.check_gen(i);
  if (y == w) return true;  // no path has interior vertices
  Elt ry = sys.mul(sys.right(y, i), sys.inv(y));
  Elt rw = sys.mul(sys.right(w, i), sys.inv(w));
  require(sys.length(ry) > sys.length(rw), "PreconditionFailed",
          "requires l(y s y^{-1}) > l(w s w^{-1})");
  Elt v = sys.right(y, i);
  return sys.distance(y, v) + sys.distance(v, w) != sys.distance(y, w);
}

}  // namespace coxglue

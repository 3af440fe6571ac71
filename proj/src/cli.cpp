#include "coxglue/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxglue/algebra.hpp"
#include "coxglue/braidrep.hpp"
#include "coxglue/counterexample.hpp"
#include "coxglue/coxeter.hpp"
#include "coxglue/error.hpp"
#include "coxglue/gluing.hpp"
#include "coxglue/kwspace.hpp"
#include "coxglue/scalar_io.hpp"
#include "coxglue/simplicial.hpp"

namespace coxglue {
namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared option bag.  Each subcommand registers only the flags it uses, but
// they all bind here so the dispatcher reads one struct.

struct Opts {
  std::string type;
  std::string matrix;
  std::string format = "text";
  std::size_t cap_order = 50000;

  std::string file;
  std::string builtin;
  std::string field = "rat";
  std::string q;
  std::string lambda;
  std::string mu;
  std::string specialize;
  std::string gens;

  std::uint32_t fuzz_seed = 20260817u;
  int fuzz_count = 200;

  std::int64_t modulus = 101;
  std::int64_t glue_q = 0;
  int sites = 2;
  std::size_t cap_dim = 64;
  std::uint32_t glue_seed = 2026u;

  std::string group_poly;
};

// Codes that mean the input was unusable rather than a check coming out
// false; they map to exit 2.
bool input_error(const std::string& code) {
  static const std::set<std::string> codes = {
      "ParseError",     "BadIndex",       "BadShape",
      "BadModulus",     "KindMismatch",   "UnsupportedLabel",
      "InputError",     "CapExceeded",    "NotAReflection",
      "EmptySupport",   "NotConstant",    "InfiniteGroup",
      "PathExplosion",  "SizeMismatch",   "EmptyMatrix",
      "NotSquare",      "PreconditionFailed", "SpecializationPole",
      "DivisionByZero", "FieldTooSmall"};
  return codes.count(code) > 0;
}

// ---------------------------------------------------------------------------
// Output: a deterministic text rendering of the same tree the json mode dumps.

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_str(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

bool all_scalars(const json& a) {
  for (const json& v : a)
    if (!is_scalar(v)) return false;
  return true;
}

std::string inline_array(const json& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ", ";
    s += scalar_str(a[i]);
  }
  return s + "]";
}

void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if (is_scalar(v))
        out << pad << key << ": " << scalar_str(v) << "\n";
      else if (v.is_array() && all_scalars(v))
        out << pad << key << ": " << inline_array(v) << "\n";
      else {
        out << pad << key << ":\n";
        render_text(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const json& v : j) {
      if (is_scalar(v))
        out << pad << "- " << scalar_str(v) << "\n";
      else if (v.is_array() && all_scalars(v))
        out << pad << "- " << inline_array(v) << "\n";
      else {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      }
    }
  } else {
    out << pad << scalar_str(j) << "\n";
  }
}

void emit(std::ostream& out, const std::string& format, const json& r) {
  if (format == "json")
    out << r.dump(2) << "\n";
  else
    render_text(r, out, 0);
}

// ---------------------------------------------------------------------------
// System construction from flags or files.

std::pair<std::string, int> split_label(const std::string& label) {
  const std::size_t lp = label.find('(');
  if (lp != std::string::npos) {
    require(lp > 0 && label.back() == ')' && lp + 2 <= label.size(),
            "InputError", "bad system label '" + label + "'");
    const std::string head = label.substr(0, lp);
    const std::string num = label.substr(lp + 1, label.size() - lp - 2);
    require(!num.empty(), "InputError", "bad system label '" + label + "'");
    return {head, std::stoi(num)};
  }
  std::size_t i = 0;
  while (i < label.size() &&
         !std::isdigit(static_cast<unsigned char>(label[i])))
    ++i;
  require(i > 0 && i < label.size(), "InputError",
          "bad system label '" + label + "' (expected e.g. A2 or I2(6))");
  return {label.substr(0, i), std::stoi(label.substr(i))};
}

std::unique_ptr<CoxeterSystem> make_system(const Opts& o) {
  if (!o.matrix.empty()) {
    const json m = json::parse(o.matrix);
    return std::make_unique<CoxeterSystem>(CoxeterSystem::from_matrix(
        m.get<std::vector<std::vector<int>>>(), o.cap_order));
  }
  require(!o.type.empty(), "InputError", "need --type or --matrix");
  const auto [head, n] = split_label(o.type);
  return std::make_unique<CoxeterSystem>(
      CoxeterSystem::from_label(head, n, o.cap_order));
}

std::unique_ptr<CoxeterSystem> system_from_json(const json& s,
                                                std::size_t cap) {
  if (s.contains("matrix"))
    return std::make_unique<CoxeterSystem>(CoxeterSystem::from_matrix(
        s.at("matrix").get<std::vector<std::vector<int>>>(), cap));
  const std::string type = s.at("type").get<std::string>();
  if (s.contains("rank"))
    return std::make_unique<CoxeterSystem>(
        CoxeterSystem::from_label(type, s.at("rank").get<int>(), cap));
  const auto [head, n] = split_label(type);
  return std::make_unique<CoxeterSystem>(
      CoxeterSystem::from_label(head, n, cap));
}

std::string word_str(const CoxeterSystem& sys, Elt w) {
  const Word& word = sys.word(w);
  if (word.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ".";
    s += std::to_string(word[i] + 1);
  }
  return s;
}

// Comma-separated 1-based generator list -> sorted unique 0-based indices.
std::vector<int> parse_gens(const std::string& text, int rank) {
  std::vector<int> J;
  if (text.empty()) return J;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(tok, &used);
      require(used == tok.size(), "InputError",
              "bad generator list '" + text + "'");
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail("InputError", "bad generator list '" + text + "'");
    }
    require(v >= 1 && v <= rank, "BadIndex",
            "generator " + tok + " out of range");
    J.push_back(v - 1);
  }
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  return J;
}

// ---------------------------------------------------------------------------
// Scalars: every entry is read as a Laurent polynomial and then coerced into
// the requested coefficient field.

struct FieldSpec {
  enum Kind { kRat, kFp, kRatFunc } kind = kRat;
  std::int64_t p = 0;
};

FieldSpec parse_field(const std::string& f) {
  if (f.empty() || f == "rat") return {};
  if (f == "ratfunc") return {FieldSpec::kRatFunc, 0};
  if (f.rfind("fp:", 0) == 0) {
    FieldSpec spec;
    spec.kind = FieldSpec::kFp;
    try {
      std::size_t used = 0;
      spec.p = std::stoll(f.substr(3), &used);
      require(used == f.size() - 3, "InputError", "bad field '" + f + "'");
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail("InputError", "bad field '" + f + "'");
    }
    require(Fp::is_prime(spec.p), "BadModulus",
            "field modulus must be prime");
    return spec;
  }
  fail("InputError", "unknown field '" + f + "' (rat, ratfunc, or fp:<p>)");
}

template <class K>
K coerce(const LaurentPoly& c, const FieldSpec& f);

template <>
Rat coerce<Rat>(const LaurentPoly& c, const FieldSpec&) {
  return to_rational(c);
}
template <>
Fp coerce<Fp>(const LaurentPoly& c, const FieldSpec& f) {
  return to_prime_field(c, f.p);
}
template <>
RatFunc coerce<RatFunc>(const LaurentPoly& c, const FieldSpec&) {
  return to_rational_function(c);
}

LaurentPoly entry_poly(const json& e) {
  if (e.is_number_integer()) return LaurentPoly(Rat(e.get<std::int64_t>()));
  if (e.is_string()) return parse_laurent(e.get<std::string>());
  fail("InputError", "matrix entries must be integers or scalar strings");
}

template <class K>
K scalar_arg(const std::string& text, const FieldSpec& f, const char* flag) {
  require(!text.empty(), "InputError", std::string("missing ") + flag);
  return coerce<K>(parse_laurent(text), f);
}

template <class K>
Matrix<K> matrix_from_json(const json& rows, const FieldSpec& f) {
  require(rows.is_array() && !rows.empty(), "InputError",
          "expected a non-empty array of rows");
  std::vector<std::vector<K>> out;
  for (const json& row : rows) {
    require(row.is_array() && !row.empty(), "InputError",
            "expected a non-empty row");
    std::vector<K> r;
    for (const json& e : row) r.push_back(coerce<K>(entry_poly(e), f));
    out.push_back(std::move(r));
  }
  return Matrix<K>::from_rows(out);
}

// ---------------------------------------------------------------------------
// Coxeter suites.

json coxeter_info(const CoxeterSystem& sys, bool& ok) {
  json r;
  r["rank"] = sys.rank();
  r["order"] = sys.order();
  r["coxeter_matrix"] = sys.matrix();
  r["longest"] = word_str(sys, sys.longest());
  r["longest_length"] = sys.length(sys.longest());
  std::size_t refl = 0;
  for (std::uint32_t i = 0; i < sys.order(); ++i)
    if (sys.is_reflection(sys.element(i))) ++refl;
  r["reflections"] = refl;
  ok = true;
  return r;
}

// The half set P_i = {w : l(w s_i) = l(w) + 1}.  Its convexity lives in the
// left-Cayley graph, the one geodesics() walks; the left-descent mirror is
// the same set after inversion, so one side covers both statements.
json coxeter_convexity(const CoxeterSystem& sys, bool& ok) {
  ok = true;
  json rows = json::array();
  for (int i = 0; i < sys.rank(); ++i) {
    const std::vector<Elt> set = half_set(sys, i, Side::Right);
    const bool convex = is_convex(sys, set);
    rows.push_back(
        {{"generator", i + 1}, {"size", set.size()}, {"convex", convex}});
    ok = ok && convex;
  }
  return {{"half_sets", rows}, {"all_convex", ok}};
}

Elt dihedral_longest(const CoxeterSystem& sys, int s, int s2) {
  Elt best = sys.identity();
  for (const Elt w : sys.parabolic_elements({s, s2}))
    if (sys.length(w) > sys.length(best)) best = w;
  return best;
}

json coxeter_sizig(const CoxeterSystem& sys, bool& ok) {
  std::size_t valid = 0, witnessed = 0;
  json failures = json::array();
  for (int s = 0; s < sys.rank(); ++s)
    for (std::uint32_t i = 1; i < sys.order(); ++i) {
      const Elt w = sys.element(i);
      const Elt sw = sys.left(s, w);
      if (sys.length(sw) != sys.length(w) + 1) continue;
      bool commutes = false;
      for (int s2 = 0; s2 < sys.rank() && !commutes; ++s2)
        if (sys.right(w, s2) == sw) commutes = true;
      if (!commutes) continue;
      ++valid;
      bool pass = false;
      try {
        const SizigWitness wit = sizig3_witness(s, w);
        pass = sys.mul(wit.w_rank2, wit.w_rest) == w &&
               sys.length(w) ==
                   sys.length(wit.w_rank2) + sys.length(wit.w_rest) &&
               wit.w_rank2 ==
                   sys.mul(sys.simple(s), dihedral_longest(sys, s, wit.s2));
      } catch (const Error&) {
        pass = false;
      }
      if (pass)
        ++witnessed;
      else
        failures.push_back({{"s", s + 1}, {"w", word_str(sys, w)}});
    }
  ok = failures.empty();
  return {{"valid_pairs", valid},
          {"witnessed", witnessed},
          {"failures", failures},
          {"ok", ok}};
}

json coxeter_geod(const CoxeterSystem& sys, bool& ok) {
  std::size_t checked = 0;
  json failures = json::array();
  for (int i = 0; i < sys.rank(); ++i) {
    const Elt si = sys.simple(i);
    for (std::uint32_t yi = 0; yi < sys.order(); ++yi) {
      const Elt y = sys.element(yi);
      const Elt ry = sys.mul(sys.mul(y, si), sys.inv(y));
      for (std::uint32_t wi = 0; wi < sys.order(); ++wi) {
        const Elt w = sys.element(wi);
        const Elt rw = sys.mul(sys.mul(w, si), sys.inv(w));
        if (sys.length(ry) <= sys.length(rw)) continue;
        ++checked;
        if (!geodesic_obstruction_check(y, w, i))
          failures.push_back({{"generator", i + 1},
                              {"y", word_str(sys, y)},
                              {"w", word_str(sys, w)}});
      }
    }
  }
  ok = failures.empty();
  return {{"triples_checked", checked}, {"failures", failures}, {"ok", ok}};
}

json coxeter_appear(const CoxeterSystem& sys, bool& ok) {
  std::size_t checked = 0;
  json failures = json::array();
  for (int i = 0; i < sys.rank(); ++i) {
    const Elt si = sys.simple(i);
    for (const Elt y : half_set(sys, i, Side::Right)) {
      ++checked;
      const Elt r = sys.mul(sys.mul(y, si), sys.inv(y));
      std::vector<int> lhs = simple_support(r);
      std::sort(lhs.begin(), lhs.end());
      std::vector<int> rhs;
      for (int j = 0; j < sys.rank(); ++j) {
        std::vector<int> J;
        for (int s = 0; s < sys.rank(); ++s)
          if (s != j) J.push_back(s);
        if (coset_in_half(J, y, i)) rhs.push_back(j);
      }
      if (lhs != rhs)
        failures.push_back({{"generator", i + 1}, {"y", word_str(sys, y)}});
    }
  }
  ok = failures.empty();
  return {{"cosets_checked", checked}, {"failures", failures}, {"ok", ok}};
}

// ---------------------------------------------------------------------------
// Representation loading and suites.

template <class K>
struct LoadedRep {
  std::unique_ptr<CoxeterSystem> sys;
  std::unique_ptr<BraidRep<K>> rep;
};

template <class K>
LoadedRep<K> load_rep(const Opts& o, const FieldSpec& f) {
  LoadedRep<K> out;
  if (!o.file.empty()) {
    require(o.builtin.empty(), "InputError",
            "--file and --builtin are exclusive");
    std::ifstream in(o.file);
    require(static_cast<bool>(in), "InputError",
            "cannot open '" + o.file + "'");
    json j;
    in >> j;
    out.sys = system_from_json(j.at("system"), o.cap_order);
    std::vector<Matrix<K>> gens;
    for (const json& g : j.at("generators"))
      gens.push_back(matrix_from_json<K>(g, f));
    out.rep = std::make_unique<BraidRep<K>>(out.sys.get(), gens);
    return out;
  }
  out.sys = make_system(o);
  if (o.builtin == "hecke") {
    const K q = scalar_arg<K>(o.q, f, "--q");
    out.rep = std::make_unique<BraidRep<K>>(hecke_regular_rep(*out.sys, q));
  } else if (o.builtin == "rank2") {
    const K lam = scalar_arg<K>(o.lambda, f, "--lambda");
    const K mu = scalar_arg<K>(o.mu, f, "--mu");
    out.rep =
        std::make_unique<BraidRep<K>>(rank2_two_dim_rep(*out.sys, lam, mu));
  } else if (o.builtin.empty()) {
    fail("InputError", "need --file or --builtin hecke|rank2");
  } else {
    fail("InputError", "unknown builtin '" + o.builtin + "'");
  }
  return out;
}

template <class K>
json rep_validate(const BraidRep<K>& rep, bool& ok) {
  const ValidationReport v = validate(rep);
  json rels = json::array();
  for (const RelationCheck& rc : v.relations)
    rels.push_back(
        {{"s", rc.s + 1}, {"t", rc.t + 1}, {"m", rc.m}, {"pass", rc.pass}});
  json bad = json::array();
  for (const int s : v.non_invertible) bad.push_back(s + 1);
  ok = v.ok;
  return {{"dim", rep.dim()},
          {"relations", rels},
          {"non_invertible", bad},
          {"tau_word_independent", v.tau_word_independent},
          {"ok", v.ok}};
}

json goodness_json(const GoodnessReport& g) {
  return {{"dim_v", g.dim_v},
          {"dim_kw", g.dim_kw},
          {"dim_span_sections", g.dim_span_sections},
          {"cokernel_dim", g.cokernel_dim},
          {"cumulative_ranks", g.cumulative_ranks},
          {"notes", g.notes},
          {"good", g.good}};
}

template <class K>
json rep_goodness(const BraidRep<K>& rep, const Opts& o, bool& ok) {
  const GoodnessReport g = is_good(rep);
  json r = goodness_json(g);
  ok = g.good;
  if (!o.specialize.empty()) {
    if constexpr (std::is_same_v<K, RatFunc>) {
      const CoxeterSystem& sys = rep.system();
      const Rat at = parse_rational(o.specialize);
      std::vector<Matrix<Rat>> gens;
      for (int s = 0; s < sys.rank(); ++s) {
        const Matrix<K>& m = rep.gen(s);
        Matrix<Rat> g2 = Matrix<Rat>::zero_like(m.rows(), m.cols(), Rat(0));
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            g2(i, j) = m(i, j).evaluate(at);
        gens.push_back(std::move(g2));
      }
      const BraidRep<Rat> sp(&sys, gens);
      const GoodnessReport gs = is_good(sp);
      r["specialized_at"] = rat_str(at);
      r["specialized"] = goodness_json(gs);
      ok = ok && gs.good;
    } else {
      fail("InputError", "--specialize requires --field ratfunc");
    }
  }
  return r;
}

template <class K>
json rep_euler(const BraidRep<K>& rep, bool& ok) {
  ok = euler_identity_check(rep);
  return {{"dim", rep.dim()}, {"identity_holds", ok}};
}

template <class K>
json rep_half(const BraidRep<K>& rep, bool& ok) {
  ok = true;
  json rows = json::array();
  for (int i = 0; i < rep.system().rank(); ++i) {
    const bool pass = half_identity_check(rep, i);
    rows.push_back({{"generator", i + 1}, {"pass", pass}});
    ok = ok && pass;
  }
  return {{"checks", rows}, {"ok", ok}};
}

template <class K>
json rep_chi(const BraidRep<K>& rep, bool& ok) {
  const CoxeterSystem& sys = rep.system();
  std::vector<Matrix<K>> dgens;
  for (int s = 0; s < sys.rank(); ++s)
    dgens.push_back(rep.gen_inv(s).transpose());
  const BraidRep<K> dual(&sys, dgens);
  const Matrix<K> gram = chi_pairing(rep, dual);
  ok = true;
  return {{"dim", rep.dim()},
          {"dim_kw", gram.rows()},
          {"nonsingular", true},
          {"adjunction", true},
          {"ok", true}};
}

template <class K>
json rep_ideals(const BraidRep<K>& rep, bool& ok) {
  const CoxeterSystem& sys = rep.system();
  json rows = json::array();
  for (std::uint32_t i = 0; i < sys.order(); ++i) {
    const Elt w = sys.element(i);
    rows.push_back({{"w", word_str(sys, w)}, {"dim", v_w(rep, w).dim()}});
  }
  ok = augmentation_check(rep);
  return {{"subspaces", rows}, {"augmentation_matches", ok}};
}

template <class K>
json rep_kwdims(const BraidRep<K>& rep, bool& ok) {
  const CoxeterSystem& sys = rep.system();
  const KWSpace<K> full = kw_space(rep);
  json rows = json::array();
  const int n = sys.rank();
  for (unsigned mask = 0; mask + 1 < (1u << n); ++mask) {
    std::vector<int> J;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) J.push_back(s);
    const KWSpace<K> kw = kw_space_coset(rep, J, sys.identity());
    std::string name;
    for (std::size_t t = 0; t < J.size(); ++t) {
      if (t) name += ".";
      name += std::to_string(J[t] + 1);
    }
    rows.push_back({{"J", name},
                    {"coset_size", kw.elements.size()},
                    {"dim", kw.basis.dim()}});
  }
  ok = true;
  return {{"dim_v", rep.dim()},
          {"dim_kw", full.basis.dim()},
          {"full", full.is_full()},
          {"cosets_at_identity", rows}};
}

template <class K>
json rep_induce(const Opts& o, const FieldSpec& f, bool& ok) {
  const std::unique_ptr<CoxeterSystem> sys = make_system(o);
  const std::vector<int> J = parse_gens(o.gens, sys->rank());
  const K q = scalar_arg<K>(o.q, f, "--q");
  const std::vector<Matrix<K>> subgens(J.size(), Matrix<K>::from_rows({{q}}));

  bool input_good = true;  // vacuous for an empty generator set
  std::unique_ptr<CoxeterSystem> subsys;
  if (!J.empty()) {
    std::vector<std::vector<int>> sm(J.size(), std::vector<int>(J.size(), 2));
    for (std::size_t a = 0; a < J.size(); ++a)
      for (std::size_t b = 0; b < J.size(); ++b)
        sm[a][b] = sys->m(J[a], J[b]);
    subsys = std::make_unique<CoxeterSystem>(
        CoxeterSystem::from_matrix(sm, o.cap_order));
    const BraidRep<K> sub(subsys.get(), subgens);
    input_good = is_good(sub).good;
  }

  const BraidRep<K> big = induce(*sys, J, 1, subgens, scalar_one(q));
  const ValidationReport v = validate(big);
  const GoodnessReport g = is_good(big);
  ok = v.ok && (!input_good || g.good);
  return {{"dim_induced", big.dim()},
          {"validated", v.ok},
          {"input_good", input_good},
          {"output_good", g.good},
          {"ok", ok}};
}

template <class K>
json rep_run(const std::string& leaf, const Opts& o, const FieldSpec& f,
             bool& ok) {
  if (leaf == "induce") return rep_induce<K>(o, f, ok);
  const LoadedRep<K> lr = load_rep<K>(o, f);
  if (leaf == "validate") return rep_validate(*lr.rep, ok);
  if (leaf == "goodness") return rep_goodness(*lr.rep, o, ok);
  if (leaf == "euler") return rep_euler(*lr.rep, ok);
  if (leaf == "half") return rep_half(*lr.rep, ok);
  if (leaf == "chi") return rep_chi(*lr.rep, ok);
  if (leaf == "ideals") return rep_ideals(*lr.rep, ok);
  if (leaf == "kw-dims") return rep_kwdims(*lr.rep, ok);
  fail("Internal", "unhandled rep subcommand '" + leaf + "'");
}

// ---------------------------------------------------------------------------
// Random interval systems: degree zero must carry exactly the objects whose
// interval reaches the empty subset, everything above must vanish, and the
// complex with the empty subset included must be exact.

json homlem_fuzz(std::uint32_t seed, int count, bool& ok) {
  require(count >= 0, "InputError", "--count must be non-negative");
  std::mt19937 rng(seed);
  int failures = 0;
  for (int trial = 0; trial < count; ++trial) {
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

    bool pass = true;
    const std::vector<std::size_t> h = homology(chain_complex(sys, false));
    if ((h.empty() ? 0 : h.at(0)) != expect) pass = false;
    for (std::size_t i = 1; i < h.size(); ++i)
      if (h[i] != 0) pass = false;
    for (const std::size_t x : homology(chain_complex(sys, true)))
      if (x != 0) pass = false;
    if (!pass) ++failures;
  }
  ok = failures == 0;
  return {{"trials", count}, {"failures", failures}, {"ok", ok}};
}

// ---------------------------------------------------------------------------
// Gluing datum sources and suites.

std::vector<Fp> fp_vector_from_json(const json& a, const Fp& like,
                                    std::size_t want, const char* what) {
  require(a.is_array() && a.size() == want, "InputError",
          std::string(what) + ": expected " + std::to_string(want) +
              " integers");
  std::vector<Fp> v;
  for (const json& e : a) {
    require(e.is_number_integer(), "InputError",
            std::string(what) + ": entries must be integers");
    v.emplace_back(e.get<std::int64_t>(), like.modulus());
  }
  return v;
}

Matrix<Fp> fp_matrix_from_json(const json& rows, const Fp& like,
                               std::size_t want_r, std::size_t want_c,
                               const char* what) {
  require(rows.is_array() && rows.size() == want_r, "InputError",
          std::string(what) + ": expected " + std::to_string(want_r) +
              " rows");
  Matrix<Fp> m = Matrix<Fp>::zero_like(want_r, want_c, like);
  for (std::size_t r = 0; r < want_r; ++r) {
    const json& row = rows[r];
    require(row.is_array() && row.size() == want_c, "InputError",
            std::string(what) + ": expected " + std::to_string(want_c) +
                " columns");
    for (std::size_t c = 0; c < want_c; ++c) {
      require(row[c].is_number_integer(), "InputError",
              std::string(what) + ": entries must be integers");
      m(r, c) = Fp(row[c].get<std::int64_t>(), like.modulus());
    }
  }
  return m;
}

GluingDatum datum_from_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "InputError", "cannot open '" + path + "'");
  json j;
  in >> j;

  const std::int64_t p = j.at("modulus").get<std::int64_t>();
  require(Fp::is_prime(p), "BadModulus", "modulus must be prime");
  const Fp like(0, p);

  GluingDatum d;
  d.like = like;
  const json& sites = j.at("sites");
  require(sites.is_array() && !sites.empty(), "InputError",
          "sites: expected a non-empty array");
  d.n = static_cast<int>(sites.size());
  for (const json& sj : sites) {
    Algebra alg;
    alg.like = like;
    alg.dim = sj.at("dim").get<std::size_t>();
    require(alg.dim > 0, "InputError", "site dimension must be positive");
    const json& table = sj.at("table");
    require(table.is_array() && table.size() == alg.dim, "InputError",
            "site table: expected one row per basis element");
    for (const json& row : table) {
      require(row.is_array() && row.size() == alg.dim, "InputError",
              "site table: expected one entry per basis element");
      std::vector<std::vector<Fp>> out_row;
      for (const json& coords : row)
        out_row.push_back(
            fp_vector_from_json(coords, like, alg.dim, "site table"));
      alg.table.push_back(std::move(out_row));
    }
    alg.unit = fp_vector_from_json(sj.at("unit"), like, alg.dim, "unit");
    d.site.push_back(std::move(alg));
  }

  const std::size_t n = static_cast<std::size_t>(d.n);
  d.mod.resize(n * n);
  d.nu.resize(n * n * n);

  for (const json& bj : j.value("bimodules", json::array())) {
    const int bi = bj.at("i").get<int>();
    const int bk = bj.at("j").get<int>();
    require(bi >= 0 && bi < d.n && bk >= 0 && bk < d.n && bi != bk,
            "InputError", "bimodules: bad site pair");
    Bimodule m;
    m.dim = bj.at("dim").get<std::size_t>();
    const json& left = bj.at("left");
    require(left.is_array() && left.size() == d.site[bi].dim, "InputError",
            "bimodules: one left action matrix per site basis element");
    for (const json& act : left)
      m.left.push_back(
          fp_matrix_from_json(act, like, m.dim, m.dim, "bimodule left"));
    const json& right = bj.at("right");
    require(right.is_array() && right.size() == d.site[bk].dim, "InputError",
            "bimodules: one right action matrix per site basis element");
    for (const json& act : right)
      m.right.push_back(
          fp_matrix_from_json(act, like, m.dim, m.dim, "bimodule right"));
    d.mod[d.idx(bi, bk)] = std::move(m);
  }

  for (const json& cj : j.value("compositions", json::array())) {
    const int ci = cj.at("i").get<int>();
    const int cj2 = cj.at("j").get<int>();
    const int ck = cj.at("k").get<int>();
    require(ci >= 0 && ci < d.n && cj2 >= 0 && cj2 < d.n && ck >= 0 &&
                ck < d.n,
            "InputError", "compositions: bad site triple");
    require(ci != cj2 && cj2 != ck, "InputError",
            "compositions: maps with a repeated adjacent site are derived");
    const std::size_t rows =
        (ci == ck) ? d.site[ci].dim : d.mdim(ci, ck);
    const std::size_t cols = d.mdim(ci, cj2) * d.mdim(cj2, ck);
    d.nu[d.idx3(ci, cj2, ck)] =
        fp_matrix_from_json(cj.at("matrix"), like, rows, cols, "composition");
  }

  seal_datum(d);
  return d;
}

GluingDatum load_datum(const Opts& o) {
  if (!o.file.empty()) {
    require(o.builtin.empty(), "InputError",
            "--file and --builtin are exclusive");
    return datum_from_file(o.file);
  }
  if (o.builtin == "product") {
    require(o.sites >= 1, "InputError", "--sites must be at least 1");
    const std::vector<Algebra> sites(static_cast<std::size_t>(o.sites),
                                     Algebra::field(Fp(0, o.modulus)));
    return product_datum(sites);
  }
  if (o.builtin == "triangular") return triangular_datum(Fp(0, o.modulus));
  if (o.builtin == "w-gluing") {
    const std::unique_ptr<CoxeterSystem> sys = make_system(o);
    return w_gluing_datum(*sys, Fp(o.glue_q, o.modulus));
  }
  fail("InputError", "need --file or --builtin product|triangular|w-gluing");
}

json glue_assemble(const GluingDatum& d, bool& ok) {
  const GluingAlgebra g = assemble(d);
  braverman_check(d, g);
  json blocks = json::array();
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      blocks.push_back({{"i", i},
                        {"j", j},
                        {"offset", g.block_offset(i, j)},
                        {"dim", d.mdim(i, j)}});
  ok = true;
  return {{"sites", d.n},
          {"dim", g.alg.dim},
          {"blocks", blocks},
          {"blocks_recovered", true},
          {"ok", true}};
}

json glue_simples(const GluingDatum& d, const Opts& o, bool& ok) {
  const GluingAlgebra g = assemble(d);
  const std::vector<AModule> sims =
      simple_modules(g.alg, o.cap_dim, o.glue_seed);
  std::vector<std::size_t> dims;
  for (const AModule& s : sims) dims.push_back(s.dim);
  std::sort(dims.begin(), dims.end());
  ok = true;
  return {{"algebra_dim", g.alg.dim}, {"count", sims.size()}, {"dims", dims}};
}

json glue_k0(const GluingDatum& d, const Opts& o, bool& ok) {
  const K0Report k = k0_verify(d, o.cap_dim, o.glue_seed);
  json classes = json::array();
  for (std::size_t r = 0; r < k.classes.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < k.classes.cols(); ++c)
      row.push_back(k.classes(r, c).str());
    classes.push_back(row);
  }
  ok = k.equal && k.injective;
  return {{"site_simple_counts", k.site_counts},
          {"glued_simple_dims", k.glued_simple_dims},
          {"classes", classes},
          {"span_equals_k_phi", k.equal},
          {"classes_independent", k.injective},
          {"ok", ok}};
}

json glue_supports(const Opts& o, bool& ok) {
  const std::unique_ptr<CoxeterSystem> sys = make_system(o);
  const GluingDatum d = (o.file.empty() && o.builtin.empty())
                            ? w_gluing_datum(*sys, Fp(o.glue_q, o.modulus))
                            : load_datum(o);
  require(d.n == static_cast<int>(sys->order()), "InputError",
          "datum sites must be indexed by the group elements");
  const SupportReport s = support_scan(d, *sys, o.cap_dim, o.glue_seed);
  json rows = json::array();
  ok = true;
  for (const SimpleSupport& sim : s.simples) {
    json words = json::array();
    for (const std::uint32_t idx : sim.supp)
      words.push_back(word_str(*sys, sys->element(idx)));
    const bool pass = (sim.full || sim.matches_intersection) && sim.convex;
    ok = ok && pass;
    rows.push_back({{"dim", sim.dim},
                    {"support", words},
                    {"full", sim.full},
                    {"matches_half_intersection", sim.matches_intersection},
                    {"convex", sim.convex}});
  }
  return {{"simples", rows}, {"ok", ok}};
}

// ---------------------------------------------------------------------------
// Obstruction analysis for the Euler-table equation.

json counterexample_run(const Opts& o, bool& ok) {
  const std::unique_ptr<CoxeterSystem> sys = make_system(o);
  std::optional<LaurentPoly> gp;
  if (!o.group_poly.empty()) gp = parse_laurent(o.group_poly);
  const ObstructionReport rep = divisibility_analysis(*sys, gp);
  ok = rep.divisible_by_poincare && rep.divisible_by_signed;
  std::string verdict = "unknown";
  if (rep.solvable.has_value())
    verdict = *rep.solvable ? "no-obstruction" : "unsolvable";

  if (o.format == "json")
    return {{"verdict", verdict},
            {"det_mod_phi6", rep.det_mod_phi6.str()},
            {"p_mod_phi6",
             rep.group_mod_phi6 ? rep.group_mod_phi6->str() : ""}};

  json r;
  r["system"] = rep.label;
  r["poincare"] = rep.poincare.str();
  r["signed_poincare"] = rep.signed_poincare.str();
  r["det"] = rep.det_m.str();
  r["divisible_by_poincare"] = rep.divisible_by_poincare;
  r["divisible_by_signed"] = rep.divisible_by_signed;
  r["residual_factor"] = rep.residual_factor.str();
  r["det_mod_phi6"] = rep.det_mod_phi6.str();
  if (rep.group_poly) r["group_poly"] = rep.group_poly->str();
  if (rep.group_mod_phi6) r["p_mod_phi6"] = rep.group_mod_phi6->str();
  r["verdict"] = verdict;
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"workbench for Coxeter systems, braid representations, and "
               "glued algebras"};
  app.name("coxglue");
  app.require_subcommand(1);

  Opts o;

  const auto add_sys = [&](CLI::App* c) {
    c->add_option("--type", o.type, "system label (A2, B3, D4, I2(6))");
    c->add_option("--matrix", o.matrix, "Coxeter matrix as JSON rows");
    c->add_option("--cap-order", o.cap_order,
                  "cap on the group order during construction");
  };
  const auto add_fmt = [&](CLI::App* c) {
    c->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_rep_src = [&](CLI::App* c) {
    add_sys(c);
    c->add_option("--file", o.file, "representation file (JSON)");
    c->add_option("--builtin", o.builtin, "built-in family")
        ->check(CLI::IsMember({"hecke", "rank2"}));
    c->add_option("--field", o.field,
                  "coefficient field: rat, ratfunc, or fp:<p>");
    c->add_option("--q", o.q, "parameter for the hecke family");
    c->add_option("--lambda", o.lambda, "first rank2 eigenvalue");
    c->add_option("--mu", o.mu, "second rank2 eigenvalue");
    add_fmt(c);
  };
  const auto add_glue_src = [&](CLI::App* c) {
    add_sys(c);
    c->add_option("--file", o.file, "gluing datum file (JSON)");
    c->add_option("--builtin", o.builtin, "built-in datum")
        ->check(CLI::IsMember({"product", "triangular", "w-gluing"}));
    c->add_option("--modulus", o.modulus, "prime modulus");
    c->add_option("--q", o.glue_q, "scale residue for w-gluing");
    c->add_option("--sites", o.sites, "site count for the product datum");
    c->add_option("--cap-dim", o.cap_dim, "simple-module dimension cap");
    c->add_option("--seed", o.glue_seed, "random seed");
    add_fmt(c);
  };

  CLI::App* cox = app.add_subcommand("coxeter", "finite Coxeter systems");
  cox->require_subcommand(1);
  for (const auto& [name, desc] :
       std::vector<std::pair<const char*, const char*>>{
           {"info", "order, longest element, reflections"},
           {"convexity", "check every one-generator half set is convex"},
           {"sizig3", "factor witnesses for commuting length increases"},
           {"geodcheck", "geodesic obstructions for conjugate reflections"},
           {"appear", "support of a conjugate vs parabolic membership"}}) {
    CLI::App* c = cox->add_subcommand(name, desc);
    add_sys(c);
    add_fmt(c);
  }

  CLI::App* rep = app.add_subcommand("rep", "braid representations");
  rep->require_subcommand(1);
  for (const auto& [name, desc] :
       std::vector<std::pair<const char*, const char*>>{
           {"validate", "braid relations, invertibility, word independence"},
           {"goodness", "section-sum criterion for the glued space"},
           {"euler", "alternating coset identity"},
           {"half", "two-term half identities"},
           {"chi", "pairing with the transpose-inverse dual"},
           {"ideals", "dimensions of the element subspaces"},
           {"kw-dims", "glued space dimensions over parabolic cosets"}}) {
    CLI::App* c = rep->add_subcommand(name, desc);
    add_rep_src(c);
    if (std::string(name) == "goodness")
      c->add_option("--specialize", o.specialize,
                    "also evaluate a ratfunc representation at this value");
  }
  CLI::App* rep_ind = rep->add_subcommand(
      "induce", "induce scalar parabolic data and check goodness transport");
  add_sys(rep_ind);
  rep_ind->add_option("--J", o.gens, "parabolic generators, e.g. 1,3");
  rep_ind->add_option("--q", o.q, "scalar value of each generator");
  rep_ind->add_option("--field", o.field,
                      "coefficient field: rat, ratfunc, or fp:<p>");
  add_fmt(rep_ind);

  CLI::App* fuzz = app.add_subcommand(
      "homlem-fuzz", "random interval systems must be resolutions");
  fuzz->add_option("--seed", o.fuzz_seed, "random seed");
  fuzz->add_option("--count", o.fuzz_count, "number of instances");
  add_fmt(fuzz);

  CLI::App* glue = app.add_subcommand("glue", "glued algebras");
  glue->require_subcommand(1);
  for (const auto& [name, desc] :
       std::vector<std::pair<const char*, const char*>>{
           {"assemble", "build the glued algebra and recover its blocks"},
           {"simples", "simple modules of the glued algebra"},
           {"k0", "class group comparison against the site data"},
           {"supports", "supports of simples over a group-indexed datum"}}) {
    CLI::App* c = glue->add_subcommand(name, desc);
    add_glue_src(c);
  }

  CLI::App* cx = app.add_subcommand(
      "counterexample", "divisibility obstruction for the Euler-table "
                        "equation at a sixth root of unity");
  add_sys(cx);
  cx->add_option("--group-poly", o.group_poly,
                 "Poincare-style polynomial to reduce alongside the "
                 "determinant");
  add_fmt(cx);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const CLI::App* top = app.get_subcommands().at(0);
    const std::string group = top->get_name();
    const std::string leaf =
        top->get_subcommands().empty() ? ""
                                       : top->get_subcommands().at(0)->get_name();

    bool ok = true;
    json r;
    if (group == "coxeter") {
      const std::unique_ptr<CoxeterSystem> sys = make_system(o);
      if (leaf == "info")
        r = coxeter_info(*sys, ok);
      else if (leaf == "convexity")
        r = coxeter_convexity(*sys, ok);
      else if (leaf == "sizig3")
        r = coxeter_sizig(*sys, ok);
      else if (leaf == "geodcheck")
        r = coxeter_geod(*sys, ok);
      else
        r = coxeter_appear(*sys, ok);
    } else if (group == "rep") {
      const FieldSpec f = parse_field(o.field);
      switch (f.kind) {
        case FieldSpec::kRat:
          r = rep_run<Rat>(leaf, o, f, ok);
          break;
        case FieldSpec::kFp:
          r = rep_run<Fp>(leaf, o, f, ok);
          break;
        case FieldSpec::kRatFunc:
          r = rep_run<RatFunc>(leaf, o, f, ok);
          break;
      }
    } else if (group == "homlem-fuzz") {
      r = homlem_fuzz(o.fuzz_seed, o.fuzz_count, ok);
    } else if (group == "glue") {
      if (leaf == "supports") {
        r = glue_supports(o, ok);
      } else {
        const GluingDatum d = load_datum(o);
        if (leaf == "assemble")
          r = glue_assemble(d, ok);
        else if (leaf == "simples")
          r = glue_simples(d, o, ok);
        else
          r = glue_k0(d, o, ok);
      }
    } else {
      r = counterexample_run(o, ok);
    }
    emit(out, o.format, r);
    return ok ? 0 : 1;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace coxglue

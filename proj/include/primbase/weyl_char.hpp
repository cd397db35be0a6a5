#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/group_io.hpp"
#include "primbase/polynomial.hpp"
#include "primbase/root_system.hpp"
#include "primbase/weyl_group.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

/// Reflection degrees of an irreducible Weyl group.
inline std::vector<unsigned> reflection_degrees(char family, int r) {
  std::vector<unsigned> d;
  switch (family) {
  case 'A':
    for (int i = 2; i <= r + 1; ++i) d.push_back(static_cast<unsigned>(i));
    return d;
  case 'B':
  case 'C':
    for (int i = 1; i <= r; ++i) d.push_back(static_cast<unsigned>(2 * i));
    return d;
  case 'D':
    for (int i = 1; i < r; ++i) d.push_back(static_cast<unsigned>(2 * i));
    d.push_back(static_cast<unsigned>(r));
    return d;
  case 'E':
    if (r == 6) return {2, 5, 6, 8, 9, 12};
    if (r == 7) return {2, 6, 8, 10, 12, 14, 18};
    if (r == 8) return {2, 8, 12, 14, 18, 20, 24, 30};
    break;
  case 'F':
    if (r == 4) return {2, 6, 8, 12};
    break;
  case 'G':
    if (r == 2) return {2, 6};
    break;
  default:
    break;
  }
  throw InternalError(std::string("no degree table for ") + family + std::to_string(r));
}

struct SubsystemComponent {
  char family = 'A';
  int rank = 0;
  std::size_t root_count = 0;
  std::string label() const { return std::string(1, family) + std::to_string(rank); }
};

/// Irreducible components of the subsystem with simple system J, typed by
/// rank, number of roots and whether two root lengths occur.
inline std::vector<SubsystemComponent> subsystem_components(const RootSystemData& rs, const std::vector<IntVector>& J) {
  const std::size_t m = J.size();
  std::vector<int> comp(m, -1);
  int nc = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = nc;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < m; ++b)
        if (comp[b] < 0 && rs.inner(J[a], J[b]) != 0) {
          comp[b] = nc;
          stack.push_back(b);
        }
    }
    ++nc;
  }
  std::vector<SubsystemComponent> out;
  for (int c = 0; c < nc; ++c) {
    std::vector<IntVector> simple;
    for (std::size_t s = 0; s < m; ++s)
      if (comp[s] == c) simple.push_back(J[s]);
    std::set<IntVector> roots(simple.begin(), simple.end());
    std::vector<IntVector> queue(simple.begin(), simple.end());
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (const auto& s : simple) {
        IntVector v = rs.reflect(queue[k], s);
        if (roots.insert(v).second) queue.push_back(std::move(v));
      }
    std::set<long long> lengths;
    for (const auto& v : roots) lengths.insert(rs.inner(v, v));
    const int r = static_cast<int>(simple.size());
    const std::size_t N = roots.size();
    const auto ru = static_cast<std::size_t>(r);
    SubsystemComponent sc;
    sc.rank = r;
    sc.root_count = N;
    if (lengths.size() == 1) {
      if (N == ru * (ru + 1)) sc.family = 'A';
      else if (r >= 4 && N == 2 * ru * (ru - 1)) sc.family = 'D';
      else if ((r == 6 && N == 72) || (r == 7 && N == 126) || (r == 8 && N == 240)) sc.family = 'E';
      else throw InternalError("unrecognized simply laced subsystem of rank " + std::to_string(r));
    } else {
      if (r == 2 && N == 12) sc.family = 'G';
      else if (r == 4 && N == 48) sc.family = 'F';
      else if (N == 2 * ru * ru) sc.family = 'B';
      else throw InternalError("unrecognized subsystem of rank " + std::to_string(r));
    }
    out.push_back(sc);
  }
  return out;
}

/// Rank of a set of integer vectors (fraction-free elimination).
inline int vector_rank(std::vector<IntVector> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
      const long long f = rows[i][c];
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = rows[i][k] * p[c] - p[k] * f;
    }
    ++rank;
  }
  return rank;
}

/// Simple roots named a1..an plus a0 for the highest root.
inline IntVector node_root(const RootSystemData& rs, int node) {
  if (node == 0) {
    if (rs.components.size() != 1) throw InputError("a0 is only defined for an irreducible root system");
    return rs.highest_root;
  }
  if (node < 0 || node > rs.rank) throw InputError("node a" + std::to_string(node) + " out of range");
  return rs.simple_roots[static_cast<std::size_t>(node - 1)];
}

/// Poincare polynomial of the reflection subgroup with simple system J.
inline IntPolynomial poincare_polynomial(const RootSystemData& rs, const std::vector<IntVector>& J) {
  IntPolynomial p(BigInt(1));
  for (const auto& c : subsystem_components(rs, J))
    for (unsigned d : reflection_degrees(c.family, c.rank)) p *= q_integer(d);
  return p;
}

inline std::vector<IntVector> node_roots(const RootSystemData& rs, const std::vector<int>& nodes) {
  std::vector<IntVector> out;
  for (int n : nodes) out.push_back(node_root(rs, n));
  return out;
}

/// |G : P| for the parabolic with Levi `levi_subset` (node numbers in 1..rank).
inline IntPolynomial parabolic_index_poly(const RootSystemData& rs, const std::vector<int>& levi_subset) {
  for (int n : levi_subset)
    if (n < 1 || n > rs.rank) throw InputError("Levi subset must consist of simple roots a1..a" + std::to_string(rs.rank));
  return exact_divide(poincare_polynomial(rs, rs.simple_roots), poincare_polynomial(rs, node_roots(rs, levi_subset)));
}

/// p'-part of |C(x)^0_sigma| for w = 1: prod (q^d - 1) over the degrees of
/// the subsystem J, times (q-1)^(rank - rank J).
inline IntPolynomial split_centralizer_order_pprime(const RootSystemData& rs, const std::vector<int>& J) {
  const auto roots = node_roots(rs, J);
  const int rJ = vector_rank(roots);
  if (rJ != static_cast<int>(roots.size())) throw InputError("J is not linearly independent");
  IntPolynomial p(BigInt(1));
  for (const auto& c : subsystem_components(rs, roots))
    for (unsigned d : reflection_degrees(c.family, c.rank)) p *= q_power_minus_one(d);
  const IntPolynomial qm1(std::vector<BigInt>{BigInt(-1), BigInt(1)});
  return p * qm1.pow(static_cast<unsigned>(rs.rank - rJ));
}

struct ParabolicCharQuery {
  std::string type_label;
  std::string kind = "chi";                 // "chi" or "index"
  std::vector<int> J;                       // node numbers, 0 = a0
  std::vector<int> w_word;                  // simple reflections; empty = identity
  std::vector<int> parabolic_subset;        // Levi of the parabolic, nodes in 1..rank
  std::optional<IntPolynomial> centralizer_pprime_poly;
  std::optional<BigInt> q;
  bool twisted = false;
};

struct ChiResult {
  IntPolynomial polynomial;
  std::optional<BigInt> value;
  std::size_t classes_used = 0;
  std::string sign_convention = "(-1)^(rank - r_i)";
};

inline constexpr std::size_t kWeylEnumerationBudget = 1000000;

namespace detail {

inline std::vector<Permutation> enumerate(const GroupHandle& H, std::size_t budget) {
  if (H.order() > budget) throw ResourceError("reflection subgroup of order " + H.order().str() + " exceeds the enumeration budget");
  std::vector<Permutation> out;
  H.chain().for_each_element([&](const Permutation& g) { out.push_back(g); });
  return out;
}

inline RatPolynomial lcm(const RatPolynomial& a, const RatPolynomial& b) {
  return divmod(a * b, gcd(a, b)).first;
}

} // namespace detail

/// Sum over the Weyl classes C_i of
///   |W|/|C_i| * |W_H ∩ C_i|/|W_H| * |W_J w ∩ C_i|/|W_J| * (-1)^(rank-r_i) |C(x)^0|_{p'} / |T_i|.
/// The result must be a polynomial with integer coefficients.
inline ChiResult chi_semisimple(const ParabolicCharQuery& qy, const WeylGroupData* prebuilt = nullptr,
                                std::size_t budget = kWeylEnumerationBudget) {
  if (qy.twisted) throw InputError("twisted Steinberg endomorphisms are not supported; only split data is evaluated");
  std::optional<WeylGroupData> own;
  if (!prebuilt) own = build_weyl_group(build_root_system(qy.type_label), true, budget);
  const WeylGroupData& W = prebuilt ? *prebuilt : *own;
  const RootSystemData& rs = W.rs;
  const std::size_t N = rs.all_roots.size();

  std::set<int> jset(qy.J.begin(), qy.J.end());
  if (jset.size() != qy.J.size()) throw InputError("J has repeated nodes");
  if (static_cast<int>(jset.size()) >= rs.rank + 1) throw InputError("J must be a proper subset of the extended simple roots");
  for (int n : qy.parabolic_subset)
    if (n < 1 || n > rs.rank) throw InputError("parabolic subset must use nodes a1..a" + std::to_string(rs.rank));

  std::vector<Permutation> jgens;
  for (int n : qy.J) jgens.push_back(W.reflection(node_root(rs, n)));
  const GroupHandle WJ(N, jgens, "W_J");
  std::vector<Permutation> hgens;
  for (int n : qy.parabolic_subset) hgens.push_back(W.generators[static_cast<std::size_t>(n - 1)]);
  const GroupHandle WH(N, hgens, "W_H");

  const Permutation w = W.word(qy.w_word);
  for (const auto& s : jgens)
    if (!WJ.contains(s.conjugate_by(w))) throw InputError("w does not normalize W_J");

  IntPolynomial cpoly;
  if (qy.centralizer_pprime_poly) cpoly = *qy.centralizer_pprime_poly;
  else if (qy.w_word.empty()) cpoly = split_centralizer_order_pprime(rs, qy.J);
  else throw InputError("for w != 1 the centralizer polynomial must be supplied");

  std::vector<BigInt> in_h(W.classes.size(), 0), in_j(W.classes.size(), 0);
  for (const auto& h : detail::enumerate(WH, budget)) in_h[static_cast<std::size_t>(W.classify(h))] += 1;
  for (const auto& u : detail::enumerate(WJ, budget)) in_j[static_cast<std::size_t>(W.classify(u * w))] += 1;

  struct Term {
    Rational coef;
    RatPolynomial torus;
  };
  std::vector<Term> terms;
  RatPolynomial denom(Rational(1));
  ChiResult res;
  for (std::size_t i = 0; i < W.classes.size(); ++i) {
    if (in_h[i] == 0 || in_j[i] == 0) continue;
    const auto& C = W.classes[i];
    Rational coef = Rational(W.order, C.size) * Rational(in_h[i], WH.order()) * Rational(in_j[i], WJ.order());
    if ((rs.rank - C.relative_rank) % 2) coef = -coef;
    terms.push_back({coef, to_rational(C.torus_order)});
    denom = detail::lcm(denom, terms.back().torus);
    ++res.classes_used;
  }
  RatPolynomial numer;
  const RatPolynomial cr = to_rational(cpoly);
  for (const auto& t : terms) numer += RatPolynomial(t.coef) * cr * divmod(denom, t.torus).first;
  auto [quo, rem] = divmod(numer, denom);
  if (!rem.is_zero()) throw InputError("character sum does not simplify to a polynomial; check the centralizer data");
  res.polynomial = to_integer(quo);
  if (qy.q) res.value = res.polynomial.eval(*qy.q);
  return res;
}

// ---- query files -----------------------------------------------------------

namespace detail {

inline std::vector<int> parse_nodes(const std::string& text) {
  std::vector<int> out;
  std::string cleaned;
  for (char ch : text) cleaned += (ch == ',' || ch == '{' || ch == '}' || ch == '[' || ch == ']') ? ' ' : ch;
  std::istringstream is(cleaned);
  std::string tok;
  while (is >> tok) {
    if (tok == "none" || tok == "empty") continue;
    std::string digits = tok;
    if (!digits.empty() && (digits[0] == 'a' || digits[0] == 'A' || digits[0] == 's')) digits = digits.substr(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("invalid node name '" + tok + "'");
    out.push_back(std::stoi(digits));
  }
  return out;
}

inline IntPolynomial parse_coefficients(const std::string& text) {
  std::string cleaned;
  for (char ch : text) cleaned += (ch == ',' || ch == '[' || ch == ']') ? ' ' : ch;
  std::istringstream is(cleaned);
  std::vector<BigInt> c;
  std::string tok;
  while (is >> tok) {
    if (tok.find_first_not_of("-0123456789") != std::string::npos) throw InputError("invalid coefficient '" + tok + "'");
    c.emplace_back(tok);
  }
  return IntPolynomial(std::move(c));
}

} // namespace detail

/// Query file: `key: value` lines. Keys: type, kind (chi|index), J, w,
/// parabolic, centralizer (ascending coefficients), q, twisted.
inline ParabolicCharQuery parse_query(std::istream& in, const std::string& source = "<query>") {
  ParabolicCharQuery qy;
  std::string raw;
  std::size_t lineno = 0;
  bool have_type = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (colon == std::string::npos) throw InputError(where + "expected 'key: value'");
    const std::string key = detail::trim(line.substr(0, colon));
    const std::string val = detail::trim(line.substr(colon + 1));
    try {
      if (key == "type") {
        qy.type_label = val;
        have_type = true;
        if (!val.empty() && std::isdigit(static_cast<unsigned char>(val[0]))) qy.twisted = true;
      } else if (key == "kind") {
        if (val != "chi" && val != "index") throw InputError("kind must be 'chi' or 'index'");
        qy.kind = val;
      } else if (key == "J") {
        qy.J = detail::parse_nodes(val);
      } else if (key == "w") {
        if (val != "identity" && val != "1") qy.w_word = detail::parse_nodes(val);
      } else if (key == "parabolic" || key == "levi") {
        qy.parabolic_subset = detail::parse_nodes(val);
      } else if (key == "centralizer") {
        qy.centralizer_pprime_poly = detail::parse_coefficients(val);
      } else if (key == "q") {
        qy.q = BigInt(val);
      } else if (key == "twisted") {
        qy.twisted = (val == "yes" || val == "true" || val == "1");
      } else {
        throw InputError("unknown key '" + key + "'");
      }
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    } catch (const std::exception& e) {
      throw InputError(where + "invalid value '" + val + "'");
    }
  }
  if (!have_type) throw InputError(source + ": query has no 'type' line");
  return qy;
}

inline ParabolicCharQuery read_query_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open query file '" + path + "'");
  return parse_query(in, path);
}

} // namespace primbase

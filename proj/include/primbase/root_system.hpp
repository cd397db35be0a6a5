#pragma once

#include "primbase/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace primbase {

using IntVector = std::vector<long long>;
using IntMatrix = std::vector<IntVector>;

/// Root system with Bourbaki numbering. Roots are integer coordinate vectors
/// in the basis of simple roots; `gram` holds (twice the usual) inner
/// products of simple roots so that every entry is an integer.
struct RootSystemData {
  std::string type_label;
  int rank = 0;
  IntMatrix gram;
  IntMatrix cartan_matrix;  // A_ij = 2(a_i,a_j)/(a_j,a_j)
  std::vector<IntVector> simple_roots;
  std::vector<IntVector> all_roots;
  IntVector highest_root;                   // of the first component
  std::vector<IntVector> highest_roots;     // one per component
  std::vector<std::string> components;      // e.g. {"E6"} or {"A2","A1"}
  std::vector<int> component_offset;

  long long inner(const IntVector& a, const IntVector& b) const {
    long long s = 0;
    for (int i = 0; i < rank; ++i)
      if (a[i])
        for (int j = 0; j < rank; ++j) s += a[i] * gram[i][j] * b[j];
    return s;
  }

  /// s_beta(gamma) = gamma - <gamma, beta^vee> beta
  IntVector reflect(const IntVector& gamma, const IntVector& beta) const {
    const long long num = 2 * inner(gamma, beta);
    const long long den = inner(beta, beta);
    if (num % den != 0) throw InternalError("non-integral Cartan pairing");
    const long long k = num / den;
    IntVector r = gamma;
    for (int i = 0; i < rank; ++i) r[i] -= k * beta[i];
    return r;
  }

  int root_index(const IntVector& v) const {
    auto it = std::find(all_roots.begin(), all_roots.end(), v);
    return it == all_roots.end() ? -1 : static_cast<int>(it - all_roots.begin());
  }

  static long long height(const IntVector& v) { return std::accumulate(v.begin(), v.end(), 0LL); }
};

namespace detail {

inline IntMatrix irreducible_gram(char family, int n) {
  IntMatrix g(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n), 0));
  auto link = [&](int i, int j, long long v) {  // 1-based Bourbaki nodes
    g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
    g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = v;
  };
  auto diag = [&](int i, long long v) { g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = v; };
  switch (family) {
  case 'A':
    if (n < 1) break;
    for (int i = 1; i <= n; ++i) diag(i, 2);
    for (int i = 1; i < n; ++i) link(i, i + 1, -1);
    return g;
  case 'B':
    if (n < 2) break;
    for (int i = 1; i < n; ++i) diag(i, 4);
    diag(n, 2);
    for (int i = 1; i < n; ++i) link(i, i + 1, -2);
    return g;
  case 'C':
    if (n < 2) break;
    for (int i = 1; i < n; ++i) diag(i, 2);
    diag(n, 4);
    for (int i = 1; i < n - 1; ++i) link(i, i + 1, -1);
    link(n - 1, n, -2);
    return g;
  case 'D':
    if (n < 3) break;
    for (int i = 1; i <= n; ++i) diag(i, 2);
    for (int i = 1; i < n - 1; ++i) link(i, i + 1, -1);
    link(n - 2, n, -1);
    return g;
  case 'E':
    if (n < 6 || n > 8) break;
    for (int i = 1; i <= n; ++i) diag(i, 2);
    link(1, 3, -1);
    link(2, 4, -1);
    for (int i = 3; i < n; ++i) link(i, i + 1, -1);
    return g;
  case 'F':
    if (n != 4) break;
    diag(1, 4), diag(2, 4), diag(3, 2), diag(4, 2);
    link(1, 2, -2), link(2, 3, -2), link(3, 4, -1);
    return g;
  case 'G':
    if (n != 2) break;
    diag(1, 2), diag(2, 6);
    link(1, 2, -3);
    return g;
  default:
    break;
  }
  throw InputError(std::string("unknown root system type ") + family + std::to_string(n));
}

/// Splits "E6", "A2xA1", "A5A1" or "B3+G2" into (family, rank) pairs.
inline std::vector<std::pair<char, int>> parse_type(const std::string& label) {
  std::vector<std::pair<char, int>> out;
  std::size_t i = 0;
  while (i < label.size()) {
    const char ch = label[i];
    if (ch == 'x' || ch == '+' || ch == '*' || ch == ' ') {
      ++i;
      continue;
    }
    const char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (std::string("ABCDEFG").find(fam) == std::string::npos)
      throw InputError("unknown root system type '" + label + "'");
    ++i;
    std::size_t j = i;
    while (j < label.size() && std::isdigit(static_cast<unsigned char>(label[j]))) ++j;
    if (j == i) throw InputError("missing rank in root system type '" + label + "'");
    const int n = std::stoi(label.substr(i, j - i));
    if (n < 1 || n > 8) throw InputError("rank out of range in '" + label + "'");
    out.emplace_back(fam, n);
    i = j;
  }
  if (out.empty()) throw InputError("empty root system type");
  return out;
}

} // namespace detail

/// Builds the root system by closing the simple roots under simple reflections.
inline RootSystemData build_root_system(const std::string& type_label) {
  if (!type_label.empty() && std::isdigit(static_cast<unsigned char>(type_label[0])))
    throw InputError("twisted type '" + type_label + "' is not supported; only split data is evaluated");
  RootSystemData rs;
  rs.type_label = type_label;
  const auto parts = detail::parse_type(type_label);
  for (const auto& [fam, n] : parts) rs.rank += n;
  rs.gram.assign(static_cast<std::size_t>(rs.rank), IntVector(static_cast<std::size_t>(rs.rank), 0));
  int off = 0;
  for (const auto& [fam, n] : parts) {
    const IntMatrix g = detail::irreducible_gram(fam, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rs.gram[static_cast<std::size_t>(off + i)][static_cast<std::size_t>(off + j)] =
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    rs.components.push_back(std::string(1, fam) + std::to_string(n));
    rs.component_offset.push_back(off);
    off += n;
  }
  const auto r = static_cast<std::size_t>(rs.rank);
  rs.cartan_matrix.assign(r, IntVector(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rs.cartan_matrix[i][j] = 2 * rs.gram[i][j] / rs.gram[j][j];
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = 1;
    rs.simple_roots.push_back(e);
  }
  std::map<IntVector, bool> seen;
  for (const auto& s : rs.simple_roots) {
    seen[s] = true;
    rs.all_roots.push_back(s);
  }
  for (std::size_t k = 0; k < rs.all_roots.size(); ++k)
    for (const auto& s : rs.simple_roots) {
      IntVector v = rs.reflect(rs.all_roots[k], s);
      if (!seen.count(v)) {
        seen[v] = true;
        rs.all_roots.push_back(std::move(v));
      }
    }
  // Positive roots first, by height, then their negatives in the same order.
  std::vector<IntVector> pos;
  for (const auto& v : rs.all_roots)
    if (RootSystemData::height(v) > 0) pos.push_back(v);
  std::stable_sort(pos.begin(), pos.end(), [](const IntVector& a, const IntVector& b) {
    const long long ha = RootSystemData::height(a), hb = RootSystemData::height(b);
    return ha != hb ? ha < hb : a > b;
  });
  rs.all_roots = pos;
  for (const auto& v : pos) {
    IntVector neg = v;
    for (auto& x : neg) x = -x;
    rs.all_roots.push_back(std::move(neg));
  }
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const int lo = rs.component_offset[c], hi = lo + parts[c].second;
    IntVector best;
    for (const auto& v : pos) {
      bool inside = true;
      for (int i = 0; i < rs.rank; ++i)
        if (v[static_cast<std::size_t>(i)] != 0 && (i < lo || i >= hi)) inside = false;
      if (inside && (best.empty() || RootSystemData::height(v) > RootSystemData::height(best))) best = v;
    }
    rs.highest_roots.push_back(best);
  }
  rs.highest_root = rs.highest_roots.front();
  return rs;
}

} // namespace primbase

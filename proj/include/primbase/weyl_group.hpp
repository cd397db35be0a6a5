#pragma once

#include "primbase/classes.hpp"
#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/polynomial.hpp"
#include "primbase/root_system.hpp"

#include <unordered_map>
#include <vector>

namespace primbase {

/// det(qI - M) by the Faddeev-LeVerrier recursion (all divisions are exact).
inline IntPolynomial characteristic_polynomial(const IntMatrix& A) {
  const std::size_t n = A.size();
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n, 0)), AM(n, std::vector<BigInt>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigInt s = 0;
        for (std::size_t t = 0; t < n; ++t) s += BigInt(A[i][t]) * M[t][j];
        AM[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M[i][j] = AM[i][j];
      M[i][i] += c[n - k + 1];
    }
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) tr += BigInt(A[i][t]) * M[t][i];
    if (tr % k != 0) throw InternalError("Faddeev-LeVerrier division is not exact");
    c[n - k] = -tr / k;
  }
  return IntPolynomial(std::move(c));
}

struct WeylClass {
  Permutation representative;
  BigInt size = 0;
  IntMatrix matrix;
  IntPolynomial torus_order;  // det(qI - w)
  int relative_rank = 0;      // multiplicity of q - 1
};

/// W acting on the roots, with its reflection representation and classes.
struct WeylGroupData {
  RootSystemData rs;
  GroupHandle group;
  std::vector<Permutation> generators;  // simple reflections
  std::vector<IntMatrix> generator_matrices;
  BigInt order = 1;
  std::vector<WeylClass> classes;
  std::unordered_map<Permutation, int, PermutationHash> class_of;
  int reflection_count = 0;

  /// The reflection in an arbitrary root, as a permutation of the roots.
  Permutation reflection(const IntVector& beta) const {
    std::vector<Point> img(rs.all_roots.size());
    for (std::size_t k = 0; k < rs.all_roots.size(); ++k) {
      const int t = rs.root_index(rs.reflect(rs.all_roots[k], beta));
      if (t < 0) throw InputError("vector is not a root");
      img[k] = static_cast<Point>(t);
    }
    return Permutation(std::move(img));
  }

  /// Matrix in the simple-root basis: column j holds w(a_j).
  IntMatrix matrix(const Permutation& w) const {
    const auto r = static_cast<std::size_t>(rs.rank);
    IntMatrix M(r, IntVector(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      const auto& img = rs.all_roots[w[static_cast<Point>(rs.root_index(rs.simple_roots[j]))]];
      for (std::size_t i = 0; i < r; ++i) M[i][j] = img[i];
    }
    return M;
  }

  /// Element of a word in simple reflections (1-based node numbers), applied left to right.
  Permutation word(const std::vector<int>& nodes) const {
    Permutation w = Permutation::identity(rs.all_roots.size());
    for (int i : nodes) {
      if (i < 1 || i > rs.rank) throw InputError("simple reflection index out of range");
      w = w * generators[static_cast<std::size_t>(i - 1)];
    }
    return w;
  }

  int classify(const Permutation& w) const {
    auto it = class_of.find(w);
    if (it == class_of.end()) throw InputError("element is not in W");
    return it->second;
  }
};

inline IntPolynomial torus_order_poly(const WeylGroupData& W, const Permutation& w) {
  return characteristic_polynomial(W.matrix(w));
}

inline int relative_rank(const WeylGroupData& W, const Permutation& w) {
  return multiplicity_of_one(torus_order_poly(W, w));
}

/// Builds W. With `with_classes`, enumerates W (at most `budget` elements)
/// and splits it into conjugacy classes by exact conjugation orbits.
inline WeylGroupData build_weyl_group(const RootSystemData& rs, bool with_classes = true,
                                      std::size_t budget = 1000000) {
  WeylGroupData W;
  W.rs = rs;
  for (const auto& s : rs.simple_roots) W.generators.push_back(W.reflection(s));
  W.group = GroupHandle(rs.all_roots.size(), W.generators, "W(" + rs.type_label + ")");
  W.order = W.group.order();
  for (const auto& g : W.generators) W.generator_matrices.push_back(W.matrix(g));
  W.reflection_count = static_cast<int>(rs.all_roots.size() / 2);
  if (!with_classes) return W;
  if (W.order > budget)
    throw ResourceError("|W(" + rs.type_label + ")| = " + W.order.str() + " exceeds the enumeration budget");
  std::vector<Permutation> all;
  W.group.chain().for_each_element([&](const Permutation& g) { all.push_back(g); });
  std::sort(all.begin(), all.end());
  for (const auto& g : all) {
    if (W.class_of.count(g)) continue;
    const int id = static_cast<int>(W.classes.size());
    std::vector<Permutation> orb{g};
    W.class_of.emplace(g, id);
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& s : W.generators) {
        Permutation y = orb[k].conjugate_by(s);
        if (W.class_of.emplace(y, id).second) orb.push_back(std::move(y));
      }
    WeylClass c;
    c.representative = g;
    c.size = orb.size();
    c.matrix = W.matrix(g);
    c.torus_order = characteristic_polynomial(c.matrix);
    c.relative_rank = multiplicity_of_one(c.torus_order);
    W.classes.push_back(std::move(c));
  }
  return W;
}

} // namespace primbase

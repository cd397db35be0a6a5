#pragma once

#include "primbase/coset_action.hpp"
#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/tuple_tree.hpp"

#include <map>
#include <optional>
#include <vector>

namespace primbase {

/// Conjugators x1..x_{k-1} with H ∩ H^x1 ∩ ... ∩ H^x_{k-1} of the stated order.
struct IntersectionWitness {
  std::vector<Permutation> conjugators;
  BigInt intersection_order = 0;
};

struct WitnessSearchResult {
  bool found = false;
  IntersectionWitness witness;
  std::vector<Point> coset_points;  // the matching base in the coset action
  std::size_t trials = 0;
};

/// |H ∩ H^x1 ∩ ...| by checking every h in H directly (h ∈ H^x iff x h x^-1 ∈ H).
inline BigInt intersection_order(const GroupHandle& H, const std::vector<Permutation>& conjugators,
                                 const BigInt& limit = BigInt(5000000)) {
  if (H.order() > limit) throw ResourceError("subgroup too large for direct intersection counting");
  std::vector<Permutation> inv;
  for (const auto& x : conjugators) inv.push_back(x.inverse());
  BigInt count = 0;
  H.chain().for_each_element([&](const Permutation& h) {
    for (std::size_t i = 0; i < conjugators.size(); ++i)
      if (!H.contains(conjugators[i] * h * inv[i])) return;
    ++count;
  });
  return count;
}

/// Point labels of the coset action, for translating elements into points.
class CosetIndex {
public:
  CosetIndex(const GroupHandle& G, const GroupHandle& H, const CosetActionResult& ca) : lab_(G, H), ca_(ca) {
    for (std::size_t i = 0; i < ca.point_to_coset.size(); ++i)
      where_.emplace(lab_.label(ca.point_to_coset[i]), static_cast<Point>(i));
  }

  /// The point H x.
  Point point_of(const Permutation& x) const { return where_.at(lab_.label(x)); }

  const Permutation& representative(Point p) const { return ca_.point_to_coset.at(p); }

private:
  CosetLabeler lab_;
  const CosetActionResult& ca_;
  std::map<std::vector<Point>, Point> where_;
};

/// A base {w1..wk} of the coset action gives conjugators: move w1 to the
/// point H, then each other point H x contributes x.
inline std::vector<Permutation> base_to_witness(const CosetIndex& idx, const std::vector<Point>& base) {
  if (base.empty()) return {};
  const Permutation shift = idx.representative(base[0]).inverse();
  std::vector<Permutation> out;
  for (std::size_t i = 1; i < base.size(); ++i) out.push_back(idx.representative(idx.point_of(idx.representative(base[i]) * shift)));
  return out;
}

/// Conjugators x_i give the points {H, H x1, ..., H x_{k-1}}.
inline std::vector<Point> witness_to_base(const CosetIndex& idx, std::size_t degree,
                                          const std::vector<Permutation>& conjugators) {
  std::vector<Point> pts{idx.point_of(Permutation::identity(degree))};
  for (const auto& x : conjugators) pts.push_back(idx.point_of(x));
  return pts;
}

/// Random search for k conjugates of H with trivial intersection. A miss is
/// evidence only, never a proof that none exist.
inline WitnessSearchResult conjugate_intersection_witness(const GroupHandle& G, const GroupHandle& H, int k,
                                                          std::size_t budget, std::uint64_t seed,
                                                          std::size_t index_budget = kDefaultIndexBudget) {
  if (budget == 0) throw InputError("budget must be positive");
  if (k < 1) throw InputError("k must be at least 1");
  const CosetActionResult ca = coset_action(G, H, index_budget);
  TupleTree tree(ca.quotient_group, seed);
  Rng rng(seed);
  WitnessSearchResult res;
  std::vector<Point> pts(static_cast<std::size_t>(k));
  for (std::size_t t = 0; t < budget; ++t) {
    ++res.trials;
    pts[0] = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) pts[i] = static_cast<Point>(uniform_index(rng, ca.index));
    std::vector<Point> work = pts;
    if (tree.canonicalize(work).order != 1) continue;
    if (!ca.faithful) break;
    for (std::size_t i = 1; i < pts.size(); ++i) res.witness.conjugators.push_back(ca.point_to_coset[pts[i]]);
    res.witness.intersection_order = intersection_order(H, res.witness.conjugators);
    res.coset_points = pts;
    res.found = (res.witness.intersection_order == 1);
    if (!res.found) throw InternalError("coset base does not give a trivial intersection");
    return res;
  }
  return res;
}

} // namespace primbase

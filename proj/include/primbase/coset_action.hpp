#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"

#include <map>
#include <string>
#include <vector>

namespace primbase {

inline constexpr std::size_t kDefaultIndexBudget = 1000000;

struct CosetActionResult {
  GroupHandle quotient_group;               // G acting on the right cosets Hg
  std::size_t index = 0;                    // |G:H|
  std::vector<Permutation> point_to_coset;  // point i is the coset H * point_to_coset[i]
  bool faithful = false;
  BigInt kernel_order = 1;
};

/// Canonical representative of the right coset Hg: the element of Hg whose
/// base image (with respect to G's base) is lexicographically least.
class CosetLabeler {
public:
  CosetLabeler(const GroupHandle& G, const GroupHandle& H) : base_(G.chain().base_points()) {
    h_chain_ = H.chain_with_base(base_);
    if (h_chain_.levels().size() > base_.size())
      throw InternalError("subgroup chain is longer than the group base");
  }

  const std::vector<Point>& base() const { return base_; }

  Permutation canonical(Permutation g) const {
    const auto& levels = h_chain_.levels();
    for (const auto& lv : levels) {
      std::size_t best = 0;
      Point best_img = g[lv.orbit[0]];
      for (std::size_t k = 1; k < lv.orbit.size(); ++k) {
        const Point v = g[lv.orbit[k]];
        if (v < best_img) {
          best_img = v;
          best = k;
        }
      }
      if (best) g = lv.transversal[best] * g;
    }
    return g;
  }

  std::vector<Point> label(const Permutation& g) const {
    const Permutation c = canonical(g);
    std::vector<Point> img(base_.size());
    for (std::size_t i = 0; i < base_.size(); ++i) img[i] = c[base_[i]];
    return img;
  }

private:
  std::vector<Point> base_;
  StabilizerChain h_chain_;
};

/// G acting on the right cosets of H. Point 0 is H itself.
inline CosetActionResult coset_action(const GroupHandle& G, const GroupHandle& H,
                                      std::size_t index_budget = kDefaultIndexBudget) {
  require_subgroup(G, H);
  const BigInt idx_big = G.order() / H.order();
  if (idx_big > index_budget)
    throw ResourceError("index " + idx_big.str() + " exceeds the coset budget " + std::to_string(index_budget));
  const std::size_t index = static_cast<std::size_t>(idx_big);

  CosetLabeler lab(G, H);
  std::map<std::vector<Point>, Point> where;
  std::vector<Permutation> reps;
  const Permutation e = Permutation::identity(G.degree());
  reps.push_back(lab.canonical(e));
  where.emplace(lab.label(e), 0);

  const auto& gens = G.generators();
  std::vector<std::vector<Point>> images(gens.size());
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Permutation next = lab.canonical(reps[k] * gens[s]);
      std::vector<Point> key(lab.base().size());
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = next[lab.base()[i]];
      auto [it, fresh] = where.emplace(std::move(key), static_cast<Point>(reps.size()));
      if (fresh) {
        if (reps.size() >= index) throw InternalError("more cosets than the index allows");
        reps.push_back(next);
      }
      images[s].push_back(it->second);
    }
  }
  if (reps.size() != index)
    throw InternalError("found " + std::to_string(reps.size()) + " cosets, expected " + std::to_string(index));

  std::vector<Permutation> qgens;
  for (auto& im : images) qgens.emplace_back(std::move(im));
  CosetActionResult r;
  r.index = index;
  r.quotient_group = GroupHandle(index, std::move(qgens), G.name() + "_on_" + H.name());
  r.point_to_coset = std::move(reps);
  r.kernel_order = G.order() / r.quotient_group.order();
  r.faithful = (r.kernel_order == 1);
  return r;
}

/// The image in the coset action of an element of G.
inline Permutation coset_image(const CosetActionResult& ca, const CosetLabeler& lab, const Permutation& g) {
  std::map<std::vector<Point>, Point> where;
  for (std::size_t i = 0; i < ca.point_to_coset.size(); ++i)
    where.emplace(lab.label(ca.point_to_coset[i]), static_cast<Point>(i));
  std::vector<Point> img(ca.index);
  for (std::size_t i = 0; i < ca.index; ++i) img[i] = where.at(lab.label(ca.point_to_coset[i] * g));
  return Permutation(std::move(img));
}

} // namespace primbase

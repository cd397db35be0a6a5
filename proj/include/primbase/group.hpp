#pragma once

#include "primbase/errors.hpp"
#include "primbase/numeric.hpp"
#include "primbase/permutation.hpp"
#include "primbase/stabilizer_chain.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

namespace primbase {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedULL;

/// A permutation group: generators plus its verified stabilizer chain.
class GroupHandle {
public:
  GroupHandle() = default;

  GroupHandle(std::size_t degree, std::vector<Permutation> generators, std::string name = "",
              std::uint64_t seed = kDefaultSeed)
      : degree_(degree), generators_(std::move(generators)), name_(std::move(name)) {
    ChainOptions opt;
    opt.seed = seed;
    chain_ = std::make_shared<const StabilizerChain>(StabilizerChain::build(degree_, generators_, opt));
  }

  GroupHandle(std::size_t degree, std::vector<Permutation> generators, StabilizerChain chain,
              std::string name = "")
      : degree_(degree), generators_(std::move(generators)), name_(std::move(name)),
        chain_(std::make_shared<const StabilizerChain>(std::move(chain))) {}

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const StabilizerChain& chain() const { return *chain_; }
  const BigInt& order() const { return chain_->order(); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool contains(const Permutation& p) const { return chain_->contains(p); }

  Permutation random_element(Rng& rng) const { return chain_->random_element(rng); }

  /// A chain for the same group whose base starts with `prefix`.
  StabilizerChain chain_with_base(const std::vector<Point>& prefix, std::uint64_t seed = kDefaultSeed) const {
    ChainOptions opt;
    opt.seed = seed;
    opt.base_prefix = prefix;
    opt.known_order = order();
    return StabilizerChain::build(degree_, generators_, opt);
  }

private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::string name_;
  std::shared_ptr<const StabilizerChain> chain_;
};

inline StabilizerChain build_chain(std::size_t degree, const std::vector<Permutation>& generators,
                                   std::uint64_t seed = kDefaultSeed) {
  ChainOptions opt;
  opt.seed = seed;
  return StabilizerChain::build(degree, generators, opt);
}

inline bool contains(const StabilizerChain& chain, const Permutation& p) { return chain.contains(p); }

inline Permutation random_element(const StabilizerChain& chain, Rng& rng) {
  return chain.random_element(rng);
}

/// Subgroup fixing every listed point. Duplicates are ignored.
inline GroupHandle pointwise_stabilizer(const GroupHandle& G, const std::vector<Point>& points) {
  std::vector<Point> distinct;
  for (Point p : points) {
    if (p >= G.degree())
      throw InputError("point " + std::to_string(p) + " out of range for degree " +
                       std::to_string(G.degree()));
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  }
  StabilizerChain full = G.chain_with_base(distinct);
  StabilizerChain t = full.tail(distinct.size());
  std::vector<Permutation> gens = t.generators();
  return GroupHandle(G.degree(), std::move(gens), std::move(t), G.name() + "_stab");
}

inline std::vector<std::vector<Point>> orbits(std::size_t degree, const std::vector<Permutation>& gens) {
  std::vector<std::vector<Point>> out;
  std::vector<char> seen(degree, 0);
  for (Point s = 0; s < degree; ++s) {
    if (seen[s]) continue;
    std::vector<Point> orb{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& g : gens) {
        const Point y = g[orb[k]];
        if (!seen[y]) {
          seen[y] = 1;
          orb.push_back(y);
        }
      }
    out.push_back(std::move(orb));
  }
  return out;
}

inline std::vector<std::vector<Point>> orbits(const GroupHandle& G) {
  return orbits(G.degree(), G.generators());
}

inline bool is_transitive(const GroupHandle& G) { return orbits(G).size() == 1; }

/// Throws InputError unless every generator of H lies in G.
inline void require_subgroup(const GroupHandle& G, const GroupHandle& H) {
  if (G.degree() != H.degree()) throw InputError("subgroup degree differs from group degree");
  for (std::size_t i = 0; i < H.generators().size(); ++i)
    if (!G.contains(H.generators()[i]))
      throw InputError("generator " + std::to_string(i) + " of " + H.name() + " is not in " + G.name());
}

inline void require_member(const GroupHandle& G, const Permutation& x) {
  if (x.degree() != G.degree()) throw InputError("element degree differs from group degree");
  if (!G.contains(x)) throw InputError("element " + x.to_cycle_string() + " is not in " + G.name());
}

} // namespace primbase

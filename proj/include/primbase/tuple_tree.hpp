#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/numeric.hpp"

#include <memory>
#include <vector>

namespace primbase {

/// Tree of canonical point tuples. A node stands for a prefix of orbit
/// representatives and holds K, the pointwise stabilizer of that prefix.
/// Children are created lazily, one per non-trivial K-orbit, and a node's
/// generators and orbits are only computed when something descends past it.
class TupleTree {
public:
  struct Node {
    Node* parent = nullptr;
    Point fixed = 0;  // point fixed on the way in from the parent
    std::size_t depth = 0;
    BigInt order = 1;

    bool expanded = false;
    std::vector<Permutation> gens, gens_inv;
    std::vector<std::int32_t> orbit_id;
    std::vector<Point> orbit_rep;
    std::vector<std::size_t> orbit_size;
    std::vector<std::int32_t> sv_gen;  // generator that reached the point, -1 at a representative
    std::vector<Point> sv_parent;
    std::vector<std::unique_ptr<Node>> children;
    std::size_t max_orbit = 1;

    std::vector<Point> prefix() const {
      std::vector<Point> p;
      for (const Node* n = this; n->parent; n = n->parent) p.push_back(n->fixed);
      return {p.rbegin(), p.rend()};
    }
  };

  explicit TupleTree(const GroupHandle& G, std::uint64_t seed = kDefaultSeed)
      : n_(G.degree()), seed_(seed) {
    root_ = std::make_unique<Node>();
    root_->order = G.order();
    root_gens_ = G.generators();
    node_count_ = 1;
  }

  std::size_t degree() const { return n_; }
  Node& root() { return *root_; }
  std::size_t node_count() const { return node_count_; }

  void expand(Node& nd) {
    if (nd.expanded) return;
    if (nd.order == 1) {
      nd.gens.clear();
    } else if (!nd.parent) {
      for (const auto& g : root_gens_)
        if (!g.is_identity()) nd.gens.push_back(g);
    } else {
      Node& par = *nd.parent;
      expand(par);
      ChainOptions opt;
      opt.seed = seed_ ^ (0x9e3779b97f4a7c15ULL * (node_count_ + 1));
      opt.base_prefix = {nd.fixed};
      opt.known_order = par.order;
      StabilizerChain ch = StabilizerChain::build(n_, par.gens, opt);
      StabilizerChain t = ch.tail(1);
      if (t.order() != nd.order) throw InternalError("stabilizer order mismatch in tuple tree");
      nd.gens = t.generators();
    }
    for (const auto& g : nd.gens) nd.gens_inv.push_back(g.inverse());

    nd.orbit_id.assign(n_, -1);
    nd.sv_gen.assign(n_, -1);
    nd.sv_parent.assign(n_, 0);
    for (Point s = 0; s < n_; ++s) {
      if (nd.orbit_id[s] >= 0) continue;
      const auto id = static_cast<std::int32_t>(nd.orbit_rep.size());
      nd.orbit_rep.push_back(s);
      std::vector<Point> queue{s};
      nd.orbit_id[s] = id;
      nd.sv_parent[s] = s;
      for (std::size_t k = 0; k < queue.size(); ++k)
        for (std::size_t gi = 0; gi < nd.gens.size(); ++gi) {
          const Point y = nd.gens[gi][queue[k]];
          if (nd.orbit_id[y] >= 0) continue;
          nd.orbit_id[y] = id;
          nd.sv_gen[y] = static_cast<std::int32_t>(gi);
          nd.sv_parent[y] = queue[k];
          queue.push_back(y);
        }
      nd.orbit_size.push_back(queue.size());
      nd.max_orbit = std::max(nd.max_orbit, queue.size());
    }
    nd.children.resize(nd.orbit_rep.size());
    nd.expanded = true;
  }

  /// Child for orbit `o` of an expanded node. Its order is known at once.
  Node& child(Node& nd, std::size_t o) {
    if (nd.orbit_size[o] == 1) return nd;
    auto& slot = nd.children[o];
    if (!slot) {
      slot = std::make_unique<Node>();
      slot->parent = &nd;
      slot->fixed = nd.orbit_rep[o];
      slot->depth = nd.depth + 1;
      slot->order = nd.order / nd.orbit_size[o];
      ++node_count_;
    }
    return *slot;
  }

  /// Walks `pts` down the tree, moving each point to its orbit
  /// representative and carrying the later points along. Returns the node
  /// reached; the tuple is a base iff that node has order 1.
  Node& canonicalize(std::vector<Point>& pts) {
    Node* nd = root_.get();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (nd->order == 1) break;
      expand(*nd);
      Point x = pts[i];
      const auto o = static_cast<std::size_t>(nd->orbit_id[x]);
      if (nd->orbit_size[o] == 1) continue;
      while (nd->sv_gen[x] >= 0) {
        const auto& ginv = nd->gens_inv[static_cast<std::size_t>(nd->sv_gen[x])];
        for (std::size_t j = i + 1; j < pts.size(); ++j) pts[j] = ginv[pts[j]];
        x = nd->sv_parent[x];
      }
      pts[i] = x;
      nd = &child(*nd, o);
    }
    return *nd;
  }

  /// Like canonicalize, but only reports whether the tuple is a base.
  bool is_base_tuple(std::vector<Point> pts) { return canonicalize(pts).order == 1; }

private:
  std::size_t n_;
  std::uint64_t seed_;
  std::vector<Permutation> root_gens_;
  std::unique_ptr<Node> root_;
  std::size_t node_count_ = 0;
};

} // namespace primbase

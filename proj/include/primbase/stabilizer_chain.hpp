#pragma once

#include "primbase/errors.hpp"
#include "primbase/numeric.hpp"
#include "primbase/permutation.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace primbase {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// One level of a stabilizer chain: the basic orbit of `base_point` under the
/// strong generators that fix all earlier base points.
struct ChainLevel {
  Point base_point = 0;
  std::vector<Permutation> generators;
  std::vector<Point> orbit;
  std::vector<std::int32_t> orbit_pos;  // position in `orbit`, or -1
  std::vector<Permutation> transversal; // base_point^transversal[i] == orbit[i]
  std::vector<Permutation> transversal_inv;

  bool in_orbit(Point x) const { return orbit_pos[x] >= 0; }

  void rebuild(std::size_t degree) {
    orbit.assign(1, base_point);
    orbit_pos.assign(degree, -1);
    orbit_pos[base_point] = 0;
    transversal.assign(1, Permutation::identity(degree));
    transversal_inv.assign(1, Permutation::identity(degree));
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const auto& s : generators) {
        const Point y = s[orbit[k]];
        if (orbit_pos[y] >= 0) continue;
        orbit_pos[y] = static_cast<std::int32_t>(orbit.size());
        orbit.push_back(y);
        transversal.push_back(transversal[k] * s);
        transversal_inv.push_back(transversal.back().inverse());
      }
    }
  }
};

struct ChainOptions {
  std::uint64_t seed = 0x5eedULL;
  std::vector<Point> base_prefix;
  std::optional<BigInt> known_order;
};

/// Product-replacement generator of pseudo-random group elements.
class ProductReplacer {
public:
  ProductReplacer(const std::vector<Permutation>& gens, Rng& rng) : rng_(rng) {
    const std::size_t slots = std::max<std::size_t>(10, gens.size());
    for (std::size_t i = 0; i < slots; ++i) state_.push_back(gens[i % gens.size()]);
    acc_ = Permutation::identity(gens.front().degree());
    for (int i = 0; i < 60; ++i) next();
  }

  Permutation next() {
    const std::size_t a = uniform_index(rng_, state_.size());
    std::size_t b = uniform_index(rng_, state_.size() - 1);
    if (b >= a) ++b;
    if (rng_() & 1) state_[a] = state_[a] * state_[b];
    else state_[a] = state_[b] * state_[a];
    acc_ = acc_ * state_[a];
    return acc_;
  }

private:
  Rng& rng_;
  std::vector<Permutation> state_;
  Permutation acc_;
};

/// Stabilizer chain (base and strong generating set) with explicit transversals.
class StabilizerChain {
public:
  StabilizerChain() = default;
  explicit StabilizerChain(std::size_t degree) : degree_(degree), order_(1) {}

  /// Randomized Schreier-Sims followed by a deterministic Schreier-generator
  /// check. When `known_order` is supplied and reached, the check is skipped:
  /// a chain built from group elements cannot exceed the true order.
  static StabilizerChain build(std::size_t degree, const std::vector<Permutation>& gens,
                               const ChainOptions& opt = {}) {
    if (degree == 0) throw InputError("degree must be positive");
    for (const auto& g : gens)
      if (g.degree() != degree)
        throw InputError("generator degree " + std::to_string(g.degree()) +
                         " does not match group degree " + std::to_string(degree));
    StabilizerChain ch(degree);
    std::vector<Permutation> nontrivial;
    for (const auto& g : gens)
      if (!g.is_identity()) nontrivial.push_back(g);

    std::vector<char> used(degree, 0);
    for (Point b : opt.base_prefix) {
      if (b >= degree) throw InputError("base point out of range");
      if (used[b]) continue;
      used[b] = 1;
      ChainLevel lv;
      lv.base_point = b;
      ch.levels_.push_back(std::move(lv));
    }
    if (nontrivial.empty()) {
      for (auto& lv : ch.levels_) lv.rebuild(degree);
      ch.recompute_order();
      return ch;
    }
    if (ch.levels_.empty()) {
      ChainLevel lv;
      lv.base_point = first_moved(nontrivial.front());
      ch.levels_.push_back(std::move(lv));
    }
    ch.levels_[0].generators = nontrivial;
    for (auto& lv : ch.levels_) lv.rebuild(degree);
    ch.recompute_order();

    Rng rng(opt.seed);
    ProductReplacer pr(nontrivial, rng);
    const int patience = opt.known_order ? 400 : 30;
    int streak = 0;
    while (streak < patience) {
      if (opt.known_order && ch.order_ == *opt.known_order) return ch;
      auto [h, j] = ch.sift(pr.next(), 0);
      if (h.is_identity()) {
        ++streak;
        continue;
      }
      streak = 0;
      ch.add_strong_generator(h, std::min<std::size_t>(1, j), j);
    }
    if (opt.known_order && ch.order_ == *opt.known_order) return ch;
    ch.verify_schreier();
    if (opt.known_order && ch.order_ != *opt.known_order)
      throw InternalError("chain order " + ch.order_.str() + " differs from known order " +
                          opt.known_order->str());
    return ch;
  }

  std::size_t degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  const BigInt& order() const { return order_; }

  std::vector<Point> base_points() const {
    std::vector<Point> b;
    for (const auto& lv : levels_) b.push_back(lv.base_point);
    return b;
  }

  std::vector<std::size_t> orbit_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& lv : levels_) out.push_back(lv.orbit.size());
    return out;
  }

  /// Strips `p` through the levels starting at `start`. Returns the residue
  /// and the index of the level where stripping stopped (levels().size() if
  /// it went through every level).
  std::pair<Permutation, std::size_t> sift(Permutation p, std::size_t start = 0) const {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      const auto& lv = levels_[l];
      const std::int32_t k = lv.orbit_pos[p[lv.base_point]];
      if (k < 0) return {std::move(p), l};
      if (k > 0) p = p * lv.transversal_inv[k];
    }
    return {std::move(p), levels_.size()};
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_)
      throw InputError("permutation degree " + std::to_string(p.degree()) +
                       " does not match chain degree " + std::to_string(degree_));
    return sift(p).first.is_identity();
  }

  /// Uniform element: one independent uniform transversal element per level.
  Permutation random_element(Rng& rng) const {
    Permutation g = Permutation::identity(degree_);
    for (std::size_t l = levels_.size(); l-- > 0;) {
      const auto& lv = levels_[l];
      g = g * lv.transversal[uniform_index(rng, lv.orbit.size())];
    }
    return g;
  }

  /// The element with the given images of the base points, if any.
  std::optional<Permutation> element_from_base_image(const std::vector<Point>& image) const {
    if (image.size() != levels_.size()) throw InputError("base image has wrong length");
    Permutation g = Permutation::identity(degree_);
    std::vector<const Permutation*> parts;
    Permutation acc_inv = Permutation::identity(degree_);
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      const auto& lv = levels_[l];
      const Point want = acc_inv[image[l]];
      const std::int32_t k = lv.orbit_pos[want];
      if (k < 0) return std::nullopt;
      parts.push_back(&lv.transversal[k]);
      acc_inv = acc_inv * lv.transversal_inv[k];
    }
    for (std::size_t l = parts.size(); l-- > 0;) g = g * *parts[l];
    for (std::size_t l = 0; l < levels_.size(); ++l)
      if (g[levels_[l].base_point] != image[l]) return std::nullopt;
    return g;
  }

  /// Chain of the pointwise stabilizer of the first `from` base points.
  StabilizerChain tail(std::size_t from) const {
    StabilizerChain t(degree_);
    for (std::size_t l = from; l < levels_.size(); ++l) t.levels_.push_back(levels_[l]);
    t.recompute_order();
    return t;
  }

  /// Generators of the whole group (the level-0 strong generators).
  const std::vector<Permutation>& generators() const {
    static const std::vector<Permutation> none;
    return levels_.empty() ? none : levels_.front().generators;
  }

  /// Enumerates every element (only sensible for small orders).
  template <class F> void for_each_element(F&& f) const {
    std::vector<std::size_t> idx(levels_.size(), 0);
    while (true) {
      Permutation g = Permutation::identity(degree_);
      for (std::size_t l = levels_.size(); l-- > 0;) g = g * levels_[l].transversal[idx[l]];
      f(g);
      std::size_t l = 0;
      while (l < levels_.size()) {
        if (++idx[l] < levels_[l].orbit.size()) break;
        idx[l] = 0;
        ++l;
      }
      if (l == levels_.size()) return;
    }
  }

private:
  static Point first_moved(const Permutation& p) {
    for (Point i = 0; i < p.degree(); ++i)
      if (p[i] != i) return i;
    throw InternalError("identity has no moved point");
  }

  void recompute_order() {
    order_ = 1;
    for (const auto& lv : levels_) order_ *= lv.orbit.size();
  }

  void add_strong_generator(const Permutation& h, std::size_t lo, std::size_t hi) {
    if (hi == levels_.size()) {
      ChainLevel lv;
      lv.base_point = first_moved(h);
      levels_.push_back(std::move(lv));
      levels_.back().rebuild(degree_);
    }
    for (std::size_t l = lo; l <= hi; ++l) {
      levels_[l].generators.push_back(h);
      levels_[l].rebuild(degree_);
    }
    recompute_order();
  }

  std::optional<std::pair<Permutation, std::size_t>> failing_schreier_generator(std::size_t lvl) const {
    const auto& lv = levels_[lvl];
    for (std::size_t a = 0; a < lv.orbit.size(); ++a) {
      for (const auto& s : lv.generators) {
        const Point y = s[lv.orbit[a]];
        const Permutation sg = lv.transversal[a] * s * lv.transversal_inv[lv.orbit_pos[y]];
        if (sg.is_identity()) continue;
        auto [h, j] = sift(sg, lvl + 1);
        if (!h.is_identity()) return std::make_pair(std::move(h), j);
      }
    }
    return std::nullopt;
  }

  void verify_schreier() {
    std::size_t i = levels_.size();
    while (i > 0) {
      const std::size_t lvl = i - 1;
      auto bad = failing_schreier_generator(lvl);
      if (!bad) {
        --i;
        continue;
      }
      add_strong_generator(bad->first, lvl + 1, bad->second);
      i = bad->second + 1;
    }
  }

  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
  BigInt order_ = 1;
};

} // namespace primbase

#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace primbase {

namespace detail {

/// Backtrack over a chain whose base lists the points of x cycle by cycle
/// (longest cycles first). A candidate g must satisfy (p^x)^g = (p^g)^y,
/// so only the image of each cycle's first point is a real choice.
class CycleBacktrack {
public:
  CycleBacktrack(const GroupHandle& G, const Permutation& x, const Permutation& y)
      : n_(G.degree()), x_(x), y_(y) {
    auto cyc = x.cycles(true);
    std::stable_sort(cyc.begin(), cyc.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<Point> order;
    for (const auto& c : cyc)
      for (std::size_t i = 0; i < c.size(); ++i) {
        order.push_back(c[i]);
        starts_.push_back(i == 0 ? static_cast<int>(c.size()) : 0);
      }
    chain_ = G.chain_with_base(order);
    const auto& lv = chain_.levels();
    if (lv.size() != n_) throw InternalError("backtrack chain does not cover every point");
    stop_ = lv.size();
    while (stop_ > 0 && lv[stop_ - 1].orbit.size() == 1) --stop_;

    ycycle_.assign(n_, 0);
    ylen_.assign(n_, 0);
    std::size_t id = 0;
    for (const auto& c : y.cycles(true)) {
      for (Point p : c) {
        ycycle_[p] = id;
        ylen_[p] = c.size();
      }
      ++id;
    }
    used_.assign(id, 0);
    P_.assign(n_ + 1, Permutation::identity(n_));
    Pinv_.assign(n_ + 1, Permutation::identity(n_));
  }

  const StabilizerChain& chain() const { return chain_; }
  std::size_t stop_depth() const { return stop_; }

  /// Some g with x^g = y, searching only below `start` with P_start given.
  std::optional<Permutation> search_from(std::size_t start, const Permutation& P, const Permutation& Pinv,
                                         const std::vector<Point>& top_candidates = {}) {
    P_[start] = P;
    Pinv_[start] = Pinv;
    std::fill(used_.begin(), used_.end(), 0);
    for (std::size_t l = 0; l < start; ++l)
      if (starts_[l]) used_[ycycle_[P[chain_.levels()[l].base_point]]] = 1;
    top_ = &top_candidates;
    top_level_ = start;
    return dfs(start);
  }

  /// The element P_{l+1} = u * P when level l picks orbit point `delta`.
  void step(std::size_t l, std::size_t k, const Permutation& P, const Permutation& Pinv, Permutation& outP,
            Permutation& outPinv) const {
    const auto& lv = chain_.levels()[l];
    outP = lv.transversal[k] * P;
    outPinv = Pinv * lv.transversal_inv[k];
  }

  bool check(const Permutation& g) const {
    for (Point p = 0; p < n_; ++p)
      if (g[x_[p]] != y_[g[p]]) return false;
    return true;
  }

  bool is_start(std::size_t l) const { return starts_[l] != 0; }
  int start_length(std::size_t l) const { return starts_[l]; }
  std::size_t ycycle(Point p) const { return ycycle_[p]; }
  std::size_t ylen(Point p) const { return ylen_[p]; }

  std::size_t nodes = 0;

private:
  std::optional<Permutation> dfs(std::size_t l) {
    ++nodes;
    const Permutation& P = P_[l];
    if (l == stop_) {
      if (check(P)) return P;
      return std::nullopt;
    }
    const auto& lv = chain_.levels()[l];
    if (!starts_[l]) {
      const Point prev = chain_.levels()[l - 1].base_point;
      const Point gamma = y_[P[prev]];
      const std::int32_t k = lv.orbit_pos[Pinv_[l][gamma]];
      if (k < 0) return std::nullopt;
      step(l, static_cast<std::size_t>(k), P, Pinv_[l], P_[l + 1], Pinv_[l + 1]);
      return dfs(l + 1);
    }
    const std::size_t len = static_cast<std::size_t>(starts_[l]);
    auto try_delta = [&](std::size_t k) -> std::optional<Permutation> {
      const Point gamma = P[lv.orbit[k]];
      if (ylen_[gamma] != len || used_[ycycle_[gamma]]) return std::nullopt;
      used_[ycycle_[gamma]] = 1;
      step(l, k, P_[l], Pinv_[l], P_[l + 1], Pinv_[l + 1]);
      auto r = dfs(l + 1);
      used_[ycycle_[gamma]] = 0;
      return r;
    };
    if (l == top_level_ && !top_->empty()) {
      for (Point gamma : *top_) {
        const std::int32_t k = lv.orbit_pos[Pinv_[l][gamma]];
        if (k < 0) continue;
        if (auto r = try_delta(static_cast<std::size_t>(k))) return r;
      }
      return std::nullopt;
    }
    for (std::size_t k = 0; k < lv.orbit.size(); ++k)
      if (auto r = try_delta(k)) return r;
    return std::nullopt;
  }

  std::size_t n_;
  Permutation x_, y_;
  StabilizerChain chain_;
  std::vector<int> starts_;
  std::size_t stop_ = 0;
  std::vector<std::size_t> ycycle_, ylen_;
  std::vector<char> used_;
  std::vector<Permutation> P_, Pinv_;
  const std::vector<Point>* top_ = nullptr;
  std::size_t top_level_ = 0;
};

inline std::vector<char> orbit_mask(std::size_t n, Point start, const std::vector<Permutation>& gens) {
  std::vector<char> in(n, 0);
  std::vector<Point> queue{start};
  in[start] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens) {
      const Point v = g[queue[k]];
      if (!in[v]) {
        in[v] = 1;
        queue.push_back(v);
      }
    }
  return in;
}

} // namespace detail

struct CentralizerResult {
  std::vector<Permutation> generators;
  BigInt order = 1;
  std::size_t nodes = 0;
};

/// C_G(x) by subgroup backtrack. Works level by level from the bottom of the
/// chain; at each level only candidates outside the orbit of the subgroup
/// found so far are searched.
inline CentralizerResult centralizer_data(const GroupHandle& G, const Permutation& x) {
  require_member(G, x);
  detail::CycleBacktrack bt(G, x, x);
  const auto& levels = bt.chain().levels();
  const std::size_t n = G.degree();
  CentralizerResult res;
  const Permutation e = Permutation::identity(n);
  for (std::size_t l = bt.stop_depth(); l-- > 0;) {
    const auto& lv = levels[l];
    const Point beta = lv.base_point;
    auto in = detail::orbit_mask(n, beta, res.generators);
    std::size_t orbit_len = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
    if (bt.is_start(l)) {
      const std::size_t len = static_cast<std::size_t>(bt.start_length(l));
      std::vector<char> blocked(n, 0);
      for (std::size_t j = 0; j < l; ++j) {
        const Point b = levels[j].base_point;
        blocked[bt.ycycle(b)] = 1;
      }
      for (std::size_t k = 1; k < lv.orbit.size(); ++k) {
        const Point delta = lv.orbit[k];
        if (in[delta] || bt.ylen(delta) != len || blocked[bt.ycycle(delta)]) continue;
        Permutation P, Pinv;
        bt.step(l, k, e, e, P, Pinv);
        auto g = bt.search_from(l + 1, P, Pinv);
        if (!g) continue;
        res.generators.push_back(*g);
        in = detail::orbit_mask(n, beta, res.generators);
        orbit_len = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
      }
    }
    res.order *= orbit_len;
  }
  res.nodes = bt.nodes;
  return res;
}

inline GroupHandle centralizer(const GroupHandle& G, const Permutation& x) {
  auto c = centralizer_data(G, x);
  ChainOptions opt;
  opt.known_order = c.order;
  auto chain = StabilizerChain::build(G.degree(), c.generators, opt);
  return GroupHandle(G.degree(), std::move(c.generators), std::move(chain), "C(" + x.to_cycle_string() + ")");
}

/// Some g in G with g^-1 x g = y, or nothing. `cy_gens`, generators of
/// C_G(y), let the first level try one image per C_G(y)-orbit.
inline std::optional<Permutation> find_conjugator(const GroupHandle& G, const Permutation& x, const Permutation& y,
                                                  const std::vector<Permutation>& cy_gens = {}) {
  require_member(G, x);
  require_member(G, y);
  if (x.cycle_type() != y.cycle_type()) return std::nullopt;
  detail::CycleBacktrack bt(G, x, y);
  const std::size_t n = G.degree();
  const Permutation e = Permutation::identity(n);
  if (bt.stop_depth() == 0) {
    if (bt.check(e)) return e;
    return std::nullopt;
  }
  std::vector<Point> top;
  if (!cy_gens.empty()) {
    std::vector<char> covered(n, 0);
    const auto& lv = bt.chain().levels()[0];
    for (Point gamma : lv.orbit) {
      if (covered[gamma]) continue;
      top.push_back(gamma);
      auto m = detail::orbit_mask(n, gamma, cy_gens);
      for (Point p = 0; p < n; ++p)
        if (m[p]) covered[p] = 1;
    }
  }
  return bt.search_from(0, e, e, top);
}

inline bool are_conjugate(const GroupHandle& G, const Permutation& x, const Permutation& y) {
  return find_conjugator(G, x, y).has_value();
}

} // namespace primbase

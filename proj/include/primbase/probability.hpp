#pragma once

#include "primbase/errors.hpp"
#include "primbase/group.hpp"
#include "primbase/numeric.hpp"
#include "primbase/tuple_tree.hpp"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace primbase {

inline constexpr double kWilsonZ95 = 1.959963984540054;

namespace detail {

class BaseCounter {
public:
  explicit BaseCounter(TupleTree& t) : tree_(t), n_(t.degree()) {}

  /// Number of r-tuples that complete the node's prefix to a base.
  BigInt bases(TupleTree::Node& nd, int r) {
    if (nd.order == 1) return pow_big(BigInt(n_), static_cast<unsigned>(r));
    if (r == 0) return 0;
    auto key = std::make_pair(&nd, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    tree_.expand(nd);
    BigInt total = 0;
    for (std::size_t o = 0; o < nd.orbit_rep.size(); ++o)
      total += BigInt(nd.orbit_size[o]) * bases(tree_.child(nd, o), r - 1);
    memo_.emplace(key, total);
    return total;
  }

private:
  TupleTree& tree_;
  std::size_t n_;
  std::map<std::pair<const TupleTree::Node*, int>, BigInt> memo_;
};

} // namespace detail

/// Q(G,c): probability that c independent uniform points (repetition
/// allowed) fail to form a base. Exact, by counting over canonical tuples.
inline Rational q_exact(const GroupHandle& G, int c, const BigInt& budget = BigInt(1000000000)) {
  if (c < 0) throw InputError("c must be non-negative");
  const BigInt total = pow_big(BigInt(G.degree()), static_cast<unsigned>(c));
  if (total > budget)
    throw ResourceError(std::to_string(G.degree()) + "^" + std::to_string(c) +
                        " tuples exceed the enumeration budget; use q_montecarlo");
  TupleTree tree(G);
  detail::BaseCounter counter(tree);
  const BigInt good = counter.bases(tree.root(), c);
  return Rational(total - good, total);
}

struct MonteCarloEstimate {
  std::size_t trials = 0;
  std::size_t failures = 0;  // tuples that were not bases
  double estimate = 0;
  double lower = 0, upper = 0;  // Wilson 95% interval
  std::vector<Point> example_base;
};

inline std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = kWilsonZ95) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  const double den = 1 + z * z / nn;
  const double mid = (p + z * z / (2 * nn)) / den;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / den;
  return {std::max(0.0, mid - half), std::min(1.0, mid + half)};
}

inline MonteCarloEstimate q_montecarlo(TupleTree& tree, int c, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("trials must be positive");
  if (c < 0) throw InputError("c must be non-negative");
  MonteCarloEstimate est;
  est.trials = trials;
  Rng rng(seed);
  std::vector<Point> pts(static_cast<std::size_t>(c));
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& p : pts) p = static_cast<Point>(uniform_index(rng, tree.degree()));
    const std::vector<Point> original = pts;
    if (tree.canonicalize(pts).order == 1) {
      if (est.example_base.empty()) est.example_base = original;
    } else {
      ++est.failures;
    }
  }
  est.estimate = static_cast<double>(est.failures) / static_cast<double>(trials);
  std::tie(est.lower, est.upper) = wilson_interval(est.failures, trials);
  return est;
}

inline MonteCarloEstimate q_montecarlo(const GroupHandle& G, int c, std::size_t trials, std::uint64_t seed) {
  TupleTree tree(G, seed);
  return q_montecarlo(tree, c, trials, seed);
}

} // namespace primbase

#include "oracles.hpp"

#include "primbase/base_search.hpp"
#include "primbase/classes.hpp"
#include "primbase/coset_action.hpp"
#include "primbase/group_io.hpp"
#include "primbase/ledger.hpp"
#include "primbase/probability.hpp"
#include "primbase/tuple_tree.hpp"
#include "primbase/witness.hpp"

#include <gtest/gtest.h>

using namespace primbase;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> c) { return Permutation::from_cycles(n, c); }

GroupHandle symmetric(std::size_t n) {
  std::vector<Point> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Point>(i);
  return GroupHandle(n, {cyc(n, {{0, 1}}), cyc(n, {all})}, "S" + std::to_string(n));
}

GroupHandle cyclic(std::size_t n) {
  std::vector<Point> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Point>(i);
  return GroupHandle(n, {cyc(n, {all})}, "C" + std::to_string(n));
}

GroupHandle from_file(const std::string& name) { return load_group(oracle::data("groups/" + name + ".grp")); }

std::vector<GroupHandle> small_corpus() {
  return {symmetric(3), symmetric(4), symmetric(5), cyclic(6),
          GroupHandle(6, {cyc(6, {{0, 1, 2, 3, 4, 5}}), cyc(6, {{1, 5}, {2, 4}})}, "D12"),
          GroupHandle(8, {cyc(8, {{0, 1}, {2, 3}}), cyc(8, {{4, 5, 6, 7}}), cyc(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}})}, "X"),
          from_file("s6_pgl2_5")};
}

} // namespace

TEST(IsBase, TraceAndVerdict) {
  const auto S4 = symmetric(4);
  const auto r = is_base(S4, {0, 1, 2});
  EXPECT_TRUE(r.is_base);
  EXPECT_EQ(r.certificate.stabilizer_order_trace, (std::vector<BigInt>{6, 2, 1}));
  EXPECT_FALSE(is_base(S4, {0, 1}).is_base);
  EXPECT_FALSE(is_base(S4, {0, 0, 1}).is_base);
  EXPECT_TRUE(is_base(GroupHandle(3, {}), {}).is_base);
  EXPECT_THROW(is_base(S4, {4}), InputError);
  std::string why;
  auto c = r.certificate;
  EXPECT_TRUE(verify_certificate(S4, c, &why)) << why;
  c.stabilizer_order_trace[1] = 3;
  EXPECT_FALSE(verify_certificate(S4, c, &why));
}

TEST(GreedyBase, IsABase) {
  for (const auto& G : small_corpus()) {
    const auto c = greedy_base(G);
    EXPECT_TRUE(is_base(G, c.points).is_base) << G.name();
  }
}

TEST(MinimalBase, MatchesBruteForce) {
  for (const auto& G : small_corpus()) {
    const auto all = oracle::elements(G.degree(), G.generators());
    const auto r = minimal_base_size_exact(G);
    ASSERT_TRUE(r.exact) << G.name();
    EXPECT_EQ(r.b, oracle::base_size(all, G.degree())) << G.name();
    EXPECT_TRUE(is_base(G, r.witness.points).is_base);
    EXPECT_EQ(static_cast<int>(r.witness.points.size()), r.b);
    if (r.b > 0) {
      ASSERT_TRUE(r.lower.has_value());
      EXPECT_EQ(r.lower->c, r.b - 1);
      EXPECT_FALSE(r.lower->verdict.empty());
    }
  }
}

TEST(MinimalBase, KnownFamilies) {
  for (std::size_t n = 3; n <= 9; ++n) EXPECT_EQ(minimal_base_size_exact(symmetric(n)).b, static_cast<int>(n) - 1);
  EXPECT_EQ(minimal_base_size_exact(cyclic(7)).b, 1);
  EXPECT_EQ(greedy_base(cyclic(7)).points.size(), 1u);
  EXPECT_EQ(minimal_base_size_exact(GroupHandle(5, {})).b, 0);
}

TEST(MinimalBase, NodeBudgetGivesBounds) {
  const auto r = minimal_base_size_exact(symmetric(7), 3);
  EXPECT_FALSE(r.exact);
  EXPECT_LE(r.lo, 6);
  EXPECT_GE(r.hi, 6);
}

TEST(MinimalBase, MathieuGroupOnElevenPoints) {
  const auto r = minimal_base_size_exact(from_file("m11"));
  EXPECT_EQ(r.b, 4);
}

TEST(TupleTree, CanonicalFormIsInvariant) {
  const auto G = from_file("m12");
  TupleTree tree(G);
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> pts(3);
    for (auto& p : pts) p = static_cast<Point>(uniform_index(rng, 12));
    const auto g = G.random_element(rng);
    std::vector<Point> moved;
    for (Point p : pts) moved.push_back(g[p]);
    auto a = pts, b = moved;
    const auto& na = tree.canonicalize(a);
    const auto& nb = tree.canonicalize(b);
    EXPECT_EQ(a, b);
    EXPECT_EQ(&na, &nb);
    EXPECT_EQ(na.order, stabilizer_order_trace(G, pts).back());
  }
}

TEST(Probability, ExactMatchesEnumeration) {
  for (const auto& G : small_corpus()) {
    const auto all = oracle::elements(G.degree(), G.generators());
    for (int c = 1; c <= 4; ++c) {
      const BigInt total = pow_big(BigInt(G.degree()), static_cast<unsigned>(c));
      const BigInt good = oracle::count_bases(all, G.degree(), c);
      EXPECT_EQ(q_exact(G, c), Rational(total - good, total)) << G.name() << " c=" << c;
    }
  }
}

TEST(Probability, UnionBoundDominatesExact) {
  for (const auto& G : small_corpus()) {
    const auto inv = class_inventory(G, true);
    for (int c = 1; c <= 5; ++c) EXPECT_LE(q_exact(G, c), qhat_from_inventory(inv, c).total) << G.name();
  }
}

TEST(Probability, BudgetAndArguments) {
  EXPECT_THROW(q_exact(symmetric(10), 9, BigInt(1000)), ResourceError);
  EXPECT_THROW(q_montecarlo(symmetric(4), 2, 0, 1), InputError);
}

TEST(Probability, MonteCarloIntervalCoversExact) {
  const auto G = from_file("m12");
  const double exact = to_double(q_exact(G, 5));
  const auto est = q_montecarlo(G, 5, 20000, 99);
  EXPECT_LE(est.lower, exact);
  EXPECT_GE(est.upper, exact);
  EXPECT_FALSE(est.example_base.empty());
  EXPECT_TRUE(is_base(G, est.example_base).is_base);
  const auto again = q_montecarlo(G, 5, 20000, 99);
  EXPECT_EQ(again.failures, est.failures);
}

TEST(Probability, WilsonInterval) {
  const auto [lo, hi] = wilson_interval(0, 100);
  EXPECT_NEAR(lo, 0.0, 1e-12);
  EXPECT_NEAR(hi, 0.037, 0.001);
  const auto [l2, h2] = wilson_interval(50, 100);
  EXPECT_NEAR(l2, 0.4038, 0.001);
  EXPECT_NEAR(h2, 0.5962, 0.001);
}

TEST(Witness, IntersectionOrderByDirectCount) {
  const auto S4 = symmetric(4);
  const auto H = pointwise_stabilizer(S4, {0});
  const auto all = oracle::elements(4, S4.generators());
  const auto x = cyc(4, {{0, 1}});
  // H ∩ H^x = stabilizer of 0 and 0^x.
  EXPECT_EQ(intersection_order(H, {x}), BigInt(oracle::stabilizer_size(all, {0, 1})));
}

TEST(Witness, DualityWithBaseSize) {
  const auto S6 = from_file("s6");
  const auto P = from_file("s6_pgl2_5");
  const auto four = conjugate_intersection_witness(S6, P, 4, 5000, 1);
  EXPECT_FALSE(four.found);
  const auto five = conjugate_intersection_witness(S6, P, 5, 5000, 1);
  ASSERT_TRUE(five.found);
  EXPECT_EQ(five.witness.conjugators.size(), 4u);
  EXPECT_EQ(intersection_order(P, five.witness.conjugators), BigInt(1));
  const auto ca = coset_action(S6, P);
  const CosetIndex idx(S6, P, ca);
  const auto pts = witness_to_base(idx, 6, five.witness.conjugators);
  EXPECT_TRUE(is_base(ca.quotient_group, pts).is_base);
  const auto back = base_to_witness(idx, pts);
  EXPECT_EQ(intersection_order(P, back), BigInt(1));
}

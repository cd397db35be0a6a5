#include "oracles.hpp"

#include "primbase/coset_action.hpp"
#include "primbase/group.hpp"
#include "primbase/group_io.hpp"
#include "primbase/permutation.hpp"
#include "primbase/stabilizer_chain.hpp"

#include <gtest/gtest.h>

using namespace primbase;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> c) { return Permutation::from_cycles(n, c); }

GroupHandle symmetric(std::size_t n) {
  std::vector<Point> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Point>(i);
  return GroupHandle(n, {cyc(n, {{0, 1}}), cyc(n, {all})}, "S" + std::to_string(n));
}

GroupHandle alternating(std::size_t n) {
  std::vector<Permutation> gens;
  for (Point i = 2; i < n; ++i) gens.push_back(cyc(n, {{0, 1, i}}));
  return GroupHandle(n, gens, "A" + std::to_string(n));
}

} // namespace

TEST(Permutation, ComposesLeftToRight) {
  const auto a = cyc(3, {{0, 1}});
  const auto b = cyc(3, {{1, 2}});
  const auto ab = a * b;  // apply a, then b
  EXPECT_EQ(ab[0], 2u);
  EXPECT_EQ(ab[1], 0u);
  EXPECT_EQ(ab[2], 1u);
  EXPECT_EQ((a * a).is_identity(), true);
}

TEST(Permutation, InverseConjugatePower) {
  const auto x = cyc(6, {{0, 1, 2}, {3, 4}});
  EXPECT_TRUE((x * x.inverse()).is_identity());
  EXPECT_EQ(x.order(), 6u);
  EXPECT_TRUE(x.pow(6).is_identity());
  EXPECT_EQ(x.pow(-1), x.inverse());
  EXPECT_EQ(x.pow(3), cyc(6, {{3, 4}}));
  const auto g = cyc(6, {{0, 5}});
  EXPECT_EQ(x.conjugate_by(g), g.inverse() * x * g);
  EXPECT_EQ(x.cycle_type(), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(x.fixed_point_count(), 1u);
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), InputError);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3}), InputError);
  EXPECT_THROW(cyc(3, {{0, 1}, {1, 2}}), InputError);
  EXPECT_THROW(cyc(3, {{0}}) * cyc(4, {{0}}), InputError);
}

TEST(StabilizerChain, SymmetricAndAlternatingOrders) {
  BigInt f = 1;
  for (std::size_t n = 2; n <= 10; ++n) {
    f *= n;
    EXPECT_EQ(symmetric(n).order(), f) << n;
    if (n >= 3) EXPECT_EQ(alternating(n).order(), f / 2) << n;
  }
}

TEST(StabilizerChain, MatchesClosureOnSmallGroups) {
  const std::vector<std::vector<Permutation>> gensets = {
      {cyc(6, {{0, 1, 2, 3, 4, 5}}), cyc(6, {{1, 5}, {2, 4}})},
      {cyc(7, {{0, 1, 2, 3, 4, 5, 6}}), cyc(7, {{1, 2, 4}, {3, 6, 5}})},
      {cyc(8, {{0, 1}, {2, 3}}), cyc(8, {{4, 5, 6, 7}}), cyc(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}})},
      {cyc(9, {{0, 1, 2}, {3, 4, 5}}), cyc(9, {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}}), cyc(9, {{1, 2}, {4, 5}, {7, 8}})},
  };
  for (const auto& gens : gensets) {
    const std::size_t n = gens[0].degree();
    const auto all = oracle::elements(n, gens);
    const GroupHandle G(n, gens);
    EXPECT_EQ(G.order(), BigInt(all.size()));
    for (const auto& g : all) EXPECT_TRUE(G.contains(g));
    const auto Sn = oracle::elements(n, {cyc(n, {{0, 1}}), symmetric(n).generators()[1]});
    std::size_t inside = 0;
    for (const auto& g : Sn) inside += G.contains(g);
    EXPECT_EQ(inside, all.size());
  }
}

TEST(StabilizerChain, SiftAndBaseImages) {
  const auto G = symmetric(6);
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto g = G.random_element(rng);
    EXPECT_TRUE(G.contains(g));
    std::vector<Point> img;
    for (Point b : G.chain().base_points()) img.push_back(g[b]);
    EXPECT_EQ(G.chain().element_from_base_image(img), g);
  }
  EXPECT_FALSE(alternating(6).contains(cyc(6, {{0, 1}})));
  EXPECT_THROW(G.contains(Permutation::identity(5)), InputError);
}

TEST(StabilizerChain, KnownOrderShortcutAgrees) {
  const auto G = oracle::data("groups/m12.grp");
  const GroupHandle M12 = load_group(G);
  ChainOptions opt;
  opt.known_order = M12.order();
  opt.base_prefix = {5, 3};
  const auto ch = StabilizerChain::build(12, M12.generators(), opt);
  EXPECT_EQ(ch.order(), BigInt(95040));
  EXPECT_EQ(ch.base_points()[0], 5u);
  EXPECT_EQ(ch.base_points()[1], 3u);
}

TEST(Group, PointwiseStabilizerOrbitStabilizer) {
  const GroupHandle M11 = load_group(oracle::data("groups/m11.grp"));
  const auto H = pointwise_stabilizer(M11, {0});
  EXPECT_EQ(H.order(), BigInt(720));
  const auto K = pointwise_stabilizer(M11, {0, 1, 2, 3});
  EXPECT_EQ(K.order(), BigInt(1));
  const auto S4 = symmetric(4);
  const auto all = oracle::elements(4, S4.generators());
  EXPECT_EQ(pointwise_stabilizer(S4, {2}).order(), BigInt(oracle::stabilizer_size(all, {2})));
}

TEST(Group, OrbitsAndTransitivity) {
  const GroupHandle G(6, {cyc(6, {{0, 1, 2}}), cyc(6, {{3, 4}})});
  const auto o = orbits(G);
  ASSERT_EQ(o.size(), 3u);
  EXPECT_FALSE(is_transitive(G));
  EXPECT_TRUE(is_transitive(symmetric(5)));
}

TEST(GroupIO, ParsesDocumentsAndComments) {
  const std::string text =
      "# two groups\n"
      "degree: 3\nname: C3\n1 2 0\n---\n"
      "degree: 4\nname: trivial\n";
  const auto specs = parse_groups_text(text, "t");
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(make_group(specs[0]).order(), BigInt(3));
  EXPECT_EQ(make_group(specs[1]).order(), BigInt(1));
  EXPECT_EQ(specs[1].generators.size(), 0u);
}

TEST(GroupIO, ReportsLineOfMalformedRow) {
  try {
    parse_groups_text("degree: 3\nname: bad\n0 0 1\n", "bad.grp");
    FAIL() << "expected an input error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.grp:3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_groups_text("degree: 3\n0 1\n"), InputError);
  EXPECT_THROW(parse_groups_text("degree: x\n"), InputError);
  EXPECT_THROW(load_group(oracle::data("groups/does_not_exist.grp")), InputError);
}

TEST(GroupIO, RoundTrip) {
  const GroupHandle M11 = load_group(oracle::data("groups/m11.grp"));
  std::ostringstream os;
  write_group(os, M11);
  const auto back = parse_groups_text(os.str());
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(make_group(back[0]).order(), M11.order());
}

TEST(ShippedGroups, OrdersAndDegrees) {
  const std::vector<std::tuple<std::string, std::size_t, std::string>> expect = {
      {"m11", 11, "7920"},          {"m12", 12, "95040"},         {"m22", 22, "443520"},
      {"m23", 23, "10200960"},      {"m24", 24, "244823040"},     {"hs", 100, "44352000"},
      {"co3", 276, "495766656000"}, {"s6", 6, "720"},             {"s6_pgl2_5", 6, "120"},
      {"s8", 8, "40320"},           {"s8_s4wrs2", 8, "1152"},     {"l3_2_flags", 21, "168"},
      {"l3_3_flags", 52, "5616"},   {"l4_3", 80, "6065280"},      {"l4_3_pgl", 80, "12130560"},
      {"l4_3_graph", 80, "12130560"}, {"l4_3_graphdiag", 80, "12130560"}, {"aut_l4_3", 80, "24261120"},
  };
  for (const auto& [name, deg, order] : expect) {
    const GroupHandle G = load_group(oracle::data("groups/" + name + ".grp"));
    EXPECT_EQ(G.degree(), deg) << name;
    EXPECT_EQ(G.order(), BigInt(order)) << name;
    // L4(3) and PGL4(3) act on points and planes separately; the graph automorphism swaps them.
    EXPECT_EQ(is_transitive(G), name != "l4_3" && name != "l4_3_pgl") << name;
  }
}

TEST(ShippedGroups, SubgroupsAreContained) {
  const GroupHandle S6 = load_group(oracle::data("groups/s6.grp"));
  const GroupHandle P = load_group(oracle::data("groups/s6_pgl2_5.grp"));
  EXPECT_NO_THROW(require_subgroup(S6, P));
  const GroupHandle S8 = load_group(oracle::data("groups/s8.grp"));
  const GroupHandle W = load_group(oracle::data("groups/s8_s4wrs2.grp"));
  EXPECT_NO_THROW(require_subgroup(S8, W));
  EXPECT_THROW(require_subgroup(W, S8), InputError);
}

TEST(CosetAction, SymmetricGroupOnCosetsOfPointStabilizer) {
  const auto S4 = symmetric(4);
  const auto H = pointwise_stabilizer(S4, {0});
  const auto ca = coset_action(S4, H);
  EXPECT_EQ(ca.index, 4u);
  EXPECT_TRUE(ca.faithful);
  EXPECT_EQ(ca.quotient_group.order(), BigInt(24));
  EXPECT_TRUE(ca.point_to_coset[0].is_identity() || H.contains(ca.point_to_coset[0]));
}

TEST(CosetAction, KernelOfNormalSubgroupAction) {
  const auto S4 = symmetric(4);
  const GroupHandle V4(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
  const auto ca = coset_action(S4, V4);
  EXPECT_EQ(ca.index, 6u);
  EXPECT_FALSE(ca.faithful);
  EXPECT_EQ(ca.kernel_order, BigInt(4));
  EXPECT_EQ(ca.quotient_group.order(), BigInt(6));
}

TEST(CosetAction, StabilizerOfCosetIsConjugate) {
  const GroupHandle S6 = load_group(oracle::data("groups/s6.grp"));
  const GroupHandle P = load_group(oracle::data("groups/s6_pgl2_5.grp"));
  const auto ca = coset_action(S6, P);
  ASSERT_EQ(ca.index, 6u);
  const CosetLabeler lab(S6, P);
  for (Point p = 0; p < ca.index; ++p) {
    const Permutation& x = ca.point_to_coset[p];
    for (const auto& h : P.generators()) {
      const Permutation img = coset_image(ca, lab, x.inverse() * h * x);
      EXPECT_EQ(img[p], p);
    }
  }
  EXPECT_THROW(coset_action(S6, P, 5), ResourceError);
}

#include "oracles.hpp"

#include "primbase/backtrack.hpp"
#include "primbase/class_table.hpp"
#include "primbase/classes.hpp"
#include "primbase/coset_action.hpp"
#include "primbase/fpr.hpp"
#include "primbase/group_io.hpp"
#include "primbase/ledger.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace primbase;

namespace {

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> c) { return Permutation::from_cycles(n, c); }

GroupHandle symmetric(std::size_t n) {
  std::vector<Point> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Point>(i);
  return GroupHandle(n, {cyc(n, {{0, 1}}), cyc(n, {all})}, "S" + std::to_string(n));
}

GroupHandle from_file(const std::string& name) { return load_group(oracle::data("groups/" + name + ".grp")); }

std::multiset<std::string> signature(const ClassInventory& inv) {
  std::multiset<std::string> s;
  for (const auto& r : inv.records)
    s.insert(std::to_string(r.element_order) + ":" + r.class_size.str() + ":" + std::to_string(r.fixed_point_count));
  return s;
}

std::multiset<std::string> signature(const std::vector<std::vector<Permutation>>& cls) {
  std::multiset<std::string> s;
  for (const auto& c : cls)
    s.insert(std::to_string(c[0].order()) + ":" + std::to_string(c.size()) + ":" +
             std::to_string(c[0].fixed_point_count()));
  return s;
}

} // namespace

TEST(Classes, MatchBruteForceOnSmallGroups) {
  std::vector<GroupHandle> groups = {symmetric(4), symmetric(5), from_file("s6_pgl2_5"), from_file("l3_2_flags")};
  for (const auto& G : groups) {
    const auto inv = all_classes(G);
    const auto all = oracle::elements(G.degree(), G.generators());
    EXPECT_TRUE(inv.complete);
    EXPECT_EQ(signature(inv), signature(oracle::classes(all))) << G.name();
  }
}

TEST(Classes, SampledPathMatchesBruteForce) {
  const auto G = from_file("s8_s4wrs2");
  ClassOptions opt;
  opt.exhaustive_limit = 10;
  const auto inv = all_classes(G, opt);
  EXPECT_NE(inv.method.find("sampl"), std::string::npos) << inv.method;
  const auto all = oracle::elements(G.degree(), G.generators());
  EXPECT_EQ(signature(inv), signature(oracle::classes(all)));
}

TEST(Classes, SporadicClassCounts) {
  EXPECT_EQ(all_classes(from_file("m11")).records.size(), 10u);
  EXPECT_EQ(all_classes(from_file("m12")).records.size(), 15u);
  const auto m22 = all_classes(from_file("m22"));
  EXPECT_EQ(m22.records.size(), 12u);
  BigInt sum = 0;
  for (const auto& r : m22.records) sum += r.class_size;
  EXPECT_EQ(sum, BigInt(443520));
}

TEST(Classes, LabelsAndOrdering) {
  const auto inv = all_classes(symmetric(4));
  std::vector<std::string> labels;
  for (const auto& r : inv.records) labels.push_back(r.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"1A", "2A", "2B", "3A", "4A"}));
  EXPECT_EQ(inv.records[1].class_size, BigInt(3));
  EXPECT_EQ(inv.records[2].class_size, BigInt(6));
}

TEST(Classes, PrimeOnlyInventory) {
  const auto inv = class_inventory(symmetric(5), true);
  for (const auto& r : inv.records) EXPECT_TRUE(is_prime(r.element_order));
  EXPECT_EQ(count_elements_of_prime_order(inv, 2), BigInt(10 + 15));
  EXPECT_EQ(count_elements_of_prime_order(inv, 3), BigInt(20));
  EXPECT_EQ(count_elements_of_prime_order(inv, 5), BigInt(24));
  EXPECT_THROW(count_elements_of_prime_order(inv, 4), InputError);
  ClassInventory partial = inv;
  partial.complete = false;
  EXPECT_THROW(count_elements_of_prime_order(partial, 2), StateError);
}

TEST(Classes, BudgetExceededIsResourceError) {
  ClassOptions opt;
  opt.order_budget = 100;
  EXPECT_THROW(all_classes(symmetric(6), opt), ResourceError);
}

TEST(Centralizer, OrdersMatchBruteForce) {
  const auto G = from_file("s6");
  const auto all = oracle::elements(6, G.generators());
  for (const auto& x : {cyc(6, {{0, 1}}), cyc(6, {{0, 1, 2}, {3, 4}}), cyc(6, {{0, 1}, {2, 3}, {4, 5}}),
                        cyc(6, {{0, 1, 2, 3, 4, 5}}), Permutation::identity(6)}) {
    std::size_t n = 0;
    for (const auto& g : all) n += (x * g == g * x);
    const auto C = centralizer(G, x);
    EXPECT_EQ(C.order(), BigInt(n)) << x.to_cycle_string();
    for (const auto& c : C.generators()) EXPECT_EQ(x * c, c * x);
  }
}

TEST(Centralizer, InsideSporadicGroup) {
  const auto M12 = from_file("m12");
  const auto inv = all_classes(M12);
  for (const auto& r : inv.records) {
    const auto C = centralizer(M12, r.representative);
    EXPECT_EQ(C.order() * r.class_size, M12.order()) << r.label;
  }
}

TEST(Conjugacy, FindsConjugatorOrRefuses) {
  const auto M11 = from_file("m11");
  Rng rng(3);
  const auto inv = all_classes(M11);
  for (const auto& r : inv.records) {
    const auto g = M11.random_element(rng);
    const auto y = r.representative.conjugate_by(g);
    const auto c = find_conjugator(M11, r.representative, y);
    ASSERT_TRUE(c.has_value()) << r.label;
    EXPECT_EQ(r.representative.conjugate_by(*c), y);
    EXPECT_TRUE(M11.contains(*c));
  }
  // 8A and 8B of M11 share a cycle type but are not conjugate.
  std::vector<const ConjClassRecord*> eights;
  for (const auto& r : inv.records)
    if (r.element_order == 8) eights.push_back(&r);
  ASSERT_EQ(eights.size(), 2u);
  EXPECT_FALSE(are_conjugate(M11, eights[0]->representative, eights[1]->representative));
}

TEST(Burnside, ClassSumEqualsGroupOrder) {
  for (const auto& G : {symmetric(5), from_file("m11"), from_file("m12"), from_file("l3_3_flags")}) {
    const auto inv = all_classes(G);
    EXPECT_EQ(burnside_sum(inv), G.order()) << G.name();
  }
}

TEST(Fpr, FixedPointsAndFusionAgree) {
  const std::vector<std::pair<std::string, std::string>> pairs = {{"m11", "stab"}, {"s6", "s6_pgl2_5"}};
  for (const auto& [g, h] : pairs) {
    const auto G = from_file(g);
    const auto H = h == "stab" ? pointwise_stabilizer(G, {0}) : from_file(h);
    const auto ca = coset_action(G, H);
    const CosetLabeler lab(G, H);
    for (const auto& r : class_inventory(G, true).records) {
      const Rational a = fpr_by_fixes(coset_image(ca, lab, r.representative), ca.index);
      const Rational b = fpr_by_fusion(G, H, r.representative);
      EXPECT_EQ(a, b) << g << " " << r.label;
    }
  }
}

TEST(Fpr, BruteForceS4OnCosetsOfS3) {
  const auto S4 = symmetric(4);
  const auto all = oracle::elements(4, S4.generators());
  const auto H = pointwise_stabilizer(S4, {3});
  const auto hel = oracle::elements(4, H.generators());
  for (const auto& cls : oracle::classes(all)) {
    const auto& x = cls[0];
    std::size_t meet = 0;
    for (const auto& y : cls) meet += std::find(hel.begin(), hel.end(), y) != hel.end();
    EXPECT_EQ(fpr_by_fusion(S4, H, x), Rational(static_cast<long long>(meet), static_cast<long long>(cls.size())));
    EXPECT_EQ(fpr_by_fixes(x), Rational(static_cast<long long>(x.fixed_point_count()), 4));
  }
  EXPECT_THROW(fpr_by_fixes(cyc(3, {{0, 1}}), 4), InputError);
}

TEST(Fpr, FusionMapMeetsSumToSubgroupCounts) {
  const auto G = from_file("m12");
  const auto H = pointwise_stabilizer(G, {0});
  const auto fm = fuse_classes(G, H);
  BigInt total = 0, in_h = 0;
  for (const auto& m : fm.meet) total += m;
  for (const auto& r : fm.h_classes.records) in_h += r.class_size;
  EXPECT_EQ(total, in_h);
}

TEST(Qhat, SymmetricGroupOfDegreeThree) {
  const auto inv = class_inventory(symmetric(3), true);
  EXPECT_EQ(qhat_from_inventory(inv, 2).total, Rational(1, 3));
  EXPECT_EQ(qhat_from_inventory(inv, 1).total, Rational(1));
}

TEST(Qhat, AggregateBoundArithmetic) {
  const BigInt two = 2;
  EXPECT_EQ(aggregate_bound(pow_big(two, 17), pow_big(two, 22), 5), Rational(1, 8));
  EXPECT_EQ(aggregate_bound(pow_big(two, 26), pow_big(two, 40), 5), Rational(BigInt(1), pow_big(two, 30)));
  EXPECT_THROW(aggregate_bound(1, 0, 5), InputError);
}

TEST(Qhat, ImportedTable) {
  const auto rows = read_class_table_file(oracle::data("tables/f4q2_fragment.csv"));
  const auto L = qhat_from_table(rows, 5);
  EXPECT_EQ(L.total, Rational(1, 8));
  EXPECT_FALSE(L.certified);
  EXPECT_EQ(L.source, "imported-table");
  std::istringstream bad("label,element_order\n2A,2\n");
  EXPECT_THROW(read_class_table(bad), InputError);
  std::istringstream nofpr("label,class_size\n2A,10\n");
  EXPECT_THROW(qhat_from_table(read_class_table(nofpr), 2), InputError);
}

TEST(Qhat, TableRoundTripMatchesInventory) {
  const auto inv = class_inventory(from_file("m11"), true);
  std::stringstream ss;
  write_class_table(ss, inv);
  auto rows = read_class_table(ss);
  for (auto& r : rows) r.degree = BigInt(11);
  EXPECT_EQ(qhat_from_table(rows, 4).total, qhat_from_inventory(inv, 4).total);
}

TEST(Counting, OrderThreeElementsInDegreeTwoExtensions) {
  for (const std::string name : {"l4_3", "l4_3_pgl", "l4_3_graph", "l4_3_graphdiag"}) {
    const auto inv = class_inventory(from_file(name), true);
    EXPECT_EQ(count_elements_of_prime_order(inv, 3), BigInt(82160)) << name;
  }
  EXPECT_EQ(count_elements_of_prime_order(class_inventory(from_file("aut_l4_3"), true), 2), BigInt(27639));
}

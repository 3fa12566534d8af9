#include <gtest/gtest.h>

#include <set>

#include "qmap/census.hpp"
#include "qmap/topo.hpp"

using namespace qmap;

TEST(Topo, Examples) {
  EXPECT_EQ(topo_index_of(37).str(), "24b");
  EXPECT_EQ(topo_index_of(49).str(), "28e");
  EXPECT_EQ(topo_index(AffineClass::family(AffineClass::Family8, {1})).index, 8);
  EXPECT_EQ(topo_index(AffineClass::family(AffineClass::Family1, {1, 1})).index, 1);
  EXPECT_EQ(topo_index(AffineClass::family(AffineClass::Family2, {1, -1})).index, 2);
  EXPECT_EQ(topo_index(AffineClass::family(AffineClass::Family4, {2})).index, 4);
  EXPECT_EQ(topo_index_of(62).str(), "31g");
  EXPECT_EQ(topo_index_of(64).index, 47);
  EXPECT_EQ(topo_index_of(9).index, 9);
}

TEST(Topo, TableIsTotalOntoOneToFortySeven) {
  std::set<int> seen;
  for (int k = 1; k <= 64; ++k) {
    TopoIndex t = topo_index_of(k);
    ASSERT_GE(t.index, 1);
    ASSERT_LE(t.index, 47);
    EXPECT_EQ(topo_index(representative_class(k)), t) << k;
    seen.insert(t.index);
    auto members = topo_members(t.index);
    EXPECT_NE(std::find(members.begin(), members.end(), k), members.end()) << k;
  }
  EXPECT_EQ(seen.size(), 47u);
}

TEST(Topo, MergedGroups) {
  EXPECT_EQ(topo_members(24), (std::vector<int>{24, 37}));
  EXPECT_EQ(topo_members(28), (std::vector<int>{28, 31, 40, 46, 49}));
  EXPECT_EQ(topo_members(31), (std::vector<int>{32, 41, 50, 52, 56, 58, 62}));
  EXPECT_EQ(topo_members(32), (std::vector<int>{33, 42, 51, 57}));
  EXPECT_EQ(topo_members(44), (std::vector<int>{54, 59, 60, 63}));
}

TEST(Topo, MergedClassesShareCensusSignature) {
  for (int i = 1; i <= 47; ++i) {
    auto m = topo_members(i);
    for (size_t j = 1; j < m.size(); ++j)
      EXPECT_EQ(census_discrete(m[j]).signature(), census_discrete(m[0]).signature()) << i << " " << m[j];
  }
}

TEST(Topo, MergeWitnesses) {
  auto reports = verify_merge_witnesses();
  ASSERT_GE(reports.size(), 5u);
  for (auto& r : reports) {
    if (r.as_printed && r.k == 28) {
      EXPECT_FALSE(r.ok) << r.name;  // printed sign of z^3 is wrong
    } else {
      EXPECT_TRUE(r.ok) << r.name << " " << r.note;
    }
  }
}

TEST(Topo, Distinguishing) {
  EXPECT_NE(distinguishing_report(13, 17).find("cusp"), std::string::npos);
  EXPECT_FALSE(distinguishing_report(6, 7).empty());
  EXPECT_THROW(distinguishing_report(44, 45), NotDistinguishedByTable);
  EXPECT_THROW(distinguishing_report(5, 5), std::invalid_argument);
}

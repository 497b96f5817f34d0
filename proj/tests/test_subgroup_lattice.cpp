#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hsp;

TEST(Subgroups, Z2HasTrivialAndWhole) {
    auto lat = enumerate_subgroups(build_cyclic(2));
    ASSERT_EQ(lat.size(), 2u);
    EXPECT_EQ(lat.subgroups[0].elements, std::vector<Element>{0});
    EXPECT_EQ(lat.subgroups[1].elements, (std::vector<Element>{0, 1}));
}

TEST(Subgroups, TrivialGroupHasOne) {
    auto lat = enumerate_subgroups(build_cyclic(1));
    EXPECT_EQ(lat.size(), 1u);
    EXPECT_EQ(lat.classes.size(), 1u);
    EXPECT_TRUE(lat.contains.empty());
}

TEST(Subgroups, S3HasSixInFourClasses) {
    auto g = build_symmetric(3);
    auto lat = enumerate_subgroups(g);
    EXPECT_EQ(lat.size(), oracle::all_subgroups(g).size());
    ASSERT_EQ(lat.size(), 6u);
    ASSERT_EQ(lat.classes.size(), 4u);
    std::vector<std::pair<std::size_t, std::size_t>> shape;  // (order, class size)
    for (std::size_t c = 0; c < lat.classes.size(); ++c) shape.emplace_back(lat.rep_of(c).order(), lat.classes[c].size());
    EXPECT_EQ(shape, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 3}, {3, 1}, {6, 1}}));
}

TEST(Subgroups, CountsMatchSubsetClosureOracle) {
    for (const auto& [name, g] : oracle::small_groups()) {
        const auto lat = enumerate_subgroups(g);
        const auto expected = oracle::all_subgroups(g);
        ASSERT_EQ(lat.size(), expected.size()) << name;
        for (const auto& h : lat.subgroups) EXPECT_TRUE(expected.count(h.elements)) << name;
    }
}

TEST(Subgroups, FrozenCounts) {
    // Values produced by the subset-closure oracle.
    EXPECT_EQ(enumerate_subgroups(build_symmetric(4)).size(), 30u);
    EXPECT_EQ(enumerate_subgroups(build_dihedral(4)).size(), 10u);
    EXPECT_EQ(enumerate_subgroups(build_dihedral(6)).size(), 16u);
    EXPECT_EQ(enumerate_subgroups(build_heisenberg(3)).size(), 19u);
    EXPECT_EQ(enumerate_subgroups(oracle::quaternion()).size(), 6u);
}

TEST(Subgroups, LatticeInvariants) {
    for (const auto& [name, g] : oracle::small_groups()) {
        const auto lat = enumerate_subgroups(g);
        EXPECT_EQ(lat.subgroups.front().elements, std::vector<Element>{0}) << name;
        EXPECT_EQ(lat.subgroups.back().order(), g.order()) << name;
        EXPECT_TRUE(std::is_sorted(lat.subgroups.begin(), lat.subgroups.end())) << name;

        for (const auto& h : lat.subgroups) {
            EXPECT_EQ(g.order() % h.order(), 0u);
            EXPECT_TRUE(h.contains(0));
            for (Element a : h.elements) {
                EXPECT_TRUE(h.contains(g.inv(a)));
                for (Element b : h.elements) EXPECT_TRUE(h.contains(g.mul(a, b)));
            }
        }

        std::size_t total = 0;
        for (const auto& cls : lat.classes) {
            total += cls.size();
            EXPECT_EQ(cls.rep, cls.members.front());
            for (auto m : cls.members) {
                EXPECT_EQ(lat.subgroups[m].order(), lat.subgroups[cls.rep].order());
                for (Element x = 0; x < g.order(); ++x) {
                    const auto idx = lat.index_of(conjugate_subgroup(g, lat.subgroups[m], x));
                    EXPECT_TRUE(std::binary_search(cls.members.begin(), cls.members.end(), idx)) << name;
                }
            }
        }
        EXPECT_EQ(total, lat.size()) << name;
        if (g.is_abelian())
            for (const auto& cls : lat.classes) EXPECT_EQ(cls.size(), 1u) << name;

        for (const auto& [i, j] : lat.contains) {
            EXPECT_NE(i, j);
            EXPECT_TRUE(lat.subgroups[i].is_subset_of(lat.subgroups[j]));
            for (const auto& [j2, k] : lat.contains)
                if (j2 == j) EXPECT_TRUE(lat.contains.count({i, k})) << name;
        }
        for (std::size_t i = 0; i < lat.size(); ++i)
            for (std::size_t j = 0; j < lat.size(); ++j)
                if (i != j && lat.subgroups[i].is_subset_of(lat.subgroups[j]))
                    EXPECT_TRUE(lat.contains.count({i, j})) << name;
    }
}

TEST(Subgroups, BudgetExceeded) {
    EXPECT_THROW(enumerate_subgroups(build_symmetric(4), 10), BudgetExceeded);
}

TEST(Conjugation, ByIdentityIsNoOp) {
    auto g = build_symmetric(3);
    auto lat = enumerate_subgroups(g);
    for (const auto& h : lat.subgroups) EXPECT_EQ(conjugate_subgroup(g, h, 0), h);
}

TEST(Conjugation, S3TranspositionMovedByThreeCycle) {
    auto g = build_symmetric(3);
    // 0-based permutations: (12) = [1,0,2] is index 2, (123) = [1,2,0] is index 3
    const Subgroup h{{0, 2}, 6};
    const Element c = 3;
    std::vector<Element> direct;
    for (Element a : h.elements) direct.push_back(g.cayley()[g.cayley()[c][a]][g.inv(c)]);
    std::sort(direct.begin(), direct.end());
    EXPECT_EQ(conjugate_subgroup(g, h, c).elements, direct);
    // (23) = [0,2,1] is index 1
    EXPECT_EQ(direct, (std::vector<Element>{0, 1}));
}

TEST(Conjugation, NormalSubgroupIsFixed) {
    auto g = build_symmetric(3);
    const Subgroup a3{{0, 3, 4}, 6};
    for (Element x = 0; x < g.order(); ++x) EXPECT_EQ(conjugate_subgroup(g, a3, x), a3);
    EXPECT_THROW(conjugate_subgroup(g, a3, 6), OutOfRange);
}

TEST(Supergroups, WholeGroupHasNone) {
    auto lat = enumerate_subgroups(build_dihedral(4));
    EXPECT_TRUE(maximal_proper_supergroups(lat, lat.whole_index()).empty());
}

TEST(Supergroups, Z4TrivialSeesBothLargerSubgroups) {
    auto lat = enumerate_subgroups(build_cyclic(4));
    ASSERT_EQ(lat.size(), 3u);
    EXPECT_EQ(lat.subgroups[1].elements, (std::vector<Element>{0, 2}));
    EXPECT_EQ(maximal_proper_supergroups(lat, 0), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(maximal_proper_supergroups(lat, 1), (std::vector<std::size_t>{2}));
}

TEST(Supergroups, Z2TrivialSeesWhole) {
    auto lat = enumerate_subgroups(build_cyclic(2));
    EXPECT_EQ(maximal_proper_supergroups(lat, 0), (std::vector<std::size_t>{1}));
    EXPECT_THROW(maximal_proper_supergroups(lat, 2), OutOfRange);
}

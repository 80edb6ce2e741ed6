#include "xcat/roots.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace xcat;

namespace {

// Cartan matrix from an explicit edge list, for comparison with the built-in numbering.
std::vector<std::vector<int>> cartan_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> c(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    for (auto [a, b] : edges) c[a][b] = c[b][a] = -1;
    return c;
}

// Orbit of mu under the Weyl group, by closure under simple reflections.
std::set<Weight> orbit(const RootSystem& rs, const Weight& mu) {
    std::set<Weight> seen{mu};
    std::vector<Weight> todo{mu};
    while (!todo.empty()) {
        Weight w = todo.back();
        todo.pop_back();
        for (int a = 0; a < rs.rank(); ++a) {
            Weight r = rs.reflect(w, a);
            if (seen.insert(r).second) todo.push_back(r);
        }
    }
    return seen;
}

}  // namespace

TEST(RootSystem, ParseDescriptors) {
    EXPECT_EQ(RootSystem::parse("A1").rank(), 1);
    EXPECT_EQ(RootSystem::parse("D5").rank(), 5);
    EXPECT_EQ(RootSystem::parse("E8").descriptor(), "E8");
    for (const char* bad : {"", "A", "A0", "D3", "E5", "E9", "B2", "Ax", "A-1"})
        EXPECT_THROW(RootSystem::parse(bad), UnsupportedError) << bad;
}

TEST(RootSystem, CartanMatchesDocumentedNumbering) {
    EXPECT_EQ(RootSystem::parse("A4").cartan(), cartan_from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(RootSystem::parse("D4").cartan(), cartan_from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_EQ(RootSystem::parse("D6").cartan(), cartan_from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}}));
    EXPECT_EQ(RootSystem::parse("E6").cartan(), cartan_from_edges(6, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}}));
    EXPECT_EQ(RootSystem::parse("E8").cartan(),
              cartan_from_edges(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}}));
}

TEST(RootSystem, DeterminantsAndRootCounts) {
    struct Case {
        const char* rs;
        long det;
        std::size_t roots;
    };
    for (const Case& c : {Case{"A1", 2, 1}, Case{"A3", 4, 6}, Case{"A5", 6, 15}, Case{"D4", 4, 12}, Case{"D5", 4, 20},
                          Case{"E6", 3, 36}, Case{"E7", 2, 63}, Case{"E8", 1, 120}}) {
        const RootSystem rs = RootSystem::parse(c.rs);
        EXPECT_EQ(rs.det_cartan(), c.det) << c.rs;
        EXPECT_EQ(rs.positive_roots().size(), c.roots) << c.rs;
    }
}

TEST(RootSystem, SimpleRootsArePositiveWithUnitHeight) {
    for (const char* name : {"A3", "D5", "E7"}) {
        const RootSystem rs = RootSystem::parse(name);
        for (int a = 0; a < rs.rank(); ++a) {
            EXPECT_EQ(rs.scaled_height(rs.simple_root(a)), rs.det_cartan());
            EXPECT_EQ(rs.scaled_inner(rs.simple_root(a), rs.simple_root(a)), 2 * rs.det_cartan());
            EXPECT_EQ(rs.pairing(rs.simple_root(a), a), 2);
        }
    }
}

TEST(RootSystem, ReflectionsAreIsometricInvolutions) {
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (const char* name : {"A2", "A4", "D4", "E6"}) {
        const RootSystem rs = RootSystem::parse(name);
        for (int trial = 0; trial < 50; ++trial) {
            Weight mu = Weight::zero(static_cast<std::size_t>(rs.rank()));
            Weight nu = mu;
            for (int i = 0; i < rs.rank(); ++i) {
                mu[static_cast<std::size_t>(i)] = coord(gen);
                nu[static_cast<std::size_t>(i)] = coord(gen);
            }
            for (int a = 0; a < rs.rank(); ++a) {
                EXPECT_EQ(rs.reflect(rs.reflect(mu, a), a), mu);
                EXPECT_EQ(rs.scaled_inner(rs.reflect(mu, a), rs.reflect(nu, a)), rs.scaled_inner(mu, nu));
            }
        }
    }
}

TEST(RootSystem, DominantConjugateIsDominantAndInOrbit) {
    const RootSystem rs = RootSystem::parse("A2");
    for (int x = -3; x <= 3; ++x)
        for (int y = -3; y <= 3; ++y) {
            const Weight mu{x, y};
            const Weight d = rs.dominant_conjugate(mu);
            EXPECT_TRUE(d.is_dominant());
            EXPECT_TRUE(orbit(rs, mu).count(d));
        }
    // |W(A2)| = 6 acting freely on regular weights.
    EXPECT_EQ(orbit(rs, Weight{1, 1}).size(), 6u);
    EXPECT_EQ(orbit(RootSystem::parse("D4"), Weight{1, 1, 1, 1}).size(), 192u);
}

TEST(RootSystem, DominanceOrder) {
    const RootSystem rs = RootSystem::parse("A2");
    EXPECT_TRUE(rs.leq(Weight{0, 0}, Weight{1, 1}).has_value());
    EXPECT_EQ(*rs.leq(Weight{0, 0}, Weight{1, 1}), (std::vector<int>{1, 1}));
    EXPECT_FALSE(rs.leq(Weight{1, 0}, Weight{1, 1}).has_value());  // different coset of the root lattice
    EXPECT_FALSE(rs.leq(Weight{1, 1}, Weight{0, 0}).has_value());
}

TEST(RootSystem, WeylPolytope) {
    const RootSystem rs = RootSystem::parse("A2");
    // Weights of the adjoint representation of sl3: the six roots and zero.
    std::set<Weight> inside;
    for (int x = -4; x <= 4; ++x)
        for (int y = -4; y <= 4; ++y)
            if (rs.weyl_polytope_member(Weight{x, y}, Weight{1, 1})) inside.insert(Weight{x, y});
    const std::set<Weight> expected{{1, 1}, {2, -1}, {-1, 2}, {0, 0}, {1, -2}, {-2, 1}, {-1, -1}};
    EXPECT_EQ(inside, expected);
    EXPECT_THROW(rs.weyl_polytope_member(Weight{0, 0}, Weight{-1, 0}), UnsupportedError);
}

TEST(RootSystem, LevelsAndHeights) {
    const RootSystem rs = RootSystem::parse("A2");
    const auto levels = rs.enumerate_levels(Weight{1, 0}, 2);
    ASSERT_EQ(levels.size(), 3u);
    EXPECT_EQ(levels[0].second, (std::vector<Weight>{{1, 0}}));
    EXPECT_EQ(levels[1].second.size(), 2u);
    for (const auto& [h, ws] : levels)
        for (const Weight& w : ws) EXPECT_EQ(rs.scaled_height(Weight{1, 0}) - rs.scaled_height(w), h * rs.det_cartan());
}

TEST(RootSystem, TwiceRhoIsSumOfPositiveRoots) {
    for (const char* name : {"A3", "D4", "E6"}) {
        const RootSystem rs = RootSystem::parse(name);
        // 2 rho = sum of positive roots.
        Weight twice = Weight::zero(static_cast<std::size_t>(rs.rank()));
        for (const auto& r : rs.positive_roots()) twice = twice + rs.root_as_weight(r);
        EXPECT_EQ(twice, 2 * rs.rho()) << name;
    }
}

TEST(Weight, ParseAndFormat) {
    EXPECT_EQ(Weight::parse("1,-2,0"), (Weight{1, -2, 0}));
    EXPECT_EQ((Weight{3, -1}).to_string(), "3,-1");
    for (const char* bad : {"", "1,,2", "a", "1.5", "1,2x"}) EXPECT_THROW(Weight::parse(bad), UnsupportedError) << bad;
    EXPECT_THROW(RootSystem::parse("A2").check_weight(Weight{1}), UnsupportedError);
}

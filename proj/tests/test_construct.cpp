#include "xcat/construct.hpp"
#include "xcat/oracles.hpp"
#include "xcat/serialize.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace xcat;

namespace {

template <Field F>
GradedObject<F> build(const std::string& rs, const FieldContext<F>& ctx, Weight lambda,
                      BuildPolicy policy = BuildPolicy::dominant_auto(), unsigned threads = 1) {
    return build_simple(BuildRequest<F>{RootSystem::parse(rs), ctx, std::move(lambda), policy, {}, threads});
}

const auto Q1 = make_context(RationalField{}, "1");

// Weyl dimension formula for A_n, written out with lambda + rho in fundamental coordinates:
// prod over i < j of (sum_{k=i}^{j-1} (lambda_k + 1)) / (j - i).
mpz_class weyl_dimension_type_a(const Weight& lambda) {
    const int n = static_cast<int>(lambda.size());
    mpq_class d = 1;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            long s = 0;
            for (int k = i; k < j; ++k) s += lambda[static_cast<std::size_t>(k)] + 1;
            d *= mpq_class(s, j - i);
        }
    d.canonicalize();
    return d.get_num();
}

}  // namespace

TEST(BuildSimple, SmallCases) {
    EXPECT_EQ(character(build("A1", Q1, Weight{0})), (Character{{Weight{0}, 1}}));
    EXPECT_EQ(character(build("A1", Q1, Weight{2})), (Character{{Weight{2}, 1}, {Weight{0}, 1}, {Weight{-2}, 1}}));
    EXPECT_EQ(character(build("A1", make_context(PrimeField(2), "1"), Weight{2})),
              (Character{{Weight{2}, 1}, {Weight{-2}, 1}}));

    const auto M = build("A1", Q1, Weight{-1}, BuildPolicy::fixed_depth(4));
    EXPECT_EQ(character(M), (Character{{Weight{-1}, 1}, {Weight{-3}, 1}, {Weight{-5}, 1}, {Weight{-7}, 1}, {Weight{-9}, 1}}));
    EXPECT_FALSE(M.complete);
    EXPECT_EQ(M.truncation_height, 4);
}

TEST(BuildSimple, PolicyErrors) {
    EXPECT_THROW(build("A1", Q1, Weight{-1}), UnsupportedError);
    EXPECT_THROW(build("A1", Q1, Weight{1}, BuildPolicy::fixed_depth(-1)), UnsupportedError);
    EXPECT_THROW(build("A2", Q1, Weight{1}), UnsupportedError);
}

TEST(BuildSimple, FixedDepthOnDominantWeightIsMarkedTruncated) {
    const auto M = build("A2", Q1, Weight{1, 1}, BuildPolicy::fixed_depth(1));
    EXPECT_FALSE(M.complete);
    EXPECT_EQ(total_dimension(character(M)), 3);
    EXPECT_TRUE(verify_axioms(M, 3).pass());
}

TEST(Oracles, FreudenthalKnownValues) {
    const RootSystem a2 = RootSystem::parse("A2");
    const Character adj = freudenthal_character(a2, Weight{1, 1});
    EXPECT_EQ(total_dimension(adj), 8);
    EXPECT_EQ(adj.at(Weight{0, 0}), 2);
    EXPECT_EQ(total_dimension(freudenthal_character(a2, Weight{2, 1})), 15);
    EXPECT_EQ(freudenthal_character(RootSystem::parse("A1"), Weight{3}),
              (Character{{Weight{3}, 1}, {Weight{1}, 1}, {Weight{-1}, 1}, {Weight{-3}, 1}}));
    EXPECT_THROW(freudenthal_character(a2, Weight{-1, 0}), UnsupportedError);
}

TEST(Oracles, FreudenthalAgreesWithWeylDimension) {
    for (const char* name : {"A2", "A3"}) {
        const RootSystem rs = RootSystem::parse(name);
        std::mt19937 gen(11);
        std::uniform_int_distribution<int> coord(0, rs.rank() == 2 ? 4 : 2);
        for (int trial = 0; trial < 8; ++trial) {
            Weight lambda = Weight::zero(static_cast<std::size_t>(rs.rank()));
            for (int i = 0; i < rs.rank(); ++i) lambda[static_cast<std::size_t>(i)] = coord(gen);
            EXPECT_EQ(total_dimension(freudenthal_character(rs, lambda)), weyl_dimension_type_a(lambda).get_si())
                << lambda.to_string();
        }
    }
}

TEST(Oracles, RankOneExamples) {
    EXPECT_EQ(total_dimension(rank1_gram_character(Q1, 4)), 5);
    EXPECT_EQ(rank1_gram_character(make_context(PrimeField(2), "1"), 2), (Character{{Weight{2}, 1}, {Weight{-2}, 1}}));
    EXPECT_EQ(rank1_gram_character(make_context(PrimeField(2), "1"), 5),
              (Character{{Weight{5}, 1}, {Weight{3}, 1}, {Weight{-3}, 1}, {Weight{-5}, 1}}));
    EXPECT_EQ(rank1_digit_character(2, 2, 3), (Character{{Weight{3}, 1}, {Weight{1}, 1}, {Weight{-1}, 1}, {Weight{-3}, 1}}));
    EXPECT_EQ(total_dimension(rank1_digit_character(3, 0, 4)), 4);
    EXPECT_EQ(total_dimension(rank1_digit_character(5, 5, 4)), 5);
    EXPECT_THROW(rank1_gram_character(Q1, -1), UnsupportedError);
    EXPECT_THROW(rank1_digit_character(0, 2, 3), UnsupportedError);
}

TEST(Characters, ZeroCharacteristicMatchesFreudenthal) {
    for (int n = 0; n <= 6; ++n) {
        const RootSystem rs = RootSystem::parse("A1");
        EXPECT_EQ(character(build("A1", Q1, Weight{n})), freudenthal_character(rs, Weight{n})) << n;
    }
    const RootSystem a2 = RootSystem::parse("A2");
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            EXPECT_EQ(character(build("A2", Q1, Weight{a, b})), freudenthal_character(a2, Weight{a, b})) << a << "," << b;
    const RootSystem a3 = RootSystem::parse("A3");
    for (const Weight& w : {Weight{1, 0, 0}, Weight{0, 1, 0}, Weight{1, 0, 1}})
        EXPECT_EQ(character(build("A3", Q1, w)), freudenthal_character(a3, w)) << w.to_string();
}

TEST(Characters, D4FundamentalDimensions) {
    // Node 0 is the branch node (adjoint, 28); the three leaves give the 8-dimensional representations.
    const std::vector<std::pair<Weight, long>> cases{
        {Weight{1, 0, 0, 0}, 28}, {Weight{0, 1, 0, 0}, 8}, {Weight{0, 0, 1, 0}, 8}, {Weight{0, 0, 0, 1}, 8}};
    for (const auto& [w, d] : cases) EXPECT_EQ(total_dimension(character(build("D4", Q1, w))), d) << w.to_string();
}

TEST(Characters, RankOneAgreesWithBothOracles) {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const auto ctx = make_context(PrimeField(p), "1");
        for (int n = 0; n <= 14; ++n) {
            const Character ch = character(build("A1", ctx, Weight{n}));
            EXPECT_EQ(ch, rank1_gram_character(ctx, n)) << "p=" << p << " n=" << n;
            EXPECT_EQ(ch, rank1_digit_character(static_cast<int>(p), static_cast<int>(p), n)) << "p=" << p << " n=" << n;
        }
    }
    for (int d : {3, 5}) {
        const auto ctx = make_context(CyclotomicField(d), "zeta^1");
        for (int n = 0; n <= 12; ++n) {
            const Character ch = character(build("A1", ctx, Weight{n}));
            EXPECT_EQ(ch, rank1_gram_character(ctx, n)) << "d=" << d << " n=" << n;
            EXPECT_EQ(ch, rank1_digit_character(d, 0, n)) << "d=" << d << " n=" << n;
        }
    }
}

TEST(Characters, SteinbergWeightHasDimensionEllToTheNumberOfPositiveRoots) {
    EXPECT_EQ(total_dimension(character(build("A2", make_context(PrimeField(2), "1"), Weight{1, 1}))), 8);
    EXPECT_EQ(total_dimension(character(build("A2", make_context(PrimeField(3), "1"), Weight{2, 2}))), 27);
    EXPECT_EQ(total_dimension(character(build("A2", make_context(CyclotomicField(3), "zeta^1"), Weight{2, 2}))), 27);
    EXPECT_EQ(total_dimension(character(build("A1", make_context(PrimeField(5), "1"), Weight{4}))), 5);
}

TEST(Characters, AdjointOfSl3InCharacteristicThree) {
    // The zero weight space of the adjoint module drops to dimension 1 when 3 | (n+1).
    const Character ch = character(build("A2", make_context(PrimeField(3), "1"), Weight{1, 1}));
    EXPECT_EQ(total_dimension(ch), 7);
    EXPECT_EQ(ch.at(Weight{0, 0}), 1);
}

TEST(Properties, WeylGroupInvariance) {
    std::mt19937 gen(3);
    std::uniform_int_distribution<int> coord(0, 3);
    const std::vector<std::string> systems{"A2", "A3"};
    for (const std::string& name : systems) {
        const RootSystem rs = RootSystem::parse(name);
        for (int trial = 0; trial < 4; ++trial) {
            Weight lambda = Weight::zero(static_cast<std::size_t>(rs.rank()));
            for (int i = 0; i < rs.rank(); ++i) lambda[static_cast<std::size_t>(i)] = name == "A3" ? coord(gen) % 2 : coord(gen);
            auto check = [&](const Character& ch, const std::string& where) {
                for (const auto& [mu, k] : ch)
                    for (int a = 0; a < rs.rank(); ++a) {
                        auto it = ch.find(rs.reflect(mu, a));
                        EXPECT_TRUE(it != ch.end() && it->second == k) << where << " at " << mu.to_string();
                    }
            };
            check(character(build(name, make_context(PrimeField(2), "1"), lambda)), name + " F2 " + lambda.to_string());
            check(character(build(name, make_context(PrimeField(3), "1"), lambda)), name + " F3 " + lambda.to_string());
        }
    }
}

TEST(Properties, BuiltObjectsSatisfyTheAxiomsAndHaveOnePrimitive) {
    const auto ctx = make_context(CyclotomicField(5), "zeta^2");
    for (const Weight& w : {Weight{1, 0}, Weight{2, 1}, Weight{4, 1}}) {
        const auto M = build("A2", ctx, w);
        EXPECT_TRUE(verify_axioms(M, 4).pass()) << w.to_string();
        EXPECT_EQ(primitive_dims(M), (std::map<Weight, std::size_t>{{w, 1}}));
    }
}

TEST(Properties, ParallelAndSerialBuildsAreByteIdentical) {
    const auto ctx = make_context(PrimeField(3), "1");
    const auto serial = serialize(build("A3", ctx, Weight{1, 0, 1}, BuildPolicy::dominant_auto(), 1));
    EXPECT_EQ(serialize(build("A3", ctx, Weight{1, 0, 1}, BuildPolicy::dominant_auto(), 4)), serial);
    EXPECT_EQ(serialize(build("A3", ctx, Weight{1, 0, 1}, BuildPolicy::dominant_auto(), 1)), serial);
}

TEST(PolytopeDepth, LowestWeightLevel) {
    // For A1 the lowest weight of S(n) sits n levels down; for A2 (1,1) it is 4 = height of 2 rho.
    EXPECT_EQ(polytope_depth(RootSystem::parse("A1"), Weight{5}), 5);
    EXPECT_EQ(polytope_depth(RootSystem::parse("A2"), Weight{1, 1}), 4);
    EXPECT_EQ(polytope_depth(RootSystem::parse("A2"), Weight{1, 0}), 2);
}

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace rankzeta;
using rztest::rats;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> v) {
    std::vector<Integer> out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

std::vector<Integer> oracle_distribution(const RankCode& C) {
    std::vector<Integer> out;
    for (auto c : rztest::rank_histogram(rztest::codewords(C), C.n())) out.emplace_back(c);
    return out;
}

}  // namespace

TEST(RankCode, RejectsDependentGeneratorsAndBadShapes) {
    const auto g = rztest::bin({{1, 0}, {0, 1}});
    EXPECT_THROW(RankCode(FieldSpec::prime(2), 2, 2, {g, g}), InvalidParameter);
    EXPECT_THROW(RankCode(FieldSpec::prime(2), 2, 3, {}), InvalidParameter);  // n > m
    EXPECT_NO_THROW(RankCode(FieldSpec::prime(2), 2, 3, {}, true));
    EXPECT_THROW(RankCode(FieldSpec::prime(2), 3, 2, {g}), InvalidParameter);  // wrong size
}

TEST(RankCode, SpanDropsDependenciesAndContainsItsWords) {
    const auto a = rztest::bin({{1, 0}, {0, 1}}), b = rztest::bin({{0, 1}, {1, 0}});
    const RankCode C = RankCode::span_of(FieldSpec::prime(2), 2, 2, {a, b, a + b});
    EXPECT_EQ(C.k(), 2u);
    EXPECT_TRUE(C.contains(a + b));
    EXPECT_FALSE(C.contains(rztest::bin({{1, 0}, {0, 0}})));
    EXPECT_EQ(RankCode::zero(FieldSpec::prime(2), 2, 2).k(), 0u);
    EXPECT_EQ(RankCode::full(FieldSpec::prime(2), 2, 2).k(), 4u);
}

TEST(WeightDistribution, ExampleCodeMatchesOracle) {
    const RankCode C = rztest::example_code();
    const auto W = weight_distribution(C);
    EXPECT_EQ(W.counts(), ints({1, 0, 13, 2}));
    EXPECT_EQ(W.counts(), oracle_distribution(C));
    EXPECT_EQ(W.params().k, 4);
    EXPECT_EQ(W.params().d, 2);
    EXPECT_EQ(weight_distribution(C, 4).counts(), W.counts());
}

TEST(WeightDistribution, ValidationErrors) {
    EXPECT_THROW(WeightDistribution::make(2, 3, 3, ints({1, 0, 14, 0})), InvalidParameter);
    EXPECT_THROW(WeightDistribution::make(2, 3, 3, ints({2, 0, 14, 0})), InvalidParameter);
    EXPECT_THROW(WeightDistribution::make(2, 3, 3, ints({1, 0, 15})), InvalidParameter);
    EXPECT_THROW(WeightDistribution::make(2, 3, 3, ints({1, -1, 16, 0})), InvalidParameter);
    EXPECT_THROW(WeightDistribution::make(2, 2, 3, ints({1, 0, 15, 0})), InvalidParameter);
    EXPECT_EQ(WeightDistribution::make(2, 3, 3, ints({1, 0, 0, 0})).params().d, 4);
}

TEST(WeightDistribution, EnumerationCapRaisesResourceLimit) {
    EXPECT_THROW(weight_distribution(rztest::example_code(), 1, 8), ResourceLimit);
}

TEST(Gabidulin, BinaryThreeByThreeFamily) {
    const std::vector<std::vector<Integer>> want = {ints({1, 49, 294, 168}), ints({1, 0, 49, 14}), ints({1, 0, 0, 7})};
    for (long long d = 1; d <= 3; ++d) {
        const RankCode C = construct_gabidulin(2, 3, 3, d);
        EXPECT_EQ(C.k(), static_cast<std::size_t>(3 * (3 - d + 1)));
        EXPECT_EQ(oracle_distribution(C), weight_distribution(C).counts());
        EXPECT_EQ(minimum_distance(C), d);
    }
    EXPECT_EQ(weight_distribution(construct_gabidulin(2, 3, 3, 1)).counts(), want[0]);
    EXPECT_EQ(weight_distribution(construct_gabidulin(2, 3, 3, 2)).counts(), want[1]);
    EXPECT_EQ(weight_distribution(construct_gabidulin(2, 3, 3, 3)).counts(), want[2]);
}

TEST(Gabidulin, IsMrdForOtherParameters) {
    struct Case { long long q, m, n, d; };
    for (const auto& c : {Case{2, 4, 3, 2}, Case{2, 4, 4, 3}, Case{3, 3, 2, 2}, Case{4, 2, 2, 2}}) {
        const RankCode C = construct_gabidulin(c.q, c.m, c.n, c.d);
        const auto W = weight_distribution(C);
        EXPECT_EQ(W.params().d, c.d);
        EXPECT_EQ(static_cast<long long>(C.k()), c.m * (c.n - c.d + 1));  // meets the Singleton bound
        EXPECT_EQ(W.enumerator(), mrd_enumerator(c.q, c.m, c.n, c.d));
    }
    EXPECT_THROW(construct_gabidulin(2, 3, 4, 2), InvalidParameter);
    EXPECT_THROW(construct_gabidulin(2, 3, 3, 0), InvalidParameter);
    EXPECT_THROW(construct_gabidulin(6, 3, 3, 1), InvalidParameter);
}

TEST(DualCode, TraceOrthogonalAndInvolutive) {
    const RankCode C = rztest::example_code();
    const RankCode D = dual_code(C);
    EXPECT_EQ(D.k(), 5u);
    for (const auto& X : C.generators())
        for (const auto& Y : D.generators()) EXPECT_EQ(trace_inner_product(X, Y).index, 0u);
    EXPECT_EQ(dual_code(D), C);
    EXPECT_EQ(weight_distribution(D).counts(), oracle_distribution(D));
    EXPECT_EQ(weight_distribution(D).params().d, 1);
}

TEST(DualCode, ShorteningDualityOnEverySubspace) {
    // |C_U| q^{m dim U} = |C| |C^perp_{U^perp}|, by the closure oracle
    const RankCode C = rztest::example_code();
    const RankCode D = dual_code(C);
    const auto cw = rztest::codewords(C), dw = rztest::codewords(D);
    for (const auto& U : rztest::binary_subspaces(3)) {
        const auto Up = rztest::perp(U, 3);
        auto killed = [](const std::vector<rztest::BinMat>& words, const std::vector<std::uint32_t>& S) {
            long long c = 0;
            for (const auto& X : words) {
                bool ok = true;
                for (auto u : S) ok = ok && rztest::apply(X, u) == 0;
                c += ok;
            }
            return c;
        };
        const long long lhs = killed(cw, U) << (3 * rztest::log2_size(U.size()));
        EXPECT_EQ(lhs, 16 * killed(dw, Up));
    }
}

TEST(Shortening, SubcodeDimensionMatchesExplicitSubcode) {
    const RankCode C = rztest::example_code();
    for (std::size_t dim = 0; dim <= 3; ++dim)
        enumerate_subspaces(C.spec(), 3, dim, [&](const Subspace& U) {
            const RankCode S = shortened_subcode(C, U);
            EXPECT_EQ(S.k(), shortened_dimension(C, U));
            for (const auto& g : S.generators()) {
                EXPECT_TRUE(C.contains(g));
                for (std::size_t i = 0; i < U.dim(); ++i) {
                    const auto u = U.basis_vector(i);
                    for (std::size_t r = 0; r < 3; ++r) {
                        FieldElem s{0};
                        for (std::size_t j = 0; j < 3; ++j) s = C.spec().add(s, C.spec().mul(g(r, j), u[j]));
                        EXPECT_EQ(s.index, 0u);
                    }
                }
            }
        });
}

TEST(Shortening, ProjectionTable) {
    // shortened-and-projected distributions at each h outside H
    const RankCode C = rztest::example_code();
    struct Row { const char* H; const char* h; std::vector<long long> W; };
    const std::vector<Row> table = {
        {"001", "001", {1, 0, 3}}, {"001", "111", {1, 0, 1}}, {"001", "011", {1, 0, 1}}, {"001", "101", {1, 0, 3}},
        {"010", "110", {1, 0, 1}}, {"010", "010", {1, 0, 1}}, {"010", "111", {1, 0, 1}}, {"010", "011", {1, 0, 1}},
    };
    for (const auto& r : table) {
        const Subspace H = hyperplane_of(C.spec(), rztest::bits(r.H));
        const RankCode S = shorten_proj(C, rztest::bits(r.h), H);
        std::vector<Integer> want;
        for (auto v : r.W) want.emplace_back(v);
        EXPECT_EQ(weight_distribution(S).counts(), want) << r.H << " " << r.h;
    }
    EXPECT_THROW(shorten_proj(C, rztest::bits("110"), hyperplane_of(C.spec(), rztest::bits("001"))), InvalidParameter);
}

TEST(Puncturing, DimensionAndDistanceDropByAtMostOne) {
    const RankCode C = construct_gabidulin(2, 4, 4, 3);
    enumerate_subspaces(C.spec(), 4, 3, [&](const Subspace& H) {
        const RankCode P = puncture(C, H);
        EXPECT_EQ(P.n(), 3u);
        EXPECT_EQ(P.k(), C.k());  // d > 1 so puncturing is injective
        const auto d = weight_distribution(P).params().d;
        EXPECT_GE(d, 2);
        EXPECT_LE(d, 3);
    });
}

TEST(Embedding, ExtensionCodeBecomesDivisible) {
    const RankCode C = construct_gabidulin(4, 3, 3, 2);
    const RankCode E = embed_extension(C, 2);
    EXPECT_EQ(E.m(), 6u);
    EXPECT_EQ(E.n(), 6u);
    EXPECT_EQ(E.k(), 12u);
    EXPECT_EQ(weight_distribution(E, 2).counts(), ints({1, 0, 0, 0, 1323, 0, 2772}));
    EXPECT_THROW(embed_extension(C, 3), InvalidParameter);
}

TEST(Embedding, FullSpaceDistributionsAgree) {
    const auto W = full_space_distribution(2, 3, 2);
    EXPECT_EQ(W.counts(), ints({1, 21, 42}));
    EXPECT_EQ(weight_distribution(RankCode::full(FieldSpec::prime(2), 3, 2)).counts(), W.counts());
    const RankCode E = embed_extension(RankCode::full(FieldSpec::of_order(4), 2, 2), 2);
    EXPECT_EQ(weight_distribution(E).counts(), embedded_full_space_distribution(2, 2, 2).counts());
    EXPECT_EQ(embedded_full_space_distribution(2, 2, 2).counts(), ints({1, 0, 75, 0, 180}));
}

TEST(CodeParams, IncludesDualDistance) {
    const auto p = code_params(rztest::example_code());
    EXPECT_EQ(p.k, 4);
    EXPECT_EQ(p.d, 2);
    ASSERT_TRUE(p.d_dual.has_value());
    EXPECT_EQ(*p.d_dual, 1);
}

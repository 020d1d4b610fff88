#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace rankzeta;
using rztest::frac;

namespace {

std::vector<RankCode> small_binary_codes() {
    std::vector<RankCode> out = {rztest::example_code(), dual_code(rztest::example_code())};
    for (long long m = 2; m <= 4; ++m)
        for (long long n = 1; n <= std::min(m, 4LL); ++n)
            for (long long d = 1; d <= n; ++d)
                if (m * (n - d + 1) <= 12) out.push_back(construct_gabidulin(2, m, n, d));
    std::mt19937 rng(20240607);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t m = 2 + trial % 3, n = 2 + trial % 3, k = 1 + rng() % 6;
        std::vector<MatGF> gens;
        for (std::size_t g = 0; g < k; ++g) {
            MatGF X(FieldSpec::prime(2), m, n);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) X(i, j) = FieldElem{static_cast<std::uint32_t>(rng() & 1u)};
            gens.push_back(X);
        }
        out.push_back(RankCode::span_of(FieldSpec::prime(2), m, n, gens));
    }
    return out;
}

}  // namespace

TEST(Moments, FormulaDirectAndOracleAgreeOnSmallBinaryCodes) {
    for (const auto& C : small_binary_codes()) {
        if (C.k() == 0) continue;
        const auto mv = moments_from_distribution(weight_distribution(C));
        const auto direct = moments_direct(C);
        const auto oracle = rztest::brute_moments(C);
        ASSERT_EQ(mv.B.size(), oracle.size());
        for (std::size_t u = 0; u < oracle.size(); ++u) {
            EXPECT_EQ(mv.B[u], Rat(oracle[u])) << C.m() << "x" << C.n() << " k=" << C.k() << " u=" << u;
            EXPECT_EQ(direct.B[u], mv.B[u]);
        }
        EXPECT_EQ(direct.b, mv.b);
    }
}

TEST(Moments, ExampleCodeValues) {
    const auto mv = moments_from_distribution(weight_distribution(rztest::example_code()));
    EXPECT_EQ(mv.B, (std::vector<Rat>{Rat(0), Rat(0), Rat(13), Rat(15)}));
    EXPECT_EQ(mv.b, (std::vector<Rat>{frac(13, 7), Rat(15)}));
    EXPECT_EQ(mv.b_ext(-1), 0);
    EXPECT_EQ(mv.b_ext(2), Rat(16 * 8 - 1));
}

TEST(Moments, AverageCardinalitiesOfTheFourByFourCode) {
    const auto mv = moments_from_distribution(rztest::load_rdist("qr4x4.rdist"));
    EXPECT_EQ(mv.average_cardinalities(), (std::vector<Rat>{frac(8, 5), Rat(16), Rat(256)}));
}

TEST(Moments, BoundaryValuesHoldForCodesAndFailWhenPerturbed) {
    for (const auto& C : small_binary_codes()) {
        if (C.k() == 0 || C.k() == C.m() * C.n()) continue;
        auto W = weight_distribution(C);
        W.params().d_dual = code_params(C).d_dual;
        const auto mv = moments_from_distribution(W);
        EXPECT_TRUE(boundary_check(mv).empty());
    }
    auto mv = moments_from_distribution(weight_distribution(rztest::example_code()));
    mv.params.d_dual = 1;
    mv.B[3] += 1;
    EXPECT_EQ(boundary_check(mv).size(), 1u);
    mv.params.d_dual.reset();
    EXPECT_THROW(boundary_check(mv), InvalidParameter);
}

TEST(Moments, RationalEnumeratorsAreAccepted) {
    const BiHomPoly avg(std::vector<Rat>{Rat(1), Rat(0), frac(13, 7)});
    const auto mv = moments_from_enumerator(avg, 2, 3);
    EXPECT_EQ(mv.params.k, -1);
    EXPECT_EQ(mv.mass, frac(20, 7));
    EXPECT_EQ(mv.b, (std::vector<Rat>{frac(13, 7)}));
    EXPECT_THROW(moments_from_enumerator(BiHomPoly(std::vector<Rat>{Rat(2), Rat(1)}), 2, 3), InvalidParameter);
}

TEST(Moments, CountsOverrideKeepsDeclaredParameters) {
    const CodeParams p{2, 3, 3, 4, 2, 1};
    const auto mv = moments_from_counts(p, {Rat(1), Rat(0), Rat(13), Rat(2)});
    EXPECT_EQ(mv.params.k, 4);
    EXPECT_EQ(*mv.params.d_dual, 1);
    EXPECT_THROW(moments_from_counts(p, {Rat(1), Rat(0)}), InvalidParameter);
}

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace rankzeta;
using rztest::frac;
using rztest::rats;

namespace {

UniPoly poly_over(std::initializer_list<long long> num, long long den) {
    std::vector<Rat> c;
    for (auto v : num) c.push_back(frac(v, den));
    return UniPoly(std::move(c));
}

// MRD enumerators measured on actual Gabidulin codes, x^n for d = n+1
std::vector<BiHomPoly> measured_mrd_basis(long long n) {
    std::vector<BiHomPoly> out;
    for (long long d = 1; d <= n; ++d) out.push_back(weight_distribution(construct_gabidulin(2, 3, n, d)).enumerator());
    out.push_back(BiHomPoly::x_power(static_cast<std::size_t>(n)));
    return out;
}

}  // namespace

TEST(MrdEnumerator, BinaryThreeByThree) {
    EXPECT_EQ(mrd_enumerator(2, 3, 3, 3).to_string(), "x^3 + 7y^3");
    EXPECT_EQ(mrd_enumerator(2, 3, 3, 2).to_string(), "x^3 + 49xy^2 + 14y^3");
    EXPECT_EQ(mrd_enumerator(2, 3, 3, 1).to_string(), "x^3 + 49x^2y + 294xy^2 + 168y^3");
    EXPECT_EQ(mrd_enumerator(2, 3, 3, 4), BiHomPoly::x_power(3));
    EXPECT_THROW(mrd_enumerator(2, 3, 3, 0), InvalidParameter);
    EXPECT_THROW(mrd_enumerator(10, 3, 3, 1), InvalidParameter);
}

TEST(MrdEnumerator, MassIsSingletonSize) {
    for (long long q : {2, 3, 4})
        for (long long m = 1; m <= 5; ++m)
            for (long long n = 1; n <= m; ++n)
                for (long long d = 1; d <= n; ++d) {
                    const auto W = mrd_enumerator(q, m, n, d);
                    EXPECT_EQ(W.mass(), Rat(ipow(q, static_cast<unsigned long>(m * (n - d + 1)))));
                    for (const auto& c : W.coefficients()) EXPECT_GE(c, 0);
                }
}

TEST(ZetaPolynomial, FixtureValues) {
    EXPECT_EQ(zeta_from_distribution(rztest::load_rdist("c1.rdist")).P, poly_over({1, -2, 8}, 7));
    EXPECT_EQ(zeta_from_distribution(rztest::load_rdist("c2.rdist")).P, poly_over({15, -30, 64}, 49));
    EXPECT_EQ(zeta_from_distribution(rztest::load_rdist("c3.rdist")).P, poly_over({1, -34, 64}, 31));
    EXPECT_EQ(zeta_from_distribution(rztest::load_rdist("qr4x4.rdist")).P, poly_over({1, 8, 16}, 25));
    EXPECT_EQ(zeta_from_distribution(weight_distribution(rztest::example_code())).P, poly_over({13, -12, 48}, 49));
}

TEST(ZetaPolynomial, MrdCodesHaveTrivialZeta) {
    for (long long q : {2, 3})
        for (long long n = 2; n <= 4; ++n)
            for (long long d = 1; d <= n; ++d) {
                const auto z = zeta_from_enumerator(mrd_enumerator(q, n, n, d), q, n);
                EXPECT_EQ(z.P, UniPoly{Rat(1)});
                EXPECT_EQ(*z.d_dual, n - d + 2);
            }
}

TEST(ZetaPolynomial, EqualsMeasuredMrdDecomposition) {
    // oracle: solve W = sum_i c_i M_{n,d+i} against enumerated Gabidulin codes
    const auto basis = measured_mrd_basis(3);
    for (const auto& W : {weight_distribution(rztest::example_code()), rztest::load_rdist("c1.rdist"), rztest::load_rdist("c2.rdist")}) {
        const long long d = W.params().d, n = 3;
        const std::size_t s = static_cast<std::size_t>(n - d + 2);
        // equations at x^n and at y-degrees d..n
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> rhs;
        std::vector<std::size_t> rows = {0};
        for (long long i = d; i <= n; ++i) rows.push_back(static_cast<std::size_t>(i));
        for (auto r : rows) {
            std::vector<Rat> row;
            for (std::size_t j = 0; j < s; ++j) row.push_back(basis[static_cast<std::size_t>(d - 1) + j][r]);
            A.push_back(row);
            rhs.push_back(W.enumerator()[r]);
        }
        const auto c = rztest::solve(A, rhs);
        const auto z = zeta_from_distribution(W);
        EXPECT_EQ(z.P.padded(s), c);
        EXPECT_EQ(mrd_decomposition(W), c);
    }
}

TEST(ZetaPolynomial, UnitValueAndDegreeFormula) {
    for (const auto& name : rztest::rdist_fixtures()) {
        const auto z = zeta_from_distribution(rztest::load_rdist(name));
        EXPECT_EQ(z.P(Rat(1)), 1) << name;
    }
    const RankCode C = rztest::example_code();
    for (const RankCode& K : {C, dual_code(C), construct_gabidulin(2, 4, 4, 2), embed_extension(construct_gabidulin(4, 2, 2, 2), 2)}) {
        const auto p = code_params(K);
        const auto z = zeta_from_distribution(weight_distribution(K));
        EXPECT_EQ(z.degree(), p.n - p.d - *p.d_dual + 2);
        EXPECT_EQ(*z.d_dual, *p.d_dual);
    }
}

TEST(ZetaPolynomial, SeriesReproducesMoments) {
    const auto W = rztest::load_rdist("qr4x4.rdist");
    const auto z = zeta_from_distribution(W);
    const auto mv = moments_from_distribution(W);
    EXPECT_EQ(b_from_zeta(z, mv.b.size()), mv.b);
    const auto ext = b_from_zeta(z, 6);
    for (long long u = 0; u < 6; ++u) EXPECT_EQ(ext[static_cast<std::size_t>(u)], mv.b_ext(u));
    EXPECT_THROW(zeta_series(z, 0), InvalidParameter);
}

TEST(ZetaPolynomial, ZeroCodeIsRejected) {
    EXPECT_THROW(zeta_from_enumerator(BiHomPoly::x_power(3), 2, 3), InvalidParameter);
}

TEST(EnumeratorFromZeta, RoundTripsEveryFixture) {
    for (const auto& name : rztest::rdist_fixtures()) {
        const auto W = rztest::load_rdist(name);
        EXPECT_EQ(enumerator_from_zeta(zeta_from_distribution(W)), W.enumerator()) << name;
        const auto dec = mrd_decomposition(W);
        EXPECT_EQ(dec, zeta_from_distribution(W).P.padded(dec.size())) << name;
    }
}

TEST(PhiPolynomials, ClosedFormAndSum) {
    for (long long n = 1; n <= 5; ++n) {
        const auto phi = phi_polynomials(2, 5, n);
        ASSERT_EQ(phi.size(), static_cast<std::size_t>(n + 1));
        // phi_{n,0} = y^n; every other phi vanishes at x = y = 1
        EXPECT_EQ(phi[0], BiHomPoly::monomial(static_cast<std::size_t>(n), static_cast<std::size_t>(n)));
        for (long long s = 1; s <= n; ++s) EXPECT_EQ(phi[static_cast<std::size_t>(s)].mass(), 0);
    }
}

TEST(DualZeta, FunctionalEquationValues) {
    const auto z2 = zeta_from_distribution(rztest::load_rdist("c2.rdist"));
    EXPECT_EQ(dual_zeta(z2).P, poly_over({4, -15, 60}, 49));
    EXPECT_EQ(dual_zeta(z2).d, 1);
    const auto z3 = zeta_from_distribution(rztest::load_rdist("c3.rdist"));
    EXPECT_EQ(dual_zeta(z3).P, z3.P);
    for (const auto& name : rztest::rdist_fixtures()) {
        const auto z = zeta_from_distribution(rztest::load_rdist(name));
        EXPECT_EQ(dual_zeta(dual_zeta(z)), z) << name;
    }
}

TEST(DualZeta, MatchesEnumeratedDualCodes) {
    for (const RankCode& C : {rztest::example_code(), construct_gabidulin(2, 4, 3, 2), dual_code(construct_gabidulin(2, 3, 3, 2))}) {
        const auto z = zeta_from_distribution(weight_distribution(C));
        const auto dz = zeta_from_distribution(weight_distribution(dual_code(C)));
        EXPECT_EQ(dual_zeta(z), dz);
    }
}

TEST(DistanceBound, TightOnSmallFixturesAndValidEverywhere) {
    EXPECT_EQ(distance_bound(zeta_from_distribution(rztest::load_rdist("c1.rdist"))).value, 2.0);
    EXPECT_EQ(distance_bound(zeta_from_distribution(rztest::load_rdist("c2.rdist"))).value, 2.0);
    for (const auto& name : rztest::rdist_fixtures()) {
        const auto z = zeta_from_distribution(rztest::load_rdist(name));
        if (z.d >= z.n) continue;
        const auto b = distance_bound(z);
        EXPECT_TRUE(b.satisfied) << name;
        EXPECT_GE(b.value + 1e-12, static_cast<double>(z.d)) << name;
    }
    EXPECT_THROW(distance_bound(zeta_from_enumerator(mrd_enumerator(2, 3, 3, 3), 2, 3)), InvalidParameter);
}

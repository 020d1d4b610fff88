#pragma once

/**
 * @file moments.hpp
 * @brief Binomial moments B_u and normalized moments b_u of a code.
 *
 * Two independent routes: summing shortened-subcode sizes over all subspaces,
 * and the closed form B_u = sum_{1<=t<=u} W_t [n-t choose n-u]_q.
 */

#include <optional>
#include <string>
#include <vector>

#include "rankzeta/codes.hpp"
#include "rankzeta/exact_arith.hpp"
#include "rankzeta/ffla.hpp"

namespace rankzeta {

struct MomentVector {
    CodeParams params;       // k = -1 when the total mass is not a power of q
    Rat mass;                // sum of the enumerator coefficients (q^k for a code)
    std::vector<Rat> B;      // u = 0..n
    std::vector<Rat> b;      // u = 0..n-d

    /// b_u for any integer u: zero below 0, mass q^{m(u-n+d)} - 1 above n-d.
    Rat b_ext(long long u) const {
        const long long top = params.n - params.d;
        if (u < 0) return Rat(0);
        if (u <= top) return b[static_cast<std::size_t>(u)];
        return mass * qpow(params.q, params.m * (u - top)) - 1;
    }
    /// 1 + b_u: the average size of a shortened subcode for dim U = n-d-u.
    std::vector<Rat> average_cardinalities() const {
        std::vector<Rat> out;
        for (const auto& v : b) out.push_back(v + 1);
        return out;
    }
    friend bool operator==(const MomentVector& x, const MomentVector& y) { return x.B == y.B && x.b == y.b && x.mass == y.mass; }
};

namespace detail {

inline void fill_normalized(MomentVector& mv) {
    const long long n = mv.params.n, d = mv.params.d;
    mv.b.clear();
    for (long long u = 0; u <= n - d; ++u) mv.b.push_back(mv.B[static_cast<std::size_t>(u + d)] / qbin(n, u + d, mv.params.q));
}

}  // namespace detail

/// Moments of an arbitrary (possibly averaged, rational) enumerator.
inline MomentVector moments_from_enumerator(const BiHomPoly& W, long long q, long long m) {
    require_q(q);
    if (W[0] != 1) throw InvalidParameter("enumerator must have x^n coefficient 1");
    const long long n = static_cast<long long>(W.degree());
    MomentVector mv;
    mv.mass = W.mass();
    long long k = -1;
    if (is_integral(mv.mass)) k = exact_log(rat_numerator(mv.mass), q);
    mv.params = CodeParams{q, m, n, k, n + 1, std::nullopt};
    for (long long t = 1; t <= n; ++t)
        if (W[static_cast<std::size_t>(t)] != 0) {
            mv.params.d = t;
            break;
        }
    for (long long u = 0; u <= n; ++u) {
        Rat s(0);
        for (long long t = 1; t <= u; ++t) s += W[static_cast<std::size_t>(t)] * qbin(n - t, n - u, q);
        mv.B.push_back(s);
    }
    detail::fill_normalized(mv);
    return mv;
}

inline MomentVector moments_from_distribution(const WeightDistribution& W) {
    MomentVector mv = moments_from_enumerator(W.enumerator(), W.params().q, W.params().m);
    mv.params = W.params();
    return mv;
}

/// Moments of raw counts under declared parameters; no validation of the total.
inline MomentVector moments_from_counts(const CodeParams& params, const std::vector<Rat>& W) {
    if (W.size() != static_cast<std::size_t>(params.n + 1)) throw InvalidParameter("count vector must have n+1 entries");
    MomentVector mv = moments_from_enumerator(BiHomPoly(W), params.q, params.m);
    mv.params.k = params.k;
    mv.params.d_dual = params.d_dual;
    return mv;
}

/// Brute force: B_u = sum over dim(U) = n-u of (|C_U| - 1).
inline MomentVector moments_direct(const RankCode& C, std::uint64_t cap = default_subspace_cap) {
    const long long n = static_cast<long long>(C.n()), q = C.q();
    MomentVector mv;
    mv.params = CodeParams{q, static_cast<long long>(C.m()), n, static_cast<long long>(C.k()), n + 1, std::nullopt};
    mv.mass = Rat(ipow(q, C.k()));
    for (long long u = 0; u <= n; ++u) {
        Integer s = 0;
        enumerate_subspaces(
            C.spec(), C.n(), static_cast<std::size_t>(n - u),
            [&](const Subspace& U) { s += ipow(q, shortened_dimension(C, U)) - 1; }, cap);
        mv.B.emplace_back(s);
    }
    for (long long u = 0; u <= n; ++u)
        if (mv.B[static_cast<std::size_t>(u)] != 0) {
            mv.params.d = u;
            break;
        }
    detail::fill_normalized(mv);
    return mv;
}

/**
 * Checks B_u = 0 for 0 < u < d and the closed form
 * B_u = (q^{k - m(n-u)} - 1) [n choose u]_q for u > n - d_dual.
 * Returns one message per violation.
 */
inline std::vector<std::string> boundary_check(const MomentVector& mv) {
    if (!mv.params.d_dual) throw InvalidParameter("boundary check needs the dual distance");
    const long long q = mv.params.q, m = mv.params.m, n = mv.params.n, d = mv.params.d, dd = *mv.params.d_dual;
    const Rat total = mv.params.k >= 0 ? Rat(ipow(q, static_cast<unsigned long>(mv.params.k))) : mv.mass;
    std::vector<std::string> out;
    for (long long u = 0; u < d && u <= n; ++u)
        if (mv.B[static_cast<std::size_t>(u)] != 0) out.push_back("B_" + std::to_string(u) + " = " + mv.B[static_cast<std::size_t>(u)].str() + " but u < d");
    for (long long u = std::max(0LL, n - dd + 1); u <= n; ++u) {
        const Rat want = (total * qpow(q, -m * (n - u)) - 1) * qbin(n, u, q);
        const Rat& got = mv.B[static_cast<std::size_t>(u)];
        if (got != want) out.push_back("B_" + std::to_string(u) + " = " + got.str() + ", expected " + want.str());
    }
    return out;
}

}  // namespace rankzeta

#pragma once

/**
 * @file zeta.hpp
 * @brief Zeta polynomials of rank-metric codes and the MRD enumerator basis.
 *
 * Enumerators use the convention that coefficient i multiplies x^(n-i) y^i.
 * All quantities are exact rationals; averaged enumerators (non-integral
 * coefficients, arbitrary total mass) are accepted throughout.
 */

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rankzeta/codes.hpp"
#include "rankzeta/exact_arith.hpp"
#include "rankzeta/moments.hpp"

namespace rankzeta {

namespace detail {

/// M_{n,d} for any d >= 0; d = 0 is only meaningful inside the phi identities.
inline BiHomPoly mrd_enumerator_any(long long q, long long m, long long n, long long d) {
    auto W = BiHomPoly::x_power(static_cast<std::size_t>(n));
    if (d > n) return W;
    W[0] = 0;
    for (long long i = d; i <= n; ++i) {
        Rat s(0);
        for (long long j = 0; j <= i - d; ++j) {
            const Rat term = qbin(i, j, q) * qpow(q, binom2(j)) * (qpow(q, m * (i - d - j + 1)) - 1);
            s += (j % 2 ? -term : term);
        }
        W[static_cast<std::size_t>(i)] += qbin(n, i, q) * s;
    }
    W[0] += 1;
    return W;
}

/// p_k(x, y) = prod_{j<k} (x - q^j y) as a degree-k homogeneous polynomial.
inline BiHomPoly p_poly(long long q, long long k) {
    BiHomPoly acc = BiHomPoly::x_power(0);
    for (long long j = 0; j < k; ++j) acc = acc * BiHomPoly(std::vector<Rat>{Rat(1), -qpow(q, j)});
    return acc;
}

inline BiHomPoly times_y_power(const BiHomPoly& f, std::size_t r) {
    std::vector<Rat> c(r, Rat(0));
    c.insert(c.end(), f.coefficients().begin(), f.coefficients().end());
    return BiHomPoly(std::move(c));
}

}  // namespace detail

/// Weight enumerator of an m x n MRD code of minimum distance d; x^n for d > n.
inline BiHomPoly mrd_enumerator(long long q, long long m, long long n, long long d) {
    require_q(q);
    if (d < 1) throw InvalidParameter("MRD enumerator needs d >= 1");
    if (n < 0 || m < 1) throw InvalidParameter("MRD enumerator needs m >= 1, n >= 0");
    return detail::mrd_enumerator_any(q, m, n, d);
}

/// MRD weight distribution as a validated WeightDistribution.
inline WeightDistribution mrd_distribution(long long q, long long m, long long n, long long d, bool allow_wide = false) {
    const BiHomPoly W = mrd_enumerator(q, m, n, d);
    std::vector<Integer> counts;
    for (const auto& c : W.coefficients()) counts.push_back(rat_numerator(c));
    return WeightDistribution::make(q, m, n, std::move(counts), allow_wide);
}

struct ZetaPolynomial {
    long long q = 2, m = 1, n = 1, d = 1;
    Rat mass = 1;                    // total count of the enumerator
    std::optional<long long> d_dual; // inferred from deg P as n - d + 2 - deg P
    UniPoly P;

    long long degree() const { return P.degree(); }
    /// log_q(mass), or -1 when mass is not a power of q.
    long long k() const { return is_integral(mass) ? exact_log(rat_numerator(mass), q) : -1; }
    CodeParams params() const { return CodeParams{q, m, n, k(), d, d_dual}; }
    friend bool operator==(const ZetaPolynomial& a, const ZetaPolynomial& b) {
        return a.q == b.q && a.m == b.m && a.n == b.n && a.d == b.d && a.mass == b.mass && a.P == b.P;
    }
};

/**
 * p_u = (b_u - (q^m+1) b_{u-1} + q^m b_{u-2}) / (q^m - 1) for u = 0..n-d+1,
 * with b extended beyond n-d; trailing zeros trimmed. Degree n-d+1 occurs
 * exactly when the dual distance is 1.
 */
inline ZetaPolynomial zeta_from_moments(const MomentVector& mv) {
    const long long q = mv.params.q, m = mv.params.m, n = mv.params.n, d = mv.params.d;
    if (d > n) throw InvalidParameter("the zero code has no zeta polynomial");
    const Rat Qm = qpow(q, m);
    std::vector<Rat> p;
    for (long long u = 0; u <= n - d + 1; ++u) p.push_back((mv.b_ext(u) - (Qm + 1) * mv.b_ext(u - 1) + Qm * mv.b_ext(u - 2)) / (Qm - 1));
    ZetaPolynomial z{q, m, n, d, mv.mass, std::nullopt, UniPoly(std::move(p))};
    if (z.P(Rat(1)) != 1) throw Inconsistency("zeta polynomial fails P(1) = 1 (got " + z.P(Rat(1)).str() + ")");
    z.d_dual = n - d + 2 - z.degree();
    return z;
}

inline ZetaPolynomial zeta_from_enumerator(const BiHomPoly& W, long long q, long long m) {
    return zeta_from_moments(moments_from_enumerator(W, q, m));
}

inline ZetaPolynomial zeta_from_distribution(const WeightDistribution& W) {
    return zeta_from_moments(moments_from_distribution(W));
}

/// Z(T) = P(T) / ((1 - T)(1 - q^m T)) truncated to `order` terms.
inline SeriesTrunc zeta_series(const ZetaPolynomial& zp, std::size_t order) {
    if (order < 1) throw InvalidParameter("series order must be at least 1");
    SeriesTrunc geo1(order), geo2(order);
    const Rat Qm = qpow(zp.q, zp.m);
    Rat pw(1);
    for (std::size_t i = 0; i < order; ++i) {
        geo1[i] = 1;
        geo2[i] = pw;
        pw *= Qm;
    }
    return SeriesTrunc::from_poly(zp.P, order) * geo1 * geo2;
}

/// b_u = (q^m - 1) [T^u] Z(T) for u = 0..count-1.
inline std::vector<Rat> b_from_zeta(const ZetaPolynomial& zp, std::size_t count) {
    if (count == 0) return {};
    const SeriesTrunc z = zeta_series(zp, count);
    const Rat Qm1 = qpow(zp.q, zp.m) - 1;
    std::vector<Rat> out;
    for (std::size_t u = 0; u < count; ++u) out.push_back(Qm1 * z[u]);
    return out;
}

/**
 * Coefficients c_0..c_{n-d+1} with W = sum_i c_i M_{n,d+i}, where
 * M_{n,n+1} = x^n. The system is triangular in the y-degree; the last
 * coefficient vanishes whenever the dual distance is at least 2.
 */
inline std::vector<Rat> mrd_decomposition(const BiHomPoly& W, long long q, long long m) {
    require_q(q);
    const long long n = static_cast<long long>(W.degree());
    long long d = n + 1;
    for (long long t = 1; t <= n; ++t)
        if (W[static_cast<std::size_t>(t)] != 0) {
            d = t;
            break;
        }
    if (d > n) throw InvalidParameter("the zero code has no MRD decomposition");
    std::vector<BiHomPoly> basis;
    for (long long i = 0; i <= n - d + 1; ++i) basis.push_back(detail::mrd_enumerator_any(q, m, n, d + i));
    std::vector<Rat> c(basis.size(), Rat(0));
    for (long long i = 0; i <= n - d; ++i) {
        const auto e = static_cast<std::size_t>(d + i);
        Rat rest = W[e];
        for (long long j = 0; j < i; ++j) rest -= c[static_cast<std::size_t>(j)] * basis[static_cast<std::size_t>(j)][e];
        c[static_cast<std::size_t>(i)] = rest / basis[static_cast<std::size_t>(i)][e];
    }
    Rat rest = W[0];
    for (long long j = 0; j <= n - d; ++j) rest -= c[static_cast<std::size_t>(j)];
    c.back() = rest;
    BiHomPoly check = BiHomPoly::zero(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < basis.size(); ++i) check = check + c[i] * basis[i];
    if (!(check == W)) throw Inconsistency("MRD basis does not reproduce the enumerator");
    return c;
}

inline std::vector<Rat> mrd_decomposition(const WeightDistribution& W) {
    return mrd_decomposition(W.enumerator(), W.params().q, W.params().m);
}

/// W = x^n + sum_{i=d}^n b_{i-d} [n choose i]_q p_{n-i}(x,y) y^i.
inline BiHomPoly enumerator_from_zeta(const ZetaPolynomial& zp) {
    const long long q = zp.q, n = zp.n, d = zp.d;
    BiHomPoly W = BiHomPoly::x_power(static_cast<std::size_t>(n));
    if (d > n) return W;
    const auto b = b_from_zeta(zp, static_cast<std::size_t>(n - d + 1));
    for (long long i = d; i <= n; ++i) {
        const BiHomPoly term = detail::times_y_power(detail::p_poly(q, n - i), static_cast<std::size_t>(i));
        W = W + (b[static_cast<std::size_t>(i - d)] * qbin(n, i, q)) * term;
    }
    return W;
}

/**
 * phi_{n,s} for s = 0..n, from
 * phi_{n,n-r} = (M_{n,r} - (q^m+1) M_{n,r+1} + q^m M_{n,r+2}) / (q^m - 1).
 * Each is checked against [n choose r]_q p_{n-r}(x,y) y^r.
 */
inline std::vector<BiHomPoly> phi_polynomials(long long q, long long m, long long n) {
    require_q(q);
    if (n < 0) throw InvalidParameter("phi polynomials need n >= 0");
    const Rat Qm = qpow(q, m);
    std::vector<BiHomPoly> out(static_cast<std::size_t>(n + 1));
    for (long long r = 0; r <= n; ++r) {
        const BiHomPoly phi = Rat(1) / (Qm - 1) *
                              (detail::mrd_enumerator_any(q, m, n, r) - (Qm + 1) * detail::mrd_enumerator_any(q, m, n, r + 1) +
                               Qm * detail::mrd_enumerator_any(q, m, n, r + 2));
        const BiHomPoly closed = qbin(n, r, q) * detail::times_y_power(detail::p_poly(q, n - r), static_cast<std::size_t>(r));
        if (!(phi == closed)) throw Inconsistency("phi_{" + std::to_string(n) + "," + std::to_string(n - r) + "} closed form mismatch");
        out[static_cast<std::size_t>(n - r)] = phi;
    }
    return out;
}

/**
 * Zeta polynomial of the dual code:
 * P'(T) = q^{m(n-d+1)} / mass * T^r P(1/(q^m T)) with r = deg P.
 * The dual has d' = n - d + 2 - r, mass q^{mn}/mass and dual distance d.
 */
inline ZetaPolynomial dual_zeta(const ZetaPolynomial& zp) {
    const long long q = zp.q, m = zp.m, n = zp.n, d = zp.d;
    if (d > n) throw InvalidParameter("the zero code has no zeta polynomial");
    if (zp.P.is_zero()) throw InvalidParameter("zeta polynomial is zero");
    const long long r = zp.degree();
    const long long d_new = n - d + 2 - r;
    if (d_new < 1) throw Inconsistency("dual distance would be " + std::to_string(d_new));
    const Rat scale = qpow(q, m * (n - d + 1)) / zp.mass;
    ZetaPolynomial out{q, m, n, d_new, qpow(q, m * n) / zp.mass, d, reciprocal_transform(zp.P, r, qpow(q, m), scale)};
    if (out.P(Rat(1)) != 1) throw Inconsistency("dual zeta polynomial fails P(1) = 1 (got " + out.P(Rat(1)).str() + ")");
    return out;
}

struct DistanceBound {
    Rat a;            // p_1 / p_0
    Rat argument;     // (a + q^m + 1)(q - 1) + 1
    double value = 0; // log_q(argument) - 1
    bool satisfied = false;  // exact test q^{d+1} <= argument
};

/// d <= log_q((a + q^m + 1)(q - 1) + 1) - 1 with a = p_1/p_0.
inline DistanceBound distance_bound(const ZetaPolynomial& zp) {
    if (zp.d >= zp.n) throw InvalidParameter("distance bound is unsupported for d >= n");
    const Rat p0 = zp.P.coeff(0);
    if (p0 <= 0) throw InvalidParameter("distance bound needs p_0 > 0");
    DistanceBound out;
    out.a = zp.P.coeff(1) / p0;
    out.argument = (out.a + qpow(zp.q, zp.m) + 1) * Rat(zp.q - 1) + 1;
    if (out.argument <= 0) throw NumericFailure("distance bound argument is not positive: " + out.argument.str());
    out.value = std::log(out.argument.convert_to<double>()) / std::log(static_cast<double>(zp.q)) - 1.0;
    // snap exact powers of q so that tight cases print as integers
    const Integer num = rat_numerator(out.argument);
    if (rat_denominator(out.argument) == 1) {
        const long long e = exact_log(num, zp.q);
        if (e >= 0) out.value = static_cast<double>(e - 1);
    }
    out.satisfied = Rat(ipow(zp.q, static_cast<unsigned long>(zp.d + 1))) <= out.argument;
    return out;
}

}  // namespace rankzeta

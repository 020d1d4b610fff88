#pragma once

/**
 * @file qops.hpp
 * @brief q-derivatives, the averaging operators P and S, normalized weight
 * enumerators, and the q-commuting operators alpha f = T f and eps f = f(qT).
 */

#include <string>
#include <tuple>
#include <vector>

#include "rankzeta/exact_arith.hpp"
#include "rankzeta/zeta.hpp"

namespace rankzeta {

enum class QDeriv { x, y, qx };

/**
 * D_x f  = sum f_i [n-i]_q x^{n-i-1} y^i
 * D_y f  = sum f_i [i]_q   x^{n-i} y^{i-1}
 * D_qx f = sum f_i q^i [n-i]_q x^{n-i-1} y^i
 */
inline BiHomPoly q_derivative(const BiHomPoly& f, QDeriv which, long long q) {
    require_q(q);
    const long long n = static_cast<long long>(f.degree());
    if (n == 0) return BiHomPoly::zero(0);
    BiHomPoly out = BiHomPoly::zero(static_cast<std::size_t>(n - 1));
    for (long long i = 0; i <= n; ++i) {
        const Rat& c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        switch (which) {
            case QDeriv::x:
                if (i < n) out[static_cast<std::size_t>(i)] += c * qint(n - i, q);
                break;
            case QDeriv::qx:
                if (i < n) out[static_cast<std::size_t>(i)] += c * qpow(q, i) * qint(n - i, q);
                break;
            case QDeriv::y:
                if (i > 0) out[static_cast<std::size_t>(i - 1)] += c * qint(i, q);
                break;
        }
    }
    return out;
}

/// [n]_q^{-1} (D_qx + D_y): the average enumerator of all punctured codes.
inline BiHomPoly avg_puncture(const BiHomPoly& W, long long q) {
    const long long n = static_cast<long long>(W.degree());
    if (n == 0) throw InvalidParameter("cannot puncture a length-0 code");
    return Rat(1) / Rat(qint(n, q)) * (q_derivative(W, QDeriv::qx, q) + q_derivative(W, QDeriv::y, q));
}

/// [n]_q^{-1} D_x: the average enumerator of all shortened codes.
inline BiHomPoly avg_shorten(const BiHomPoly& W, long long q) {
    const long long n = static_cast<long long>(W.degree());
    if (n == 0) throw InvalidParameter("cannot shorten a length-0 code");
    return Rat(1) / Rat(qint(n, q)) * q_derivative(W, QDeriv::x, q);
}

struct NormalizedWE {
    long long q = 2, m = 1, n = 1, d = 1;
    UniPoly poly;
    /// Number of meaningful coefficients, n - d + 1.
    std::size_t order() const { return static_cast<std::size_t>(std::max<long long>(n - d + 1, 1)); }
    friend bool operator==(const NormalizedWE& a, const NormalizedWE& b) {
        return a.q == b.q && a.m == b.m && a.n == b.n && a.d == b.d && a.poly == b.poly;
    }
};

/// (q^m-1)^{-1} sum_{i=d}^n W_i [n choose i]_q^{-1} T^{i-d}.
inline NormalizedWE normalized_we(const BiHomPoly& W, long long q, long long m) {
    require_q(q);
    const long long n = static_cast<long long>(W.degree());
    long long d = n + 1;
    for (long long t = 1; t <= n; ++t)
        if (W[static_cast<std::size_t>(t)] != 0) {
            d = t;
            break;
        }
    const Rat Qm1 = qpow(q, m) - 1;
    std::vector<Rat> c;
    for (long long i = d; i <= n; ++i) c.push_back(W[static_cast<std::size_t>(i)] / (Qm1 * qbin(n, i, q)));
    return {q, m, n, d, UniPoly(std::move(c))};
}

inline NormalizedWE normalized_we(const WeightDistribution& W) { return normalized_we(W.enumerator(), W.params().q, W.params().m); }

// ---------------------------------------------------------------------------

/// An s x s rational matrix acting on coefficient vectors of Q[T]/(T^s).
class OperatorPoly {
public:
    OperatorPoly(std::size_t s, long long q) : s_(s), q_(q), a_(s * s, Rat(0)) {
        if (s == 0) throw InvalidParameter("truncation order must be at least 1");
        require_q(q);
    }
    static OperatorPoly identity(std::size_t s, long long q) {
        OperatorPoly o(s, q);
        for (std::size_t i = 0; i < s; ++i) o(i, i) = 1;
        return o;
    }
    /// alpha: f -> T f (lower shift).
    static OperatorPoly alpha(std::size_t s, long long q) {
        OperatorPoly o(s, q);
        for (std::size_t i = 1; i < s; ++i) o(i, i - 1) = 1;
        return o;
    }
    /// eps: f -> f(qT), diag(1, q, ..., q^{s-1}).
    static OperatorPoly epsilon(std::size_t s, long long q) {
        OperatorPoly o(s, q);
        for (std::size_t i = 0; i < s; ++i) o(i, i) = qpow(q, static_cast<long long>(i));
        return o;
    }

    std::size_t order() const { return s_; }
    long long q() const { return q_; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * s_ + j]; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * s_ + j]; }

    friend OperatorPoly operator*(const OperatorPoly& A, const OperatorPoly& B) {
        check_same(A, B);
        OperatorPoly out(A.s_, A.q_);
        for (std::size_t i = 0; i < A.s_; ++i)
            for (std::size_t k = 0; k < A.s_; ++k) {
                if (A(i, k) == 0) continue;
                for (std::size_t j = 0; j < A.s_; ++j) out(i, j) += A(i, k) * B(k, j);
            }
        return out;
    }
    friend OperatorPoly operator+(const OperatorPoly& A, const OperatorPoly& B) {
        check_same(A, B);
        OperatorPoly out(A);
        for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += B.a_[i];
        return out;
    }
    friend OperatorPoly operator*(const Rat& c, const OperatorPoly& A) {
        OperatorPoly out(A);
        for (auto& v : out.a_) v *= c;
        return out;
    }
    friend bool operator==(const OperatorPoly& A, const OperatorPoly& B) { return A.s_ == B.s_ && A.a_ == B.a_; }

    SeriesTrunc apply(const SeriesTrunc& f) const {
        if (f.order() != s_) throw InvalidParameter("series order does not match the operator size");
        SeriesTrunc out(s_);
        for (std::size_t i = 0; i < s_; ++i)
            for (std::size_t j = 0; j < s_; ++j)
                if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * f[j];
        return out;
    }

    /// Gauss-Jordan inverse; throws if singular.
    OperatorPoly inverse() const {
        OperatorPoly A(*this), I = identity(s_, q_);
        for (std::size_t c = 0; c < s_; ++c) {
            std::size_t p = c;
            while (p < s_ && A(p, c) == 0) ++p;
            if (p == s_) throw DivisionByZero("operator matrix is singular");
            for (std::size_t j = 0; j < s_; ++j) {
                std::swap(A(p, j), A(c, j));
                std::swap(I(p, j), I(c, j));
            }
            const Rat inv = Rat(1) / A(c, c);
            for (std::size_t j = 0; j < s_; ++j) {
                A(c, j) *= inv;
                I(c, j) *= inv;
            }
            for (std::size_t i = 0; i < s_; ++i) {
                if (i == c || A(i, c) == 0) continue;
                const Rat f = A(i, c);
                for (std::size_t j = 0; j < s_; ++j) {
                    A(i, j) -= f * A(c, j);
                    I(i, j) -= f * I(c, j);
                }
            }
        }
        return I;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < s_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < s_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
            s += "]\n";
        }
        return s;
    }

private:
    static void check_same(const OperatorPoly& A, const OperatorPoly& B) {
        if (A.s_ != B.s_ || A.q_ != B.q_) throw InvalidParameter("operator sizes differ");
    }
    std::size_t s_;
    long long q_;
    std::vector<Rat> a_;
};

/// One term coef * alpha^a * eps^e.
struct OpTerm {
    Rat coef;
    unsigned a_pow = 0;
    unsigned e_pow = 0;
};

/// Matrix of sum coef * alpha^a eps^e; entry (i, i-a) is coef q^{e(i-a)}.
inline OperatorPoly alpha_epsilon(const std::vector<OpTerm>& word, std::size_t s, long long q) {
    OperatorPoly out(s, q);
    for (const auto& t : word)
        for (std::size_t i = t.a_pow; i < s; ++i) out(i, i - t.a_pow) += t.coef * qpow(q, static_cast<long long>(t.e_pow * (i - t.a_pow)));
    return out;
}

/// 1 + q^t eps alpha, written as 1 + q^{t+1} alpha eps.
inline OperatorPoly one_plus_eps_alpha(long long t, std::size_t s, long long q) {
    return alpha_epsilon({{Rat(1), 0, 0}, {qpow(q, t + 1), 1, 1}}, s, q);
}

namespace detail {

/// f(c T) for a polynomial f.
inline UniPoly dilate(const UniPoly& f, const Rat& c) { return f.scale_variable(c); }

inline UniPoly truncate_to(const UniPoly& f, long long order) {
    return order <= 0 ? UniPoly() : f.truncated(static_cast<std::size_t>(order));
}

}  // namespace detail

struct ChainResult {
    NormalizedWE operator_form;  // via the matrix product, mod T^{n-d+1}
    UniPoly sum_form;            // sum_j q^{j(d-r+j)} [r choose j] T^j W(q^j T), exact
};

/**
 * r-fold average puncture of a normalized enumerator:
 * prod_{j<r} (1 + q^{d-j} alpha eps) W(T) mod T^{n-d+1}. The q-binomial sum
 * form is also computed and both must agree modulo T^{n-d+1}.
 */
inline ChainResult puncture_chain_full(const NormalizedWE& nw, long long r) {
    if (r < 0 || r > nw.d) throw InvalidParameter("puncture chain needs 0 <= r <= d");
    const long long q = nw.q, d = nw.d;
    const std::size_t s = nw.order();
    OperatorPoly op = OperatorPoly::identity(s, q);
    for (long long j = 0; j < r; ++j) op = op * alpha_epsilon({{Rat(1), 0, 0}, {qpow(q, d - j), 1, 1}}, s, q);
    const SeriesTrunc applied = op.apply(SeriesTrunc::from_poly(nw.poly.truncated(s), s));
    UniPoly sum;
    for (long long j = 0; j <= r; ++j)
        sum = sum + (qpow(q, j * (d - r + j)) * qbin(r, j, q)) * detail::dilate(nw.poly, qpow(q, j)).shift(static_cast<std::size_t>(j));
    ChainResult out{{q, nw.m, nw.n - r, d - r, applied.to_poly()}, sum};
    if (!(detail::truncate_to(sum, static_cast<long long>(s)) == out.operator_form.poly))
        throw Inconsistency("operator and q-binomial forms of the puncture chain disagree");
    return out;
}

inline NormalizedWE puncture_chain(const NormalizedWE& nw, long long r) { return puncture_chain_full(nw, r).operator_form; }

/**
 * Inverse of the r-fold puncture chain, mod T^{n-d+1}, for a normalized
 * enumerator with parameters (n - r, d - r):
 * sum_j (-1)^j q^{j(d-r+1) + j(j-1)/2} [r+j-1 choose j] T^j W(q^j T).
 */
inline NormalizedWE puncture_inverse(const NormalizedWE& nw, long long r, long long d) {
    if (r < 0 || r > d) throw InvalidParameter("puncture inverse needs 0 <= r <= d");
    if (nw.d != d - r) throw InvalidParameter("normalized enumerator has d = " + std::to_string(nw.d) + ", expected d - r = " + std::to_string(d - r));
    const long long q = nw.q;
    const std::size_t s = nw.order();
    UniPoly sum;
    for (long long j = 0; j < static_cast<long long>(s); ++j) {
        const Rat coef = (r == 0 ? Rat(j == 0 ? 1 : 0) : qbin(r + j - 1, j, q)) * qpow(q, j * (d - r + 1) + binom2(j));
        if (coef == 0) continue;
        sum = sum + (j % 2 ? -coef : coef) * detail::dilate(nw.poly, qpow(q, j)).shift(static_cast<std::size_t>(j));
    }
    return {q, nw.m, nw.n + r, d, detail::truncate_to(sum, static_cast<long long>(s))};
}

/// Normalized enumerator of P(W) with its tail term:
/// q^d T W(qT) + W(T) - (q^m-1)^{-1} W_n q^n T^{n-d+1}.
inline NormalizedWE puncture_exact(const BiHomPoly& W, long long q, long long m) {
    const NormalizedWE nw = normalized_we(W, q, m);
    const long long n = nw.n, d = nw.d;
    if (d > n || d < 1) throw InvalidParameter("exact puncture form needs 1 <= d <= n");
    const Rat Qm1 = qpow(q, m) - 1;
    UniPoly p = nw.poly + qpow(q, d) * detail::dilate(nw.poly, Rat(q)).shift(1) -
                UniPoly::monomial(W[static_cast<std::size_t>(n)] * qpow(q, n) / Qm1, static_cast<std::size_t>(n - d + 1));
    return {q, m, n - 1, d - 1, p};
}

/// Normalized enumerator of S(W): W(T) - (q^m-1)^{-1} W_n T^{n-d}.
inline NormalizedWE shorten_exact(const BiHomPoly& W, long long q, long long m) {
    const NormalizedWE nw = normalized_we(W, q, m);
    const long long n = nw.n, d = nw.d;
    if (d > n || d < 1) throw InvalidParameter("exact shorten form needs 1 <= d <= n");
    const Rat Qm1 = qpow(q, m) - 1;
    UniPoly p = nw.poly - UniPoly::monomial(W[static_cast<std::size_t>(n)] / Qm1, static_cast<std::size_t>(n - d));
    return {q, m, n - 1, d, p};
}

/**
 * (q^m-1)^{-1} sum_{i=0}^{n-d} W_{d+i} [n choose d+i]_q^{-1} T^i / (T;q)_{i+1},
 * truncated at order n-d+1. Expanding, the coefficient of T^j is
 * sum_i c_i [j choose i]_q where c_i are the normalized coefficients.
 */
inline SeriesTrunc nwef_form(const BiHomPoly& W, long long q, long long m) {
    const NormalizedWE nw = normalized_we(W, q, m);
    const std::size_t s = nw.order();
    SeriesTrunc acc(s);
    if (nw.poly.is_zero()) return acc;
    for (long long i = 0; i <= nw.n - nw.d; ++i) {
        if (static_cast<std::size_t>(i) >= s) break;
        const SeriesTrunc term = SeriesTrunc::from_poly(UniPoly::monomial(nw.poly.coeff(i), static_cast<std::size_t>(i)), s) *
                                 pochhammer_inverse(q, i + 1, s);
        acc = acc + term;
    }
    return acc;
}

}  // namespace rankzeta

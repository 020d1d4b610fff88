#pragma once

/**
 * @file roots.hpp
 * @brief Complex roots of zeta polynomials in MPFR precision, critical-line
 * classification, reciprocal pairing, self-reciprocal rescaling and plots.
 */

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rankzeta/errors.hpp"
#include "rankzeta/exact_arith.hpp"

namespace rankzeta {

/// RAII wrapper over mpfr_t with an explicit precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Rat& x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, x.backend().data(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    std::string str(int digits = 17) const {
        std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
        return buf.data();
    }

#define RANKZETA_REAL_BINOP(op, fn)                                        \
    friend Real operator op(const Real& a, const Real& b) {                \
        Real r(std::max(a.prec(), b.prec()));                              \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                   \
        return r;                                                          \
    }
    RANKZETA_REAL_BINOP(+, mpfr_add)
    RANKZETA_REAL_BINOP(-, mpfr_sub)
    RANKZETA_REAL_BINOP(*, mpfr_mul)
    RANKZETA_REAL_BINOP(/, mpfr_div)
#undef RANKZETA_REAL_BINOP
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

    static Real hypot(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real sqrt(const Real& a) {
        Real r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    /// 2^e at the given precision.
    static Real exp2(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Real abs() const { return Real::hypot(re, im); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

// ---------------------------------------------------------------------------

struct RootEntry {
    Complex z;
    unsigned multiplicity = 1;
    double residual = 0;     // |P(z)| / sum |p_i| |z|^i
    double abs_scaled = 0;   // |z| q^{m/2}; set by classify_critical
    bool critical = false;
};

/// Entries a and b (possibly equal) are exchanged by z -> 1/(q^m z).
struct RootPair {
    std::size_t a = 0, b = 0;
    double error = 0;  // |z_b - 1/(q^m z_a)| / |1/(q^m z_a)|
};

struct RootReport {
    long long q = 0, m = 0;  // zero until classified
    mpfr_prec_t precision = 256;
    unsigned degree = 0;
    unsigned iterations = 0;
    std::vector<RootEntry> roots;
    std::vector<RootPair> pairing;
    bool pairing_total = false;

    unsigned total_multiplicity() const {
        unsigned s = 0;
        for (const auto& r : roots) s += r.multiplicity;
        return s;
    }
    unsigned real_root_count(double tol = 1e-20) const {
        unsigned s = 0;
        for (const auto& r : roots)
            if (std::abs(r.z.im.to_double()) <= tol * std::max(1.0, r.z.abs().to_double())) s += r.multiplicity;
        return s;
    }
};

struct RootOptions {
    unsigned max_iterations = 4000;
};

namespace detail {

inline Complex horner(const std::vector<Real>& c, const Complex& z, Complex* deriv) {
    const mpfr_prec_t prec = z.re.prec();
    Complex p(prec), dp(prec);
    for (std::size_t i = c.size(); i-- > 0;) {
        if (deriv) dp = dp * z + p;
        p = p * z + Complex(c[i], Real(prec));
    }
    if (deriv) *deriv = dp;
    return p;
}

/// |P(z)| / sum |p_i| |z|^i.
inline Real relative_residual(const std::vector<Real>& c, const Complex& z) {
    const mpfr_prec_t prec = z.re.prec();
    const Real az = z.abs();
    Real scale(prec);
    for (std::size_t i = c.size(); i-- > 0;) scale = scale * az + c[i].abs();
    const Real r = horner(c, z, nullptr).abs();
    if (scale.is_zero()) return r;
    return r / scale;
}

/// Initial radii from the upper convex hull of (i, log|p_i|).
inline std::vector<double> newton_polygon_radii(const std::vector<Real>& c) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        long e = 0;
        const double mant = mpfr_get_d_2exp(&e, c[i].get(), MPFR_RNDN);
        pts.emplace_back(static_cast<double>(i), std::log(std::abs(mant)) + static_cast<double>(e) * std::log(2.0));
    }
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            if ((b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first) >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<double> radii;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const auto count = static_cast<std::size_t>(hull[h + 1].first - hull[h].first);
        const double r = std::exp((hull[h].second - hull[h + 1].second) / static_cast<double>(count));
        for (std::size_t k = 0; k < count; ++k) radii.push_back(r);
    }
    return radii;
}

}  // namespace detail

/**
 * All complex roots of P by Aberth iteration at the given precision. Roots
 * agreeing to about a quarter of the working precision are merged, the
 * cluster size giving the multiplicity estimate.
 */
inline RootReport find_roots(const UniPoly& P, mpfr_prec_t precision_bits = 256, const RootOptions& opt = {}) {
    if (precision_bits < 53) throw InvalidParameter("precision must be at least 53 bits");
    if (P.is_zero()) throw InvalidParameter("the zero polynomial has no finite root set");
    RootReport rep;
    rep.precision = precision_bits;
    rep.degree = static_cast<unsigned>(P.degree());
    const auto& pc = P.coefficients();
    std::size_t zeros = 0;
    while (pc[zeros] == 0) ++zeros;
    if (zeros) {
        RootEntry e{Complex(precision_bits)};
        e.multiplicity = static_cast<unsigned>(zeros);
        rep.roots.push_back(std::move(e));
    }
    std::vector<Real> c;
    for (std::size_t i = zeros; i < pc.size(); ++i) c.emplace_back(pc[i], precision_bits);
    const std::size_t n = c.size() - 1;
    if (n == 0) return rep;

    std::vector<Complex> z;
    {
        const auto radii = detail::newton_polygon_radii(c);
        const double two_pi = 2.0 * std::acos(-1.0);
        std::size_t idx = 0;
        while (idx < n) {
            std::size_t j = idx;
            while (j < n && radii[j] == radii[idx]) ++j;
            const std::size_t cnt = j - idx;
            for (std::size_t k = 0; k < cnt; ++k) {
                const double ang = two_pi * static_cast<double>(k) / static_cast<double>(cnt) + 0.4 + 0.1 * static_cast<double>(idx);
                z.emplace_back(Real(radii[idx] * std::cos(ang), precision_bits), Real(radii[idx] * std::sin(ang), precision_bits));
            }
            idx = j;
        }
    }

    const Real eps = Real::exp2(-(static_cast<long>(precision_bits) - 8), precision_bits);
    const Real res_tol = Real(static_cast<double>(8 * (n + 1)), precision_bits) * eps;
    std::vector<bool> done(n, false);
    unsigned it = 0;
    for (; it < opt.max_iterations; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            Complex dp(precision_bits);
            const Complex p = detail::horner(c, z[k], &dp);
            if (p.is_zero()) {
                done[k] = true;
                continue;
            }
            Complex sum(precision_bits);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const Complex diff = z[k] - z[j];
                if (!diff.is_zero()) sum = sum + Complex(Real(1.0, precision_bits), Real(precision_bits)) / diff;
            }
            Complex w(precision_bits);
            if (dp.is_zero()) {
                w = Complex(Real(1e-3, precision_bits) * (z[k].abs() + Real(1e-300, precision_bits)), Real(precision_bits));
            } else {
                const Complex ratio = p / dp;
                const Complex den = Complex(Real(1.0, precision_bits), Real(precision_bits)) - ratio * sum;
                w = den.is_zero() ? ratio : ratio / den;
            }
            z[k] = z[k] - w;
            if (w.abs() <= eps * z[k].abs() || detail::relative_residual(c, z[k]) <= res_tol) done[k] = true;
            else all = false;
        }
        if (all) break;
    }
    rep.iterations = it;
    if (std::find(done.begin(), done.end(), false) != done.end())
        throw NumericFailure("root iteration did not converge after " + std::to_string(opt.max_iterations) +
                             " steps; retry with a higher --precision-bits");

    // cluster
    const Real ctol = Real::exp2(-static_cast<long>(precision_bits) / 4, precision_bits);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Real scale = std::max(z[i].abs(), z[j].abs(), [](const Real& a, const Real& b) { return a < b; });
            if ((z[i] - z[j]).abs() <= ctol * scale) parent[find(i)] = find(j);
        }
    const double limit = std::pow(10.0, -0.2 * static_cast<double>(precision_bits));
    for (std::size_t i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        Complex acc(precision_bits);
        unsigned cnt = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (find(j) == i) {
                acc = acc + z[j];
                ++cnt;
            }
        RootEntry e{Real(1.0 / cnt, precision_bits) * acc};
        // real coefficients: an imaginary part at rounding level is zero
        if (e.z.im.abs() <= ctol * e.z.abs()) e.z.im = Real(precision_bits);
        e.multiplicity = cnt;
        e.residual = detail::relative_residual(c, e.z).to_double();
        if (!(e.residual < limit))
            throw NumericFailure("root residual " + std::to_string(e.residual) + " above tolerance; retry with a higher --precision-bits");
        rep.roots.push_back(std::move(e));
    }
    std::sort(rep.roots.begin(), rep.roots.end(), [](const RootEntry& a, const RootEntry& b) {
        const double aa = a.z.abs().to_double(), ab = b.z.abs().to_double();
        if (aa != ab) return aa < ab;
        return a.z.im.to_double() < b.z.im.to_double();
    });
    return rep;
}

/**
 * Flags roots with | |z| q^{m/2} - 1 | <= tol and matches roots under
 * z -> 1/(q^m z) greedily, rejecting matches with relative error above pair_tol.
 */
inline RootReport classify_critical(RootReport rep, long long q, long long m, double tol = 1e-8, double pair_tol = 1e-6) {
    require_q(q);
    rep.q = q;
    rep.m = m;
    const mpfr_prec_t prec = rep.precision;
    const Real qm(qpow(q, m), prec);
    const Real half = Real::sqrt(qm);
    for (auto& r : rep.roots) {
        r.abs_scaled = (r.z.abs() * half).to_double();
        r.critical = std::abs(r.abs_scaled - 1.0) <= tol;
    }
    std::vector<std::size_t> copies;  // expanded by multiplicity
    for (std::size_t i = 0; i < rep.roots.size(); ++i)
        for (unsigned k = 0; k < rep.roots[i].multiplicity; ++k) copies.push_back(i);
    std::vector<bool> used(copies.size(), false);
    rep.pairing.clear();
    for (std::size_t a = 0; a < copies.size(); ++a) {
        if (used[a]) continue;
        const Complex& za = rep.roots[copies[a]].z;
        if (za.is_zero()) continue;
        const Complex target = Complex(Real(1.0, prec), Real(prec)) / (qm * za);
        const Real tabs = target.abs();
        auto err_of = [&](std::size_t b) { return ((rep.roots[copies[b]].z - target).abs() / tabs).to_double(); };
        std::size_t best = copies.size();
        double best_err = 0;
        for (std::size_t b = 0; b < copies.size(); ++b) {
            if (used[b] || b == a) continue;
            const double err = err_of(b);
            if (best == copies.size() || err < best_err) {
                best = b;
                best_err = err;
            }
        }
        if (best == copies.size() || best_err > pair_tol) {
            best = a;  // a root on the critical circle may be its own partner
            best_err = err_of(a);
        }
        if (best_err > pair_tol) continue;
        used[a] = used[best] = true;
        rep.pairing.push_back({copies[a], copies[best], best_err});
    }
    rep.pairing_total = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
    return rep;
}

/// p(T) = P(rho T) / P(0) with rho = q^{-m/2}; m must be even.
inline UniPoly rescale_selfreciprocal(const UniPoly& P, long long q, long long m) {
    require_q(q);
    if (P.coeff(0) == 0) throw InvalidParameter("rescaling needs P(0) != 0");
    if (m % 2 != 0) throw InvalidParameter("rescaling needs an even number of rows (rho = q^{-m/2})");
    return Rat(1) / P.coeff(0) * P.scale_variable(qpow(q, -m / 2));
}

inline bool is_self_reciprocal(const UniPoly& p) {
    const long long r = p.degree();
    for (long long i = 0; i <= r; ++i)
        if (p.coeff(i) != p.coeff(r - i)) return false;
    return true;
}

namespace detail {

inline UniPoly monic(const UniPoly& p) { return p.is_zero() ? p : Rat(1) / p.coefficients().back() * p; }

inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

inline int sign_at_infinity(const UniPoly& p, bool positive) {
    if (p.is_zero()) return 0;
    const int lead = p.coefficients().back() > 0 ? 1 : -1;
    return (positive || p.degree() % 2 == 0) ? lead : -lead;
}

}  // namespace detail

/// Number of distinct real roots, exactly, by a Sturm sequence.
inline unsigned sturm_real_root_count(const UniPoly& P) {
    if (P.degree() < 1) return 0;
    const UniPoly g = detail::poly_gcd(P, P.derivative());
    const UniPoly f = P.divmod(g).first;
    std::vector<UniPoly> seq{f, f.derivative()};
    while (seq.back().degree() > 0) {
        UniPoly r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto changes = [&](bool positive) {
        int last = 0, count = 0;
        for (const auto& s : seq) {
            const int v = detail::sign_at_infinity(s, positive);
            if (v == 0) continue;
            if (last != 0 && v != last) ++count;
            last = v;
        }
        return count;
    };
    return static_cast<unsigned>(changes(false) - changes(true));
}

// ---------------------------------------------------------------------------

/// CSV with one row per root counted with multiplicity.
inline std::string roots_csv(const RootReport& rep) {
    std::ostringstream os;
    os << "re,im,abs,abs_times_qm_half,critical\n";
    for (const auto& r : rep.roots) {
        const std::string row = r.z.re.str() + "," + r.z.im.str() + "," + r.z.abs().str() + "," +
                                (rep.q ? Real(r.abs_scaled, 64).str() : std::string()) + "," + (r.critical ? "true" : "false") + "\n";
        for (unsigned k = 0; k < r.multiplicity; ++k) os << row;
    }
    return os.str();
}

/// 600x600 scatter of z q^{m/2}, with the unit circle (|T| = q^{-m/2}) drawn.
inline std::string roots_svg(const RootReport& rep) {
    const double half = rep.q ? std::sqrt(std::pow(static_cast<double>(rep.q), static_cast<double>(rep.m))) : 1.0;
    double extent = 1.5;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.roots) {
        const double x = r.z.re.to_double() * half, y = r.z.im.to_double() * half;
        pts.emplace_back(x, y);
        extent = std::max(extent, 1.1 * std::max(std::abs(x), std::abs(y)));
    }
    const double size = 600, s = size / (2 * extent);
    auto X = [&](double x) { return size / 2 + x * s; };
    auto Y = [&](double y) { return size / 2 - y * s; };
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    os << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    os << "<line x1=\"0\" y1=\"300\" x2=\"600\" y2=\"300\" stroke=\"#bbb\"/>\n";
    os << "<line x1=\"300\" y1=\"0\" x2=\"300\" y2=\"600\" stroke=\"#bbb\"/>\n";
    os << "<circle cx=\"300\" cy=\"300\" r=\"" << s << "\" fill=\"none\" stroke=\"#48c\"/>\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << "<circle cx=\"" << X(pts[i].first) << "\" cy=\"" << Y(pts[i].second) << "\" r=\"4\" fill=\""
           << (rep.roots[i].critical ? "#c22" : "#222") << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace rankzeta

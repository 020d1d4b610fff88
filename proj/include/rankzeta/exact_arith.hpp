#pragma once

/**
 * @file exact_arith.hpp
 * @brief Exact integers, rationals, polynomials, truncated series and q-combinatorics.
 *
 * Integers and rationals are GMP-backed boost::multiprecision numbers with
 * expression templates disabled, so every value is an ordinary canonical
 * object. Rationals are reduced on construction and their equality is
 * structural.
 *
 * Three polynomial shapes cover everything the rest of the library needs:
 *  - UniPoly     : dense Q[T], trailing zeros trimmed.
 *  - SeriesTrunc : Q[T] / (T^s), fixed length s.
 *  - BiHomPoly   : homogeneous polynomial of degree n in x, y; coefficient i
 *                  multiplies x^(n-i) y^i.
 */

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rankzeta/errors.hpp"

namespace rankzeta {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline Rat make_rat(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    return Rat(num, den);
}

inline Integer rat_numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rat& r) { return rat_denominator(r) == 1; }

inline Integer ipow(const Integer& base, unsigned long exponent) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

inline Integer ipow(long long base, unsigned long exponent) { return ipow(Integer(base), exponent); }

/// base^exponent for any integer exponent (base must be nonzero when exponent < 0).
inline Rat rpow(const Rat& base, long long exponent) {
    if (exponent >= 0) {
        Rat out(1);
        Rat b = base;
        auto e = static_cast<unsigned long long>(exponent);
        while (e) {
            if (e & 1u) out *= b;
            b *= b;
            e >>= 1u;
        }
        return out;
    }
    if (base == 0) throw DivisionByZero("zero raised to a negative power");
    return Rat(1) / rpow(base, -exponent);
}

/// q^e as a rational; negative exponents give 1/q^|e|.
inline Rat qpow(long long q, long long exponent) { return rpow(Rat(q), exponent); }

inline std::string to_string(const Rat& r) { return r.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

/// Exact integer log: returns e with base^e == value, or -1 when value is not a power of base.
inline long long exact_log(const Integer& value, long long base) {
    if (value < 1 || base < 2) return -1;
    Integer v = value;
    long long e = 0;
    while (v > 1) {
        if (v % base != 0) return -1;
        v /= base;
        ++e;
    }
    return e;
}

/// q must be a prime power.
inline void require_q(long long q) {
    if (q < 2) throw InvalidParameter("q must be at least 2 (got " + std::to_string(q) + ")");
    long long p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) return;  // prime
    long long r = q;
    while (r % p == 0) r /= p;
    if (r != 1) throw InvalidParameter("q = " + std::to_string(q) + " is not a prime power");
}

inline Integer qbin_integer(long long n, long long r, long long q) {
    require_q(q);
    if (r < 0 || r > n) return Integer(0);
    if (r == 0 || r == n) return Integer(1);
    if (r > n - r) r = n - r;
    Integer num(1), den(1);
    for (long long i = 0; i < r; ++i) {
        num *= ipow(q, static_cast<unsigned long>(n - i)) - 1;
        den *= ipow(q, static_cast<unsigned long>(i + 1)) - 1;
    }
    return num / den;
}

/// Gaussian binomial [n choose r]_q: number of r-dimensional subspaces of F_q^n.
inline Rat qbin(long long n, long long r, long long q) { return Rat(qbin_integer(n, r, q)); }

/// 1 + q + ... + q^(n-1), i.e. [n choose 1]_q.
inline Integer qint(long long n, long long q) { return qbin_integer(n, 1, q); }

inline long long binom2(long long n) { return n * (n - 1) / 2; }

// ---------------------------------------------------------------------------

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coefficients) : c_(std::move(coefficients)) { trim(); }
    UniPoly(std::initializer_list<Rat> coefficients) : c_(coefficients) { trim(); }

    static UniPoly constant(const Rat& v) { return UniPoly(std::vector<Rat>{v}); }
    static UniPoly monomial(const Rat& v, std::size_t power) {
        std::vector<Rat> c(power + 1);
        c[power] = v;
        return UniPoly(std::move(c));
    }

    /// Degree; -1 for the zero polynomial.
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coefficients() const { return c_; }
    Rat coeff(long long i) const {
        if (i < 0 || i >= static_cast<long long>(c_.size())) return Rat(0);
        return c_[static_cast<std::size_t>(i)];
    }

    Rat operator()(const Rat& t) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    /// p(a T).
    UniPoly scale_variable(const Rat& a) const {
        std::vector<Rat> out(c_.size());
        Rat f(1);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            out[i] = c_[i] * f;
            f *= a;
        }
        return UniPoly(std::move(out));
    }

    UniPoly shift(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<Rat> out(k, Rat(0));
        out.insert(out.end(), c_.begin(), c_.end());
        return UniPoly(std::move(out));
    }

    UniPoly truncated(std::size_t s) const {
        std::vector<Rat> out(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(s, c_.size())));
        return UniPoly(std::move(out));
    }

    /// Coefficients padded (or cut) to exactly len entries.
    std::vector<Rat> padded(std::size_t len) const {
        std::vector<Rat> out(len, Rat(0));
        for (std::size_t i = 0; i < std::min(len, c_.size()); ++i) out[i] = c_[i];
        return out;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<long long>(i)) + b.coeff(static_cast<long long>(i));
        return UniPoly(std::move(out));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<Rat> out(a.c_);
        for (auto& v : out) v = -v;
        return UniPoly(std::move(out));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(out));
    }
    friend UniPoly operator*(const Rat& s, const UniPoly& a) {
        std::vector<Rat> out(a.c_);
        for (auto& v : out) v *= s;
        return UniPoly(std::move(out));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Polynomial long division; returns {quotient, remainder}.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const {
        if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
        std::vector<Rat> rem(c_);
        const auto dd = static_cast<std::size_t>(divisor.degree());
        if (rem.size() <= dd) return {UniPoly{}, *this};
        std::vector<Rat> quo(rem.size() - dd);
        const Rat& lead = divisor.c_.back();
        for (std::size_t k = rem.size(); k-- > dd;) {
            Rat f = rem[k] / lead;
            quo[k - dd] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= f * divisor.c_[j];
        }
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rat(static_cast<long long>(i));
        return UniPoly(std::move(out));
    }

    /**
     * Human-readable form. Integer polynomials print as "1 - 34T + 64T^2";
     * otherwise the common denominator is factored out: "(15 - 30T + 64T^2)/49".
     */
    std::string to_string(const std::string& var = "T") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

namespace detail {

inline std::string integer_poly_string(const std::vector<Integer>& c, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Integer mag = c[i] < 0 ? Integer(-c[i]) : c[i];
        if (first) {
            if (c[i] < 0) os << "-";
        } else {
            os << (c[i] < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag;
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace detail

inline std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    Integer den(1);
    for (const auto& v : c_) den = boost::multiprecision::lcm(den, rat_denominator(v));
    std::vector<Integer> num(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) num[i] = rat_numerator(c_[i] * Rat(den));
    std::string body = detail::integer_poly_string(num, var);
    if (den == 1) return body;
    const auto nonzero = std::count_if(num.begin(), num.end(), [](const Integer& v) { return v != 0; });
    if (nonzero == 1) return body + "/" + den.str();
    return "(" + body + ")/" + den.str();
}

// ---------------------------------------------------------------------------

/// An element of Q[T]/(T^s): exactly s coefficients.
class SeriesTrunc {
public:
    explicit SeriesTrunc(std::size_t order) : c_(order, Rat(0)) {
        if (order == 0) throw InvalidParameter("truncation order must be at least 1");
    }
    SeriesTrunc(std::vector<Rat> coefficients, std::size_t order) : c_(std::move(coefficients)) {
        if (order == 0) throw InvalidParameter("truncation order must be at least 1");
        c_.resize(order, Rat(0));
    }
    static SeriesTrunc from_poly(const UniPoly& p, std::size_t order) { return SeriesTrunc(p.padded(order), order); }
    static SeriesTrunc one(std::size_t order) {
        SeriesTrunc s(order);
        s.c_[0] = 1;
        return s;
    }

    std::size_t order() const { return c_.size(); }
    const std::vector<Rat>& coefficients() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_.at(i); }
    Rat& operator[](std::size_t i) { return c_.at(i); }
    UniPoly to_poly() const { return UniPoly(c_); }

    friend SeriesTrunc operator+(const SeriesTrunc& a, const SeriesTrunc& b) {
        check_same(a, b);
        SeriesTrunc out(a);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
        return out;
    }
    friend SeriesTrunc operator-(const SeriesTrunc& a, const SeriesTrunc& b) {
        check_same(a, b);
        SeriesTrunc out(a);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= b.c_[i];
        return out;
    }
    friend SeriesTrunc operator*(const SeriesTrunc& a, const SeriesTrunc& b) {
        check_same(a, b);
        const std::size_t s = a.c_.size();
        SeriesTrunc out(s);
        for (std::size_t i = 0; i < s; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < s; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }
    friend SeriesTrunc operator*(const Rat& k, const SeriesTrunc& a) {
        SeriesTrunc out(a);
        for (auto& v : out.c_) v *= k;
        return out;
    }
    friend bool operator==(const SeriesTrunc& a, const SeriesTrunc& b) { return a.c_ == b.c_; }

    /// Multiplicative inverse; requires a nonzero constant term.
    SeriesTrunc inverse() const {
        if (c_[0] == 0) throw DivisionByZero("series with zero constant term is not invertible");
        const std::size_t s = c_.size();
        SeriesTrunc out(s);
        out.c_[0] = Rat(1) / c_[0];
        for (std::size_t k = 1; k < s; ++k) {
            Rat acc(0);
            for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
            out.c_[k] = -acc / c_[0];
        }
        return out;
    }

private:
    static void check_same(const SeriesTrunc& a, const SeriesTrunc& b) {
        if (a.c_.size() != b.c_.size()) throw InvalidParameter("series truncation orders differ");
    }
    std::vector<Rat> c_;
};

// ---------------------------------------------------------------------------

/// Homogeneous bivariate polynomial sum_i c_i x^(n-i) y^i.
class BiHomPoly {
public:
    BiHomPoly() : c_(1, Rat(0)) {}
    explicit BiHomPoly(std::vector<Rat> coefficients) : c_(std::move(coefficients)) {
        if (c_.empty()) throw InvalidParameter("homogeneous polynomial needs at least one coefficient");
    }
    static BiHomPoly zero(std::size_t n) { return BiHomPoly(std::vector<Rat>(n + 1, Rat(0))); }
    /// x^n
    static BiHomPoly x_power(std::size_t n) {
        auto p = zero(n);
        p.c_[0] = 1;
        return p;
    }
    /// x^(n-i) y^i
    static BiHomPoly monomial(std::size_t n, std::size_t i, const Rat& v = Rat(1)) {
        auto p = zero(n);
        p.c_.at(i) = v;
        return p;
    }
    static BiHomPoly from_integers(std::span<const Integer> counts) {
        std::vector<Rat> c;
        c.reserve(counts.size());
        for (const auto& v : counts) c.emplace_back(v);
        return BiHomPoly(std::move(c));
    }

    std::size_t degree() const { return c_.size() - 1; }
    const std::vector<Rat>& coefficients() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_.at(i); }
    Rat& operator[](std::size_t i) { return c_.at(i); }
    /// Sum of coefficients, i.e. the value at x = y = 1.
    Rat mass() const {
        Rat s(0);
        for (const auto& v : c_) s += v;
        return s;
    }
    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
    }

    friend BiHomPoly operator+(const BiHomPoly& a, const BiHomPoly& b) {
        check_same(a, b);
        BiHomPoly out(a);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
        return out;
    }
    friend BiHomPoly operator-(const BiHomPoly& a, const BiHomPoly& b) {
        check_same(a, b);
        BiHomPoly out(a);
        for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] -= b.c_[i];
        return out;
    }
    friend BiHomPoly operator*(const Rat& k, const BiHomPoly& a) {
        BiHomPoly out(a);
        for (auto& v : out.c_) v *= k;
        return out;
    }
    friend BiHomPoly operator*(const BiHomPoly& a, const BiHomPoly& b) {
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return BiHomPoly(std::move(out));
    }
    friend bool operator==(const BiHomPoly& a, const BiHomPoly& b) { return a.c_ == b.c_; }

    /// "x^3 + 49xy^2 + 14y^3"; non-integral coefficients are parenthesised.
    std::string to_string() const {
        std::ostringstream os;
        const std::size_t n = degree();
        bool first = true;
        for (std::size_t i = 0; i <= n; ++i) {
            const Rat& v = c_[i];
            if (v == 0) continue;
            Rat mag = v < 0 ? Rat(-v) : v;
            os << (first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + "));
            first = false;
            const bool unit_monomial = (n == 0);
            if (mag != 1 || unit_monomial) {
                if (is_integral(mag)) os << mag;
                else os << "(" << mag << ")";
            }
            const std::size_t xp = n - i;
            if (xp >= 1) os << "x" << (xp >= 2 ? "^" + std::to_string(xp) : "");
            if (i >= 1) os << "y" << (i >= 2 ? "^" + std::to_string(i) : "");
        }
        if (first) os << "0";
        return os.str();
    }

private:
    static void check_same(const BiHomPoly& a, const BiHomPoly& b) {
        if (a.c_.size() != b.c_.size()) throw InvalidParameter("homogeneous degrees differ");
    }
    std::vector<Rat> c_;
};

// ---------------------------------------------------------------------------

/// (a T; q)_length = prod_{j<length} (1 - a q^j T), truncated to order s.
inline SeriesTrunc pochhammer(long long q, long long length, std::size_t s, const Rat& a = Rat(1)) {
    require_q(q);
    if (length < 0) throw InvalidParameter("pochhammer length must be nonnegative");
    SeriesTrunc acc = SeriesTrunc::one(s);
    for (long long j = 0; j < length; ++j) {
        SeriesTrunc factor = SeriesTrunc::one(s);
        if (s > 1) factor[1] = -a * qpow(q, j);
        acc = acc * factor;
    }
    return acc;
}

/// (T; q)_length^{-1} = sum_j [length+j-1 choose j] T^j, truncated to order s.
inline SeriesTrunc pochhammer_inverse(long long q, long long length, std::size_t s) {
    require_q(q);
    if (length < 0) throw InvalidParameter("pochhammer length must be nonnegative");
    SeriesTrunc out(s);
    if (length == 0) {
        out[0] = 1;
        return out;
    }
    for (std::size_t j = 0; j < s; ++j) out[j] = qbin(length + static_cast<long long>(j) - 1, static_cast<long long>(j), q);
    return out;
}

/// scale * T^r * p(1/(c T)); a polynomial because r >= deg p.
inline UniPoly reciprocal_transform(const UniPoly& p, long long r, const Rat& c, const Rat& scale) {
    if (c == 0) throw InvalidParameter("reciprocal transform needs c != 0");
    if (r < p.degree()) throw InvalidParameter("reciprocal transform needs r >= deg p");
    if (p.is_zero()) return {};
    std::vector<Rat> out(static_cast<std::size_t>(r) + 1, Rat(0));
    for (long long i = 0; i <= p.degree(); ++i) out[static_cast<std::size_t>(r - i)] = scale * p.coeff(i) * rpow(c, -i);
    return UniPoly(std::move(out));
}

}  // namespace rankzeta

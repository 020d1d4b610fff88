#pragma once

/**
 * @file gfq.hpp
 * @brief Finite fields GF(p^e), matrices over them, and field extensions.
 *
 * Elements are encoded by their base-p index: the element sum a_i x^i (a_i in
 * GF(p), x the class of the indeterminate modulo the defining polynomial) has
 * index sum a_i p^i. Fields of order at most 256 use lookup tables; larger
 * fields fall back to polynomial arithmetic on the digit vectors.
 */

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rankzeta/errors.hpp"

namespace rankzeta {

struct FieldElem {
    std::uint32_t index = 0;
    friend bool operator==(FieldElem, FieldElem) = default;
    friend auto operator<=>(FieldElem, FieldElem) = default;
};

class FieldSpec;

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

/// Immutable description of GF(p^e); cheap to copy (shared tables).
class FieldSpec {
public:
    FieldSpec() : FieldSpec(prime(2)) {}

    static FieldSpec prime(std::uint32_t p) {
        if (!detail::is_prime(p)) throw InvalidParameter("field characteristic " + std::to_string(p) + " is not prime");
        if (p > (1u << 31)) throw InvalidParameter("characteristic above 2^31 is not supported");
        auto impl = std::make_shared<Impl>();
        impl->p = p;
        impl->e = 1;
        impl->q = p;
        impl->modulus = {0, 1};  // x
        build(*impl);
        return FieldSpec(std::move(impl));
    }

    /**
     * GF(p^e) with the given monic modulus (coefficients low to high, length e+1).
     * Without a modulus the lexicographically first monic irreducible is used,
     * which yields x^2+x+1 for GF(4), x^2+1 for GF(9) and x^3+x+1 for GF(8).
     */
    static FieldSpec make(std::uint32_t p, unsigned e, std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Field of order q (must be a prime power) with the default modulus.
    static FieldSpec of_order(std::uint64_t q) {
        auto [p, e] = split_prime_power(q);
        return make(static_cast<std::uint32_t>(p), e);
    }

    /// Splits q = p^e; throws if q is not a prime power.
    static std::pair<std::uint64_t, unsigned> split_prime_power(std::uint64_t q) {
        if (q < 2) throw InvalidParameter("field order must be at least 2");
        auto f = detail::prime_factors(q);
        if (f.size() != 1) throw InvalidParameter("field order " + std::to_string(q) + " is not a prime power");
        unsigned e = 0;
        for (std::uint64_t v = q; v > 1; v /= f[0]) ++e;
        return {f[0], e};
    }

    std::uint32_t characteristic() const { return impl_->p; }
    unsigned degree() const { return impl_->e; }
    std::uint32_t order() const { return impl_->q; }
    /// Defining polynomial, low to high, monic; {0,1} for a prime field.
    const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }
    bool is_prime_field() const { return impl_->e == 1; }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }
    /// The class of x (the power-basis generator); equals one() in a prime field.
    FieldElem generator() const { return impl_->e == 1 ? one() : FieldElem{impl_->p}; }
    bool valid(FieldElem a) const { return a.index < impl_->q; }

    FieldElem add(FieldElem a, FieldElem b) const {
        if (impl_->tabled) return {impl_->add_t[a.index * impl_->q + b.index]};
        auto da = digits(a);
        const auto db = digits(b);
        for (std::size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % impl_->p;
        return from_digits(da);
    }
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
    FieldElem neg(FieldElem a) const {
        if (impl_->tabled) return {impl_->neg_t[a.index]};
        auto d = digits(a);
        for (auto& v : d) v = v ? impl_->p - v : 0;
        return from_digits(d);
    }
    FieldElem mul(FieldElem a, FieldElem b) const {
        if (impl_->tabled) return {impl_->mul_t[a.index * impl_->q + b.index]};
        return from_digits(mul_digits(digits(a), digits(b), *impl_));
    }
    FieldElem inv(FieldElem a) const {
        if (a.index == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(order()) + ")");
        if (impl_->tabled) return {impl_->inv_t[a.index]};
        return pow(a, static_cast<std::uint64_t>(impl_->q) - 2);
    }
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
    FieldElem pow(FieldElem a, std::uint64_t e) const {
        FieldElem out = one();
        while (e) {
            if (e & 1u) out = mul(out, a);
            a = mul(a, a);
            e >>= 1u;
        }
        return out;
    }

    /// Base-p digits of an element (length e).
    std::vector<std::uint32_t> digits(FieldElem a) const {
        std::vector<std::uint32_t> d(impl_->e);
        std::uint32_t v = a.index;
        for (auto& x : d) {
            x = v % impl_->p;
            v /= impl_->p;
        }
        return d;
    }
    FieldElem from_digits(const std::vector<std::uint32_t>& d) const {
        std::uint64_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * impl_->p + d[i];
        return {static_cast<std::uint32_t>(v)};
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.impl_ == b.impl_ || (a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus);
    }

    std::string describe() const {
        std::string s = "GF(" + std::to_string(order()) + ")";
        if (degree() > 1) {
            s += " mod [";
            for (std::size_t i = 0; i < modulus().size(); ++i) s += (i ? "," : "") + std::to_string(modulus()[i]);
            s += "]";
        }
        return s;
    }

private:
    struct Impl {
        std::uint32_t p = 2, e = 1, q = 2;
        std::vector<std::uint32_t> modulus;
        bool tabled = false;
        std::vector<std::uint32_t> add_t, mul_t, inv_t, neg_t;
    };
    explicit FieldSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    static std::vector<std::uint32_t> mul_digits(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                                 const Impl& f) {
        const std::uint64_t p = f.p;
        const std::size_t e = f.e;
        std::vector<std::uint64_t> prod(2 * e, 0);
        for (std::size_t i = 0; i < e; ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
        }
        for (std::size_t k = 2 * e - 1; k >= e; --k) {
            const std::uint64_t c = prod[k];
            if (c) {
                prod[k] = 0;
                for (std::size_t j = 0; j < e; ++j) prod[k - e + j] = (prod[k - e + j] + (p - c) * f.modulus[j]) % p;
            }
            if (k == e) break;
        }
        std::vector<std::uint32_t> out(e);
        for (std::size_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
        return out;
    }

    static void build(Impl& f) {
        if (f.q > 256) return;
        f.tabled = true;
        const std::uint32_t q = f.q;
        auto dig = [&](std::uint32_t v) {
            std::vector<std::uint32_t> d(f.e);
            for (auto& x : d) {
                x = v % f.p;
                v /= f.p;
            }
            return d;
        };
        auto undig = [&](const std::vector<std::uint32_t>& d) {
            std::uint32_t v = 0;
            for (std::size_t i = d.size(); i-- > 0;) v = v * f.p + d[i];
            return v;
        };
        f.add_t.resize(std::size_t(q) * q);
        f.mul_t.resize(std::size_t(q) * q);
        f.neg_t.resize(q);
        f.inv_t.assign(q, 0);
        for (std::uint32_t a = 0; a < q; ++a) {
            auto da = dig(a);
            for (std::uint32_t b = 0; b < q; ++b) {
                auto db = dig(b);
                std::vector<std::uint32_t> s(f.e);
                for (std::size_t i = 0; i < f.e; ++i) s[i] = (da[i] + db[i]) % f.p;
                f.add_t[a * q + b] = undig(s);
                f.mul_t[a * q + b] = undig(mul_digits(da, db, f));
            }
        }
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                if (f.add_t[a * q + b] == 0) f.neg_t[a] = b;
                if (f.mul_t[a * q + b] == 1) f.inv_t[a] = b;
            }
    }

    std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Polynomials over a FieldSpec (coefficient vectors, low to high).

namespace fpoly {

using Poly = std::vector<FieldElem>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back().index == 0) a.pop_back();
}

inline Poly sub(const FieldSpec& F, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), F.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

inline Poly mod(const FieldSpec& F, Poly a, const Poly& m) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const FieldElem lead_inv = F.inv(m.back());
    while (a.size() > dm) {
        const FieldElem f = F.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(f, m[j]));
        trim(a);
    }
    return a;
}

inline Poly mul(const FieldSpec& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].index == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

inline Poly mulmod(const FieldSpec& F, const Poly& a, const Poly& b, const Poly& m) { return mod(F, mul(F, a, b), m); }

inline Poly powmod(const FieldSpec& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly out{F.one()};
    base = mod(F, base, m);
    while (e) {
        if (e & 1u) out = mulmod(F, out, base, m);
        base = mulmod(F, base, base, m);
        e >>= 1u;
    }
    return mod(F, out, m);
}

inline Poly gcd(const FieldSpec& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1 over F.
inline bool is_irreducible(const FieldSpec& F, Poly f) {
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    const std::uint64_t Q = F.order();
    const Poly x{F.zero(), F.one()};
    // x^(Q^i) mod f for i = 0..n
    std::vector<Poly> frob{mod(F, x, f)};
    for (std::size_t i = 1; i <= n; ++i) frob.push_back(powmod(F, frob.back(), Q, f));
    if (!sub(F, frob[n], mod(F, x, f)).empty()) return false;
    for (auto l : detail::prime_factors(n)) {
        Poly g = gcd(F, f, sub(F, frob[n / l], x));
        if (g.size() != 1) return false;
    }
    return true;
}

/// Lexicographically first monic irreducible polynomial of the given degree over F.
inline Poly first_irreducible(const FieldSpec& F, unsigned degree) {
    if (degree == 0) throw InvalidParameter("irreducible polynomial degree must be positive");
    const std::uint64_t Q = F.order();
    Poly f(degree + 1, F.zero());
    f[degree] = F.one();
    for (std::uint64_t code = 0;; ++code) {
        std::uint64_t v = code;
        for (unsigned i = 0; i < degree; ++i) {
            f[i] = FieldElem{static_cast<std::uint32_t>(v % Q)};
            v /= Q;
        }
        if (v) break;
        if (is_irreducible(F, f)) return f;
    }
    throw InvalidParameter("no irreducible polynomial found");  // unreachable for a field
}

}  // namespace fpoly

inline FieldSpec FieldSpec::make(std::uint32_t p, unsigned e, std::optional<std::vector<std::uint32_t>> modulus) {
    if (e == 0) throw InvalidParameter("extension degree must be at least 1");
    FieldSpec base = prime(p);
    if (e == 1 && !modulus) return base;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > (1ull << 31)) throw InvalidParameter("field order above 2^31 is not supported");
    }
    fpoly::Poly m;
    if (modulus) {
        if (modulus->size() != e + 1) throw InvalidParameter("modulus must have degree " + std::to_string(e));
        if ((*modulus)[e] != 1) throw InvalidParameter("modulus must be monic");
        for (auto c : *modulus) {
            if (c >= p) throw InvalidParameter("modulus coefficient " + std::to_string(c) + " out of range");
            m.push_back({c});
        }
        if (!fpoly::is_irreducible(base, m)) throw InvalidParameter("modulus is not irreducible over GF(" + std::to_string(p) + ")");
    } else {
        m = fpoly::first_irreducible(base, e);
    }
    if (e == 1) return base;
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->e = e;
    impl->q = static_cast<std::uint32_t>(q);
    for (auto c : m) impl->modulus.push_back(c.index);
    build(*impl);
    return FieldSpec(std::move(impl));
}

// ---------------------------------------------------------------------------

/**
 * GF(Q^m) built as a degree-m extension of an arbitrary FieldSpec GF(Q).
 * Elements are indexed by sum c_i Q^i with c_i the coordinates over the power
 * basis {1, g, ..., g^(m-1)} of the class g of the indeterminate.
 */
class ExtensionField {
public:
    ExtensionField(FieldSpec base, unsigned degree) : base_(std::move(base)), m_(degree) {
        std::uint64_t size = 1;
        for (unsigned i = 0; i < degree; ++i) {
            size *= base_.order();
            if (size > (1ull << 31)) throw InvalidParameter("extension field too large");
        }
        size_ = size;
        modulus_ = fpoly::first_irreducible(base_, degree);
    }

    const FieldSpec& base() const { return base_; }
    unsigned degree() const { return m_; }
    std::uint64_t order() const { return size_; }
    const fpoly::Poly& modulus() const { return modulus_; }

    std::vector<FieldElem> coords(std::uint64_t a) const {
        std::vector<FieldElem> c(m_);
        for (auto& x : c) {
            x = FieldElem{static_cast<std::uint32_t>(a % base_.order())};
            a /= base_.order();
        }
        return c;
    }
    std::uint64_t from_coords(const std::vector<FieldElem>& c) const {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * base_.order() + c[i].index;
        return v;
    }
    std::uint64_t generator() const { return m_ == 1 ? 1 : base_.order(); }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        auto ca = coords(a), cb = coords(b);
        for (unsigned i = 0; i < m_; ++i) ca[i] = base_.add(ca[i], cb[i]);
        return from_coords(ca);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        auto r = fpoly::mulmod(base_, trimmed(coords(a)), trimmed(coords(b)), modulus_);
        r.resize(m_, base_.zero());
        return from_coords(r);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t out = 1;
        while (e) {
            if (e & 1u) out = mul(out, a);
            a = mul(a, a);
            e >>= 1u;
        }
        return out;
    }
    /// a^(Q^i), the i-th power of the Frobenius over the base field.
    std::uint64_t frobenius(std::uint64_t a, unsigned i) const {
        for (unsigned k = 0; k < i; ++k) a = pow(a, base_.order());
        return a;
    }

private:
    static fpoly::Poly trimmed(fpoly::Poly p) {
        fpoly::trim(p);
        return p;
    }
    FieldSpec base_;
    unsigned m_;
    std::uint64_t size_ = 0;
    fpoly::Poly modulus_;
};

// ---------------------------------------------------------------------------

/// Dense row-major matrix over a FieldSpec.
class MatGF {
public:
    MatGF() = default;
    MatGF(FieldSpec spec, std::size_t rows, std::size_t cols)
        : spec_(std::move(spec)), rows_(rows), cols_(cols), e_(rows * cols, FieldElem{0}) {}
    MatGF(FieldSpec spec, std::size_t rows, std::size_t cols, std::vector<FieldElem> entries)
        : spec_(std::move(spec)), rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows * cols) throw InvalidParameter("matrix entry count does not match its shape");
        for (auto v : e_)
            if (!spec_.valid(v)) throw InvalidParameter("matrix entry " + std::to_string(v.index) + " outside the field");
    }
    /// Convenience for literals: rows of element indices.
    MatGF(FieldSpec spec, std::initializer_list<std::initializer_list<std::uint32_t>> rows) : spec_(std::move(spec)) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw InvalidParameter("ragged matrix literal");
            for (auto v : r) {
                if (!spec_.valid(FieldElem{v})) throw InvalidParameter("matrix entry outside the field");
                e_.push_back(FieldElem{v});
            }
        }
    }

    static MatGF identity(const FieldSpec& spec, std::size_t n) {
        MatGF out(spec, n, n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = spec.one();
        return out;
    }

    const FieldSpec& spec() const { return spec_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<FieldElem>& entries() const { return e_; }
    FieldElem operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    FieldElem& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    bool is_zero() const {
        for (auto v : e_)
            if (v.index) return false;
        return true;
    }

    MatGF transpose() const {
        MatGF out(spec_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    friend MatGF operator*(const MatGF& a, const MatGF& b) {
        if (a.cols_ != b.rows_) throw InvalidParameter("matrix product shape mismatch");
        const FieldSpec& F = a.spec_;
        MatGF out(F, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const FieldElem x = a(i, k);
                if (!x.index) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = F.add(out(i, j), F.mul(x, b(k, j)));
            }
        return out;
    }
    friend MatGF operator+(const MatGF& a, const MatGF& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidParameter("matrix sum shape mismatch");
        MatGF out(a);
        for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] = a.spec_.add(a.e_[i], b.e_[i]);
        return out;
    }
    /// s * A
    MatGF scaled(FieldElem s) const {
        MatGF out(*this);
        for (auto& v : out.e_) v = spec_.mul(s, v);
        return out;
    }
    friend bool operator==(const MatGF& a, const MatGF& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_ && a.spec_ == b.spec_;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j).index);
            s += "\n";
        }
        return s;
    }

private:
    FieldSpec spec_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElem> e_;
};

/**
 * Matrix of multiplication by a on GF(p^c) viewed as a c-dimensional space over
 * its prime field, in the power basis {1, x, ..., x^(c-1)}. Column j holds the
 * coordinates of a * x^j, so the map is a ring homomorphism.
 */
inline MatGF regular_representation(const FieldSpec& ext, unsigned sub_degree, FieldElem a) {
    if (sub_degree == 0 || ext.degree() % sub_degree != 0)
        throw InvalidParameter("extension degree " + std::to_string(ext.degree()) + " is not divisible by " + std::to_string(sub_degree));
    if (sub_degree != ext.degree())
        throw InvalidParameter("regular representation is only supported down to the prime field (sub_degree must equal " +
                               std::to_string(ext.degree()) + ")");
    if (!ext.valid(a)) throw InvalidParameter("element outside the field");
    const FieldSpec prime = FieldSpec::prime(ext.characteristic());
    MatGF out(prime, sub_degree, sub_degree);
    FieldElem basis = ext.one();
    for (unsigned j = 0; j < sub_degree; ++j) {
        const auto d = ext.digits(ext.mul(a, basis));
        for (unsigned i = 0; i < sub_degree; ++i) out(i, j) = FieldElem{d[i]};
        basis = ext.mul(basis, ext.generator());
    }
    return out;
}

}  // namespace rankzeta

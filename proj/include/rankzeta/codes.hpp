#pragma once

/**
 * @file codes.hpp
 * @brief GF(q)-linear rank-metric codes: construction, enumeration, duals,
 * shortened subcodes and the puncture/shorten projections.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "rankzeta/errors.hpp"
#include "rankzeta/exact_arith.hpp"
#include "rankzeta/ffla.hpp"
#include "rankzeta/gfq.hpp"

namespace rankzeta {

/// d = n + 1 encodes the zero code; d_dual is empty when unknown.
struct CodeParams {
    long long q = 2, m = 1, n = 1, k = 0, d = 2;
    std::optional<long long> d_dual;
    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Default ceiling on q^k for codeword enumeration.
inline constexpr std::uint64_t default_enum_cap = std::uint64_t{1} << 24;

namespace detail {

inline void check_shape(long long m, long long n, bool allow_wide) {
    if (m < 1 || n < 0) throw InvalidParameter("matrix shape must have m >= 1 and n >= 0");
    if (n > m && !allow_wide)
        throw InvalidParameter("n = " + std::to_string(n) + " exceeds m = " + std::to_string(m) + " (transpose the code or allow wide shapes)");
}

/// Rank of an m x n matrix stored row-major in a scratch buffer (destroyed).
inline std::size_t rank_in_place(const FieldSpec& F, std::vector<FieldElem>& a, std::size_t m, std::size_t n) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a[sel * n + col].index == 0) ++sel;
        if (sel == m) continue;
        if (sel != row)
            for (std::size_t j = col; j < n; ++j) std::swap(a[sel * n + j], a[row * n + j]);
        const FieldElem inv = F.inv(a[row * n + col]);
        for (std::size_t i = row + 1; i < m; ++i) {
            const FieldElem f = F.mul(a[i * n + col], inv);
            if (!f.index) continue;
            for (std::size_t j = col; j < n; ++j) a[i * n + j] = F.sub(a[i * n + j], F.mul(f, a[row * n + j]));
        }
        ++row;
    }
    return row;
}

/// Rank of a binary matrix given as row bitmasks.
inline std::size_t rank_gf2(std::vector<std::uint64_t> rows) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint64_t v = rows[i];
        if (!v) continue;
        ++r;
        const std::uint64_t low = v & (~v + 1);
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[j] & low) rows[j] ^= v;
    }
    return r;
}

}  // namespace detail

class RankCode {
public:
    /// Validates shape, field and linear independence of the generators.
    RankCode(FieldSpec spec, std::size_t m, std::size_t n, std::vector<MatGF> generators, bool allow_wide = false)
        : spec_(std::move(spec)), m_(m), n_(n), gens_(std::move(generators)) {
        detail::check_shape(static_cast<long long>(m), static_cast<long long>(n), allow_wide);
        for (const auto& g : gens_) {
            if (g.rows() != m || g.cols() != n) throw InvalidParameter("generator shape does not match " + std::to_string(m) + "x" + std::to_string(n));
            if (!(g.spec() == spec_)) throw InvalidParameter("generator defined over a different field");
        }
        if (gens_.size() > m * n) throw InvalidParameter("more generators than the ambient dimension");
        if (rank(flattened()) != gens_.size()) throw InvalidParameter("generators are linearly dependent");
    }

    /// Code spanned by arbitrary (possibly dependent) matrices; keeps an RREF basis.
    static RankCode span_of(const FieldSpec& spec, std::size_t m, std::size_t n, const std::vector<MatGF>& mats, bool allow_wide = false) {
        std::vector<FieldElem> e;
        for (const auto& x : mats) e.insert(e.end(), x.entries().begin(), x.entries().end());
        const MatGF basis = rref(MatGF(spec, mats.size(), m * n, std::move(e))).reduced;
        return from_flat(spec, m, n, basis, allow_wide);
    }
    /// Rows of `flat` (length m*n each) reshaped into generators.
    static RankCode from_flat(const FieldSpec& spec, std::size_t m, std::size_t n, const MatGF& flat, bool allow_wide = false) {
        std::vector<MatGF> gens;
        for (std::size_t i = 0; i < flat.rows(); ++i)
            gens.emplace_back(spec, m, n,
                              std::vector<FieldElem>(flat.entries().begin() + static_cast<std::ptrdiff_t>(i * m * n),
                                                     flat.entries().begin() + static_cast<std::ptrdiff_t>((i + 1) * m * n)));
        return RankCode(spec, m, n, std::move(gens), allow_wide);
    }
    static RankCode zero(const FieldSpec& spec, std::size_t m, std::size_t n, bool allow_wide = false) {
        return RankCode(spec, m, n, {}, allow_wide);
    }
    static RankCode full(const FieldSpec& spec, std::size_t m, std::size_t n, bool allow_wide = false) {
        return from_flat(spec, m, n, MatGF::identity(spec, m * n), allow_wide);
    }

    const FieldSpec& spec() const { return spec_; }
    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return gens_.size(); }
    long long q() const { return spec_.order(); }
    const std::vector<MatGF>& generators() const { return gens_; }

    /// k x (m n) matrix whose rows are the flattened generators.
    MatGF flattened() const {
        std::vector<FieldElem> e;
        e.reserve(gens_.size() * m_ * n_);
        for (const auto& g : gens_) e.insert(e.end(), g.entries().begin(), g.entries().end());
        return MatGF(spec_, gens_.size(), m_ * n_, std::move(e));
    }
    /// RREF of the flattened generators; equal codes give identical matrices.
    MatGF canonical_basis() const { return rref(flattened()).reduced; }
    friend bool operator==(const RankCode& a, const RankCode& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.spec_ == b.spec_ && a.canonical_basis() == b.canonical_basis();
    }

    bool contains(const MatGF& X) const {
        if (X.rows() != m_ || X.cols() != n_) return false;
        std::vector<FieldElem> e = flattened().entries();
        e.insert(e.end(), X.entries().begin(), X.entries().end());
        return rank(MatGF(spec_, k() + 1, m_ * n_, std::move(e))) == k();
    }

private:
    FieldSpec spec_;
    std::size_t m_, n_;
    std::vector<MatGF> gens_;
};

class WeightDistribution {
public:
    /// Validates W_0 = 1 and that the total is a power of q; derives k and d.
    static WeightDistribution make(long long q, long long m, long long n, std::vector<Integer> counts, bool allow_wide = false) {
        require_q(q);
        detail::check_shape(m, n, allow_wide);
        if (counts.size() != static_cast<std::size_t>(n + 1))
            throw InvalidParameter("weight distribution needs n+1 = " + std::to_string(n + 1) + " entries, got " + std::to_string(counts.size()));
        if (counts[0] != 1) throw InvalidParameter("W_0 must be 1");
        Integer total = 0;
        for (const auto& c : counts) {
            if (c < 0) throw InvalidParameter("weight counts must be nonnegative");
            total += c;
        }
        const long long k = exact_log(total, q);
        if (k < 0) throw InvalidParameter("total count " + total.str() + " is not a power of q = " + std::to_string(q));
        if (k > m * n) throw InvalidParameter("code dimension exceeds m*n");
        WeightDistribution w;
        w.params_ = CodeParams{q, m, n, k, n + 1, std::nullopt};
        for (long long t = 1; t <= n; ++t)
            if (counts[static_cast<std::size_t>(t)] != 0) {
                w.params_.d = t;
                break;
            }
        w.counts_ = std::move(counts);
        return w;
    }

    const CodeParams& params() const { return params_; }
    CodeParams& params() { return params_; }
    const std::vector<Integer>& counts() const { return counts_; }
    const Integer& operator[](std::size_t t) const { return counts_.at(t); }
    Integer mass() const { return ipow(params_.q, static_cast<unsigned long>(params_.k)); }
    BiHomPoly enumerator() const { return BiHomPoly::from_integers(counts_); }

    friend bool operator==(const WeightDistribution& a, const WeightDistribution& b) {
        return a.counts_ == b.counts_ && a.params_.q == b.params_.q && a.params_.m == b.params_.m;
    }

private:
    CodeParams params_;
    std::vector<Integer> counts_;
};

/// Rank of a codeword given as a flat row-major m x n entry vector.
inline std::size_t codeword_rank(const FieldSpec& F, const std::vector<FieldElem>& entries, std::size_t m, std::size_t n) {
    if (F.order() == 2 && n <= 64) {
        std::vector<std::uint64_t> rows(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (entries[i * n + j].index) rows[i] |= std::uint64_t{1} << j;
        return detail::rank_gf2(std::move(rows));
    }
    std::vector<FieldElem> scratch = entries;
    return detail::rank_in_place(F, scratch, m, n);
}

inline void check_enum_cap(const RankCode& C, std::uint64_t cap) {
    const Integer count = ipow(C.q(), static_cast<unsigned long>(C.k()));
    if (count > cap)
        throw ResourceLimit("enumerating " + count.str() + " codewords exceeds the cap of " + std::to_string(cap) +
                            " (raise --max-enum or supply a weight distribution)");
}

/**
 * Calls visit(entries) for every codeword, as a flat row-major entry vector.
 * Coefficient vectors run in odometer order; each step adds a single multiple
 * of one generator.
 */
inline void for_each_codeword(const RankCode& C, const std::function<void(const std::vector<FieldElem>&)>& visit,
                              std::uint64_t cap = default_enum_cap) {
    check_enum_cap(C, cap);
    const FieldSpec& F = C.spec();
    const std::size_t len = C.m() * C.n(), k = C.k();
    const std::uint32_t q = F.order();
    std::vector<FieldElem> cw(len, F.zero());
    std::vector<std::uint32_t> digit(k, 0);
    while (true) {
        visit(cw);
        std::size_t i = 0;
        while (i < k) {
            const std::uint32_t from = digit[i], to = (digit[i] + 1) % q;
            const FieldElem delta = F.sub(FieldElem{to}, FieldElem{from});
            const auto& g = C.generators()[i].entries();
            for (std::size_t j = 0; j < len; ++j)
                if (g[j].index) cw[j] = F.add(cw[j], F.mul(delta, g[j]));
            digit[i] = to;
            if (to != 0) break;
            ++i;
        }
        if (i == k) break;
    }
}

/// Rank histogram W_0..W_n over all q^k codewords.
inline WeightDistribution weight_distribution(const RankCode& C, unsigned threads = 1, std::uint64_t cap = default_enum_cap) {
    check_enum_cap(C, cap);
    const FieldSpec& F = C.spec();
    const std::size_t m = C.m(), n = C.n(), k = C.k();
    std::vector<std::uint64_t> hist(n + 1, 0);
    if (k == 0 || threads <= 1) {
        for_each_codeword(C, [&](const std::vector<FieldElem>& cw) { ++hist[codeword_rank(F, cw, m, n)]; }, cap);
    } else {
        // Split on the coefficient of the last generator.
        std::vector<MatGF> rest(C.generators().begin(), C.generators().end() - 1);
        const RankCode sub(F, m, n, rest, true);
        const MatGF& last = C.generators().back();
        const std::uint32_t q = F.order();
        const unsigned workers = std::min<unsigned>(threads, q);
        std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n + 1, 0));
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint32_t c = w; c < q; c += workers) {
                    const MatGF offset = last.scaled(FieldElem{c});
                    std::vector<FieldElem> cw(m * n);
                    for_each_codeword(
                        sub,
                        [&](const std::vector<FieldElem>& base) {
                            for (std::size_t j = 0; j < cw.size(); ++j) cw[j] = F.add(base[j], offset.entries()[j]);
                            ++partial[w][codeword_rank(F, cw, m, n)];
                        },
                        cap);
                }
            });
        for (auto& t : pool) t.join();
        for (const auto& p : partial)
            for (std::size_t t = 0; t <= n; ++t) hist[t] += p[t];
    }
    std::vector<Integer> counts;
    for (auto h : hist) counts.emplace_back(h);
    return WeightDistribution::make(C.q(), static_cast<long long>(m), static_cast<long long>(n), std::move(counts), true);
}

/// Orthogonal complement under Tr(X Y^t).
inline RankCode dual_code(const RankCode& C) {
    const Subspace perp = right_nullspace(C.flattened());
    return RankCode::from_flat(C.spec(), C.m(), C.n(), perp.basis(), true);
}

/// Least positive rank in the code, or n+1 for the zero code.
inline long long minimum_distance(const RankCode& C, std::uint64_t cap = default_enum_cap) {
    return weight_distribution(C, 1, cap).params().d;
}

/// {X in C : X u^T = 0 for all u in U}.
inline RankCode shortened_subcode(const RankCode& C, const Subspace& U) {
    if (U.ambient_dim() != C.n()) throw InvalidParameter("subspace ambient dimension must equal n");
    const FieldSpec& F = C.spec();
    const std::size_t m = C.m(), n = C.n(), k = C.k();
    // conditions: for each basis vector u and each row r, sum_i c_i (G_i u^T)_r = 0
    MatGF A(F, U.dim() * m, k);
    for (std::size_t b = 0; b < U.dim(); ++b) {
        const auto u = U.basis_vector(b);
        for (std::size_t i = 0; i < k; ++i) {
            const MatGF& G = C.generators()[i];
            for (std::size_t r = 0; r < m; ++r) {
                FieldElem s = F.zero();
                for (std::size_t j = 0; j < n; ++j) s = F.add(s, F.mul(G(r, j), u[j]));
                A(b * m + r, i) = s;
            }
        }
    }
    const Subspace coeffs = right_nullspace(A);
    std::vector<MatGF> gens;
    for (std::size_t v = 0; v < coeffs.dim(); ++v) {
        const auto c = coeffs.basis_vector(v);
        MatGF X(F, m, n);
        for (std::size_t i = 0; i < k; ++i)
            if (c[i].index) X = X + C.generators()[i].scaled(c[i]);
        gens.push_back(std::move(X));
    }
    return RankCode(F, m, n, std::move(gens), true);
}

/// Dimension of the shortened subcode, without building it.
inline std::size_t shortened_dimension(const RankCode& C, const Subspace& U) {
    const FieldSpec& F = C.spec();
    const std::size_t m = C.m(), n = C.n(), k = C.k();
    if (U.dim() == 0 || k == 0) return k;
    MatGF A(F, U.dim() * m, k);
    for (std::size_t b = 0; b < U.dim(); ++b) {
        const auto u = U.basis_vector(b);
        for (std::size_t i = 0; i < k; ++i) {
            const MatGF& G = C.generators()[i];
            for (std::size_t r = 0; r < m; ++r) {
                FieldElem s = F.zero();
                for (std::size_t j = 0; j < n; ++j) s = F.add(s, F.mul(G(r, j), u[j]));
                A(b * m + r, i) = s;
            }
        }
    }
    return k - rank(A);
}

/// Pi_H(C) = {X P_H : X in C}, an m x (n-1) code.
inline RankCode puncture(const RankCode& C, const Subspace& H) {
    if (H.ambient_dim() != C.n()) throw InvalidParameter("hyperplane ambient dimension must equal n");
    const MatGF P = hyperplane_basis(H);
    std::vector<MatGF> images;
    for (const auto& g : C.generators()) images.push_back(g * P);
    return RankCode::span_of(C.spec(), C.m(), C.n() - 1, images, true);
}

/// Sigma_{h,H}(C) = {X P_H : X in C, X h^T = 0}; requires h outside H.
inline RankCode shorten_proj(const RankCode& C, const std::vector<FieldElem>& h, const Subspace& H) {
    if (h.size() != C.n()) throw InvalidParameter("vector h must have length n");
    if (H.contains(h)) throw InvalidParameter("h lies in the hyperplane H");
    const Subspace line = Subspace::span(C.spec(), C.n(), {h});
    return puncture(shortened_subcode(C, line), H);
}

/**
 * Gabidulin code: evaluations of sum_{i<n-d+1} a_i x^(q^i), a_i in GF(q^m), at
 * g^0..g^(n-1) (g the class of the indeterminate). Column j of a codeword holds
 * the coordinates of the value at g^j.
 */
inline RankCode construct_gabidulin(long long q, long long m, long long n, long long d) {
    require_q(q);
    if (m < 1 || n < 1) throw InvalidParameter("Gabidulin code needs m, n >= 1");
    if (n > m) throw InvalidParameter("Gabidulin code needs n <= m");
    if (d < 1 || d > n) throw InvalidParameter("Gabidulin code needs 1 <= d <= n");
    const FieldSpec base = FieldSpec::of_order(static_cast<std::uint64_t>(q));
    const ExtensionField ext(base, static_cast<unsigned>(m));
    std::vector<std::uint64_t> points;
    for (long long j = 0; j < n; ++j) points.push_back(ext.pow(ext.generator(), static_cast<std::uint64_t>(j)));
    std::vector<MatGF> gens;
    for (long long i = 0; i < n - d + 1; ++i) {
        for (long long l = 0; l < m; ++l) {
            const std::uint64_t beta = ext.pow(ext.generator(), static_cast<std::uint64_t>(l));
            MatGF G(base, static_cast<std::size_t>(m), static_cast<std::size_t>(n));
            for (long long j = 0; j < n; ++j) {
                const auto c = ext.coords(ext.mul(beta, ext.frobenius(points[static_cast<std::size_t>(j)], static_cast<unsigned>(i))));
                for (long long r = 0; r < m; ++r) G(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = c[static_cast<std::size_t>(r)];
            }
            gens.push_back(std::move(G));
        }
    }
    return RankCode(base, static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(gens));
}

/**
 * Image of a GF(p^c)-linear code in cm x cn matrices over GF(p): each entry
 * becomes its c x c regular-representation block, and the GF(p)-span of
 * beta*G for beta in {1, x, ..., x^(c-1)} is taken.
 */
inline RankCode embed_extension(const RankCode& C, unsigned c) {
    const FieldSpec& ext = C.spec();
    if (c == 0 || ext.degree() % c != 0)
        throw InvalidParameter("field degree " + std::to_string(ext.degree()) + " is not divisible by " + std::to_string(c));
    const FieldSpec prime = FieldSpec::prime(ext.characteristic());
    const std::size_t m = C.m(), n = C.n();
    std::vector<MatGF> gens;
    FieldElem beta = ext.one();
    std::vector<FieldElem> betas;
    for (unsigned b = 0; b < c; ++b) {
        betas.push_back(beta);
        beta = ext.mul(beta, ext.generator());
    }
    for (const auto& G : C.generators()) {
        for (auto bt : betas) {
            MatGF out(prime, c * m, c * n);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const MatGF block = regular_representation(ext, c, ext.mul(bt, G(i, j)));
                    for (std::size_t a = 0; a < c; ++a)
                        for (std::size_t b = 0; b < c; ++b) out(i * c + a, j * c + b) = block(a, b);
                }
            gens.push_back(std::move(out));
        }
    }
    return RankCode(prime, c * m, c * n, std::move(gens), true);
}

/// W_i = [n choose i]_q prod_{j<i} (q^m - q^j).
inline WeightDistribution full_space_distribution(long long q, long long m, long long n, bool allow_wide = false) {
    require_q(q);
    std::vector<Integer> counts;
    for (long long i = 0; i <= n; ++i) {
        Integer w = qbin_integer(n, i, q);
        for (long long j = 0; j < i; ++j) w *= ipow(q, static_cast<unsigned long>(m)) - ipow(q, static_cast<unsigned long>(j));
        counts.push_back(w);
    }
    return WeightDistribution::make(q, m, n, std::move(counts), allow_wide);
}

/// Distribution of M_{size}(GF(q^c)) embedded in (c size) x (c size) matrices over GF(q).
inline WeightDistribution embedded_full_space_distribution(long long q, long long c, long long size) {
    require_q(q);
    if (c < 1 || size < 0) throw InvalidParameter("embedding needs c >= 1 and size >= 0");
    const long long Q = static_cast<long long>(ipow(q, static_cast<unsigned long>(c)).convert_to<long long>());
    const auto small = full_space_distribution(Q, size, size);
    std::vector<Integer> counts(static_cast<std::size_t>(c * size + 1), Integer(0));
    for (long long i = 0; i <= size; ++i) counts[static_cast<std::size_t>(c * i)] = small[static_cast<std::size_t>(i)];
    return WeightDistribution::make(q, c * size, c * size, std::move(counts));
}

/// Fills d and, by enumerating the dual, d_dual.
inline CodeParams code_params(const RankCode& C, unsigned threads = 1, std::uint64_t cap = default_enum_cap) {
    CodeParams p = weight_distribution(C, threads, cap).params();
    const RankCode D = dual_code(C);
    p.d_dual = weight_distribution(D, threads, cap).params().d;
    return p;
}

}  // namespace rankzeta

#pragma once

/**
 * @file ffla.hpp
 * @brief Linear algebra over GF(q): echelon forms, nullspaces, subspaces.
 *
 * Subspaces are stored by their reduced row-echelon basis, which is a
 * canonical form: two subspaces are equal iff their bases are identical.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rankzeta/exact_arith.hpp"
#include "rankzeta/gfq.hpp"

namespace rankzeta {

struct EchelonForm {
    MatGF reduced;                   // RREF, zero rows removed
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row-echelon form with zero rows dropped.
inline EchelonForm rref(const MatGF& X) {
    const FieldSpec& F = X.spec();
    const std::size_t m = X.rows(), n = X.cols();
    std::vector<FieldElem> a = X.entries();
    auto at = [&](std::size_t i, std::size_t j) -> FieldElem& { return a[i * n + j]; };
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && at(sel, col).index == 0) ++sel;
        if (sel == m) continue;
        if (sel != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(at(sel, j), at(row, j));
        const FieldElem inv = F.inv(at(row, col));
        for (std::size_t j = col; j < n; ++j) at(row, j) = F.mul(inv, at(row, j));
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const FieldElem f = at(i, col);
            if (!f.index) continue;
            for (std::size_t j = col; j < n; ++j) at(i, j) = F.sub(at(i, j), F.mul(f, at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row * n);
    return {MatGF(F, row, n, std::move(a)), std::move(pivots)};
}

/// Row rank by forward elimination.
inline std::size_t rank(const MatGF& X) {
    const FieldSpec& F = X.spec();
    const std::size_t m = X.rows(), n = X.cols();
    std::vector<FieldElem> a = X.entries();
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

class Subspace {
public:
    /// Span of the rows of `generators` (any matrix with ambient_dim columns).
    explicit Subspace(const MatGF& generators) : basis_(rref(generators).reduced) {}
    static Subspace zero(const FieldSpec& spec, std::size_t ambient_dim) { return Subspace(MatGF(spec, 0, ambient_dim)); }
    static Subspace full(const FieldSpec& spec, std::size_t ambient_dim) { return Subspace(MatGF::identity(spec, ambient_dim)); }
    static Subspace span(const FieldSpec& spec, std::size_t ambient_dim, const std::vector<std::vector<FieldElem>>& vectors) {
        std::vector<FieldElem> e;
        for (const auto& v : vectors) {
            if (v.size() != ambient_dim) throw InvalidParameter("vector length does not match the ambient dimension");
            e.insert(e.end(), v.begin(), v.end());
        }
        return Subspace(MatGF(spec, vectors.size(), ambient_dim, std::move(e)));
    }

    const FieldSpec& spec() const { return basis_.spec(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const MatGF& basis() const { return basis_; }
    std::vector<FieldElem> basis_vector(std::size_t i) const {
        return {basis_.entries().begin() + static_cast<std::ptrdiff_t>(i * ambient_dim()),
                basis_.entries().begin() + static_cast<std::ptrdiff_t>((i + 1) * ambient_dim())};
    }

    bool contains(const std::vector<FieldElem>& v) const {
        std::vector<FieldElem> e = basis_.entries();
        e.insert(e.end(), v.begin(), v.end());
        return rank(MatGF(spec(), dim() + 1, ambient_dim(), std::move(e))) == dim();
    }
    /// this <= other
    bool is_subspace_of(const Subspace& other) const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (!other.contains(basis_vector(i))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

    /// Wraps a matrix already known to be in RREF without zero rows.
    static Subspace from_canonical(MatGF reduced) {
        Subspace s;
        s.basis_ = std::move(reduced);
        return s;
    }

private:
    Subspace() = default;
    MatGF basis_;
};

/// {y in F_q^n : X y^T = 0}.
inline Subspace right_nullspace(const MatGF& X) {
    const FieldSpec& F = X.spec();
    const std::size_t n = X.cols();
    const EchelonForm ef = rref(X);
    std::vector<bool> is_pivot(n, false);
    for (auto p : ef.pivots) is_pivot[p] = true;
    std::vector<std::vector<FieldElem>> vecs;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElem> v(n, F.zero());
        v[free] = F.one();
        for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = F.neg(ef.reduced(r, free));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(F, n, vecs);
}

/// U^perp under the standard dot product.
inline Subspace orthogonal_complement(const Subspace& U) { return right_nullspace(U.basis()); }

/// Tr(X Y^t), the entrywise dot product.
inline FieldElem trace_inner_product(const MatGF& X, const MatGF& Y) {
    if (X.rows() != Y.rows() || X.cols() != Y.cols() || !(X.spec() == Y.spec()))
        throw InvalidParameter("trace inner product needs matrices of the same shape and field");
    const FieldSpec& F = X.spec();
    FieldElem s = F.zero();
    for (std::size_t i = 0; i < X.entries().size(); ++i) s = F.add(s, F.mul(X.entries()[i], Y.entries()[i]));
    return s;
}

/// Default ceiling on how many subspaces an enumeration may visit.
inline constexpr std::uint64_t default_subspace_cap = std::uint64_t{1} << 22;

/**
 * Visits every dim-dimensional subspace of F_q^n exactly once, in RREF form.
 * Pivot sets are walked in lexicographic order; for each, the free entries
 * (right of a pivot, outside pivot columns) run through all of F_q.
 */
inline void enumerate_subspaces(const FieldSpec& spec, std::size_t n, std::size_t dim,
                                const std::function<void(const Subspace&)>& visit,
                                std::uint64_t cap = default_subspace_cap) {
    if (dim > n) throw InvalidParameter("subspace dimension exceeds ambient dimension");
    const Integer total = qbin_integer(static_cast<long long>(n), static_cast<long long>(dim), spec.order());
    if (total > cap)
        throw ResourceLimit("enumerating " + total.str() + " subspaces of dimension " + std::to_string(dim) + " in F_" +
                            std::to_string(spec.order()) + "^" + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
    const std::uint32_t q = spec.order();
    std::vector<std::size_t> piv(dim);
    for (std::size_t i = 0; i < dim; ++i) piv[i] = i;
    while (true) {
        std::vector<bool> is_pivot(n, false);
        for (auto p : piv) is_pivot[p] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = piv[r] + 1; c < n; ++c)
                if (!is_pivot[c]) free_pos.emplace_back(r, c);
        MatGF m(spec, dim, n);
        for (std::size_t r = 0; r < dim; ++r) m(r, piv[r]) = spec.one();
        std::vector<std::uint32_t> digits(free_pos.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < free_pos.size(); ++i) m(free_pos[i].first, free_pos[i].second) = FieldElem{digits[i]};
            visit(Subspace::from_canonical(m));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
            if (i == digits.size()) break;
        }
        // next pivot combination
        std::size_t k = dim;
        while (k > 0 && piv[k - 1] == n - dim + (k - 1)) --k;
        if (k == 0) break;
        ++piv[k - 1];
        for (std::size_t j = k; j < dim; ++j) piv[j] = piv[j - 1] + 1;
    }
}

inline std::vector<Subspace> all_subspaces(const FieldSpec& spec, std::size_t n, std::size_t dim,
                                           std::uint64_t cap = default_subspace_cap) {
    std::vector<Subspace> out;
    enumerate_subspaces(spec, n, dim, [&](const Subspace& s) { out.push_back(s); }, cap);
    return out;
}

/// n x (n-1) matrix whose columns are the RREF basis rows of the hyperplane H.
inline MatGF hyperplane_basis(const Subspace& H) {
    if (H.ambient_dim() == 0 || H.dim() + 1 != H.ambient_dim())
        throw InvalidParameter("hyperplane basis needs a subspace of dimension n-1 (got " + std::to_string(H.dim()) + " in dimension " +
                               std::to_string(H.ambient_dim()) + ")");
    return H.basis().transpose();
}

/// The hyperplane v^perp for a nonzero vector v.
inline Subspace hyperplane_of(const FieldSpec& spec, const std::vector<FieldElem>& v) {
    const MatGF row(spec, 1, v.size(), v);
    if (row.is_zero()) throw InvalidParameter("hyperplane normal vector must be nonzero");
    return right_nullspace(row);
}

}  // namespace rankzeta

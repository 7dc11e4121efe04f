#pragma once

#include "qpot/exactalg/field.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace qpot {

template <class F>
using Vec = std::vector<typename F::value_type>;

template <class F>
struct Matrix {
    std::size_t cols = 0;
    std::vector<Vec<F>> rows;

    std::size_t row_count() const { return rows.size(); }
};

template <class F>
Vec<F> zero_vec(const F& f, std::size_t n) {
    return Vec<F>(n, f.zero());
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& x) { return F::is_zero(x); });
}

// In-place reduced row echelon form; zero rows are dropped. Returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows.size(); ++c) {
        std::size_t p = r;
        while (p < m.rows.size() && F::is_zero(m.rows[p][c])) ++p;
        if (p == m.rows.size()) continue;
        std::swap(m.rows[r], m.rows[p]);
        auto inv = f.inv(m.rows[r][c]);
        for (auto& x : m.rows[r]) x = f.mul(x, inv);
        for (std::size_t i = 0; i < m.rows.size(); ++i) {
            if (i == r || F::is_zero(m.rows[i][c])) continue;
            auto k = m.rows[i][c];
            for (std::size_t j = c; j < m.cols; ++j)
                if (!F::is_zero(m.rows[r][j])) f.submul(m.rows[i][j], k, m.rows[r][j]);
        }
        pivots.push_back(c);
        ++r;
    }
    m.rows.resize(r);
    return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<F> m) {
    return rref(f, m).size();
}

// A subspace of F^n held as a canonical RREF basis.
template <class F>
class Subspace {
public:
    Subspace(F f, std::size_t ambient) : f_(std::move(f)), ambient_(ambient) {}

    static Subspace span(const F& f, std::size_t ambient, std::vector<Vec<F>> gens) {
        Subspace s(f, ambient);
        Matrix<F> m{ambient, std::move(gens)};
        s.pivots_ = rref(f, m);
        s.basis_ = std::move(m.rows);
        return s;
    }

    const F& field() const { return f_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec<F>>& basis() const& { return basis_; }
    std::vector<Vec<F>> basis() && { return std::move(basis_); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // v minus its projection along the pivots; zero iff v lies in the span
    Vec<F> reduce(Vec<F> v) const {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            auto c = v[pivots_[i]];
            if (F::is_zero(c)) continue;
            for (std::size_t j = pivots_[i]; j < ambient_; ++j)
                if (!F::is_zero(basis_[i][j])) f_.submul(v[j], c, basis_[i][j]);
        }
        return v;
    }

    bool contains(const Vec<F>& v) const { return is_zero_vec<F>(reduce(v)); }

    // Coordinates of v in the RREF basis, or nullopt if v is outside the span.
    std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
        if (!contains(v)) return std::nullopt;
        Vec<F> c;
        for (auto p : pivots_) c.push_back(v[p]);
        return c;
    }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    F f_;
    std::size_t ambient_;
    std::vector<Vec<F>> basis_;
    std::vector<std::size_t> pivots_;
};

template <class F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
    auto gens = a.basis();
    gens.insert(gens.end(), b.basis().begin(), b.basis().end());
    return Subspace<F>::span(a.field(), a.ambient(), std::move(gens));
}

// Zassenhaus: rows [u|u] and [v|0]; rows of the echelon form with zero left half
// span the intersection in their right half.
template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
    const auto& f = a.field();
    std::size_t n = a.ambient();
    if (b.ambient() != n) throw MathError("intersect: ambient dimensions differ");
    Matrix<F> m{2 * n, {}};
    for (const auto& u : a.basis()) {
        Vec<F> row = u;
        row.insert(row.end(), u.begin(), u.end());
        m.rows.push_back(std::move(row));
    }
    for (const auto& v : b.basis()) {
        Vec<F> row = v;
        row.resize(2 * n, f.zero());
        m.rows.push_back(std::move(row));
    }
    auto piv = rref(f, m);
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        if (piv[i] >= n) out.emplace_back(m.rows[i].begin() + n, m.rows[i].end());
    return Subspace<F>::span(f, n, std::move(out));
}

// Null space {x : m x = 0} as a subspace of F^cols.
template <class F>
Subspace<F> kernel(const F& f, Matrix<F> m) {
    auto piv = rref(f, m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec<F>> gens;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_piv[free]) continue;
        Vec<F> x = zero_vec(f, m.cols);
        x[free] = f.one();
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = f.neg(m.rows[i][free]);
        gens.push_back(std::move(x));
    }
    return Subspace<F>::span(f, m.cols, std::move(gens));
}

template <class F>
struct AffineSolution {
    Vec<F> particular;
    Subspace<F> homogeneous;
};

// Solutions of m x = b, or nullopt when inconsistent.
template <class F>
std::optional<AffineSolution<F>> solve_affine(const F& f, const Matrix<F>& m, const Vec<F>& b) {
    if (b.size() != m.rows.size()) throw MathError("solve_affine: right-hand side has wrong length");
    Matrix<F> aug{m.cols + 1, {}};
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        Vec<F> row = m.rows[i];
        row.push_back(b[i]);
        aug.rows.push_back(std::move(row));
    }
    auto piv = rref(f, aug);
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    Vec<F> x = zero_vec(f, m.cols);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.rows[i][m.cols];
    return AffineSolution<F>{std::move(x), kernel(f, m)};
}

}  // namespace qpot

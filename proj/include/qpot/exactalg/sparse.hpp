#pragma once

#include "qpot/exactalg/dense.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qpot {

template <class F>
using SparseVec = std::vector<std::pair<std::uint32_t, typename F::value_type>>;

// a - c*b on sorted sparse vectors
template <class F>
SparseVec<F> axpy(const F& f, const SparseVec<F>& a, const typename F::value_type& c, const SparseVec<F>& b) {
    SparseVec<F> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, f.neg(f.mul(c, b[j].second)));
            ++j;
        } else {
            auto v = a[i].second;
            f.submul(v, c, b[j].second);
            if (!F::is_zero(v)) out.emplace_back(a[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return out;
}

template <class F>
SparseVec<F> to_sparse(const Vec<F>& v) {
    SparseVec<F> s;
    for (std::uint32_t i = 0; i < v.size(); ++i)
        if (!F::is_zero(v[i])) s.emplace_back(i, v[i]);
    return s;
}

template <class F>
Vec<F> to_dense(const F& f, const SparseVec<F>& s, std::size_t n) {
    Vec<F> v = zero_vec(f, n);
    for (const auto& [i, x] : s) v[i] = x;
    return v;
}

// Incremental row echelon form over sparse rows. Each stored row is monic at its
// pivot (its smallest column). Rows touching disjoint column sets never interact,
// so block-structured systems are handled block by block for free.
template <class F>
class EchelonBuilder {
public:
    EchelonBuilder(F f, std::size_t cols) : f_(std::move(f)), cols_(cols), pivot_row_(cols, -1) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const F& field() const { return f_; }

    // Returns true when v was independent of the rows so far.
    bool add(SparseVec<F> v) {
        reduce_leading(v);
        if (v.empty()) return false;
        auto inv = f_.inv(v.front().second);
        for (auto& e : v) e.second = f_.mul(e.second, inv);
        pivot_row_[v.front().first] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
    }

    // Eliminates every pivot column from v.
    SparseVec<F> reduce(SparseVec<F> v) const {
        std::size_t i = 0;
        while (i < v.size()) {
            auto r = pivot_row_[v[i].first];
            if (r < 0) {
                ++i;
                continue;
            }
            auto c = v[i].second;
            v = axpy(f_, v, c, rows_[r]);
        }
        return v;
    }

    bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }

    std::vector<std::uint32_t> pivots() const {
        std::vector<std::uint32_t> out;
        for (const auto& r : rows_) out.push_back(r.front().first);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Canonical reduced echelon basis, sorted by pivot.
    std::vector<SparseVec<F>> rref() const {
        std::vector<std::pair<std::uint32_t, std::size_t>> order;
        for (std::size_t r = 0; r < rows_.size(); ++r) order.emplace_back(rows_[r].front().first, r);
        std::sort(order.begin(), order.end());
        std::vector<SparseVec<F>> out(order.size());
        EchelonBuilder done(f_, cols_);
        for (std::size_t k = order.size(); k-- > 0;) {
            SparseVec<F> v = rows_[order[k].second];
            SparseVec<F> head{v.front()};
            SparseVec<F> tail(v.begin() + 1, v.end());
            tail = done.reduce(std::move(tail));
            head.insert(head.end(), tail.begin(), tail.end());
            out[k] = head;
            done.pivot_row_[head.front().first] = static_cast<std::int64_t>(done.rows_.size());
            done.rows_.push_back(std::move(head));
        }
        return out;
    }

    Subspace<F> to_subspace() const {
        std::vector<Vec<F>> gens;
        for (const auto& r : rref()) gens.push_back(to_dense(f_, r, cols_));
        return Subspace<F>::span(f_, cols_, std::move(gens));
    }

private:
    void reduce_leading(SparseVec<F>& v) const {
        while (!v.empty()) {
            auto r = pivot_row_[v.front().first];
            if (r < 0) return;
            auto c = v.front().second;
            v = axpy(f_, v, c, rows_[r]);
        }
    }

    F f_;
    std::size_t cols_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<SparseVec<F>> rows_;
};

// Rank of a sparse matrix; short rows are eliminated first to limit fill-in.
template <class F>
std::size_t sparse_rank(const F& f, std::size_t cols, std::vector<SparseVec<F>> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    EchelonBuilder<F> eb(f, cols);
    for (auto& r : rows) eb.add(std::move(r));
    return eb.rank();
}

// Null space basis of a sparse system (rows are equations over `cols` unknowns).
template <class F>
std::vector<SparseVec<F>> sparse_kernel(const F& f, std::size_t cols, std::vector<SparseVec<F>> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    EchelonBuilder<F> eb(f, cols);
    for (auto& r : rows) eb.add(std::move(r));
    auto red = eb.rref();
    std::vector<std::int64_t> row_of(cols, -1);
    for (std::size_t i = 0; i < red.size(); ++i) row_of[red[i].front().first] = static_cast<std::int64_t>(i);
    // column -> list of (pivot column, coefficient) for rows mentioning it
    std::vector<std::vector<std::pair<std::uint32_t, typename F::value_type>>> uses(cols);
    for (const auto& r : red)
        for (std::size_t k = 1; k < r.size(); ++k) uses[r[k].first].emplace_back(r.front().first, r[k].second);
    std::vector<SparseVec<F>> out;
    for (std::uint32_t c = 0; c < cols; ++c) {
        if (row_of[c] >= 0) continue;
        SparseVec<F> x;
        for (const auto& [p, v] : uses[c]) x.emplace_back(p, f.neg(v));
        x.emplace_back(c, f.one());
        std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace qpot

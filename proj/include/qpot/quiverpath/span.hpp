#pragma once

#include "qpot/exactalg/sparse.hpp"
#include "qpot/quiverpath/element.hpp"

#include <unordered_map>
#include <vector>

namespace qpot {

// Indexes a finite list of paths.
class PathBasis {
public:
    PathBasis() = default;
    explicit PathBasis(std::vector<Path> paths) : paths_(std::move(paths)) {
        for (std::size_t i = 0; i < paths_.size(); ++i) index_.emplace(paths_[i], i);
    }

    static PathBasis of_degree(const Quiver& q, std::size_t d) { return PathBasis(paths_of_length(q, d)); }

    // All paths of length <= e, longest first.
    static PathBasis filtration_descending(const Quiver& q, std::size_t e) {
        std::vector<Path> all;
        for (std::size_t d = e + 1; d-- > 0;) {
            auto ps = paths_of_length(q, d);
            all.insert(all.end(), ps.begin(), ps.end());
        }
        return PathBasis(std::move(all));
    }

    std::size_t size() const { return paths_.size(); }
    const Path& operator[](std::size_t i) const { return paths_[i]; }
    const std::vector<Path>& paths() const { return paths_; }
    bool contains(const Path& p) const { return index_.count(p) != 0; }

    std::size_t index(const Path& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw MathError("path outside the basis");
        return it->second;
    }

    template <class F>
    Vec<F> to_vector(const Element<F>& x) const {
        Vec<F> v = zero_vec(x.field(), size());
        for (const auto& [p, c] : x.terms()) v[index(p)] = c;
        return v;
    }

    template <class F>
    SparseVec<F> to_sparse(const Element<F>& x) const {
        SparseVec<F> v;
        for (const auto& [p, c] : x.terms()) v.emplace_back(static_cast<std::uint32_t>(index(p)), c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return v;
    }

    template <class F>
    Element<F> to_element(const F& f, const Vec<F>& v) const {
        Element<F> x(f);
        for (std::size_t i = 0; i < v.size(); ++i) x.add_term(paths_[i], v[i]);
        return x;
    }

    template <class F>
    Element<F> to_element(const F& f, const SparseVec<F>& v) const {
        Element<F> x(f);
        for (const auto& [i, c] : v) x.add_term(paths_[i], c);
        return x;
    }

private:
    std::vector<Path> paths_;
    std::unordered_map<Path, std::size_t, PathHash> index_;
};

// Split an element into its corner components e_t x e_s.
template <class F>
std::vector<Element<F>> corner_components(const Element<F>& x) {
    std::map<std::pair<int, int>, Element<F>> parts;
    for (const auto& [p, c] : x.terms()) {
        auto it = parts.try_emplace({p.src, p.tgt}, x.field()).first;
        it->second.add_term(p, c);
    }
    std::vector<Element<F>> out;
    for (auto& [k, e] : parts) out.push_back(std::move(e));
    return out;
}

// The kQ0-bimodule spanned by homogeneous elements of one degree.
template <class F>
class BimoduleSpan {
public:
    BimoduleSpan(const F& f, const Quiver& q, std::size_t degree, const std::vector<Element<F>>& gens)
        : degree_(degree), basis_(PathBasis::of_degree(q, degree)), space_(f, basis_.size()) {
        std::vector<Vec<F>> rows;
        for (const auto& g : gens) {
            if (!g.is_zero() && (!g.is_homogeneous() || static_cast<std::size_t>(g.degree()) != degree))
                throw MathError("BimoduleSpan: generator of the wrong degree");
            for (const auto& part : corner_components(g)) rows.push_back(basis_.to_vector(part));
        }
        space_ = Subspace<F>::span(f, basis_.size(), std::move(rows));
    }

    std::size_t degree() const { return degree_; }
    std::size_t dim() const { return space_.dim(); }
    const PathBasis& basis() const { return basis_; }
    const Subspace<F>& space() const { return space_; }

    bool contains(const Element<F>& x) const {
        if (x.is_zero()) return true;
        if (!x.is_homogeneous() || static_cast<std::size_t>(x.degree()) != degree_) return false;
        return space_.contains(basis_.to_vector(x));
    }

    std::vector<Element<F>> basis_elements() const {
        std::vector<Element<F>> out;
        for (const auto& v : space_.basis()) out.push_back(basis_.to_element(space_.field(), v));
        return out;
    }

private:
    std::size_t degree_;
    PathBasis basis_;
    Subspace<F> space_;
};

}  // namespace qpot

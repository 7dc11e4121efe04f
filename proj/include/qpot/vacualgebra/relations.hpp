#pragma once

#include "qpot/potentials/potential.hpp"
#include "qpot/quiverpath/span.hpp"

#include <optional>
#include <vector>

namespace qpot {

// Homogeneous relations of degree N >= 2 in kQ. When keyed, relation i belongs to arrow i.
template <class F>
class RelationSet {
public:
    RelationSet(F f, Quiver q, std::size_t n, std::vector<Element<F>> rels, bool keyed = false)
        : f_(std::move(f)), q_(std::move(q)), n_(n), rels_(std::move(rels)), keyed_(keyed) {
        if (n_ < 2) throw InputError("relation degree must be at least 2");
        if (keyed_ && rels_.size() != static_cast<std::size_t>(q_.arrow_count()))
            throw InputError("arrow-keyed relations need one relation per arrow");
        for (const auto& r : rels_) {
            if (r.is_zero()) continue;
            if (!r.is_homogeneous() || static_cast<std::size_t>(r.degree()) != n_)
                throw InputError("relation is not homogeneous of degree " + std::to_string(n_) + ": " + to_string(q_, r));
            if (!r.endpoint_homogeneous())
                throw InputError("relation is not endpoint-homogeneous: " + to_string(q_, r));
        }
    }

    // r_a = d_a W / scale for a homogeneous potential W of degree N+1.
    static RelationSet from_potential(const Quiver& q, const Potential<F>& w,
                                      std::optional<typename F::value_type> scale = std::nullopt) {
        const F& f = w.field();
        if (w.is_zero() || !w.is_homogeneous()) throw InputError("top potential must be nonzero and homogeneous");
        if (w.degree() < 3) throw InputError("top potential must have degree at least 3");
        auto ders = all_cyclic_derivatives(q, w);
        if (scale) {
            auto inv = f.inv(*scale);
            for (auto& d : ders) d = d.scaled(inv);
        }
        return RelationSet(f, q, static_cast<std::size_t>(w.degree() - 1), std::move(ders), true);
    }

    const F& field() const { return f_; }
    const Quiver& quiver() const { return q_; }
    std::size_t degree() const { return n_; }
    const std::vector<Element<F>>& relations() const { return rels_; }
    bool keyed() const { return keyed_; }

    // Dimension of the kQ0-bimodule R spanned by the relations.
    std::size_t span_dim() const { return BimoduleSpan<F>(f_, q_, n_, rels_).dim(); }

private:
    F f_;
    Quiver q_;
    std::size_t n_;
    std::vector<Element<F>> rels_;
    bool keyed_;
};

}  // namespace qpot

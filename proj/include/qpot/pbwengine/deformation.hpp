#pragma once

#include "qpot/vacualgebra/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qpot {

// Relations p_a = r_a - phi(a), where r_a = d_a W for the top potential W and
// phi(a) has degree <= N-1 and runs from t(a) to s(a).
template <class F>
class Deformation {
public:
    Deformation(const Quiver& q, const Potential<F>& top, std::vector<Element<F>> phi)
        : base_(RelationSet<F>::from_potential(q, top)), top_(top), phi_(std::move(phi)) {
        validate();
    }

    // Arrow-keyed relations without a known potential.
    Deformation(RelationSet<F> base, std::vector<Element<F>> phi) : base_(std::move(base)), phi_(std::move(phi)) {
        if (!base_.keyed()) throw InputError("deformation base must be keyed by arrows");
        validate();
    }

    const F& field() const { return base_.field(); }
    const Quiver& quiver() const { return base_.quiver(); }
    std::size_t degree() const { return base_.degree(); }
    const RelationSet<F>& base() const { return base_; }
    const std::optional<Potential<F>>& top() const { return top_; }
    const std::vector<Element<F>>& phi() const { return phi_; }
    const Element<F>& phi(int a) const { return phi_.at(a); }
    Element<F> phi(int a, std::size_t j) const { return phi_.at(a).component(j); }

    std::vector<Element<F>> relations() const {
        std::vector<Element<F>> out;
        for (int a = 0; a < quiver().arrow_count(); ++a) out.push_back(base_.relations()[a] - phi_[a]);
        return out;
    }

    bool operator==(const Deformation& o) const {
        return quiver() == o.quiver() && base_.relations() == o.base_.relations() && phi_ == o.phi_;
    }

private:
    void validate() const {
        const Quiver& q = quiver();
        if (phi_.size() != static_cast<std::size_t>(q.arrow_count()))
            throw InputError("deformation needs phi for every arrow");
        for (int a = 0; a < q.arrow_count(); ++a) {
            for (const auto& [p, c] : phi_[a].terms()) {
                if (p.length() + 1 > degree())
                    throw InputError("phi(" + q.arrow(a).name + ") has degree above " + std::to_string(degree() - 1));
                if (p.src != q.target(a) || p.tgt != q.source(a))
                    throw InputError("phi(" + q.arrow(a).name + ") has a term with the wrong endpoints: " +
                                     path_to_string(q, p));
            }
        }
    }

    RelationSet<F> base_;
    std::optional<Potential<F>> top_;
    std::vector<Element<F>> phi_;
};

// phi(d_a W) = -d_a W' for a potential W' of degree <= N.
template <class F>
Deformation<F> deformation_from_potential(const Quiver& q, const Potential<F>& top, const Potential<F>& lower) {
    std::size_t n = static_cast<std::size_t>(top.degree() - 1);
    if (lower.degree() > static_cast<long>(n))
        throw InputError("lower potential has degree " + std::to_string(lower.degree()) + " above N = " +
                         std::to_string(n));
    std::vector<Element<F>> phi;
    for (auto& d : all_cyclic_derivatives(q, lower)) phi.push_back(-d);
    return Deformation<F>(q, top, std::move(phi));
}

// Rewrites phi given on another basis g_i of R onto the arrow-keyed basis d_a W.
// Requires #Q1 = dim R.
template <class F>
Deformation<F> deformation_from_relation_basis(const Quiver& q, const Potential<F>& top,
                                               const std::vector<Element<F>>& gens,
                                               const std::vector<Element<F>>& phi_of_gens) {
    const F& f = top.field();
    if (gens.size() != phi_of_gens.size()) throw InputError("one phi value is needed per relation");
    auto ders = all_cyclic_derivatives(q, top);
    std::size_t n = static_cast<std::size_t>(top.degree() - 1);
    BimoduleSpan<F> r(f, q, n, gens);
    if (r.dim() != static_cast<std::size_t>(q.arrow_count()) || gens.size() != r.dim())
        throw InputError("relation basis has the wrong size: #Q1 = " + std::to_string(q.arrow_count()) +
                         ", dim R = " + std::to_string(r.dim()));
    PathBasis basis = PathBasis::of_degree(q, n);
    Matrix<F> m{gens.size(), std::vector<Vec<F>>(basis.size(), zero_vec(f, gens.size()))};
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (const auto& [p, c] : gens[i].terms()) m.rows[basis.index(p)][i] = c;
    std::vector<Element<F>> phi;
    for (int a = 0; a < q.arrow_count(); ++a) {
        auto sol = solve_affine(f, m, basis.to_vector(ders[a]));
        if (!sol) throw InputError("d_" + q.arrow(a).name + " W is outside the span of the given relations");
        Element<F> v(f);
        for (std::size_t i = 0; i < gens.size(); ++i) v += phi_of_gens[i].scaled(sol->particular[i]);
        phi.push_back(std::move(v));
    }
    return Deformation<F>(q, top, std::move(phi));
}

}  // namespace qpot

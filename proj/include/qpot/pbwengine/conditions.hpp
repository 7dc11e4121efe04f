#pragma once

#include "qpot/pbwengine/deformation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qpot {

template <class F>
struct ConditionResult {
    std::string name;
    bool evaluated = true;
    bool holds = true;
    std::optional<Element<F>> witness;  // a nonzero value that should vanish, or an element outside R
    std::string detail;
};

template <class F>
struct PBWReport {
    std::size_t intersection_dim = 0;
    ConditionResult<F> pbw1, pbw2, pbw4;
    std::vector<ConditionResult<F>> pbw3;  // j = 1 .. N-1
    ConditionResult<F> pbw2prime;
    std::vector<Element<F>> residues;  // per vertex
    std::optional<bool> base_cy;       // set when the prerequisite check ran
    std::string base_cy_detail;

    bool passes() const {
        bool ok = pbw1.holds && pbw2.holds && pbw4.holds;
        for (const auto& c : pbw3) ok = ok && c.holds;
        return ok;
    }
};

// sum_{s(b)=e} phi_{N-1}(r_b) b - sum_{t(a)=e} a phi_{N-1}(r_a)
template <class F>
std::vector<Element<F>> pbw2prime_residues(const Deformation<F>& d) {
    const Quiver& q = d.quiver();
    const F& f = d.field();
    std::size_t n = d.degree();
    std::vector<Element<F>> out;
    for (int e = 0; e < q.vertex_count(); ++e) {
        Element<F> r(f);
        for (int b : q.arrows_out_of(e)) r += d.phi(b, n - 1) * arrow_element(f, q, b);
        for (int a : q.arrows_into(e)) r -= arrow_element(f, q, a) * d.phi(a, n - 1);
        out.push_back(std::move(r));
    }
    return out;
}

template <class F>
bool check_pbw2prime(const Deformation<F>& d) {
    for (const auto& r : pbw2prime_residues(d))
        if (!r.is_zero()) return false;
    return true;
}

namespace detail {

// Psi_j(x) = sum c phi_j(r_a) b - sum d b phi_j(r_a)
template <class F>
Element<F> psi(const Deformation<F>& def, const IntersectionVector<F>& iv, std::size_t j) {
    const Quiver& q = def.quiver();
    const F& f = def.field();
    Element<F> out(f);
    for (const auto& [a, b, c] : iv.c) out += (def.phi(a, j) * arrow_element(f, q, b)).scaled(c);
    for (const auto& [b, a, c] : iv.d) out -= (arrow_element(f, q, b) * def.phi(a, j)).scaled(c);
    return out;
}

// Coordinates of x in terms of the arrow-keyed relations, if x lies in R.
template <class F>
std::optional<Vec<F>> relation_coordinates(const Deformation<F>& def, const Element<F>& x) {
    const F& f = def.field();
    const auto& rels = def.base().relations();
    std::size_t n = def.degree();
    if (x.is_zero()) return zero_vec(f, rels.size());
    if (!x.is_homogeneous() || static_cast<std::size_t>(x.degree()) != n) return std::nullopt;
    PathBasis basis = PathBasis::of_degree(def.quiver(), n);
    Matrix<F> m{rels.size(), std::vector<Vec<F>>(basis.size(), zero_vec(f, rels.size()))};
    for (std::size_t i = 0; i < rels.size(); ++i)
        for (const auto& [p, c] : rels[i].terms()) m.rows[basis.index(p)][i] = c;
    auto sol = solve_affine(f, m, basis.to_vector(x));
    if (!sol) return std::nullopt;
    return sol->particular;
}

template <class F>
Element<F> apply_phi(const Deformation<F>& def, const Vec<F>& coords, std::size_t j) {
    Element<F> out(def.field());
    for (std::size_t a = 0; a < coords.size(); ++a)
        if (!F::is_zero(coords[a])) out += def.phi(static_cast<int>(a), j).scaled(coords[a]);
    return out;
}

}  // namespace detail

// Evaluates the PBW conditions 1-4 (and the sufficient condition 2') for d.
// With cy_degree set, the base is also run through cy_check as a prerequisite.
template <class F>
PBWReport<F> check_conditions(const Deformation<F>& def, std::optional<std::size_t> cy_degree = std::nullopt) {
    const Quiver& q = def.quiver();
    const F& f = def.field();
    std::size_t n = def.degree();
    const auto& rels = def.base().relations();
    PBWReport<F> rep;
    rep.pbw1.name = "PBW1";
    rep.pbw2.name = "PBW2";
    rep.pbw4.name = "PBW4";
    rep.pbw2prime.name = "PBW2'";

    // PBW1: phi vanishes on linear dependencies among the r_a
    {
        PathBasis basis = PathBasis::of_degree(q, n);
        Matrix<F> m{rels.size(), std::vector<Vec<F>>(basis.size(), zero_vec(f, rels.size()))};
        for (std::size_t i = 0; i < rels.size(); ++i)
            for (const auto& [p, c] : rels[i].terms()) m.rows[basis.index(p)][i] = c;
        auto ker = kernel(f, m);
        for (const auto& k : ker.basis()) {
            Element<F> v(f);
            for (std::size_t a = 0; a < k.size(); ++a) v += def.phi(static_cast<int>(a)).scaled(k[a]);
            if (!v.is_zero()) {
                rep.pbw1.holds = false;
                rep.pbw1.witness = v;
                rep.pbw1.detail = "phi does not vanish on a linear relation among the r_a";
                break;
            }
        }
    }

    auto inter = relation_intersection(q, rels, n);
    rep.intersection_dim = inter.dim;

    for (std::size_t j = 1; j <= n - 1; ++j) rep.pbw3.push_back({"PBW3 j=" + std::to_string(j)});

    for (const auto& iv : inter.vectors) {
        Element<F> top = detail::psi(def, iv, n - 1);
        auto coords = detail::relation_coordinates(def, top);
        if (!coords) {
            if (rep.pbw2.holds) {
                rep.pbw2.holds = false;
                rep.pbw2.witness = top;
                rep.pbw2.detail = "Psi_{N-1} of an intersection vector lies outside R";
            }
            for (auto& c : rep.pbw3) c.evaluated = false, c.holds = false;
            rep.pbw4.evaluated = false;
            rep.pbw4.holds = false;
            continue;
        }
        for (std::size_t k = 0; k < rep.pbw3.size(); ++k) {
            std::size_t j = k + 1;
            auto& c = rep.pbw3[k];
            if (!c.evaluated || !c.holds) continue;
            Element<F> v = detail::apply_phi(def, *coords, j) + detail::psi(def, iv, j - 1);
            if (!v.is_zero()) {
                c.holds = false;
                c.witness = v;
                c.detail = "phi_j(Psi_{N-1}(x)) + Psi_{j-1}(x) is nonzero";
            }
        }
        if (rep.pbw4.evaluated && rep.pbw4.holds) {
            Element<F> v = detail::apply_phi(def, *coords, 0);
            if (!v.is_zero()) {
                rep.pbw4.holds = false;
                rep.pbw4.witness = v;
                rep.pbw4.detail = "phi_0(Psi_{N-1}(x)) is nonzero";
            }
        }
    }

    rep.residues = pbw2prime_residues(def);
    for (std::size_t e = 0; e < rep.residues.size(); ++e)
        if (!rep.residues[e].is_zero() && rep.pbw2prime.holds) {
            rep.pbw2prime.holds = false;
            rep.pbw2prime.witness = rep.residues[e];
            rep.pbw2prime.detail = "nonzero residue at vertex " + q.vertex_name(static_cast<int>(e));
        }

    if (cy_degree) {
        if (!def.top()) {
            rep.base_cy = false;
            rep.base_cy_detail = "no top potential";
        } else {
            auto cy = cy_check(q, *def.top(), *cy_degree);
            rep.base_cy = cy.consistent;
            rep.base_cy_detail = cy.consistent ? "consistent with CY up to degree " + std::to_string(*cy_degree)
                                               : cy.failure;
        }
    }
    return rep;
}

}  // namespace qpot

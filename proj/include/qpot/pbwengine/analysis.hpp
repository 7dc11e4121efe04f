#pragma once

#include "qpot/exactalg/random.hpp"
#include "qpot/pbwengine/conditions.hpp"

#include <cstdint>
#include <random>

namespace qpot {

struct MultiplierAnalysis {
    std::size_t phi_unknowns = 0;
    std::size_t multiplier_unknowns = 0;
    std::size_t solution_dim = 0;
    bool multipliers_vanish = false;  // on every solution
    std::size_t samples = 0;
    std::size_t samples_zero_multipliers = 0;
    std::size_t samples_pbw2prime = 0;
};

// Generic phi_{N-1} with PBW2 imposed: Psi_{N-1}(x) = sum_c mu_{x,c} r_c for every
// intersection basis vector x. Solves for (phi_{N-1}, mu) and reports whether the
// multipliers mu are forced to vanish, which makes (PBW2') necessary.
template <class F>
MultiplierAnalysis pbw2_multiplier_analysis(const Quiver& q, const Potential<F>& top, std::size_t samples,
                                            std::uint64_t seed) {
    const F& f = top.field();
    auto base = RelationSet<F>::from_potential(q, top);
    std::size_t n = base.degree();
    const auto& rels = base.relations();
    auto inter = relation_intersection(q, rels, n);
    PathBasis basis = PathBasis::of_degree(q, n);

    struct PhiUnknown {
        int arrow;
        Path path;
    };
    std::vector<PhiUnknown> phis;
    for (int a = 0; a < q.arrow_count(); ++a)
        for (auto& p : paths_between(q, n - 1, q.target(a), q.source(a))) phis.push_back({a, std::move(p)});
    std::size_t nmu = inter.vectors.size() * rels.size();
    std::size_t cols = phis.size() + nmu;

    // row key: (intersection vector, path of length N)
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::uint32_t, typename F::value_type>> eqs;
    auto add = [&](std::size_t i, const Element<F>& x, std::uint32_t col, const typename F::value_type& s) {
        for (const auto& [p, c] : x.terms()) {
            auto& row = eqs[{i, basis.index(p)}];
            auto [it, fresh] = row.emplace(col, f.mul(s, c));
            if (!fresh) it->second = f.add(it->second, f.mul(s, c));
        }
    };
    for (std::size_t i = 0; i < inter.vectors.size(); ++i) {
        const auto& iv = inter.vectors[i];
        for (std::uint32_t u = 0; u < phis.size(); ++u) {
            Element<F> qe(f, phis[u].path);
            for (const auto& [a, b, c] : iv.c)
                if (a == phis[u].arrow) add(i, qe * arrow_element(f, q, b), u, c);
            for (const auto& [b, a, c] : iv.d)
                if (a == phis[u].arrow) add(i, arrow_element(f, q, b) * qe, u, f.neg(c));
        }
        for (std::size_t c = 0; c < rels.size(); ++c)
            add(i, rels[c], static_cast<std::uint32_t>(phis.size() + i * rels.size() + c), f.neg(f.one()));
    }
    std::vector<SparseVec<F>> rows;
    for (auto& [k, m] : eqs) {
        SparseVec<F> r;
        for (const auto& [c, v] : m)
            if (!F::is_zero(v)) r.emplace_back(c, v);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    auto ker = sparse_kernel(f, cols, std::move(rows));

    MultiplierAnalysis out;
    out.phi_unknowns = phis.size();
    out.multiplier_unknowns = nmu;
    out.solution_dim = ker.size();
    out.multipliers_vanish = true;
    for (const auto& k : ker)
        for (const auto& [c, v] : k)
            if (c >= phis.size()) out.multipliers_vanish = false;

    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        Vec<F> x = zero_vec(f, cols);
        for (const auto& k : ker) {
            auto t = random_element(f, rng);
            for (const auto& [c, v] : k) x[c] = f.add(x[c], f.mul(t, v));
        }
        bool zero_mu = true;
        for (std::size_t c = phis.size(); c < cols; ++c) zero_mu = zero_mu && F::is_zero(x[c]);
        std::vector<Element<F>> phi(q.arrow_count(), Element<F>(f));
        for (std::size_t u = 0; u < phis.size(); ++u) phi[phis[u].arrow].add_term(phis[u].path, x[u]);
        Deformation<F> d(q, top, std::move(phi));
        ++out.samples;
        if (zero_mu) ++out.samples_zero_multipliers;
        if (check_pbw2prime(d)) ++out.samples_pbw2prime;
    }
    return out;
}

}  // namespace qpot

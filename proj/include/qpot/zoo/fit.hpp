#pragma once

#include "qpot/exactalg/random.hpp"
#include "qpot/vacualgebra/relations.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

namespace qpot {

enum class FitMode { PerGeneratorLine, WholeSpan };

inline const char* fit_mode_name(FitMode m) { return m == FitMode::PerGeneratorLine ? "per-line" : "whole-span"; }

inline constexpr std::uint64_t kFitPrime = 2147483647;  // 2^31 - 1
inline constexpr std::uint64_t kDefaultFitSeed = 20240601;

template <class F>
struct FitResult {
    FitMode mode = FitMode::PerGeneratorLine;
    bool feasible = false;
    std::size_t candidate_dim = 0;  // dim of the space of W with each d_a W in the allowed span
    std::optional<Potential<F>> potential;
    // whole-span only
    std::size_t target_rank = 0;
    std::size_t best_rank = 0;
    std::vector<std::uint64_t> seeds;
};

namespace detail {

// Basis of the potentials W of degree N+1 with d_a W in span(allowed(a)) for all a.
template <class F>
std::vector<Potential<F>> constrained_potentials(const Quiver& q, std::size_t n,
                                                 const std::vector<std::vector<Element<F>>>& allowed, const F& f) {
    auto classes = cycle_classes(q, n + 1);
    PathBasis basis = PathBasis::of_degree(q, n);
    std::size_t ncls = classes.size();
    std::vector<std::size_t> offset;
    std::size_t cols = ncls;
    for (const auto& al : allowed) offset.push_back(cols), cols += al.size();
    std::map<std::pair<int, std::size_t>, std::map<std::uint32_t, typename F::value_type>> eqs;
    auto add = [&](int a, const Element<F>& x, std::uint32_t col, const typename F::value_type& s) {
        for (const auto& [p, c] : x.terms()) {
            auto& row = eqs[{a, basis.index(p)}];
            auto v = f.mul(s, c);
            auto [it, fresh] = row.emplace(col, v);
            if (!fresh) it->second = f.add(it->second, v);
        }
    };
    for (std::uint32_t k = 0; k < ncls; ++k) {
        Potential<F> one(f);
        one.add_class(classes[k], f.one());
        auto ders = all_cyclic_derivatives(q, one);
        for (int a = 0; a < q.arrow_count(); ++a) add(a, ders[a], k, f.one());
    }
    for (int a = 0; a < q.arrow_count(); ++a)
        for (std::size_t i = 0; i < allowed[a].size(); ++i)
            add(a, allowed[a][i], static_cast<std::uint32_t>(offset[a] + i), f.neg(f.one()));
    std::vector<SparseVec<F>> rows;
    for (auto& [key, m] : eqs) {
        SparseVec<F> r;
        for (const auto& [c, v] : m)
            if (!F::is_zero(v)) r.emplace_back(c, v);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    EchelonBuilder<F> proj(f, ncls);
    for (auto& k : sparse_kernel(f, cols, std::move(rows))) {
        SparseVec<F> lam;
        for (const auto& [c, v] : k)
            if (c < ncls) lam.emplace_back(c, v);
        proj.add(std::move(lam));
    }
    std::vector<Potential<F>> out;
    for (const auto& r : proj.rref()) {
        Potential<F> w(f);
        for (const auto& [c, v] : r) w.add_class(classes[c], v);
        out.push_back(std::move(w));
    }
    return out;
}

template <class F>
std::size_t derivative_rank(const Quiver& q, std::size_t n, const Potential<F>& w) {
    return BimoduleSpan<F>(w.field(), q, n, all_cyclic_derivatives(q, w)).dim();
}

}  // namespace detail

// Searches for a potential W of degree N+1 whose cyclic derivatives match the relations:
// PerGeneratorLine asks d_{a_i} W in k r_i (relations keyed by arrow), WholeSpan asks
// span{d_a W} = span(relations), decided by a random specialisation over F_{2^31-1}.
template <class F>
FitResult<F> fit_potential(const Quiver& q, const std::vector<Element<F>>& rels, FitMode mode,
                           std::uint64_t seed = kDefaultFitSeed) {
    if (rels.empty()) throw InputError("fit_potential needs relations");
    const F& f = rels.front().field();
    std::size_t n = 0;
    for (const auto& r : rels)
        if (!r.is_zero()) n = static_cast<std::size_t>(r.degree());
    if (n < 2) throw InputError("relations must have degree at least 2");
    FitResult<F> res;
    res.mode = mode;
    std::vector<std::vector<Element<F>>> allowed(q.arrow_count());
    if (mode == FitMode::PerGeneratorLine) {
        if (rels.size() != static_cast<std::size_t>(q.arrow_count()))
            throw InputError("per-line fitting needs one relation per arrow");
        for (int a = 0; a < q.arrow_count(); ++a)
            if (!rels[a].is_zero()) allowed[a].push_back(rels[a]);
        auto cands = detail::constrained_potentials(q, n, allowed, f);
        res.candidate_dim = cands.size();
        res.feasible = !cands.empty();
        if (res.feasible) res.potential = cands.front();
        return res;
    }

    BimoduleSpan<F> rspan(f, q, n, rels);
    auto rbasis = rspan.basis_elements();
    for (int a = 0; a < q.arrow_count(); ++a)
        for (const auto& r : rbasis)
            if (auto ep = r.endpoints(); ep && ep->first == q.target(a) && ep->second == q.source(a)) allowed[a].push_back(r);
    auto cands = detail::constrained_potentials(q, n, allowed, f);
    res.candidate_dim = cands.size();
    res.target_rank = rspan.dim();
    if (cands.empty()) return res;

    for (std::uint64_t s = seed; s < seed + 3; ++s) {
        res.seeds.push_back(s);
        std::mt19937_64 rng(s);
        Potential<F> w(f);
        std::size_t rank_mod_p = 0;
        if constexpr (std::is_same_v<F, Rationals>) {
            PrimeField fp(kFitPrime);
            Potential<PrimeField> wp(fp);
            for (const auto& c : cands) {
                auto t = random_element(fp, rng);
                w += c.scaled(f.from_rational(mpq_class(mpz_class(std::to_string(t)))));
                for (const auto& [cls, v] : c.terms()) wp.add_class(cls, fp.mul(t, fp.from_rational(v)));
            }
            rank_mod_p = detail::derivative_rank(q, n, wp);
        } else {
            for (const auto& c : cands) w += c.scaled(random_element(f, rng));
            rank_mod_p = detail::derivative_rank(q, n, w);
        }
        res.best_rank = std::max(res.best_rank, rank_mod_p);
        if (rank_mod_p == res.target_rank) {
            // the rank over the base field is at least the rank of the reduction
            if (detail::derivative_rank(q, n, w) == res.target_rank) {
                res.feasible = true;
                res.potential = w;
                return res;
            }
        }
    }
    return res;
}

}  // namespace qpot

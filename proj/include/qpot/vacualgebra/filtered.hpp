#pragma once

#include "qpot/exactalg/sparse.hpp"
#include "qpot/potentials/potential.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace qpot {

// Maps of the bimodule complex built from an arbitrary (possibly inhomogeneous) potential W,
// evaluated in the free bimodules kQ (x) V (x) kQ. The consecutive composites must land in
// I (x) V (x) kQ + kQ (x) V (x) I, I the ideal of the cyclic derivatives of W; this is checked
// against the span of u r v (x) g (x) y and x (x) g (x) u r v up to a filtration bound.
template <class F>
struct FilteredCompositeReport {
    bool certified = true;
    std::size_t slack = 0;
    std::size_t checked = 0;  // generators whose composite was checked
    std::string failure;
};

// x (x) g (x) y with x applied after g and y before it
template <class F>
using FreeBimoduleElement = std::map<std::tuple<Path, int, Path>, typename F::value_type>;

namespace detail {

template <class F>
using FreeElt = FreeBimoduleElement<F>;

template <class F>
void free_add(const F& f, FreeElt<F>& e, const Path& x, int g, const Path& y, const typename F::value_type& c) {
    if (F::is_zero(c)) return;
    auto [it, fresh] = e.emplace(std::tuple{x, g, y}, c);
    if (fresh) return;
    it->second = f.add(it->second, c);
    if (F::is_zero(it->second)) e.erase(it);
}

// x * image(g) * y, summed linearly over src
template <class F, class Image>
FreeElt<F> free_apply(const F& f, const FreeElt<F>& src, Image image) {
    FreeElt<F> out;
    for (const auto& [k, c] : src) {
        const auto& [x, g, y] = k;
        for (const auto& [k2, c2] : image(g)) {
            const auto& [x2, g2, y2] = k2;
            if (!composable(x, x2) || !composable(y2, y)) continue;
            free_add(f, out, compose(x, x2), g2, compose(y2, y), f.mul(c, c2));
        }
    }
    return out;
}

}  // namespace detail

// d1(1 (x) a (x) 1) = a (x) e_s(a) (x) 1 - 1 (x) e_t(a) (x) a
template <class F>
FreeBimoduleElement<F> bimodule_d1(const F& f, const Quiver& q, int a) {
    FreeBimoduleElement<F> e;
    detail::free_add(f, e, arrow_path(q, a), q.source(a), vertex_path(q.source(a)), f.one());
    detail::free_add(f, e, vertex_path(q.target(a)), q.target(a), arrow_path(q, a), f.neg(f.one()));
    return e;
}

// full deconcatenation of r_a around each arrow
template <class F>
FreeBimoduleElement<F> bimodule_d2(const F& f, const Quiver& q, const Element<F>& r_a) {
    FreeBimoduleElement<F> e;
    for (const auto& [p, c] : r_a.terms())
        for (std::size_t k = 0; k < p.length(); ++k)
            detail::free_add(f, e, subpath(q, p, k + 1, p.length()), p.arrows[k], subpath(q, p, 0, k), c);
    return e;
}

// sum over arrows a into v of a (x) r_a (x) 1 minus arrows b out of v of 1 (x) r_b (x) b
template <class F>
FreeBimoduleElement<F> bimodule_d3(const F& f, const Quiver& q, int v) {
    FreeBimoduleElement<F> e;
    for (int a : q.arrows_into(v)) detail::free_add(f, e, arrow_path(q, a), a, vertex_path(v), f.one());
    for (int b : q.arrows_out_of(v)) detail::free_add(f, e, vertex_path(v), b, arrow_path(q, b), f.neg(f.one()));
    return e;
}

// d2 d3 on the generator at v
template <class F>
FreeBimoduleElement<F> bimodule_d2d3(const Quiver& q, const Potential<F>& w, int v) {
    const F& f = w.field();
    auto rels = all_cyclic_derivatives(q, w);
    FreeBimoduleElement<F> gen;
    detail::free_add(f, gen, vertex_path(v), v, vertex_path(v), f.one());
    auto mid = detail::free_apply(f, gen, [&](int g) { return bimodule_d3(f, q, g); });
    return detail::free_apply(f, mid, [&](int a) { return bimodule_d2(f, q, rels[a]); });
}

template <class F>
FilteredCompositeReport<F> filtered_composites(const Quiver& q, const Potential<F>& w, std::size_t slack = 0) {
    using detail::FreeElt;
    const F& f = w.field();
    auto rels = all_cyclic_derivatives(q, w);
    std::size_t n = static_cast<std::size_t>(w.degree() - 1);
    FilteredCompositeReport<F> rep;
    rep.slack = slack;
    auto one = f.one();
    auto d1 = [&](int a) { return bimodule_d1(f, q, a); };
    auto d2 = [&](int a) { return bimodule_d2(f, q, rels[a]); };

    // gens: (src, tgt) of the generators of the target module; gen_deg their degree
    auto certify = [&](const FreeElt<F>& comp, const std::vector<std::pair<int, int>>& gens, std::size_t gen_deg,
                       std::size_t bound) -> bool {
        if (comp.empty()) return true;
        std::map<std::tuple<Path, int, Path>, std::uint32_t> cols;
        auto col = [&](const std::tuple<Path, int, Path>& k) {
            return cols.emplace(k, static_cast<std::uint32_t>(cols.size())).first->second;
        };
        auto to_sparse = [&](const FreeElt<F>& e) {
            std::map<std::uint32_t, typename F::value_type> m;
            for (const auto& [k, c] : e) m.emplace(col(k), c);
            return SparseVec<F>(m.begin(), m.end());
        };
        if (bound < gen_deg + n) return false;
        std::vector<SparseVec<F>> span;
        std::size_t max_mult = bound - gen_deg - n;
        std::vector<std::vector<Path>> paths;
        for (std::size_t l = 0; l <= max_mult; ++l) paths.push_back(paths_of_length(q, l));
        for (int b = 0; b < q.arrow_count(); ++b)
            for (std::size_t lu = 0; lu <= max_mult; ++lu)
                for (const auto& u : paths[lu])
                    for (std::size_t lv = 0; lu + lv <= max_mult; ++lv)
                        for (const auto& v : paths[lv]) {
                            Element<F> urv = Element<F>(f, u) * rels[b] * Element<F>(f, v);
                            if (urv.is_zero()) continue;
                            std::size_t rest = max_mult - lu - lv;
                            for (std::size_t g = 0; g < gens.size(); ++g)
                                for (std::size_t lo = 0; lo <= rest; ++lo)
                                    for (const auto& o : paths[lo]) {
                                        FreeElt<F> left, right;
                                        auto [gs, gt] = gens[g];
                                        for (const auto& [p, c] : urv.terms()) {
                                            if (p.src == gt && o.tgt == gs)
                                                detail::free_add(f, left, p, static_cast<int>(g), o, c);
                                            if (o.src == gt && p.tgt == gs)
                                                detail::free_add(f, right, o, static_cast<int>(g), p, c);
                                        }
                                        if (!left.empty()) span.push_back(to_sparse(left));
                                        if (!right.empty()) span.push_back(to_sparse(right));
                                    }
                        }
        auto target = to_sparse(comp);
        EchelonBuilder<F> eb(f, cols.size());
        for (auto& s : span) eb.add(std::move(s));
        return eb.contains(target);
    };

    std::vector<std::pair<int, int>> g0, g1;
    for (int v = 0; v < q.vertex_count(); ++v) g0.push_back({v, v});
    for (int a = 0; a < q.arrow_count(); ++a) g1.push_back({q.source(a), q.target(a)});

    for (int a = 0; a < q.arrow_count() && rep.certified; ++a) {
        Element<F> mu(f);
        for (const auto& [k, c] : d1(a)) mu.add_term(compose(std::get<0>(k), std::get<2>(k)), c);
        ++rep.checked;
        if (!mu.is_zero()) {
            rep.certified = false;
            rep.failure = "multiplication after d1 is nonzero on arrow " + q.arrow(a).name;
        }
    }
    for (int a = 0; a < q.arrow_count() && rep.certified; ++a) {
        FreeElt<F> gen;
        detail::free_add(f, gen, vertex_path(q.source(a)), a, vertex_path(q.target(a)), one);
        auto comp = detail::free_apply(f, detail::free_apply(f, gen, d2), d1);
        ++rep.checked;
        if (!certify(comp, g0, 0, n + slack)) {
            rep.certified = false;
            rep.failure = "d1 d2 on the relation of " + q.arrow(a).name + " is not in the relation span";
        }
    }
    for (int v = 0; v < q.vertex_count() && rep.certified; ++v) {
        auto comp = bimodule_d2d3(q, w, v);
        ++rep.checked;
        if (!certify(comp, g1, 1, n + 1 + slack)) {
            rep.certified = false;
            rep.failure = "d2 d3 at vertex " + q.vertex_name(v) + " is not in the relation span";
        }
    }
    return rep;
}

}  // namespace qpot

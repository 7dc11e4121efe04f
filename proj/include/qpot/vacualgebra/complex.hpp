#pragma once

#include "qpot/vacualgebra/graded.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qpot {

// theta(e) = sum over arrows a with target e of a * r_a
template <class F>
std::vector<Element<F>> theta(const Quiver& q, const std::vector<Element<F>>& keyed_rels) {
    const F& f = keyed_rels.front().field();
    std::vector<Element<F>> out;
    for (int e = 0; e < q.vertex_count(); ++e) {
        Element<F> t(f);
        for (int a : q.arrows_into(e)) t += arrow_element(f, q, a) * keyed_rels[a];
        out.push_back(std::move(t));
    }
    return out;
}

// sum over arrows b with source e of r_b * b
template <class F>
std::vector<Element<F>> theta_right(const Quiver& q, const std::vector<Element<F>>& keyed_rels) {
    const F& f = keyed_rels.front().field();
    std::vector<Element<F>> out;
    for (int e = 0; e < q.vertex_count(); ++e) {
        Element<F> t(f);
        for (int b : q.arrows_out_of(e)) t += keyed_rels[b] * arrow_element(f, q, b);
        out.push_back(std::move(t));
    }
    return out;
}

// A vector of kQ1 R  meet  R kQ1, with coordinates x = sum c r_i b = sum d b r_i.
template <class F>
struct IntersectionVector {
    Element<F> x;
    std::vector<std::tuple<int, int, typename F::value_type>> c;  // (relation, arrow, coeff) for r_i * b
    std::vector<std::tuple<int, int, typename F::value_type>> d;  // (arrow, relation, coeff) for b * r_i
};

template <class F>
struct IntersectionData {
    std::size_t dim = 0;
    std::vector<IntersectionVector<F>> vectors;  // a basis
};

template <class F>
IntersectionData<F> relation_intersection(const Quiver& q, const std::vector<Element<F>>& rels, std::size_t n) {
    const F& f = rels.front().field();
    PathBasis basis = PathBasis::of_degree(q, n + 1);
    struct Unknown {
        bool left;  // r_i * b (true) or b * r_i
        int rel, arrow;
        Element<F> image;
    };
    std::vector<Unknown> unknowns;
    for (std::size_t i = 0; i < rels.size(); ++i) {
        auto ep = rels[i].endpoints();
        if (!ep) continue;
        for (int b = 0; b < q.arrow_count(); ++b) {
            if (q.target(b) == ep->first)
                unknowns.push_back({true, static_cast<int>(i), b, rels[i] * arrow_element(f, q, b)});
            if (q.source(b) == ep->second)
                unknowns.push_back({false, static_cast<int>(i), b, arrow_element(f, q, b) * rels[i]});
        }
    }
    // equations: one per path, unknowns as columns
    std::vector<std::map<std::uint32_t, typename F::value_type>> eqs(basis.size());
    for (std::uint32_t u = 0; u < unknowns.size(); ++u) {
        auto sign = unknowns[u].left ? f.one() : f.neg(f.one());
        for (const auto& [p, c] : unknowns[u].image.terms()) eqs[basis.index(p)].emplace(u, f.mul(sign, c));
    }
    std::vector<SparseVec<F>> rows;
    for (auto& e : eqs)
        if (!e.empty()) rows.emplace_back(e.begin(), e.end());
    IntersectionData<F> out;
    EchelonBuilder<F> images(f, basis.size());
    for (const auto& k : sparse_kernel(f, unknowns.size(), std::move(rows))) {
        IntersectionVector<F> iv{Element<F>(f), {}, {}};
        for (const auto& [u, c] : k) {
            const auto& un = unknowns[u];
            if (un.left) {
                iv.x += un.image.scaled(c);
                iv.c.emplace_back(un.rel, un.arrow, c);
            } else {
                iv.d.emplace_back(un.arrow, un.rel, c);
            }
        }
        if (!images.add(basis.to_sparse(iv.x))) continue;
        out.vectors.push_back(std::move(iv));
    }
    out.dim = out.vectors.size();
    return out;
}

enum class ComplexSide { Bimodule, Left };

// Degree-d pieces of P3 -> P2 -> P1 -> P0 -> target, as sparse row images.
template <class F>
struct ComplexDegree {
    std::size_t degree = 0;
    std::size_t dims[5] = {0, 0, 0, 0, 0};  // P3, P2, P1, P0, target
    std::vector<SparseVec<F>> maps[4];      // d3, d2, d1, augmentation/multiplication
};

template <class F>
struct ComplexData {
    ComplexSide side = ComplexSide::Bimodule;
    std::vector<ComplexDegree<F>> degrees;
};

namespace detail {

struct Gen {
    int src, tgt;
    std::size_t deg;
};

// Basis of (A (x) V (x) A)_d: triples x (x) g (x) y with x standard of degree i,
// y standard of degree k and i + deg g + k = d.
template <class F>
class ModuleBasis {
public:
    ModuleBasis(const TruncatedAlgebra<F>& t, std::vector<Gen> gens, std::size_t d, bool left_only)
        : gens_(std::move(gens)), d_(d) {
        for (std::uint32_t g = 0; g < gens_.size(); ++g) {
            const auto& gen = gens_[g];
            if (gen.deg > d) continue;
            std::size_t rest = d - gen.deg;
            for (std::size_t i = 0; i <= rest; ++i) {
                std::size_t k = rest - i;
                if (left_only && k != 0) continue;
                const auto& xs = t.standard_words(i);
                const auto& ys = t.standard_words(k);
                for (std::uint32_t xi = 0; xi < xs.size(); ++xi) {
                    if (xs[xi].src != gen.tgt) continue;
                    for (std::uint32_t yi = 0; yi < ys.size(); ++yi) {
                        if (ys[yi].tgt != gen.src) continue;
                        index_.emplace(key(g, i, xi, yi), static_cast<std::uint32_t>(elts_.size()));
                        elts_.push_back({g, static_cast<std::uint32_t>(i), xi, static_cast<std::uint32_t>(k), yi});
                    }
                }
            }
        }
    }

    struct Elt {
        std::uint32_t g, i, xi, k, yi;
    };

    std::size_t size() const { return elts_.size(); }
    const Elt& operator[](std::size_t n) const { return elts_[n]; }
    std::uint32_t index(std::uint32_t g, std::size_t i, std::uint32_t xi, std::uint32_t yi) const {
        return index_.at(key(g, i, xi, yi));
    }

private:
    static std::uint64_t key(std::uint64_t g, std::uint64_t i, std::uint64_t xi, std::uint64_t yi) {
        return (g << 52) | (i << 44) | (xi << 22) | yi;
    }

    std::vector<Gen> gens_;
    std::size_t d_;
    std::vector<Elt> elts_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

template <class F>
class RowBuilder {
public:
    explicit RowBuilder(const F& f) : f_(f) {}
    void add(std::uint32_t col, const typename F::value_type& c) {
        if (F::is_zero(c)) return;
        auto [it, fresh] = acc_.emplace(col, c);
        if (fresh) return;
        it->second = f_.add(it->second, c);
        if (F::is_zero(it->second)) acc_.erase(it);
    }
    SparseVec<F> take() { return SparseVec<F>(acc_.begin(), acc_.end()); }

private:
    const F& f_;
    std::map<std::uint32_t, typename F::value_type> acc_;
};

}  // namespace detail

// Bocklandt's complex for A = A(Q, W), truncated to internal degrees 0..max_degree.
// The Left side is the complex tensored with kQ0 on the right; exactness of it in
// degrees <= D forces exactness of the bimodule complex in degrees <= D (filter by
// the degree of the right tensor factor).
template <class F>
ComplexData<F> build_complex(const TruncatedAlgebra<F>& t, const Potential<F>& w, std::size_t max_degree,
                             ComplexSide side = ComplexSide::Bimodule) {
    using detail::Gen;
    const F& f = t.field();
    const Quiver& q = t.quiver();
    if (max_degree > t.max_degree()) throw MathError("complex degree exceeds the truncation degree");
    auto rels = all_cyclic_derivatives(q, w);
    std::size_t n = static_cast<std::size_t>(w.degree() - 1);
    bool left = side == ComplexSide::Left;

    std::vector<Gen> g0, g1, g2, g3;
    for (int v = 0; v < q.vertex_count(); ++v) g0.push_back({v, v, 0});
    for (int a = 0; a < q.arrow_count(); ++a) g1.push_back({q.source(a), q.target(a), 1});
    for (int a = 0; a < q.arrow_count(); ++a) g2.push_back({q.target(a), q.source(a), n});
    for (int v = 0; v < q.vertex_count(); ++v) g3.push_back({v, v, n + 1});

    ComplexData<F> out;
    out.side = side;
    auto nf = [&](const Path& p) { return t.normal_form_vec(p); };
    for (std::size_t d = 0; d <= max_degree; ++d) {
        detail::ModuleBasis<F> p0(t, g0, d, left), p1(t, g1, d, left), p2(t, g2, d, left), p3(t, g3, d, left);
        ComplexDegree<F> cd;
        cd.degree = d;
        cd.dims[0] = p3.size();
        cd.dims[1] = p2.size();
        cd.dims[2] = p1.size();
        cd.dims[3] = p0.size();
        cd.dims[4] = left ? (d == 0 ? q.vertex_count() : 0) : t.dim(d);

        // adds c * NF(lx) (x) gen (x) NF(ry) to row, lx of degree i', ry of degree k'
        auto emit = [&](detail::RowBuilder<F>& row, const detail::ModuleBasis<F>& target, std::uint32_t g,
                        const Path& lx, const Path& ry, const typename F::value_type& c) {
            auto l = nf(lx);
            auto r = nf(ry);
            for (const auto& [xi, a] : l)
                for (const auto& [yi, b] : r) row.add(target.index(g, lx.length(), xi, yi), f.mul(c, f.mul(a, b)));
        };

        // d3
        for (std::size_t n3 = 0; n3 < p3.size(); ++n3) {
            const auto& el = p3[n3];
            const Path& x = t.standard_words(el.i)[el.xi];
            const Path& y = t.standard_words(el.k)[el.yi];
            detail::RowBuilder<F> row(f);
            int e = static_cast<int>(el.g);
            for (int a : q.arrows_into(e)) emit(row, p2, a, compose(x, arrow_path(q, a)), y, f.one());
            if (!left)
                for (int b : q.arrows_out_of(e)) emit(row, p2, b, x, compose(arrow_path(q, b), y), f.neg(f.one()));
            cd.maps[0].push_back(row.take());
        }
        // d2
        for (std::size_t n2 = 0; n2 < p2.size(); ++n2) {
            const auto& el = p2[n2];
            const Path& x = t.standard_words(el.i)[el.xi];
            const Path& y = t.standard_words(el.k)[el.yi];
            detail::RowBuilder<F> row(f);
            for (const auto& [p, c] : rels[el.g].terms()) {
                for (std::size_t k = 0; k < p.length(); ++k) {
                    if (left && k != 0) break;
                    Path rp = subpath(q, p, 0, k);
                    Path lp = subpath(q, p, k + 1, p.length());
                    emit(row, p1, p.arrows[k], compose(x, lp), compose(rp, y), c);
                }
            }
            cd.maps[1].push_back(row.take());
        }
        // d1
        for (std::size_t n1 = 0; n1 < p1.size(); ++n1) {
            const auto& el = p1[n1];
            const Path& x = t.standard_words(el.i)[el.xi];
            const Path& y = t.standard_words(el.k)[el.yi];
            int a = static_cast<int>(el.g);
            detail::RowBuilder<F> row(f);
            emit(row, p0, q.source(a), compose(x, arrow_path(q, a)), y, f.one());
            if (!left) emit(row, p0, q.target(a), x, compose(arrow_path(q, a), y), f.neg(f.one()));
            cd.maps[2].push_back(row.take());
        }
        // multiplication, or augmentation onto kQ0
        for (std::size_t n0 = 0; n0 < p0.size(); ++n0) {
            const auto& el = p0[n0];
            const Path& x = t.standard_words(el.i)[el.xi];
            const Path& y = t.standard_words(el.k)[el.yi];
            detail::RowBuilder<F> row(f);
            if (left) {
                if (d == 0) row.add(static_cast<std::uint32_t>(el.g), f.one());
            } else {
                for (const auto& [i, c] : nf(compose(x, y))) row.add(i, c);
            }
            cd.maps[3].push_back(row.take());
        }
        out.degrees.push_back(std::move(cd));
    }
    return out;
}

struct DegreeExactness {
    std::size_t degree;
    std::size_t dims[5];
    std::size_t ranks[4];
    std::size_t homology[5];  // at P3, P2, P1, P0, target
};

struct ExactnessReport {
    std::vector<DegreeExactness> degrees;
    bool composites_vanish = true;
    std::size_t composite_degree = 0;
    int composite_position = -1;  // domain of the first nonzero composite
    bool exact = true;
    // first failure, if any
    std::size_t failed_degree = 0;
    int failed_position = -1;  // 3, 2, 1, 0 for P_i, -1 for the target
};

inline const char* position_name(int pos) {
    switch (pos) {
        case 3: return "P3";
        case 2: return "P2";
        case 1: return "P1";
        case 0: return "P0";
        default: return "A";
    }
}

// Position (3..1) of the domain of the first nonzero composite of consecutive maps.
template <class F>
std::optional<int> first_nonzero_composite(const F& f, const ComplexDegree<F>& cd) {
    for (int m = 0; m + 1 < 4; ++m)
        for (const auto& row : cd.maps[m]) {
            detail::RowBuilder<F> acc(f);
            for (const auto& [col, c] : row)
                for (const auto& [k, v] : cd.maps[m + 1][col]) acc.add(k, f.mul(c, v));
            if (!acc.take().empty()) return 3 - m;
        }
    return std::nullopt;
}

template <class F>
ExactnessReport check_exactness(const F& f, const ComplexData<F>& c) {
    ExactnessReport rep;
    for (const auto& cd : c.degrees) {
        if (rep.composites_vanish)
            if (auto pos = first_nonzero_composite(f, cd)) {
                rep.composites_vanish = false;
                rep.composite_degree = cd.degree;
                rep.composite_position = *pos;
            }
        DegreeExactness de{};
        de.degree = cd.degree;
        for (int i = 0; i < 5; ++i) de.dims[i] = cd.dims[i];
        for (int m = 0; m < 4; ++m) de.ranks[m] = sparse_rank(f, cd.dims[m + 1], cd.maps[m]);
        de.homology[0] = de.dims[0] - de.ranks[0];
        for (int i = 1; i < 4; ++i) de.homology[i] = de.dims[i] - de.ranks[i] - de.ranks[i - 1];
        de.homology[4] = de.dims[4] - de.ranks[3];
        if (rep.exact)
            for (int i = 0; i < 5; ++i)
                if (de.homology[i] != 0) {
                    rep.exact = false;
                    rep.failed_degree = de.degree;
                    rep.failed_position = i == 4 ? -1 : 3 - i;
                    break;
                }
        rep.degrees.push_back(de);
    }
    return rep;
}

struct CYReport {
    std::size_t max_degree = 0;
    std::size_t relation_span_dim = 0;
    bool relations_independent = false;
    bool theta_two_sided = false;
    bool theta_injective = false;
    std::size_t intersection_dim = 0;
    bool theta_spans_intersection = false;
    ExactnessReport exactness;
    std::vector<std::size_t> hilbert;
    bool consistent = false;
    std::string failure;  // empty when consistent
};

// Checks the CY-3 conditions for A(Q, W) in internal degrees up to max_degree.
template <class F>
CYReport cy_check(const Quiver& q, const Potential<F>& w, std::size_t max_degree,
                  ComplexSide side = ComplexSide::Left) {
    const F& f = w.field();
    auto rels = RelationSet<F>::from_potential(q, w);
    std::size_t n = rels.degree();
    const auto& r = rels.relations();
    CYReport rep;
    rep.max_degree = max_degree;
    rep.relation_span_dim = rels.span_dim();
    rep.relations_independent = rep.relation_span_dim == static_cast<std::size_t>(q.arrow_count());

    auto th = theta(q, r);
    auto thr = theta_right(q, r);
    rep.theta_two_sided = th == thr;
    BimoduleSpan<F> theta_span(f, q, n + 1, th);
    rep.theta_injective = theta_span.dim() == static_cast<std::size_t>(q.vertex_count());

    auto inter = relation_intersection(q, r, n);
    rep.intersection_dim = inter.dim;
    bool inside = true;
    {
        std::vector<Element<F>> xs;
        for (const auto& v : inter.vectors) xs.push_back(v.x);
        BimoduleSpan<F> ispan(f, q, n + 1, xs);
        for (const auto& t : th) inside = inside && ispan.contains(t);
    }
    rep.theta_spans_intersection = inside && rep.theta_injective && inter.dim == theta_span.dim();

    TruncatedAlgebra<F> t(rels, max_degree);
    rep.hilbert = t.hilbert_series();
    rep.exactness = check_exactness(f, build_complex(t, w, max_degree, side));

    if (!rep.relations_independent)
        rep.failure = "cyclic derivatives are linearly dependent";
    else if (!rep.theta_two_sided)
        rep.failure = "theta is not two-sided";
    else if (!rep.theta_injective)
        rep.failure = "theta is not injective";
    else if (!rep.theta_spans_intersection)
        rep.failure = "relation intersection is not spanned by theta";
    else if (!rep.exactness.composites_vanish)
        rep.failure = std::string("maps do not compose to zero from ") +
                      position_name(rep.exactness.composite_position) + " in degree " +
                      std::to_string(rep.exactness.composite_degree);
    else if (!rep.exactness.exact)
        rep.failure = std::string("complex not exact at ") + position_name(rep.exactness.failed_position) +
                      " in degree " + std::to_string(rep.exactness.failed_degree);
    rep.consistent = rep.failure.empty();
    return rep;
}

}  // namespace qpot

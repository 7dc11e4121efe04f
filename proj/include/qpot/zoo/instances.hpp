#pragma once

#include "qpot/pbwengine/deformation.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpot {

template <class F>
struct ExampleInstance {
    std::string name;
    Quiver quiver;
    std::size_t degree = 0;                  // N
    std::optional<Potential<F>> potential;   // as usually written
    typename F::value_type scale{};          // d_a potential = scale * relations[a]
    std::vector<Element<F>> relations;       // keyed by arrow
    std::vector<std::pair<std::string, std::string>> facts;

    // potential / scale, so that d_a of it is relations[a]
    Potential<F> normalized_top() const {
        if (!potential) throw InputError(name + " has no potential");
        const F& f = potential->field();
        return potential->scaled(f.inv(scale));
    }
    RelationSet<F> relation_set() const {
        return RelationSet<F>(relations.front().field(), quiver, degree, relations, true);
    }
};

namespace detail {

template <class F>
void add_word(Element<F>& x, const Quiver& q, const std::string& text, const typename F::value_type& c) {
    x.add_term(parse_path(q, text), c);
}

inline int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// sum over permutations of sgn * x_{s(1)} ... x_{s(m)} for the given arrows, written right to left
template <class F>
Element<F> antisymmetriser_element(const F& f, const std::vector<int>& arrows) {
    Element<F> out(f);
    std::vector<int> perm(arrows.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    do {
        std::vector<int> word;
        for (auto it = perm.rbegin(); it != perm.rend(); ++it) word.push_back(arrows[*it]);
        out.add_term(Path{0, 0, word}, f.from_int(permutation_sign(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace detail

// Yang-Mills algebra on s+1 generators n0..ns with metric g (identity by default).
template <class F = Rationals>
ExampleInstance<F> yang_mills(const F& f, int s, std::vector<std::vector<typename F::value_type>> g = {}) {
    if (s < 1) throw InputError("Yang-Mills needs s >= 1");
    int n = s + 1;
    if (g.empty()) {
        g.assign(n, std::vector<typename F::value_type>(n, f.zero()));
        for (int i = 0; i < n; ++i) g[i][i] = f.one();
    }
    if (static_cast<int>(g.size()) != n) throw InputError("metric has the wrong size");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
    Quiver q = loops_quiver(names);
    auto coeff = [&](int r, int l, int m, int v) {
        auto t = f.add(f.mul(g[r][l], g[m][v]), f.mul(g[r][v], g[l][m]));
        return f.sub(t, f.mul(f.from_int(2), f.mul(g[r][m], g[l][v])));
    };
    Element<F> w4(f);
    std::vector<Element<F>> rels(n, Element<F>(f));
    for (int r = 0; r < n; ++r)
        for (int l = 0; l < n; ++l)
            for (int m = 0; m < n; ++m)
                for (int v = 0; v < n; ++v) {
                    auto c = coeff(r, l, m, v);
                    w4.add_term(Path{0, 0, {v, m, l, r}}, c);
                    rels[r].add_term(Path{0, 0, {v, m, l}}, c);
                }
    ExampleInstance<F> inst{"yang-mills", q, 3, project_to_potential(q, w4), f.from_int(4), rels, {}};
    inst.facts = {{"s", std::to_string(s)}, {"calabi-yau", "yes"}};
    if (s == 2) inst.facts.push_back({"hilbert", "1 3 9 24 64 168 441 1155"});
    return inst;
}

// Cubic AS-regular algebra of type A with parameters a, b.
template <class F = Rationals>
ExampleInstance<F> cubic_type_a(const F& f, const typename F::value_type& a, const typename F::value_type& b) {
    Quiver q = loops_quiver({"x", "y"});
    auto one = f.one();
    Element<F> w(f), fx(f), gy(f);
    detail::add_word(w, q, "y y y y", one);
    for (auto s : {"x x y y", "x y y x", "y y x x", "y x x y"}) detail::add_word(w, q, s, a);
    for (auto s : {"x y x y", "y x y x"}) detail::add_word(w, q, s, b);
    detail::add_word(w, q, "x x x x", one);
    detail::add_word(fx, q, "y y x", a);
    detail::add_word(fx, q, "y x y", b);
    detail::add_word(fx, q, "x y y", a);
    detail::add_word(fx, q, "x x x", one);
    detail::add_word(gy, q, "y y y", one);
    detail::add_word(gy, q, "y x x", a);
    detail::add_word(gy, q, "x y x", b);
    detail::add_word(gy, q, "x x y", a);
    ExampleInstance<F> inst{"cubic-type-a", q, 3, project_to_potential(q, w), f.from_int(4), {fx, gy}, {}};
    inst.facts = {{"a", F::to_string(a)}, {"b", F::to_string(b)}, {"calabi-yau", "yes for generic a, b"}};
    return inst;
}

// Antisymmetriser algebra on n loops x1..xn, relations Ant(x1..^xi..xn) up to sign.
// For odd n the relations are keyed as d_{x_i}(W_n / n) = (-1)^{i+1} Ant(^xi).
template <class F = Rationals>
ExampleInstance<F> antisymmetriser(const F& f, int n) {
    if (n < 3) throw InputError("antisymmetriser needs n >= 3");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    Quiver q = loops_quiver(names);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::vector<Element<F>> rels;
    for (int i = 0; i < n; ++i) {
        std::vector<int> rest;
        for (int k = 0; k < n; ++k)
            if (k != i) rest.push_back(k);
        auto r = detail::antisymmetriser_element(f, rest);
        if (n % 2 == 1 && i % 2 == 1) r = -r;
        rels.push_back(std::move(r));
    }
    ExampleInstance<F> inst{"antisymmetriser", q, static_cast<std::size_t>(n - 1), std::nullopt, f.from_int(n), rels, {}};
    if (n % 2 == 1) inst.potential = project_to_potential(q, detail::antisymmetriser_element(f, all));
    inst.facts = {{"n", std::to_string(n)}, {"calabi-yau", n % 2 ? "yes" : "no"}};
    if (n == 3) inst.facts.push_back({"hilbert", "1 3 6 10 15"});
    return inst;
}

// The full antisymmetriser W_n as an element of kQ (before projecting to potentials).
template <class F = Rationals>
Element<F> antisymmetriser_word_sum(const F& f, int n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return detail::antisymmetriser_element(f, all);
}

// k vertices 1..k on a cycle, arrows a<i>_<j> (j = 1..n_i) from i to i+1, N = l k - 1.
// Arrows beyond the second use the composable reading c a^{(1)}_{s(c)-1} a^{(2)}_{s(c)-2} ...
template <class F = Rationals>
ExampleInstance<F> cyclic_quiver(const F& f, int k, int l, std::vector<int> ns = {}) {
    if (k < 3 || l < 2) throw InputError("cyclic quiver needs k >= 3 and l >= 2");
    if (ns.empty()) ns.assign(k, 2);
    if (static_cast<int>(ns.size()) != k) throw InputError("need one arrow count per vertex");
    std::vector<std::string> verts;
    for (int i = 1; i <= k; ++i) verts.push_back(std::to_string(i));
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    std::vector<std::vector<int>> id(k);
    for (int i = 0; i < k; ++i) {
        if (ns[i] < 2) throw InputError("each vertex needs at least two outgoing arrows");
        for (int j = 1; j <= ns[i]; ++j) {
            id[i].push_back(static_cast<int>(arrows.size()));
            arrows.emplace_back("a" + std::to_string(i + 1) + "_" + std::to_string(j), verts[i], verts[(i + 1) % k]);
        }
    }
    Quiver q = Quiver::from_names(verts, arrows);
    auto md = [k](int i) { return ((i % k) + k) % k; };
    int n = l * k - 1;
    Element<F> w(f);
    // first sum: a_i^(1) a_{i-1}^(1) a_{i-2}^(2) ... a_{i-N}^(2), stored first-applied first
    for (int i = 0; i < k; ++i) {
        std::vector<int> word;
        for (int t = n; t >= 2; --t) word.push_back(id[md(i - t)][1]);
        word.push_back(id[md(i - 1)][0]);
        word.push_back(id[md(i)][0]);
        w.add_term(make_path(q, word), f.one());
    }
    for (int i = 0; i < k; ++i)
        for (int j = 2; j < ns[i]; ++j) {
            int c = id[i][j];
            int s = i;  // source vertex of c
            std::vector<int> block1, block2;
            for (int t = k - 1; t >= 2; --t) block1.push_back(id[md(s - t)][1]), block2.push_back(id[md(s - t)][1]);
            block1.push_back(id[md(s - 1)][0]);
            block2.push_back(id[md(s - 1)][1]);
            block1.push_back(c);
            block2.push_back(c);
            std::vector<int> word;
            for (int r = 1; r < l; ++r) word.insert(word.end(), block2.begin(), block2.end());
            word.insert(word.end(), block1.begin(), block1.end());
            w.add_term(make_path(q, word), f.one());
        }
    auto pot = project_to_potential(q, w);
    ExampleInstance<F> inst{"cyclic", q, static_cast<std::size_t>(n), pot, f.one(), all_cyclic_derivatives(q, pot), {}};
    inst.facts = {{"k", std::to_string(k)}, {"l", std::to_string(l)}, {"calabi-yau", "yes"}};
    return inst;
}

// phi_{lambda k - 1}(d_{a_i^(j)} W) = a_{i+lambda k-1}^(j) ... a_{i+1}^(j) for j = 1, 2 and 1 <= lambda < l.
template <class F = Rationals>
Deformation<F> cyclic_deformation(const F& f, int k, int l) {
    auto inst = cyclic_quiver(f, k, l);
    const Quiver& q = inst.quiver;
    auto arrow = [&](int i, int j) { return q.arrow_index("a" + std::to_string(((i % k) + k) % k + 1) + "_" + std::to_string(j)); };
    std::vector<Element<F>> phi(q.arrow_count(), Element<F>(f));
    for (int i = 0; i < k; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int lam = 1; lam < l; ++lam) {
                std::vector<int> word;
                for (int t = 1; t <= lam * k - 1; ++t) word.push_back(arrow(i + t, j));
                phi[arrow(i, j)].add_term(make_path(q, word), f.one());
            }
    return Deformation<F>(q, inst.normalized_top(), std::move(phi));
}

// The potential of cyclic_deformation: W_{lambda k} = -(1/lambda) (class of (a^(1))^lambda + class of (a^(2))^lambda).
template <class F = Rationals>
Potential<F> cyclic_deformation_potential(const F& f, int k, int l) {
    auto inst = cyclic_quiver(f, k, l);
    const Quiver& q = inst.quiver;
    Potential<F> w(f);
    for (int j = 1; j <= 2; ++j)
        for (int lam = 1; lam < l; ++lam) {
            std::vector<int> word;
            for (int t = 0; t < lam * k; ++t) word.push_back(q.arrow_index("a" + std::to_string(t % k + 1) + "_" + std::to_string(j)));
            w.add_cycle(q, make_path(q, word), f.neg(f.inv(f.from_int(lam))));
        }
    return w;
}

// Two vertices, loops a1 at 1 and a2 at 2, a4 : 1 -> 2, a3 : 2 -> 1,
// W = a3 a4 a1^{N-1} + a4 a3 a2^{N-1}.
template <class F = Rationals>
ExampleInstance<F> two_vertex(const F& f, int n) {
    if (n < 3) throw InputError("two-vertex example needs N >= 3");
    Quiver q = Quiver::from_names({"1", "2"}, {{"a1", "1", "1"}, {"a2", "2", "2"}, {"a3", "2", "1"}, {"a4", "1", "2"}});
    Element<F> w(f);
    std::vector<int> w1(n - 1, 0), w2(n - 1, 1);
    w1.push_back(3), w1.push_back(2);
    w2.push_back(2), w2.push_back(3);
    w.add_term(make_path(q, w1), f.one());
    w.add_term(make_path(q, w2), f.one());
    auto pot = project_to_potential(q, w);
    ExampleInstance<F> inst{"two-vertex", q, static_cast<std::size_t>(n), pot, f.one(), all_cyclic_derivatives(q, pot), {}};
    inst.facts = {{"N", std::to_string(n)}, {"calabi-yau", "yes"}};
    return inst;
}

// The three N = 3 deformations of the two-vertex example (1 and 2 in characteristic 2, 3 in characteristic 3).
template <class F>
Deformation<F> two_vertex_deformation(const F& f, int which) {
    auto inst = two_vertex(f, 3);
    const Quiver& q = inst.quiver;
    std::vector<Element<F>> phi(4, Element<F>(f));
    auto set = [&](const char* arrow, const char* word) { phi[q.arrow_index(arrow)] = Element<F>(f, parse_path(q, word)); };
    switch (which) {
        case 1:
            set("a2", "a4 a3"), set("a3", "a4 a1"), set("a4", "a1 a3");
            break;
        case 2:
            set("a1", "a3 a4"), set("a3", "a4 a1"), set("a4", "a1 a3");
            break;
        case 3:
            set("a1", "a1 a1");
            break;
        default:
            throw InputError("two-vertex deformation must be 1, 2 or 3");
    }
    return Deformation<F>(q, inst.normalized_top(), std::move(phi));
}

// One loop x with W = x^3; not Calabi-Yau.
template <class F = Rationals>
ExampleInstance<F> one_loop_cubic(const F& f) {
    Quiver q = loops_quiver({"x"});
    Potential<F> w(f);
    w.add_cycle(q, Path{0, 0, {0, 0, 0}}, f.one());
    ExampleInstance<F> inst{"one-loop-cubic", q, 2, w, f.one(), all_cyclic_derivatives(q, w), {}};
    inst.facts = {{"calabi-yau", "no"}};
    return inst;
}

}  // namespace qpot

#include "qpot/quiverpath/span.hpp"
#include "qpot/exactalg/random.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qpot;

namespace {

Quiver two_vertex_quiver() {
    return Quiver::from_names({"1", "2"}, {{"a1", "1", "1"}, {"a2", "2", "2"}, {"a3", "2", "1"}, {"a4", "1", "2"}});
}

// number of paths of length d, from powers of the adjacency matrix
long count_paths(const Quiver& q, int d) {
    int n = q.vertex_count();
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0)), p(n, std::vector<long>(n, 0));
    for (const auto& a : q.arrows()) m[a.source][a.target]++;
    for (int i = 0; i < n; ++i) p[i][i] = 1;
    for (int k = 0; k < d; ++k) {
        std::vector<std::vector<long>> r(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) r[i][j] += p[i][l] * m[l][j];
        p = r;
    }
    long total = 0;
    for (auto& row : p)
        for (long x : row) total += x;
    return total;
}

Element<Rationals> random_element_of(const Quiver& q, std::mt19937_64& rng, int maxlen) {
    Rationals f;
    Element<Rationals> x(f);
    for (int len = 0; len <= maxlen; ++len)
        for (const auto& p : paths_of_length(q, len))
            if (rng() % 3 == 0) x.add_term(p, random_element(f, rng));
    return x;
}

}  // namespace

TEST(Quiver, Validation) {
    EXPECT_THROW(Quiver({}, {}), InputError);
    EXPECT_THROW(Quiver({"v"}, {}), InputError);
    EXPECT_THROW(Quiver({"v", "v"}, {{"a", 0, 1}}), InputError);
    EXPECT_THROW(Quiver({"v"}, {{"a", 0, 0}, {"a", 0, 0}}), InputError);
    EXPECT_THROW(Quiver({"v"}, {{"a", 0, 3}}), InputError);
    EXPECT_THROW(Quiver::from_names({"v"}, {{"a", "v", "w"}}), InputError);
    auto q = two_vertex_quiver();
    EXPECT_TRUE(q.is_connected());
    EXPECT_EQ(q.arrows_into(0), (std::vector<int>{0, 2}));
    EXPECT_EQ(q.arrows_out_of(0), (std::vector<int>{0, 3}));
    EXPECT_FALSE(Quiver({"a", "b"}, {{"x", 0, 0}}).is_connected());
}

TEST(Path, CountsMatchAdjacencyPowers) {
    auto q = two_vertex_quiver();
    for (int d = 0; d <= 7; ++d) EXPECT_EQ(static_cast<long>(paths_of_length(q, d).size()), count_paths(q, d)) << d;
    auto loops = loops_quiver({"x", "y", "z"});
    EXPECT_EQ(paths_of_length(loops, 4).size(), 81u);
}

TEST(Path, CanonicalOrderAndComposition) {
    auto q = two_vertex_quiver();
    auto ps = paths_of_length(q, 3);
    EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
    Path p = parse_path(q, "a3 a4 a1");
    EXPECT_EQ(p.arrows, (std::vector<int>{0, 3, 2}));
    EXPECT_EQ(p.src, 0);
    EXPECT_EQ(p.tgt, 0);
    EXPECT_EQ(path_to_string(q, p), "a3 a4 a1");
    EXPECT_EQ(parse_path(q, "e[2]"), vertex_path(1));
    EXPECT_THROW(parse_path(q, "a4 a4"), InputError);
    // x y means y first
    EXPECT_EQ(compose(parse_path(q, "a3"), parse_path(q, "a4")), parse_path(q, "a3 a4"));
    EXPECT_THROW(compose(parse_path(q, "a4"), parse_path(q, "a2")), MathError);
    EXPECT_LT(vertex_path(1), arrow_path(q, 0));
    EXPECT_LT(parse_path(q, "a3 a4"), parse_path(q, "a1 a1 a1"));
}

TEST(Element, ProductIsAssociativeAndDistributive) {
    auto q = two_vertex_quiver();
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        auto a = random_element_of(q, rng, 2), b = random_element_of(q, rng, 2), c = random_element_of(q, rng, 2);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a - a), Element<Rationals>(Rationals{}));
    }
}

TEST(Element, IdempotentsActAsUnits) {
    Rationals f;
    auto q = two_vertex_quiver();
    Element<Rationals> one = vertex_element(f, 0) + vertex_element(f, 1);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        auto a = random_element_of(q, rng, 3);
        EXPECT_EQ(one * a, a);
        EXPECT_EQ(a * one, a);
        EXPECT_EQ(vertex_element(f, 1) * a * vertex_element(f, 0), a.corner(0, 1));
    }
}

TEST(Element, DoubleDerivativeReassembles) {
    Rationals f;
    auto q = loops_quiver({"x", "y"});
    auto xy = Element<Rationals>(f, parse_path(q, "x y"));
    auto d = double_derivative(q, xy, 0);
    TensorElement<Rationals> expect(f);
    expect.add_term(vertex_path(0), parse_path(q, "y"), 1);
    EXPECT_EQ(d, expect);
    // sum over u (x) v of u a v gives back each term times its number of a's
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        auto x = random_element_of(q, rng, 4);
        for (int a = 0; a < 2; ++a) {
            Element<Rationals> back(f), expect_back(f);
            for (const auto& [k, c] : double_derivative(q, x, a).terms())
                back += (Element<Rationals>(f, k.first) * arrow_element(f, q, a) * Element<Rationals>(f, k.second)).scaled(c);
            for (const auto& [p, c] : x.terms()) {
                long occ = std::count(p.arrows.begin(), p.arrows.end(), a);
                expect_back.add_term(p, c * occ);
            }
            EXPECT_EQ(back, expect_back);
        }
    }
}

TEST(Element, StripRight) {
    Rationals f;
    auto q = loops_quiver({"x", "y"});
    Element<Rationals> e(f);
    e.add_term(parse_path(q, "x y"), 2);
    e.add_term(parse_path(q, "y x"), 3);
    EXPECT_EQ(strip_right(q, e, 1), Element<Rationals>(f, parse_path(q, "x"), 2));
    EXPECT_EQ(strip_left(q, e, 1), Element<Rationals>(f, parse_path(q, "x"), 3));
}

TEST(BimoduleSpan, ClosesUnderIdempotents) {
    Rationals f;
    auto q = two_vertex_quiver();
    Element<Rationals> g(f);
    g.add_term(parse_path(q, "a1"), 1);
    g.add_term(parse_path(q, "a2"), 1);
    BimoduleSpan<Rationals> s(f, q, 1, {g});
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_TRUE(s.contains(Element<Rationals>(f, parse_path(q, "a1"))));
    EXPECT_FALSE(s.contains(Element<Rationals>(f, parse_path(q, "a3"))));
    EXPECT_THROW(BimoduleSpan<Rationals>(f, q, 2, {g}), MathError);
}

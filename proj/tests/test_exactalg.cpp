#include "qpot/exactalg/random.hpp"
#include "qpot/exactalg/sparse.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace qpot;

namespace {

// Row space of a 0/1 matrix enumerated by brute force.
std::set<std::vector<int>> f2_row_space(const std::vector<std::vector<int>>& rows, int cols) {
    std::set<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << rows.size()); ++mask) {
        std::vector<int> v(cols, 0);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (mask >> r & 1)
                for (int c = 0; c < cols; ++c) v[c] ^= rows[r][c];
        out.insert(v);
    }
    return out;
}

template <class F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c, int density = 2) {
    Matrix<F> m{c, {}};
    std::uniform_int_distribution<int> coin(0, density);
    for (std::size_t i = 0; i < r; ++i) {
        Vec<F> row = zero_vec(f, c);
        for (auto& x : row)
            if (coin(rng) == 0) x = random_element(f, rng, 3);
        m.rows.push_back(std::move(row));
    }
    return m;
}

template <class F>
Vec<F> mat_vec(const F& f, const Matrix<F>& m, const Vec<F>& x) {
    Vec<F> out = zero_vec(f, m.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i] = f.add(out[i], f.mul(m.rows[i][j], x[j]));
    return out;
}

// Intersection through the kernel of the stacked system sum c_i u_i - sum d_j v_j = 0.
template <class F>
Subspace<F> intersect_by_kernel(const Subspace<F>& a, const Subspace<F>& b) {
    const F& f = a.field();
    std::size_t n = a.ambient(), ka = a.dim(), kb = b.dim();
    Matrix<F> m{ka + kb, std::vector<Vec<F>>(n, zero_vec(f, ka + kb))};
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t p = 0; p < n; ++p) m.rows[p][i] = a.basis()[i][p];
    for (std::size_t j = 0; j < kb; ++j)
        for (std::size_t p = 0; p < n; ++p) m.rows[p][ka + j] = f.neg(b.basis()[j][p]);
    std::vector<Vec<F>> images;
    auto ker = kernel(f, m);
    for (const auto& k : ker.basis()) {
        Vec<F> v = zero_vec(f, n);
        for (std::size_t i = 0; i < ka; ++i)
            for (std::size_t p = 0; p < n; ++p) v[p] = f.add(v[p], f.mul(k[i], a.basis()[i][p]));
        images.push_back(std::move(v));
    }
    return Subspace<F>::span(f, n, std::move(images));
}

}  // namespace

TEST(Field, PrimeFieldArithmetic) {
    PrimeField f(7);
    for (std::uint64_t a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.from_int(-1), 6u);
    EXPECT_EQ(f.parse("1/2"), 4u);
    EXPECT_EQ(f.parse("-3/4"), f.neg(f.mul(3, f.inv(4))));
    EXPECT_THROW(f.parse("1/7"), MathError);
    EXPECT_THROW(PrimeField(9), InputError);
    EXPECT_THROW(PrimeField(1ull << 33), InputError);
    PrimeField big(2147483647);
    EXPECT_EQ(big.mul(big.inv(123456789), 123456789), 1u);
}

TEST(Field, RationalParsing) {
    Rationals f;
    EXPECT_EQ(f.parse("6/4"), mpq_class(3, 2));
    EXPECT_EQ(f.parse("-2"), mpq_class(-2));
    EXPECT_THROW(f.parse("x"), InputError);
    EXPECT_THROW(f.parse("1/0"), InputError);
    EXPECT_THROW(f.inv(f.zero()), MathError);
}

TEST(Field, CharacteristicDividesFactorial) {
    EXPECT_FALSE(char_divides_factorial(Rationals{}, 10));
    EXPECT_TRUE(char_divides_factorial(PrimeField(3), 3));
    EXPECT_FALSE(char_divides_factorial(PrimeField(3), 2));
    EXPECT_TRUE(char_divides_factorial(PrimeField(2), 3));
}

TEST(Dense, AllF2ThreeByThreeAgainstBruteForce) {
    PrimeField f(2);
    for (unsigned bits = 0; bits < 512; ++bits) {
        std::vector<std::vector<int>> rows(3, std::vector<int>(3));
        Matrix<PrimeField> m{3, {}};
        for (int i = 0; i < 3; ++i) {
            Vec<PrimeField> row;
            for (int j = 0; j < 3; ++j) {
                rows[i][j] = bits >> (3 * i + j) & 1;
                row.push_back(rows[i][j]);
            }
            m.rows.push_back(row);
        }
        auto space = f2_row_space(rows, 3);
        std::size_t r = rank(f, m);
        ASSERT_EQ(space.size(), 1u << r) << bits;
        auto sub = Subspace<PrimeField>::span(f, 3, m.rows);
        for (const auto& v : space) EXPECT_TRUE(sub.contains(Vec<PrimeField>(v.begin(), v.end())));
        auto ker = kernel(f, m);
        EXPECT_EQ(ker.dim(), 3 - r);
        int zero_count = 0;
        for (unsigned x = 0; x < 8; ++x) {
            Vec<PrimeField> xv{x & 1, x >> 1 & 1, x >> 2 & 1};
            bool z = is_zero_vec<PrimeField>(mat_vec(f, m, xv));
            zero_count += z;
            EXPECT_EQ(z, ker.contains(xv));
        }
        EXPECT_EQ(zero_count, 1 << (3 - r));
    }
}

TEST(Dense, RrefIsCanonical) {
    Rationals f;
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        auto m = random_matrix(f, rng, 4, 6);
        auto s1 = Subspace<Rationals>::span(f, 6, m.rows);
        // a random invertible recombination of the rows spans the same space
        std::vector<Vec<Rationals>> mixed;
        for (std::size_t i = 0; i < m.rows.size(); ++i) {
            Vec<Rationals> v = m.rows[i];
            for (std::size_t j = 0; j < i; ++j)
                for (std::size_t c = 0; c < 6; ++c) v[c] += mpq_class(mpz_class(static_cast<long>(i + 2 * j + 1))) / 3 * m.rows[j][c];
            mixed.push_back(v);
        }
        std::reverse(mixed.begin(), mixed.end());
        EXPECT_EQ(s1, (Subspace<Rationals>::span(f, 6, mixed)));
    }
}

template <class F>
void check_intersections(const F& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 3 + t % 5;
        auto a = Subspace<F>::span(f, n, random_matrix(f, rng, 1 + t % 4, n, 1).rows);
        auto b = Subspace<F>::span(f, n, random_matrix(f, rng, 1 + (t / 3) % 4, n, 1).rows);
        auto i1 = intersect(a, b);
        EXPECT_EQ(i1, intersect_by_kernel(a, b));
        EXPECT_EQ(i1.dim() + sum(a, b).dim(), a.dim() + b.dim());
    }
}

TEST(Dense, IntersectMatchesStackedKernel) {
    check_intersections(Rationals{}, 7);
    check_intersections(PrimeField(7), 8);
    check_intersections(PrimeField(2), 9);
}

TEST(Dense, SolveAffine) {
    Rationals f;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        auto m = random_matrix(f, rng, 4, 5);
        Vec<Rationals> x0;
        for (int i = 0; i < 5; ++i) x0.push_back(random_element(f, rng));
        auto b = mat_vec(f, m, x0);
        auto sol = solve_affine(f, m, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(mat_vec(f, m, sol->particular), b);
        for (const auto& k : sol->homogeneous.basis()) EXPECT_TRUE(is_zero_vec<Rationals>(mat_vec(f, m, k)));
    }
    Matrix<Rationals> m{2, {{1, 1}, {2, 2}}};
    EXPECT_FALSE(solve_affine(f, m, {1, 3}).has_value());
}

template <class F>
void check_sparse(const F& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = 2 + t % 7, c = 3 + t % 6;
        auto m = random_matrix(f, rng, r, c, 3);
        std::vector<SparseVec<F>> rows;
        for (const auto& row : m.rows) rows.push_back(to_sparse<F>(row));
        EXPECT_EQ(sparse_rank(f, c, rows), rank(f, m));
        EchelonBuilder<F> eb(f, c);
        for (const auto& s : rows) eb.add(s);
        EXPECT_EQ(eb.to_subspace(), (Subspace<F>::span(f, c, m.rows)));
        auto ker = sparse_kernel(f, c, rows);
        std::vector<Vec<F>> dense_ker;
        for (const auto& k : ker) {
            auto v = to_dense(f, k, c);
            EXPECT_TRUE(is_zero_vec<F>(mat_vec(f, m, v)));
            dense_ker.push_back(v);
        }
        EXPECT_EQ((Subspace<F>::span(f, c, dense_ker)), kernel(f, m));
    }
}

TEST(Sparse, AgreesWithDense) {
    check_sparse(Rationals{}, 11);
    check_sparse(PrimeField(5), 12);
}

TEST(Sparse, ContainsAndReduce) {
    Rationals f;
    EchelonBuilder<Rationals> eb(f, 4);
    EXPECT_TRUE(eb.add({{0, 1}, {2, 1}}));
    EXPECT_TRUE(eb.add({{0, 1}, {3, 2}}));
    EXPECT_FALSE(eb.add({{2, 2}, {3, -4}}));
    EXPECT_TRUE(eb.contains({{0, 2}, {2, 2}}));
    EXPECT_FALSE(eb.contains({{1, 1}}));
    EXPECT_EQ(eb.rank(), 2u);
}

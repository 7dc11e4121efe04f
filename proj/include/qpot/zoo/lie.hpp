#pragma once

#include "qpot/zoo/instances.hpp"

#include <array>

namespace qpot {

template <class F>
using Matrix3 = std::array<std::array<typename F::value_type, 3>, 3>;

// Linear deformation of k[x, y, z]: phi_1(r_i) = sum_j alpha_ij x_j on the basis
// r_x = yz - zy, r_y = zx - xz, r_z = xy - yx.
template <class F>
Deformation<F> antisym3_lie(const F& f, const Matrix3<F>& alpha) {
    auto inst = antisymmetriser(f, 3);
    const Quiver& q = inst.quiver;
    std::vector<Element<F>> phi;
    for (int i = 0; i < 3; ++i) {
        Element<F> v(f);
        for (int j = 0; j < 3; ++j) v += arrow_element(f, q, j).scaled(alpha[i][j]);
        phi.push_back(std::move(v));
    }
    return Deformation<F>(q, inst.normalized_top(), std::move(phi));
}

// The Jacobi identity of the bracket encoded by alpha, as three polynomial equations.
template <class F>
std::array<typename F::value_type, 3> jacobi_equations(const F& f, const Matrix3<F>& a) {
    std::array<typename F::value_type, 3> out;
    for (int s = 0; s < 3; ++s) {
        int i = s, j = (s + 1) % 3, k = (s + 2) % 3;
        // a_ij a_ki - a_ik a_ji + a_ii (a_jk - a_kj)
        auto t = f.sub(f.mul(a[i][j], a[k][i]), f.mul(a[i][k], a[j][i]));
        out[s] = f.add(t, f.mul(a[i][i], f.sub(a[j][k], a[k][j])));
    }
    return out;
}

template <class F>
bool jacobi_holds(const F& f, const Matrix3<F>& a) {
    for (const auto& e : jacobi_equations(f, a))
        if (!F::is_zero(e)) return false;
    return true;
}

// The antisymmetric alpha whose PBW2' residue is a r_x + b r_y + c r_z.
template <class F>
Matrix3<F> lie_alpha0(const F& f, const typename F::value_type& a, const typename F::value_type& b,
                      const typename F::value_type& c) {
    auto half = f.inv(f.from_int(2));
    Matrix3<F> m;
    for (auto& row : m) row.fill(f.zero());
    m[2][1] = f.mul(a, half), m[1][2] = f.neg(m[2][1]);
    m[0][2] = f.mul(b, half), m[2][0] = f.neg(m[0][2]);
    m[1][0] = f.mul(c, half), m[0][1] = f.neg(m[1][0]);
    return m;
}

// dim of {beta symmetric : beta (a, b, c)^T = 0}
template <class F>
std::size_t lie_solution_dim(const F& f, const typename F::value_type& a, const typename F::value_type& b,
                             const typename F::value_type& c) {
    // unknowns b11 b22 b33 b12 b13 b23
    std::array<typename F::value_type, 3> v{a, b, c};
    const int pos[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    Matrix<F> m{6, {}};
    for (int i = 0; i < 3; ++i) {
        Vec<F> row = zero_vec(f, 6);
        for (int j = 0; j < 3; ++j) row[pos[i][j]] = f.add(row[pos[i][j]], v[j]);
        m.rows.push_back(std::move(row));
    }
    return 6 - rank(f, m);
}

}  // namespace qpot

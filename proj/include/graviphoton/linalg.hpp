// SPDX-License-Identifier: Apache-2.0
// Dense complex linear algebra helpers shared by the Gaussian engine.
#pragma once

#include "graviphoton/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace graviphoton {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CMatrixL = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

// Omega = diag(-i, ..., -i, i, ..., i) in the (a_1..a_N, a_1^dag..a_N^dag) ordering.
inline CMatrix omega(Eigen::Index n_modes) {
    CMatrix o = CMatrix::Zero(2 * n_modes, 2 * n_modes);
    for (Eigen::Index k = 0; k < n_modes; ++k) {
        o(k, k) = cd(0.0, -1.0);
        o(n_modes + k, n_modes + k) = cd(0.0, 1.0);
    }
    return o;
}

// i Omega = diag(1, ..., 1, -1, ..., -1).
inline Eigen::VectorXd i_omega_diagonal(Eigen::Index n_modes) {
    Eigen::VectorXd v(2 * n_modes);
    v.head(n_modes).setOnes();
    v.tail(n_modes).setConstant(-1.0);
    return v;
}

inline double hermiticity_residual(const CMatrix& m) { return (m - m.adjoint()).norm(); }

// Frobenius norm of S Omega S^dag - Omega.
inline double symplectic_residual(const CMatrix& s) {
    const CMatrix o = omega(s.rows() / 2);
    return (s * o * s.adjoint() - o).norm();
}

// (A, B; B^*, A^*) block structure residual.
inline double conjugate_block_residual(const CMatrix& m) {
    const Eigen::Index n = m.rows() / 2;
    return (m.bottomRightCorner(n, n) - m.topLeftCorner(n, n).conjugate()).norm() +
           (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n).conjugate()).norm();
}

// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
inline CMatrix expm(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("expm needs a square matrix");
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 == 0.0) return CMatrix::Identity(n, n);
    int squarings = 0;
    if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const CMatrix x = a / std::ldexp(1.0, squarings);

    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix x2 = x * x;
    const CMatrix x4 = x2 * x2;
    const CMatrix x6 = x4 * x2;
    const CMatrix u = x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const CMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    CMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

inline std::complex<long double> determinant_l(const CMatrix& m) {
    const CMatrixL ml = m.cast<std::complex<long double>>();
    return ml.partialPivLu().determinant();
}

}  // namespace graviphoton

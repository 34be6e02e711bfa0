// SPDX-License-Identifier: Apache-2.0
// Symplectic matrices in the complex (a, a^dag) ordering, quadratic
// Hamiltonians, and the gate set.
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace graviphoton {

inline constexpr double symplectic_tolerance = 1e-12;

class SymplecticMatrix {
public:
    // Validates block structure and S Omega S^dag = Omega. The residual bound is
    // relative to |S|^2 so that long products of valid gates stay admissible.
    explicit SymplecticMatrix(CMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0 || m_.rows() % 2 != 0) {
            throw DimensionMismatch("symplectic matrix must be square with even dimension");
        }
        const double scale = std::max(1.0, m_.squaredNorm());
        if (conjugate_block_residual(m_) > symplectic_tolerance * std::sqrt(scale)) {
            throw DomainError("matrix lacks the (alpha, beta; beta*, alpha*) block structure");
        }
        if (symplectic_residual(m_) > symplectic_tolerance * scale) {
            throw DomainError("matrix does not preserve the symplectic form");
        }
    }

    static SymplecticMatrix identity(Eigen::Index n_modes) {
        return SymplecticMatrix(CMatrix::Identity(2 * n_modes, 2 * n_modes));
    }

    Eigen::Index n_modes() const noexcept { return m_.rows() / 2; }
    const CMatrix& matrix() const noexcept { return m_; }
    CMatrix alpha() const { return m_.topLeftCorner(n_modes(), n_modes()); }
    CMatrix beta() const { return m_.topRightCorner(n_modes(), n_modes()); }

    // Residuals of alpha alpha^dag - beta beta^dag = 1 and alpha beta^T - beta alpha^T = 0.
    double bogoliubov_residual() const {
        const CMatrix a = alpha();
        const CMatrix b = beta();
        const Eigen::Index n = n_modes();
        return (a * a.adjoint() - b * b.adjoint() - CMatrix::Identity(n, n)).norm() +
               (a * b.transpose() - b * a.transpose()).norm();
    }

    bool is_passive(double tol = symplectic_tolerance) const { return beta().norm() <= tol; }

    // S^-1 = Omega S^dag Omega^-1.
    SymplecticMatrix inverse() const {
        const CMatrix o = omega(n_modes());
        return SymplecticMatrix(-(o * m_.adjoint() * o));
    }

    friend SymplecticMatrix operator*(const SymplecticMatrix& x, const SymplecticMatrix& y) {
        if (x.n_modes() != y.n_modes()) throw DimensionMismatch("symplectic product of different mode counts");
        return SymplecticMatrix(x.m_ * y.m_);
    }

private:
    CMatrix m_;
};

// Places a k-mode symplectic on the listed modes of an n-mode system.
inline SymplecticMatrix embed(const SymplecticMatrix& s, Eigen::Index n_modes, const std::vector<Eigen::Index>& modes) {
    const Eigen::Index k = s.n_modes();
    if (static_cast<Eigen::Index>(modes.size()) != k) throw DimensionMismatch("embed: mode list length differs from gate size");
    std::vector<Eigen::Index> sorted(modes.begin(), modes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw IndexError("embed: repeated mode index");
    for (auto m : modes) {
        if (m < 0 || m >= n_modes) throw IndexError("embed: mode index out of range");
    }
    std::vector<Eigen::Index> idx(2 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        idx[i] = modes[i];
        idx[k + i] = n_modes + modes[i];
    }
    CMatrix out = CMatrix::Identity(2 * n_modes, 2 * n_modes);
    for (Eigen::Index i = 0; i < 2 * k; ++i) {
        for (Eigen::Index j = 0; j < 2 * k; ++j) out(idx[i], idx[j]) = s.matrix()(i, j);
    }
    return SymplecticMatrix(std::move(out));
}

// Passive transformation U (+) U^* for a unitary U.
inline SymplecticMatrix passive_from_unitary(const CMatrix& u) {
    if (u.rows() != u.cols()) throw DimensionMismatch("unitary must be square");
    const Eigen::Index n = u.rows();
    if ((u * u.adjoint() - CMatrix::Identity(n, n)).norm() > 1e-12 * std::max<double>(1.0, n)) {
        throw DomainError("matrix is not unitary");
    }
    CMatrix s = CMatrix::Zero(2 * n, 2 * n);
    s.topLeftCorner(n, n) = u;
    s.bottomRightCorner(n, n) = u.conjugate();
    return SymplecticMatrix(std::move(s));
}

// Unitary acting as [[cos t, e^{i phi} sin t], [-e^{-i phi} sin t, cos t]] on modes (i, j).
inline CMatrix givens_unitary(Eigen::Index n, Eigen::Index i, Eigen::Index j, double theta, double phi = 0.0) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw IndexError("givens_unitary: invalid mode pair");
    CMatrix u = CMatrix::Identity(n, n);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    u(i, i) = c;
    u(j, j) = c;
    u(i, j) = std::polar(s, phi);
    u(j, i) = -std::polar(s, -phi);
    return u;
}

inline SymplecticMatrix gate_single_mode_squeezer(double s) {
    if (!std::isfinite(s)) throw DomainError("squeezing parameter must be finite");
    CMatrix m(2, 2);
    m << std::cosh(s), std::sinh(s), std::sinh(s), std::cosh(s);
    return SymplecticMatrix(std::move(m));
}

// R(theta) (+) R(theta), R = [[cos, sin], [-sin, cos]].
inline SymplecticMatrix gate_beamsplitter(double theta) {
    if (!std::isfinite(theta)) throw DomainError("beamsplitter angle must be finite");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = c;
    m(0, 1) = s;
    m(1, 0) = -s;
    m(1, 1) = c;
    m.bottomRightCorner(2, 2) = m.topLeftCorner(2, 2);
    return SymplecticMatrix(std::move(m));
}

inline SymplecticMatrix gate_two_mode_squeezer(double r) {
    if (!std::isfinite(r)) throw DomainError("squeezing parameter must be finite");
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    CMatrix m = CMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) m(k, k) = c;
    m(0, 3) = s;
    m(1, 2) = s;
    m(2, 1) = s;
    m(3, 0) = s;
    return SymplecticMatrix(std::move(m));
}

// Two-mode passive mixer S = U (+) U^* with U = [[cos t, e^{i phi} sin t], [-e^{-i phi} sin t, cos t]].
inline SymplecticMatrix mode_mixer_from_overlap(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("mixer angles must be finite");
    if (theta < 0.0 || theta > std::numbers::pi / 2) throw DomainError("mixer angle must lie in [0, pi/2]");
    return passive_from_unitary(givens_unitary(2, 0, 1, theta, phi));
}

inline Eigen::Matrix3cd tritter(double theta12, double theta23, double theta13, double delta) {
    const double c12 = std::cos(theta12), s12 = std::sin(theta12);
    const double c23 = std::cos(theta23), s23 = std::sin(theta23);
    const double c13 = std::cos(theta13), s13 = std::sin(theta13);
    const cd e = std::polar(1.0, delta);
    const cd em = std::conj(e);
    Eigen::Matrix3cd u;
    u << c12 * c13, s12 * c13, s13 * em,
         -s12 * c23 - c12 * s23 * s13 * e, c12 * c23 - s12 * s23 * s13 * e, s23 * c13,
         s12 * s23 - c12 * c23 * s13 * e, -c12 * s23 - s12 * c23 * s13 * e, c23 * c13;
    return u;
}

class QuadraticHamiltonian {
public:
    // Blocks (U, V; V^*, U^*) with U Hermitian and V symmetric.
    QuadraticHamiltonian(const CMatrix& u, const CMatrix& v) {
        if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows() || u.rows() == 0) {
            throw DimensionMismatch("Hamiltonian blocks must be square and equal in size");
        }
        if ((u - u.adjoint()).norm() > symplectic_tolerance) throw DomainError("Hamiltonian block U must be Hermitian");
        if ((v - v.transpose()).norm() > symplectic_tolerance) throw DomainError("Hamiltonian block V must be symmetric");
        const Eigen::Index n = u.rows();
        h_.resize(2 * n, 2 * n);
        h_ << u, v, v.conjugate(), u.conjugate();
    }

    Eigen::Index n_modes() const noexcept { return h_.rows() / 2; }
    const CMatrix& matrix() const noexcept { return h_; }

    // Generator whose flow for time theta is gate_beamsplitter(theta).
    static QuadraticHamiltonian beamsplitter() {
        CMatrix u(2, 2);
        u << 0.0, cd(0.0, 1.0), cd(0.0, -1.0), 0.0;
        return {u, CMatrix::Zero(2, 2)};
    }
    // Generator whose flow for time s is gate_single_mode_squeezer(s).
    static QuadraticHamiltonian single_mode_squeezer() {
        CMatrix v(1, 1);
        v << cd(0.0, 1.0);
        return {CMatrix::Zero(1, 1), v};
    }
    // Generator whose flow for time r is gate_two_mode_squeezer(r).
    static QuadraticHamiltonian two_mode_squeezer() {
        CMatrix v(2, 2);
        v << 0.0, cd(0.0, 1.0), cd(0.0, 1.0), 0.0;
        return {CMatrix::Zero(2, 2), v};
    }

private:
    CMatrix h_;
};

// S(t) = exp(Omega H t) for a time-independent H.
inline SymplecticMatrix symplectic_from_hamiltonian(const QuadraticHamiltonian& h, double t) {
    if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
    const CMatrix gen = omega(h.n_modes()) * h.matrix() * t;
    CMatrix s = expm(gen);
    // Restore the exact conjugate-block layout lost to rounding.
    const Eigen::Index n = h.n_modes();
    s.bottomRightCorner(n, n) = s.topLeftCorner(n, n).conjugate();
    s.bottomLeftCorner(n, n) = s.topRightCorner(n, n).conjugate();
    return SymplecticMatrix(std::move(s));
}

}  // namespace graviphoton

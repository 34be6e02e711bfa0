// SPDX-License-Identifier: Apache-2.0
// Gaussian states: first moments d and covariance sigma with
// sigma_nm = <X_n X_m^dag + X_m^dag X_n> - 2 <X_n><X_m^dag>, vacuum sigma = 1.
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/linalg.hpp"
#include "graviphoton/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace graviphoton {

inline constexpr double hermiticity_tolerance = 1e-12;
inline constexpr double physicality_tolerance = 1e-10;
inline constexpr double williamson_pairing_tolerance = 1e-8;

namespace detail {

// Eigenvalues of i Omega sigma, obtained from the Hermitian similar matrix
// L^dag (i Omega) L with sigma = L L^dag. Ascending.
inline Eigen::VectorXd i_omega_sigma_spectrum(const CMatrix& sigma) {
    const Eigen::Index n = sigma.rows() / 2;
    Eigen::LLT<CMatrix> llt(sigma);
    if (llt.info() != Eigen::Success) throw NonPhysicalState("covariance matrix is not positive definite");
    const CMatrix l = llt.matrixL();
    const CMatrix m = l.adjoint() * i_omega_diagonal(n).cast<cd>().asDiagonal() * l;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    return es.eigenvalues();
}

// Symplectic eigenvalues in descending order, pairs averaged.
inline std::vector<double> paired_symplectic_eigenvalues(const CMatrix& sigma) {
    const Eigen::VectorXd ev = i_omega_sigma_spectrum(sigma);
    const Eigen::Index n = sigma.rows() / 2;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        // ev ascending: -nu_max .. -nu_min, nu_min .. nu_max
        const double neg = -ev(k);
        const double pos = ev(2 * n - 1 - k);
        if (!(neg > 0.0) || std::abs(neg - pos) > williamson_pairing_tolerance * std::max(1.0, pos)) {
            throw NonPhysicalState("spectrum of i Omega sigma is not paired as +-nu");
        }
        out[static_cast<std::size_t>(k)] = 0.5 * (neg + pos);
    }
    return out;
}

}  // namespace detail

class GaussianState {
public:
    GaussianState(CVector d, CMatrix sigma) : d_(std::move(d)), sigma_(std::move(sigma)) { validate(); }

    Eigen::Index n_modes() const noexcept { return sigma_.rows() / 2; }
    const CVector& first_moments() const noexcept { return d_; }
    const CMatrix& covariance() const noexcept { return sigma_; }

    bool has_zero_first_moments(double tol = 1e-12) const { return d_.norm() <= tol; }

private:
    void validate() {
        const Eigen::Index dim = sigma_.rows();
        if (dim == 0 || dim % 2 != 0 || sigma_.cols() != dim) {
            throw DimensionMismatch("covariance must be square with even dimension");
        }
        if (d_.size() != dim) throw DimensionMismatch("first-moment vector length differs from covariance size");
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                if (!std::isfinite(sigma_(i, j).real()) || !std::isfinite(sigma_(i, j).imag())) {
                    throw DomainError("covariance has non-finite entries");
                }
            }
        }
        const Eigen::Index n = dim / 2;
        const double scale = std::max(1.0, sigma_.norm());
        if (hermiticity_residual(sigma_) > hermiticity_tolerance * scale) {
            throw NonPhysicalState("covariance matrix is not Hermitian");
        }
        if ((d_.tail(n) - d_.head(n).conjugate()).norm() > hermiticity_tolerance * std::max(1.0, d_.norm())) {
            throw DomainError("first moments must satisfy d_{N+k} = conj(d_k)");
        }
        if (conjugate_block_residual(sigma_) > hermiticity_tolerance * scale) {
            throw NonPhysicalState("covariance lacks the (A, B; B*, A*) block structure");
        }
        sigma_ = 0.5 * (sigma_ + sigma_.adjoint()).eval();

        // Uncertainty relation sigma + i Omega >= 0.
        CMatrix m = sigma_;
        m.diagonal() += i_omega_diagonal(n).cast<cd>();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
        if (es.eigenvalues().minCoeff() < -physicality_tolerance) {
            throw NonPhysicalState("covariance violates the uncertainty relation");
        }
        const auto nu = detail::paired_symplectic_eigenvalues(sigma_);
        if (nu.back() < 1.0 - physicality_tolerance) {
            throw NonPhysicalState("symplectic eigenvalue below 1");
        }
    }

    CVector d_;
    CMatrix sigma_;
};

inline GaussianState state_vacuum(Eigen::Index n_modes) {
    if (n_modes <= 0) throw DomainError("mode count must be positive");
    return {CVector::Zero(2 * n_modes), CMatrix::Identity(2 * n_modes, 2 * n_modes)};
}

inline GaussianState state_coherent(cd alpha) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw DomainError("amplitude must be finite");
    CVector d(2);
    d << alpha, std::conj(alpha);
    return {d, CMatrix::Identity(2, 2)};
}

inline GaussianState state_thermal(const std::vector<double>& nbar) {
    if (nbar.empty()) throw DomainError("mode count must be positive");
    const auto n = static_cast<Eigen::Index>(nbar.size());
    CMatrix sigma = CMatrix::Zero(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double v = nbar[static_cast<std::size_t>(k)];
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("thermal occupation must be finite and >= 0");
        sigma(k, k) = 2.0 * v + 1.0;
        sigma(n + k, n + k) = 2.0 * v + 1.0;
    }
    return {CVector::Zero(2 * n), sigma};
}

inline GaussianState state_thermal(double nbar) { return state_thermal(std::vector<double>{nbar}); }

// Bose-Einstein occupation 1/(exp(hbar omega / k_B T) - 1).
inline double thermal_occupation(double hbar_omega_over_kt) {
    if (!(hbar_omega_over_kt > 0.0)) throw DomainError("hbar omega / k_B T must be positive");
    return 1.0 / std::expm1(hbar_omega_over_kt);
}

inline GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s) {
    if (state.n_modes() != s.n_modes()) throw DimensionMismatch("state and symplectic have different mode counts");
    const CMatrix& m = s.matrix();
    CMatrix sigma = m * state.covariance() * m.adjoint();
    sigma = 0.5 * (sigma + sigma.adjoint()).eval();
    const Eigen::Index n = state.n_modes();
    CVector d = m * state.first_moments();
    d.tail(n) = d.head(n).conjugate();
    return {std::move(d), std::move(sigma)};
}

// Modes of a followed by modes of b.
inline GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
    const Eigen::Index na = a.n_modes();
    const Eigen::Index nb = b.n_modes();
    const Eigen::Index n = na + nb;
    std::vector<Eigen::Index> ia, ib;
    for (Eigen::Index k = 0; k < na; ++k) ia.push_back(k);
    for (Eigen::Index k = 0; k < na; ++k) ia.push_back(n + k);
    for (Eigen::Index k = 0; k < nb; ++k) ib.push_back(na + k);
    for (Eigen::Index k = 0; k < nb; ++k) ib.push_back(n + na + k);
    CMatrix sigma = CMatrix::Zero(2 * n, 2 * n);
    CVector d = CVector::Zero(2 * n);
    for (std::size_t i = 0; i < ia.size(); ++i) {
        d(ia[i]) = a.first_moments()(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < ia.size(); ++j) {
            sigma(ia[i], ia[j]) = a.covariance()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    for (std::size_t i = 0; i < ib.size(); ++i) {
        d(ib[i]) = b.first_moments()(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < ib.size(); ++j) {
            sigma(ib[i], ib[j]) = b.covariance()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return {std::move(d), std::move(sigma)};
}

inline std::vector<double> williamson_eigenvalues(const GaussianState& state) {
    return detail::paired_symplectic_eigenvalues(state.covariance());
}

inline bool is_pure(const GaussianState& state, double tol = 1e-10) {
    const auto nu = williamson_eigenvalues(state);
    return std::all_of(nu.begin(), nu.end(), [tol](double v) { return std::abs(v - 1.0) <= tol; });
}

// Keeps the listed modes (as a set, in ascending order).
inline GaussianState partial_trace(const GaussianState& state, std::vector<Eigen::Index> keep) {
    if (keep.empty()) throw IndexError("partial_trace: keep set is empty");
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) throw IndexError("partial_trace: repeated mode index");
    const Eigen::Index n = state.n_modes();
    for (auto k : keep) {
        if (k < 0 || k >= n) throw IndexError("partial_trace: mode index " + std::to_string(k) + " out of range");
    }
    const auto m = static_cast<Eigen::Index>(keep.size());
    std::vector<Eigen::Index> idx(2 * keep.size());
    for (Eigen::Index i = 0; i < m; ++i) {
        idx[i] = keep[i];
        idx[m + i] = n + keep[i];
    }
    CMatrix sigma(2 * m, 2 * m);
    CVector d(2 * m);
    for (Eigen::Index i = 0; i < 2 * m; ++i) {
        d(i) = state.first_moments()(idx[i]);
        for (Eigen::Index j = 0; j < 2 * m; ++j) sigma(i, j) = state.covariance()(idx[i], idx[j]);
    }
    return {std::move(d), std::move(sigma)};
}

// N = sum_k (sigma_kk - 1)/2 + |d_k|^2 over the annihilation-operator block.
inline double mean_photon_number(const GaussianState& state) {
    const Eigen::Index n = state.n_modes();
    double total = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        total += 0.5 * (state.covariance()(k, k).real() - 1.0) + std::norm(state.first_moments()(k));
    }
    return total;
}

}  // namespace graviphoton

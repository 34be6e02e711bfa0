// SPDX-License-Identifier: Apache-2.0
// Gaussian fidelity, finite-difference quantum Fisher information, the
// four-mode redshift sensing channel and the Cramer-Rao bound.
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/gaussian.hpp"
#include "graviphoton/linalg.hpp"
#include "graviphoton/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <typeinfo>

namespace graviphoton {

struct FidelityInputs {
    CMatrix sigma_a;
    CMatrix sigma_b;
};

enum class FidelityMethod { PureOverlap, TwoMode, MultiMode };

struct FidelityReport {
    double value = 1.0;
    FidelityMethod method = FidelityMethod::TwoMode;
    // Argument of the inner square root before clamping; zero when unused.
    double inner_argument = 0.0;
    // Set when a negative inner argument (within tolerance) or an F marginally
    // outside [0, 1] was clamped.
    bool clamped = false;
};

inline constexpr double fidelity_clamp_tolerance = 1e-9;
inline constexpr double purity_shortcut_tolerance = 1e-12;

namespace detail {

using RMatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline CMatrix pad_with_vacuum(const CMatrix& sigma) {
    CMatrix out = CMatrix::Identity(4, 4);
    out(0, 0) = sigma(0, 0);
    out(0, 2) = sigma(0, 1);
    out(2, 0) = sigma(1, 0);
    out(2, 2) = sigma(1, 1);
    return out;
}

// Real quadrature covariance (q_1..q_N, p_1..p_N) with vacuum = 1/2.
inline RMatrixL quadrature_covariance(const CMatrix& sigma) {
    const Eigen::Index n = sigma.rows() / 2;
    CMatrixL t = CMatrixL::Zero(2 * n, 2 * n);
    using cl = std::complex<long double>;
    for (Eigen::Index k = 0; k < n; ++k) {
        t(k, k) = cl(1.0L, 0.0L);
        t(k, n + k) = cl(1.0L, 0.0L);
        t(n + k, k) = cl(0.0L, -1.0L);
        t(n + k, n + k) = cl(0.0L, 1.0L);
    }
    const CMatrixL v = 0.25L * t * sigma.cast<cl>() * t.adjoint();
    RMatrixL r = v.real();
    return 0.5L * (r + r.transpose());
}

inline RMatrixL real_symplectic_form(Eigen::Index n) {
    RMatrixL j = RMatrixL::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -RMatrixL::Identity(n, n);
    return j;
}

// Principal square root by the Denman-Beavers iteration.
inline RMatrixL sqrt_denman_beavers(const RMatrixL& a) {
    RMatrixL y = a;
    RMatrixL z = RMatrixL::Identity(a.rows(), a.cols());
    for (int it = 0; it < 100; ++it) {
        const RMatrixL yi = y.partialPivLu().inverse();
        const RMatrixL zi = z.partialPivLu().inverse();
        const RMatrixL y_next = 0.5L * (y + zi);
        z = 0.5L * (z + yi);
        const long double delta = (y_next - y).norm();
        y = y_next;
        if (delta <= 1e-17L * y.norm()) return y;
    }
    throw NumericalError("matrix square root did not converge");
}

inline double clamp_fidelity(long double f, FidelityReport& rep) {
    if (!std::isfinite(static_cast<double>(f)) || f < -fidelity_clamp_tolerance || f > 1.0L + fidelity_clamp_tolerance) {
        throw NumericalError("fidelity evaluated outside [0, 1]: " + std::to_string(static_cast<double>(f)));
    }
    if (f < 0.0L || f > 1.0L) {
        rep.clamped = true;
        f = std::clamp(f, 0.0L, 1.0L);
    }
    return static_cast<double>(f);
}

// F = 2^N / sqrt det(sigma_a + sigma_b); exact when either state is pure.
inline FidelityReport fidelity_pure(const CMatrix& sa, const CMatrix& sb) {
    FidelityReport rep;
    rep.method = FidelityMethod::PureOverlap;
    const Eigen::Index n = sa.rows() / 2;
    const long double det = determinant_l(sa + sb).real();
    if (!(det > 0.0L)) throw NumericalError("non-positive determinant in overlap fidelity");
    rep.value = clamp_fidelity(std::pow(2.0L, static_cast<long double>(n)) / std::sqrt(det), rep);
    return rep;
}

// Two-mode determinant formula
// F = 4 / (sqrt g + sqrt l - sqrt((sqrt g + sqrt l)^2 - eta)).
inline FidelityReport fidelity_two_mode(const CMatrix& sa, const CMatrix& sb) {
    FidelityReport rep;
    rep.method = FidelityMethod::TwoMode;
    using cl = std::complex<long double>;
    const Eigen::Index dim = sa.rows();
    const auto n = dim / 2;
    const CMatrixL a = sa.cast<cl>();
    const CMatrixL b = sb.cast<cl>();
    CMatrixL d = CMatrixL::Zero(dim, dim);
    CMatrixL o = CMatrixL::Zero(dim, dim);
    for (Eigen::Index k = 0; k < n; ++k) {
        d(k, k) = 1.0L;
        d(n + k, n + k) = -1.0L;
        o(k, k) = cl(0.0L, -1.0L);
        o(n + k, n + k) = cl(0.0L, 1.0L);
    }
    const CMatrixL id = CMatrixL::Identity(dim, dim);
    const long double gamma = (id + d * a * d * b).partialPivLu().determinant().real();
    const long double lambda = ((id + d * a).partialPivLu().determinant() * (id + d * b).partialPivLu().determinant()).real();
    const long double eta = (o * a + o * b).partialPivLu().determinant().real();
    const long double sg = std::sqrt(std::max(gamma, 0.0L));
    const long double sl = std::sqrt(std::max(lambda, 0.0L));
    long double inner = (sg + sl) * (sg + sl) - eta;
    rep.inner_argument = static_cast<double>(inner);
    if (inner < 0.0L) {
        if (inner < -fidelity_clamp_tolerance * std::max(1.0L, (sg + sl) * (sg + sl))) {
            throw NumericalError("negative argument under the fidelity square root");
        }
        rep.clamped = true;
        inner = 0.0L;
    }
    const long double denom = sg + sl - std::sqrt(inner);
    if (!(denom > 0.0L)) throw NumericalError("non-positive fidelity denominator");
    rep.value = clamp_fidelity(4.0L / denom, rep);
    return rep;
}

// General N-mode expression in the real quadrature picture (vacuum = 1/2).
inline FidelityReport fidelity_multimode(const CMatrix& sa, const CMatrix& sb) {
    FidelityReport rep;
    rep.method = FidelityMethod::MultiMode;
    const Eigen::Index n = sa.rows() / 2;
    const RMatrixL v1 = quadrature_covariance(sa);
    const RMatrixL v2 = quadrature_covariance(sb);
    const RMatrixL j = real_symplectic_form(n);
    const RMatrixL id = RMatrixL::Identity(2 * n, 2 * n);
    const RMatrixL sum = v1 + v2;
    const RMatrixL vaux = j.transpose() * sum.partialPivLu().solve(0.25L * j + v2 * j * v1);
    const RMatrixL vj_inv = (vaux * j).partialPivLu().inverse();
    const RMatrixL x = sqrt_denman_beavers(id + 0.25L * vj_inv * vj_inv);
    const long double num = (2.0L * (x + id) * vaux).partialPivLu().determinant();
    const long double den = sum.partialPivLu().determinant();
    const long double ratio = num / den;
    if (!(ratio > -fidelity_clamp_tolerance)) throw NumericalError("negative determinant ratio in fidelity");
    rep.value = clamp_fidelity(std::sqrt(std::max(ratio, 0.0L)), rep);
    return rep;
}

}  // namespace detail

inline FidelityReport gaussian_fidelity_report(const GaussianState& a, const GaussianState& b) {
    if (a.n_modes() != b.n_modes()) throw DimensionMismatch("fidelity of states with different mode counts");
    if (!a.has_zero_first_moments() || !b.has_zero_first_moments()) {
        throw DomainError("fidelity is implemented for zero first moments only");
    }
    const auto nu_a = williamson_eigenvalues(a);
    const auto nu_b = williamson_eigenvalues(b);
    auto pure = [](const std::vector<double>& nu) {
        return std::all_of(nu.begin(), nu.end(), [](double v) { return std::abs(v - 1.0) <= purity_shortcut_tolerance; });
    };
    if (pure(nu_a) || pure(nu_b)) return detail::fidelity_pure(a.covariance(), b.covariance());
    if (a.n_modes() == 1) {
        return detail::fidelity_two_mode(detail::pad_with_vacuum(a.covariance()), detail::pad_with_vacuum(b.covariance()));
    }
    if (a.n_modes() == 2) return detail::fidelity_two_mode(a.covariance(), b.covariance());
    return detail::fidelity_multimode(a.covariance(), b.covariance());
}

inline double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
    return gaussian_fidelity_report(a, b).value;
}

inline double gaussian_fidelity(const FidelityInputs& in) {
    if (in.sigma_a.rows() != in.sigma_b.rows() || in.sigma_a.cols() != in.sigma_b.cols()) {
        throw DimensionMismatch("fidelity inputs have different shapes");
    }
    const GaussianState a(CVector::Zero(in.sigma_a.rows()), in.sigma_a);
    const GaussianState b(CVector::Zero(in.sigma_b.rows()), in.sigma_b);
    return gaussian_fidelity(a, b);
}

struct EstimationReport {
    double parameter_value = 0.0;
    double qfi = 0.0;
    double cramer_rao_bound = std::numeric_limits<double>::infinity();
    std::size_t probe_count = 1;
    double step_used = 0.0;
    // F(rho(theta - h'), rho(theta + h')) at the reported step h'.
    double fidelity_step = 1.0;
};

inline double cramer_rao_bound(double qfi, std::size_t probes) {
    if (!(qfi > 0.0)) throw DomainError("Cramer-Rao bound needs qfi > 0");
    if (probes == 0) throw DomainError("probe count must be positive");
    return 1.0 / (static_cast<double>(probes) * qfi);
}

using ParametrizedState = std::function<GaussianState(double)>;

struct QfiOptions {
    double relative_step = 1e-3;
    std::size_t probes = 1;
    double min_step = 1e-12;
};

// H = 8 (1 - sqrt F(rho(t - h), rho(t + h))) / (2h)^2, one Richardson level
// over (h, h/2). h shrinks if the channel rejects t +- h.
inline EstimationReport qfi_finite_difference(const ParametrizedState& channel, double theta, const QfiOptions& opt = {}) {
    if (!std::isfinite(theta)) throw DomainError("parameter must be finite");
    if (opt.probes == 0) throw DomainError("probe count must be positive");
    double h = opt.relative_step * std::max(1.0, std::abs(theta));
    auto estimate = [&](double step, double& fid) {
        const GaussianState lo = channel(theta - step);
        const GaussianState hi = channel(theta + step);
        fid = gaussian_fidelity(lo, hi);
        return 8.0 * (1.0 - std::sqrt(fid)) / (4.0 * step * step);
    };
    for (;;) {
        if (h / 2 < opt.min_step) throw StepUnderflow("finite-difference step fell below " + std::to_string(opt.min_step));
        try {
            double f_coarse = 1.0;
            double f_fine = 1.0;
            const double h_coarse = estimate(h, f_coarse);
            const double h_fine = estimate(h / 2, f_fine);
            EstimationReport rep;
            rep.parameter_value = theta;
            rep.qfi = std::max(0.0, (4.0 * h_fine - h_coarse) / 3.0);
            rep.probe_count = opt.probes;
            rep.step_used = h / 2;
            rep.fidelity_step = f_fine;
            if (rep.qfi > 0.0) rep.cramer_rao_bound = cramer_rao_bound(rep.qfi, opt.probes);
            return rep;
        } catch (const DomainError& e) {
            // Only a plain domain rejection of theta +- h is retried.
            if (typeid(e) != typeid(DomainError)) throw;
            h /= 2;
        }
    }
}

struct SensingChannel {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double r = 0.0;
};

struct SensingSetup {
    GaussianState initial;
    // (theta1, theta2) -> reduced state of the probe modes (b1, b2).
    std::function<GaussianState(double, double)> map;
};

inline void check_sensing_angle(double t) {
    if (!std::isfinite(t) || t < 0.0 || t > std::numbers::pi / 2) {
        throw DomainError("sensing angle must lie in [0, pi/2]");
    }
}

// Mixers (b1, c1) and (b2, c2) on the mode order (b1, b2, c1, c2).
inline SymplecticMatrix sensing_full_symplectic(double theta1, double theta2) {
    check_sensing_angle(theta1);
    check_sensing_angle(theta2);
    CMatrix u = CMatrix::Identity(4, 4);
    u(0, 0) = std::cos(theta1);
    u(0, 2) = std::sin(theta1);
    u(2, 0) = -std::sin(theta1);
    u(2, 2) = std::cos(theta1);
    u(1, 1) = std::cos(theta2);
    u(1, 3) = std::sin(theta2);
    u(3, 1) = -std::sin(theta2);
    u(3, 3) = std::cos(theta2);
    return passive_from_unitary(u);
}

// Probe: two-mode squeezed vacuum on (b1, b2); ancillas (c1, c2) in vacuum.
inline SensingSetup build_sensing_channel(const SensingChannel& c) {
    check_sensing_angle(c.theta1);
    check_sensing_angle(c.theta2);
    if (!std::isfinite(c.r)) throw DomainError("squeezing must be finite");
    const GaussianState initial = apply_symplectic(state_vacuum(4), embed(gate_two_mode_squeezer(c.r), 4, {0, 1}));
    auto map = [initial](double t1, double t2) {
        return partial_trace(apply_symplectic(initial, sensing_full_symplectic(t1, t2)), {0, 1});
    };
    return {initial, map};
}

// theta -> reduced probe state with theta1 = theta2 = theta.
inline ParametrizedState single_parameter_sensing(const SensingSetup& setup) {
    return [map = setup.map](double t) { return map(t, t); };
}

}  // namespace graviphoton

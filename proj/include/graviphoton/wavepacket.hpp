// SPDX-License-Identifier: Apache-2.0
// Photon spectral profiles F(omega), the redshift transformation law
// F'(omega) = chi F(chi^2 omega), and mode overlaps.
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/quadrature.hpp"
#include "graviphoton/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace graviphoton {

using cld = std::complex<long double>;

// Normalized Gaussian amplitude (pi sigma^2)^(-1/4) exp(-(w - w0)^2 / (2 sigma^2)).
struct GaussianSpectrum {
    long double omega0;
    long double sigma;
};

// Samples of F on strictly increasing non-negative frequencies, evaluated by
// local cubic Lagrange interpolation and taken as zero outside the node range.
struct GridSpectrum {
    std::vector<long double> omega;
    std::vector<cld> amplitude;
};

inline constexpr long double gaussian_support_halfwidth = 12.0L;  // in units of sigma
inline constexpr double normalization_tolerance = 1e-9;

class SpectralProfile {
public:
    static SpectralProfile gaussian(long double omega0, long double sigma, double phase_rad = 0.0) {
        if (!(omega0 > 0.0L) || !(sigma > 0.0L) || !std::isfinite(static_cast<double>(omega0)) ||
            !std::isfinite(static_cast<double>(sigma))) {
            throw DomainError("gaussian profile needs positive finite omega0 and sigma");
        }
        if (!(omega0 / sigma > 8.0L)) throw DomainError("gaussian profile needs omega0/sigma > 8");
        return SpectralProfile(GaussianSpectrum{omega0, sigma}, phase_rad);
    }

    static SpectralProfile grid(std::vector<long double> omega, std::vector<cld> amplitude, bool normalize = false,
                                double phase_rad = 0.0) {
        if (omega.size() != amplitude.size()) throw DomainError("grid frequency and amplitude lengths differ");
        if (omega.size() < 2) throw DomainError("grid needs at least two nodes");
        for (std::size_t i = 0; i < omega.size(); ++i) {
            if (!std::isfinite(static_cast<double>(omega[i])) || omega[i] < 0.0L) {
                throw DomainError("grid frequencies must be finite and non-negative");
            }
            if (i > 0 && !(omega[i] > omega[i - 1])) throw DomainError("grid frequencies must be strictly increasing");
            if (!std::isfinite(static_cast<double>(amplitude[i].real())) ||
                !std::isfinite(static_cast<double>(amplitude[i].imag()))) {
                throw DomainError("grid amplitudes must be finite");
            }
        }
        SpectralProfile p(GridSpectrum{std::move(omega), std::move(amplitude)}, phase_rad);
        if (normalize) {
            const long double n = p.norm_l();
            if (!(n > 0.0L)) throw NormalizationError("grid profile has zero norm");
            for (auto& a : std::get<GridSpectrum>(p.rep_).amplitude) a /= n;
        }
        return p;
    }

    bool is_gaussian() const noexcept { return std::holds_alternative<GaussianSpectrum>(rep_); }
    const GaussianSpectrum* as_gaussian() const noexcept { return std::get_if<GaussianSpectrum>(&rep_); }
    const GridSpectrum* as_grid() const noexcept { return std::get_if<GridSpectrum>(&rep_); }
    double phase_rad() const noexcept { return phase_; }

    cld operator()(long double w) const {
        const cld phase = std::polar(1.0L, static_cast<long double>(phase_));
        if (const auto* g = as_gaussian()) {
            if (w < 0.0L) return {0.0L, 0.0L};
            const long double x = (w - g->omega0) / g->sigma;
            const long double pre = 1.0L / std::sqrt(std::sqrt(std::numbers::pi_v<long double>) * g->sigma);
            return phase * (pre * std::exp(-0.5L * x * x));
        }
        return phase * interpolate(std::get<GridSpectrum>(rep_), w);
    }

    // Interval outside of which the amplitude is zero or negligible.
    std::pair<long double, long double> support() const {
        if (const auto* g = as_gaussian()) {
            return {std::max(0.0L, g->omega0 - gaussian_support_halfwidth * g->sigma),
                    g->omega0 + gaussian_support_halfwidth * g->sigma};
        }
        const auto& grid = std::get<GridSpectrum>(rep_);
        return {grid.omega.front(), grid.omega.back()};
    }

    std::vector<long double> breakpoints() const {
        if (const auto* g = as_gaussian()) return {g->omega0};
        return std::get<GridSpectrum>(rep_).omega;
    }

    long double norm_l() const {
        const auto [lo, hi] = support();
        auto integrand = [this](long double w) { return std::norm((*this)(w)); };
        return std::sqrt(quad::integrate<long double>(integrand, lo, hi, breakpoints()).value);
    }
    double norm() const { return static_cast<double>(norm_l()); }

    void require_normalized() const {
        const double n = norm();
        if (!(std::abs(n - 1.0) <= normalization_tolerance)) {
            throw NormalizationError("spectral profile norm " + std::to_string(n) + " differs from 1");
        }
    }

    // Exact image under omega -> chi F(chi^2 omega). Gaussians map in closed
    // form; grids are relabelled (nodes / chi^2, amplitudes * chi), which is
    // the exact image of the interpolant.
    SpectralProfile redshifted(const RedshiftFactor& chi) const {
        const long double c2 = chi.chi_squared_l();
        const long double c1 = chi.chi_l();
        if (const auto* g = as_gaussian()) {
            return SpectralProfile(GaussianSpectrum{g->omega0 / c2, g->sigma / c2}, phase_);
        }
        GridSpectrum out = std::get<GridSpectrum>(rep_);
        for (auto& w : out.omega) w /= c2;
        for (auto& a : out.amplitude) a *= c1;
        return SpectralProfile(std::move(out), phase_);
    }

private:
    using Rep = std::variant<GaussianSpectrum, GridSpectrum>;
    SpectralProfile(Rep rep, double phase) : rep_(std::move(rep)), phase_(phase) {}

    static cld interpolate(const GridSpectrum& g, long double w) {
        const auto& x = g.omega;
        const std::size_t n = x.size();
        if (w < x.front() || w > x.back()) return {0.0L, 0.0L};
        auto it = std::upper_bound(x.begin(), x.end(), w);
        std::size_t j = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        if (j >= n - 1) j = n - 2;
        const std::size_t m = std::min<std::size_t>(4, n);
        std::size_t s = (j >= 1) ? j - 1 : 0;
        if (s + m > n) s = n - m;
        cld acc{0.0L, 0.0L};
        for (std::size_t i = s; i < s + m; ++i) {
            long double l = 1.0L;
            for (std::size_t k = s; k < s + m; ++k) {
                if (k != i) l *= (w - x[k]) / (x[i] - x[k]);
            }
            acc += g.amplitude[i] * l;
        }
        return acc;
    }

    Rep rep_;
    double phase_ = 0.0;
};

struct ModeOverlap {
    std::complex<double> value;
    double abs_error = 0.0;
    double magnitude() const { return std::abs(value); }
    double phase() const { return std::arg(value); }
};

struct MixingAngle {
    double theta = 0.0;
    double phi = 0.0;
};

inline SpectralProfile redshift_transform(const SpectralProfile& profile, const RedshiftFactor& chi) {
    profile.require_normalized();
    return profile.redshifted(chi);
}

// <F, G> = integral over omega >= 0 of conj(F) G.
inline ModeOverlap overlap_unchecked(const SpectralProfile& expected, const SpectralProfile& received) {
    const auto [lo1, hi1] = expected.support();
    const auto [lo2, hi2] = received.support();
    const long double lo = std::max(lo1, lo2);
    const long double hi = std::min(hi1, hi2);
    if (!(hi > lo)) return {};
    std::vector<long double> bp = expected.breakpoints();
    const auto bp2 = received.breakpoints();
    bp.insert(bp.end(), bp2.begin(), bp2.end());
    auto integrand = [&](long double w) { return std::conj(expected(w)) * received(w); };
    const auto r = quad::integrate<cld>(integrand, lo, hi, std::move(bp));
    return {std::complex<double>(static_cast<double>(r.value.real()), static_cast<double>(r.value.imag())),
            static_cast<double>(r.abs_error)};
}

inline ModeOverlap overlap(const SpectralProfile& expected, const SpectralProfile& received) {
    expected.require_normalized();
    received.require_normalized();
    return overlap_unchecked(expected, received);
}

// theta = arccos |<F, T(chi) F>|, phi fixed to 0 by the phase convention.
inline MixingAngle mixing_angle(const SpectralProfile& expected, const RedshiftFactor& chi) {
    if (chi.is_identity()) {
        expected.require_normalized();
        return {};
    }
    const auto ov = overlap(expected, redshift_transform(expected, chi));
    return {std::acos(std::min(1.0, ov.magnitude())), 0.0};
}

// Commutator scale 1/|alpha| of the naive sharp-frequency map a(w) -> a(alpha w).
inline double sharp_commutator_scale(double alpha) {
    if (alpha == 0.0 || std::isnan(alpha)) throw DomainError("alpha must be non-zero");
    return 1.0 / std::abs(alpha);
}

}  // namespace graviphoton

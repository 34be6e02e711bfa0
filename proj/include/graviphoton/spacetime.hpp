// SPDX-License-Identifier: Apache-2.0
// Static and circular-orbit observers in Schwarzschild spacetime. SI units in,
// dimensionless redshift factors out.
#pragma once

#include "graviphoton/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace graviphoton {

namespace constants {
inline constexpr double speed_of_light_m_s = 299792458.0;
inline constexpr double gravitational_constant = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double earth_mass_kg = 5.972e24;
inline constexpr double earth_radius_m = 6.371e6;
}  // namespace constants

// Smallest admitted value of f(r) = 1 - r_S/r (and of 1 - 3GM/(c^2 r) for orbits).
inline constexpr double horizon_margin = 1e-12;

class SchwarzschildGeometry {
public:
    static SchwarzschildGeometry from_radius(double schwarzschild_radius_m) {
        if (!(schwarzschild_radius_m > 0.0) || !std::isfinite(schwarzschild_radius_m)) {
            throw DomainError("Schwarzschild radius must be positive and finite");
        }
        return SchwarzschildGeometry(schwarzschild_radius_m);
    }

    static SchwarzschildGeometry from_mass(double mass_kg) {
        if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
            throw DomainError("mass must be positive and finite");
        }
        constexpr double c = constants::speed_of_light_m_s;
        return from_radius(2.0 * constants::gravitational_constant * mass_kg / (c * c));
    }

    static SchwarzschildGeometry earth() { return from_mass(constants::earth_mass_kg); }

    double schwarzschild_radius_m() const noexcept { return r_s_; }
    double mass_kg() const noexcept {
        constexpr double c = constants::speed_of_light_m_s;
        return r_s_ * c * c / (2.0 * constants::gravitational_constant);
    }
    // G M in m^3/s^2.
    double gm() const noexcept {
        constexpr double c = constants::speed_of_light_m_s;
        return 0.5 * r_s_ * c * c;
    }

    // log f(r) with f = 1 - r_S/r. Throws for r inside (or at) the horizon margin.
    long double log_f(double r) const {
        check_radius(r);
        if (std::isinf(r)) return 0.0L;
        const long double u = static_cast<long double>(r_s_) / static_cast<long double>(r);
        if (1.0L - u < horizon_margin) {
            throw HorizonError("radius " + std::to_string(r) + " m is inside or too close to the horizon");
        }
        return std::log1p(-u);
    }

    double f(double r) const { return static_cast<double>(std::exp(log_f(r))); }

    // log(1 - 3GM/(c^2 r)) for a circular orbit of radius r.
    long double log_orbit_norm(double r) const {
        check_radius(r);
        if (std::isinf(r)) return 0.0L;
        const long double u = 1.5L * static_cast<long double>(r_s_) / static_cast<long double>(r);
        if (1.0L - u < horizon_margin) {
            throw OrbitDomainError("no timelike circular orbit at radius " + std::to_string(r) + " m");
        }
        return std::log1p(-u);
    }

private:
    explicit SchwarzschildGeometry(double r_s) : r_s_(r_s) {}

    static void check_radius(double r) {
        if (std::isnan(r) || !(r > 0.0)) throw DomainError("radius must be positive");
    }

    double r_s_;
};

class ObserverPath {
public:
    enum class Kind { StaticRadius, CircularOrbit };

    static ObserverPath static_radius(double radius_m) { return ObserverPath(Kind::StaticRadius, radius_m); }
    static ObserverPath circular_orbit(double radius_m) {
        if (std::isinf(radius_m)) throw DomainError("orbit radius must be finite");
        return ObserverPath(Kind::CircularOrbit, radius_m);
    }

    Kind kind() const noexcept { return kind_; }
    double radius_m() const noexcept { return radius_; }

    // Throws the matching error if the path is not admissible in geom.
    void check(const SchwarzschildGeometry& geom) const {
        if (kind_ == Kind::StaticRadius) {
            (void)geom.log_f(radius_);
        } else {
            (void)geom.log_orbit_norm(radius_);
        }
    }

private:
    ObserverPath(Kind k, double r) : kind_(k), radius_(r) {
        if (std::isnan(r) || !(r > 0.0)) throw DomainError("radius must be positive");
    }

    Kind kind_;
    double radius_;
};

// chi^2 = omega_B / omega_A. Stored as log(chi^2) so that z = chi^2 - 1 stays
// accurate for tiny shifts and chi(a,b) chi(b,a) = 1 holds to rounding.
class RedshiftFactor {
public:
    RedshiftFactor() = default;

    static RedshiftFactor identity() { return RedshiftFactor{}; }

    static RedshiftFactor from_log_chi_squared(long double log_chi_sq) {
        if (!std::isfinite(static_cast<double>(log_chi_sq))) throw DomainError("redshift factor must be finite");
        RedshiftFactor r;
        r.log_chi_sq_ = log_chi_sq;
        return r;
    }

    static RedshiftFactor from_chi(double chi) {
        if (!(chi > 0.0) || !std::isfinite(chi)) throw DomainError("chi must be positive and finite");
        return from_log_chi_squared(2.0L * std::log(static_cast<long double>(chi)));
    }

    static RedshiftFactor from_chi_squared_minus_one(double z) {
        if (!(z > -1.0) || !std::isfinite(z)) throw DomainError("chi^2 - 1 must exceed -1");
        return from_log_chi_squared(std::log1p(static_cast<long double>(z)));
    }

    double chi() const noexcept { return static_cast<double>(chi_l()); }
    double chi_squared() const noexcept { return static_cast<double>(chi_squared_l()); }
    double z() const noexcept { return static_cast<double>(z_l()); }

    long double chi_l() const noexcept { return std::exp(0.5L * log_chi_sq_); }
    long double chi_squared_l() const noexcept { return std::exp(log_chi_sq_); }
    long double z_l() const noexcept { return std::expm1(log_chi_sq_); }
    long double log_chi_squared() const noexcept { return log_chi_sq_; }

    bool is_identity() const noexcept { return log_chi_sq_ == 0.0L; }

    RedshiftFactor inverse() const { return from_log_chi_squared(-log_chi_sq_); }

    // Composition of successive legs: chi(a->c) = chi(a->b) chi(b->c).
    friend RedshiftFactor operator*(const RedshiftFactor& a, const RedshiftFactor& b) {
        return from_log_chi_squared(a.log_chi_sq_ + b.log_chi_sq_);
    }

private:
    long double log_chi_sq_ = 0.0L;
};

// chi^2 = sqrt f(r_emit) / sqrt f(r_receive)
inline RedshiftFactor redshift_static_static(const SchwarzschildGeometry& geom, double r_emit, double r_receive) {
    const long double la = geom.log_f(r_emit);
    const long double lb = geom.log_f(r_receive);
    return RedshiftFactor::from_log_chi_squared(0.5L * (la - lb));
}

// chi^2 = sqrt(1 - 2GM/(c^2 r_A)) / sqrt(1 - 3GM/(c^2 r_B)), radial photon.
inline RedshiftFactor redshift_static_orbit(const SchwarzschildGeometry& geom, double r_static_emit,
                                            double r_orbit_receive) {
    const long double la = geom.log_f(r_static_emit);
    const long double lb = geom.log_orbit_norm(r_orbit_receive);
    return RedshiftFactor::from_log_chi_squared(0.5L * (la - lb));
}

// Proper acceleration of a static observer, G M / r^2.
inline double static_proper_acceleration(const SchwarzschildGeometry& geom, double r) {
    (void)geom.log_f(r);
    if (std::isinf(r)) return 0.0;
    return geom.gm() / (r * r);
}

// Angular velocity of a circular orbit, sqrt(G M / r^3).
inline double circular_orbit_angular_velocity(const SchwarzschildGeometry& geom, double r) {
    (void)geom.log_orbit_norm(r);
    return std::sqrt(geom.gm() / r) / r;
}

}  // namespace graviphoton

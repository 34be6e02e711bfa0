// SPDX-License-Identifier: Apache-2.0
// Gravitational error floor of two-photon-interference links.
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/spacetime.hpp"
#include "graviphoton/wavepacket.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace graviphoton {

struct LinkScenario {
    SchwarzschildGeometry geometry;
    ObserverPath emitter;
    ObserverPath receiver;
    SpectralProfile profile;
};

struct QberReport {
    RedshiftFactor chi;
    double overlap_magnitude = 1.0;
    double visibility = 1.0;
    double qber = 0.0;
    // Extension point for apparatus losses; not used by the error model.
    double efficiency = 1.0;
};

struct QberRow {
    double sigma_rad_s = 0.0;
    QberReport report;
};

namespace detail {

inline long double log_norm(const SchwarzschildGeometry& g, const ObserverPath& p) {
    return p.kind() == ObserverPath::Kind::StaticRadius ? g.log_f(p.radius_m()) : g.log_orbit_norm(p.radius_m());
}

}  // namespace detail

// Static/static uses the static-observer formula, static/orbit the
// circular-orbit formula. Orbit emitters use the same radial-photon norms,
// so every leg composes through any static intermediate observer.
inline RedshiftFactor link_redshift(const SchwarzschildGeometry& g, const ObserverPath& e, const ObserverPath& r) {
    using K = ObserverPath::Kind;
    if (e.kind() == K::StaticRadius && r.kind() == K::StaticRadius) {
        return redshift_static_static(g, e.radius_m(), r.radius_m());
    }
    if (e.kind() == K::StaticRadius && r.kind() == K::CircularOrbit) {
        return redshift_static_orbit(g, e.radius_m(), r.radius_m());
    }
    return RedshiftFactor::from_log_chi_squared(0.5L * (detail::log_norm(g, e) - detail::log_norm(g, r)));
}

inline RedshiftFactor link_redshift(const LinkScenario& s) { return link_redshift(s.geometry, s.emitter, s.receiver); }

inline QberReport qber_from_overlap(const RedshiftFactor& chi, double overlap_magnitude) {
    QberReport rep;
    rep.chi = chi;
    rep.overlap_magnitude = std::clamp(overlap_magnitude, 0.0, 1.0);
    rep.visibility = rep.overlap_magnitude * rep.overlap_magnitude;
    rep.qber = 0.5 * (1.0 - rep.visibility);
    return rep;
}

// qber = (1 - |<F, T(chi) F>|^2) / 2 for a perfect 50:50 interference apparatus.
inline QberReport interference_qber(const LinkScenario& s) {
    s.emitter.check(s.geometry);
    s.receiver.check(s.geometry);
    const RedshiftFactor chi = link_redshift(s);
    if (chi.is_identity()) {
        s.profile.require_normalized();
        return qber_from_overlap(chi, 1.0);
    }
    const auto ov = overlap(s.profile, redshift_transform(s.profile, chi));
    return qber_from_overlap(chi, ov.magnitude());
}

// Replaces the Gaussian bandwidth by each grid value; rows are evaluated on
// up to `jobs` threads and returned in grid order.
inline std::vector<QberRow> qber_bandwidth_sweep(const LinkScenario& s, const std::vector<double>& sigma_grid,
                                                 unsigned jobs = 1) {
    const auto* g = s.profile.as_gaussian();
    if (g == nullptr) throw DomainError("bandwidth sweep needs a gaussian profile");
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        if (!(sigma_grid[i] > 0.0) || !std::isfinite(sigma_grid[i])) throw DomainError("sigma grid must be positive");
        if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1])) throw DomainError("sigma grid must be strictly increasing");
    }
    std::vector<SpectralProfile> profiles;
    profiles.reserve(sigma_grid.size());
    for (double sg : sigma_grid) profiles.push_back(SpectralProfile::gaussian(g->omega0, sg, s.profile.phase_rad()));

    s.emitter.check(s.geometry);
    s.receiver.check(s.geometry);
    const RedshiftFactor chi = link_redshift(s);

    std::vector<QberRow> rows(sigma_grid.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(sigma_grid.size());
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                double mag = 1.0;
                if (!chi.is_identity()) mag = overlap(profiles[i], profiles[i].redshifted(chi)).magnitude();
                rows[i] = {sigma_grid[i], qber_from_overlap(chi, mag)};
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rows.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return rows;
}

}  // namespace graviphoton

// SPDX-License-Identifier: Apache-2.0
// JSON records for states, symplectic matrices and spectral profiles.
// Complex arrays are row-major lists of [re, im] pairs.
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/gaussian.hpp"
#include "graviphoton/symplectic.hpp"
#include "graviphoton/wavepacket.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace graviphoton::io {

using json = nlohmann::json;

namespace detail {

inline json complex_array(const CMatrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
    }
    return {{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

inline CMatrix parse_complex_array(const json& j, const std::string& where) {
    try {
        const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
        if (shape.size() != 2 || shape[0] < 0 || shape[1] < 0) throw ConfigParseError(where + ".shape", "shape must have two non-negative entries");
        const auto& data = j.at("data");
        if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != shape[0] * shape[1]) {
            throw ConfigParseError(where + ".data", "data length does not match shape");
        }
        CMatrix m(shape[0], shape[1]);
        std::size_t k = 0;
        for (Eigen::Index r = 0; r < shape[0]; ++r) {
            for (Eigen::Index c = 0; c < shape[1]; ++c, ++k) {
                const auto& pair = data[k];
                if (!pair.is_array() || pair.size() != 2) throw ConfigParseError(where + ".data", "entries must be [re, im] pairs");
                m(r, c) = cd(pair[0].get<double>(), pair[1].get<double>());
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw ConfigParseError(where, e.what());
    }
}

}  // namespace detail

inline json to_json(const SymplecticMatrix& s) {
    return {{"kind", "symplectic_matrix"}, {"n_modes", s.n_modes()}, {"matrix", detail::complex_array(s.matrix())}};
}

inline json to_json(const GaussianState& g) {
    const CMatrix d = g.first_moments();
    return {{"kind", "gaussian_state"},
            {"n_modes", g.n_modes()},
            {"first_moments", detail::complex_array(d)},
            {"covariance", detail::complex_array(g.covariance())}};
}

inline SymplecticMatrix symplectic_from_json(const json& j) {
    if (!j.is_object() || j.value("kind", "") != "symplectic_matrix") throw ConfigParseError("kind", "expected a symplectic_matrix record");
    return SymplecticMatrix(detail::parse_complex_array(j.at("matrix"), "matrix"));
}

inline GaussianState gaussian_state_from_json(const json& j) {
    if (!j.is_object() || j.value("kind", "") != "gaussian_state") throw ConfigParseError("kind", "expected a gaussian_state record");
    if (!j.contains("first_moments") || !j.contains("covariance")) throw ConfigParseError("", "gaussian_state needs first_moments and covariance");
    const CMatrix d = detail::parse_complex_array(j.at("first_moments"), "first_moments");
    if (d.cols() != 1) throw ConfigParseError("first_moments.shape", "first moments must be a column");
    return {CVector(d.col(0)), detail::parse_complex_array(j.at("covariance"), "covariance")};
}

inline json to_json(const SpectralProfile& p) {
    json out;
    if (const auto* g = p.as_gaussian()) {
        out = {{"kind", "gaussian"},
               {"omega0_rad_s", static_cast<double>(g->omega0)},
               {"sigma_rad_s", static_cast<double>(g->sigma)}};
    } else {
        const auto* grid = p.as_grid();
        std::vector<double> w, re, im;
        for (std::size_t i = 0; i < grid->omega.size(); ++i) {
            w.push_back(static_cast<double>(grid->omega[i]));
            re.push_back(static_cast<double>(grid->amplitude[i].real()));
            im.push_back(static_cast<double>(grid->amplitude[i].imag()));
        }
        out = {{"kind", "grid"}, {"omega_rad_s", w}, {"re", re}, {"im", im}};
    }
    if (p.phase_rad() != 0.0) out["phase_rad"] = p.phase_rad();
    return out;
}

// Accepts the records written by to_json; "normalize": true rescales a grid to unit norm.
inline SpectralProfile profile_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        const double phase = j.value("phase_rad", 0.0);
        if (kind == "gaussian") {
            return SpectralProfile::gaussian(j.at("omega0_rad_s").get<double>(), j.at("sigma_rad_s").get<double>(), phase);
        }
        if (kind == "grid") {
            const auto w = j.at("omega_rad_s").get<std::vector<double>>();
            const auto re = j.at("re").get<std::vector<double>>();
            const auto im = j.value("im", std::vector<double>(re.size(), 0.0));
            if (re.size() != w.size() || im.size() != w.size()) throw DomainError("grid arrays differ in length");
            std::vector<long double> wl(w.begin(), w.end());
            std::vector<cld> amp(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) amp[i] = cld(re[i], im[i]);
            return SpectralProfile::grid(std::move(wl), std::move(amp), j.value("normalize", false), phase);
        }
        throw ConfigParseError("kind", "unknown profile kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ConfigParseError("", e.what());
    }
}

}  // namespace graviphoton::io

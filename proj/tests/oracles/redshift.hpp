// SPDX-License-Identifier: Apache-2.0
// 50-digit reference evaluation of the static and circular-orbit redshift
// formulas, straight from G, M, c with no log-space tricks.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline big speed_of_light() { return big("299792458"); }
inline big newton_g() { return big("6.67430e-11"); }

// The library stores r_S as a double; the oracle starts from that same double.
inline big gm_from_rs(double r_s) {
    const big c = speed_of_light();
    return big(r_s) * c * c / 2;
}

inline big chi_squared_static_static(double r_s, double ra, double rb) {
    const big one(1);
    return sqrt(one - big(r_s) / big(ra)) / sqrt(one - big(r_s) / big(rb));
}

inline big chi_squared_static_orbit(double r_s, double ra, double rb) {
    const big one(1);
    const big c = speed_of_light();
    const big gm = gm_from_rs(r_s);
    return sqrt(one - 2 * gm / (c * c * big(ra))) / sqrt(one - 3 * gm / (c * c * big(rb)));
}

inline big orbit_angular_velocity(double r_s, double r) { return sqrt(gm_from_rs(r_s) / pow(big(r), 3)); }

}  // namespace oracle

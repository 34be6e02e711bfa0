// SPDX-License-Identifier: Apache-2.0
// State pairs for the fidelity cross-check and Fock-space QFI references.
#pragma once

#include "graviphoton/gaussian.hpp"
#include "graviphoton/symplectic.hpp"
#include "oracles/circuits.hpp"
#include "oracles/fock.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// Thermal occupations followed by a gate sequence; single-mode recipes use
// only SqueezeMode0 plus an optional phase rotation.
struct Recipe {
    std::vector<double> nbar;
    Circuit gates;
    double phase = 0.0;
};

inline graviphoton::SymplecticMatrix phase_rotation(double theta) {
    graviphoton::CMatrix m = graviphoton::CMatrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -theta);
    m(1, 1) = std::polar(1.0, theta);
    return graviphoton::SymplecticMatrix(std::move(m));
}

inline graviphoton::GaussianState engine_state(const Recipe& r) {
    namespace gp = graviphoton;
    gp::GaussianState st = gp::state_thermal(r.nbar);
    for (const auto& g : r.gates) {
        if (r.nbar.size() == 1) {
            st = gp::apply_symplectic(st, gp::gate_single_mode_squeezer(g.param));
        } else {
            st = gp::apply_symplectic(st, engine_gate(g));
        }
    }
    if (r.phase != 0.0 && r.nbar.size() == 1) st = gp::apply_symplectic(st, phase_rotation(r.phase));
    return st;
}

// The recipe unitary is built once and applied as U rho U^dag.
inline fock::Dense fock_state(const fock::Space& sp, const Recipe& r) {
    fock::Dense rho = sp.thermal(r.nbar);
    rho /= rho.trace();
    fock::Dense u = fock::Dense::Identity(sp.size(), sp.size());
    for (const auto& g : r.gates) {
        const fock::Sparse gen = r.nbar.size() == 1 ? sp.single_mode_squeezer(g.param, 0) : fock_generator(sp, g);
        u = sp.apply_exp(gen, u);
    }
    if (r.phase != 0.0 && r.nbar.size() == 1) u = sp.apply_exp(sp.phase_rotation(r.phase), u);
    rho = u * rho * u.adjoint();
    return rho / rho.trace();
}

struct FidelityCase {
    std::string label;
    Recipe a;
    Recipe b;
};

// Ten single-mode and ten two-mode pairs of mixed or pure zero-mean states.
inline std::vector<FidelityCase> fidelity_cases() {
    std::vector<FidelityCase> out;
    out.push_back({"vacuum/thermal(1)", {{0.0}, {}, 0.0}, {{1.0}, {}, 0.0}});
    out.push_back({"vacuum/squeezed(0.2)", {{0.0}, {}, 0.0}, {{0.0}, {{GateKind::SqueezeMode0, 0.2}}, 0.0}});
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> occ(0.0, 0.8), sq(-0.4, 0.4), ph(-1.5, 1.5);
    while (out.size() < 10) {
        const Recipe a{{occ(rng)}, {{GateKind::SqueezeMode0, sq(rng)}}, ph(rng)};
        const Recipe b{{occ(rng)}, {{GateKind::SqueezeMode0, sq(rng)}}, ph(rng)};
        out.push_back({"single-mode #" + std::to_string(out.size()), a, b});
    }
    std::uniform_real_distribution<double> occ2(0.0, 0.25), g2(-0.25, 0.25);
    auto two_mode = [&](bool pure) {
        Recipe r{{pure ? 0.0 : occ2(rng), pure ? 0.0 : occ2(rng)}, {}, 0.0};
        r.gates = {{GateKind::TwoModeSqueezer, g2(rng)}, {GateKind::Beamsplitter, 2 * g2(rng)},
                   {GateKind::SqueezeMode0, 0.5 * g2(rng)}, {GateKind::SqueezeMode1, 0.5 * g2(rng)}};
        return r;
    };
    out.push_back({"two-mode pure/mixed", two_mode(true), two_mode(false)});
    while (out.size() < 20) out.push_back({"two-mode #" + std::to_string(out.size()), two_mode(false), two_mode(false)});
    return out;
}

inline double fock_fidelity(const FidelityCase& c) {
    const bool single = c.a.nbar.size() == 1;
    const fock::Space sp(single ? 1 : 2, single ? 60 : 22);
    return fock::fidelity(fock_state(sp, c.a), fock_state(sp, c.b));
}

// SLD QFI of the reduced sensing probe at theta1 = theta2 = theta.
inline double sensing_qfi_fock(double r, double theta, int dim = 20) {
    const auto s = fock::tms_through_loss(r, theta, dim);
    return fock::sld_qfi(s.rho / s.rho.trace(), s.drho / s.rho.trace());
}

// SLD QFI of exp(-i theta n) applied to squeezed vacuum, theta-independent.
inline double phase_qfi_fock(double s, int dim = 40) {
    const fock::Space sp(1, dim);
    const fock::Vec psi = sp.evolve(sp.single_mode_squeezer(s), sp.vacuum());
    const fock::Dense rho = psi * psi.adjoint();
    const fock::Dense n = sp.number(0);
    const fock::Dense drho = fock::cd(0.0, -1.0) * (n * rho - rho * n);
    return fock::sld_qfi(rho, drho);
}

}  // namespace oracle

// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "graviphoton/cli.hpp"
#include "graviphoton/gaussian.hpp"
#include "graviphoton/metrology.hpp"
#include "graviphoton/protocols.hpp"
#include "graviphoton/spacetime.hpp"
#include "graviphoton/symplectic.hpp"
#include "graviphoton/wavepacket.hpp"
#include "oracles/circuits.hpp"
#include "oracles/metrology_cases.hpp"
#include "oracles/profiles.hpp"
#include "oracles/redshift.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gp = graviphoton;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAILED]");
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome redshift_formulas() {
    Outcome o;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> log_rs(-3.0, 4.0), log_ratio(0.5, 9.0);
    double worst_ss = 0.0, worst_so = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double rs = std::pow(10.0, log_rs(rng));
        const auto g = gp::SchwarzschildGeometry::from_radius(rs);
        const double ra = rs * std::pow(10.0, log_ratio(rng));
        const double rb = rs * std::max(1.6, std::pow(10.0, log_ratio(rng)));
        worst_ss = std::max(worst_ss, rel(gp::redshift_static_static(g, ra, rb).chi_squared(),
                                          static_cast<double>(oracle::chi_squared_static_static(rs, ra, rb))));
        worst_so = std::max(worst_so, rel(gp::redshift_static_orbit(g, ra, rb).chi_squared(),
                                          static_cast<double>(oracle::chi_squared_static_orbit(rs, ra, rb))));
    }
    o.require(worst_ss < 1e-13, "static/static worst rel " + sci(worst_ss));
    o.require(worst_so < 1e-13, "static/orbit worst rel " + sci(worst_so));
    return o;
}

Outcome surface_gravity() {
    Outcome o;
    const double g = gp::static_proper_acceleration(gp::SchwarzschildGeometry::earth(), 6.371e6);
    o.require(g >= 9.7 && g <= 9.9, "g = " + std::to_string(g) + " m/s^2");
    return o;
}

Outcome transformation_law() {
    Outcome o;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> near(-1e-6, 1e-6), wide(std::log(0.5), std::log(2.0));
    double worst_norm = 0.0, worst_inv = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double w0 = 200.0 + 37.0 * i;
        const auto p = i % 2 == 0 ? oracle::sampled_profile(w0, 2.0, 301, rng) : gp::SpectralProfile::gaussian(w0, 1.0 + 0.04 * i);
        const double chi = i % 4 < 2 ? 1.0 + near(rng) : std::exp(wide(rng));
        const auto c = gp::RedshiftFactor::from_chi(chi);
        const auto q = gp::redshift_transform(p, c);
        worst_norm = std::max(worst_norm, std::abs(q.norm() - 1.0));
        const auto back = gp::redshift_transform(q, c.inverse());
        const auto [lo, hi] = p.support();
        for (int k = 0; k <= 200; ++k) {
            const long double w = lo + (hi - lo) * k / 200.0L;
            worst_inv = std::max(worst_inv, static_cast<double>(std::abs(back(w) - p(w))));
        }
    }
    o.require(worst_norm < 1e-9, "norm deviation " + sci(worst_norm));
    o.require(worst_inv < 1e-9, "inversion residual " + sci(worst_inv));
    return o;
}

Outcome sharp_commutator() {
    Outcome o;
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    int exact = 0;
    for (int i = 0; i < 20; ++i) {
        double a = u(rng);
        if (a == 0.0) a = 1.0;
        exact += gp::sharp_commutator_scale(a) == 1.0 / std::abs(a) &&
                 gp::sharp_commutator_scale(2.0 * a) * 2.0 == gp::sharp_commutator_scale(a);
    }
    o.require(exact == 20, std::to_string(exact) + "/20 exact");
    return o;
}

Outcome gaussian_engine() {
    Outcome o;
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> u(-2.0, 2.0), ang(0.0, pi / 2), ph(-pi, pi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        for (const auto& s : {gp::gate_single_mode_squeezer(u(rng)), gp::gate_beamsplitter(u(rng)),
                              gp::gate_two_mode_squeezer(u(rng)), gp::mode_mixer_from_overlap(ang(rng), ph(rng))}) {
            worst = std::max(worst, gp::symplectic_residual(s.matrix()));
        }
    }
    o.require(worst < 1e-12, "gate residual " + sci(worst));

    double coh = 0.0, tms = 0.0, th = 0.0, nu = 0.0, sms = 0.0;
    for (int i = 0; i < 50; ++i) {
        const gp::cd alpha(u(rng), u(rng));
        coh = std::max(coh, std::abs(gp::mean_photon_number(gp::state_coherent(alpha)) - std::norm(alpha)));
        const double r = 0.5 * u(rng), s = 0.5 * u(rng), n = std::abs(u(rng));
        const auto two = gp::apply_symplectic(gp::state_vacuum(2), gp::gate_two_mode_squeezer(r));
        tms = std::max(tms, std::abs(gp::mean_photon_number(two) - 2 * std::sinh(r) * std::sinh(r)));
        th = std::max(th, std::abs(gp::mean_photon_number(gp::state_thermal(n)) - n));
        nu = std::max(nu, std::abs(gp::williamson_eigenvalues(gp::partial_trace(two, {0}))[0] - std::cosh(2 * r)));
        const auto one = gp::apply_symplectic(gp::state_vacuum(1), gp::gate_single_mode_squeezer(s));
        sms = std::max(sms, std::abs(gp::mean_photon_number(one) - 2 * std::sinh(s) * std::sinh(s)));
    }
    o.require(coh < 1e-12, "coherent |alpha|^2 " + sci(coh));
    o.require(tms < 1e-12, "two-mode squeezed 2 sinh^2 r " + sci(tms));
    o.require(th < 1e-12, "thermal " + sci(th));
    o.require(sms < 1e-12, "single-mode squeezed 2 sinh^2 s " + sci(sms) + " (engine and Fock oracle give sinh^2 s)");
    o.require(nu < 1e-10, "reduced two-mode squeezed nu = cosh 2r " + sci(nu));
    return o;
}

Outcome fock_equivalence() {
    Outcome o;
    const fock::Space sp(2, 25);
    const auto circuits = oracle::enumerate_circuits(3, 2024);
    double worst_vac = 0.0, worst_coh = 0.0;
    for (const auto& c : circuits) {
        worst_vac = std::max(worst_vac, oracle::compare_circuit(sp, c, 0.0, 0.0).max());
        worst_coh = std::max(worst_coh, oracle::compare_circuit(sp, c, {0.3, 0.1}, {-0.2, 0.15}).max());
    }
    o.require(worst_vac < 1e-8, std::to_string(circuits.size()) + " circuits, vacuum input " + sci(worst_vac));
    o.require(worst_coh < 1e-8, "coherent input " + sci(worst_coh) + " (25-level truncation tail)");
    return o;
}

Outcome fidelity_qfi() {
    Outcome o;
    double worst = 0.0;
    for (const auto& c : oracle::fidelity_cases()) {
        const double f = gp::gaussian_fidelity(oracle::engine_state(c.a), oracle::engine_state(c.b));
        worst = std::max(worst, std::abs(f - oracle::fock_fidelity(c)));
    }
    o.require(worst < 1e-7, "20 fidelity pairs " + sci(worst));
    const auto channel = gp::single_parameter_sensing(gp::build_sensing_channel({0.1, 0.1, 0.3}));
    const double qfi = gp::qfi_finite_difference(channel, 0.1).qfi;
    const double ref = oracle::sensing_qfi_fock(0.3, 0.1);
    o.require(rel(qfi, ref) < 1e-4, "sensing QFI " + std::to_string(qfi) + " vs " + std::to_string(ref) + " rel " + sci(rel(qfi, ref)));
    return o;
}

Outcome qber_claim() {
    Outcome o;
    const gp::LinkScenario leo{gp::SchwarzschildGeometry::earth(), gp::ObserverPath::static_radius(6.371e6),
                               gp::ObserverPath::static_radius(6.871e6),
                               gp::SpectralProfile::gaussian(2 * pi * 4.3e14, 2 * pi * 1e5)};
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(2 * pi * 1e5 * std::pow(10.0, i / 20.0));
    const auto rows = gp::qber_bandwidth_sweep(leo, grid);
    const gp::QberRow* hit = nullptr;
    for (const auto& r : rows) {
        if (!hit && r.report.qber >= 3e-3 && r.report.qber <= 3e-2) hit = &r;
    }
    o.require(hit != nullptr, hit ? "qber " + sci(hit->report.qber) + " at sigma/2pi = " + sci(hit->sigma_rad_s / (2 * pi)) + " Hz"
                                  : "no sweep point in [0.3%, 3%]");
    auto same = leo;
    same.receiver = same.emitter;
    o.require(gp::interference_qber(same).qber == 0.0, "qber(chi = 1) = 0");

    const auto p = gp::SpectralProfile::gaussian(2 * pi * 4.3e14, 2 * pi * 1e7);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 9;
    for (int i = 0; i < n; ++i) {
        const double z = 1e-11 * std::pow(100.0, i / (n - 1.0));
        const auto chi = gp::RedshiftFactor::from_chi_squared_minus_one(z);
        const double q = gp::qber_from_overlap(chi, gp::overlap(p, gp::redshift_transform(p, chi)).magnitude()).qber;
        const double x = std::log(z), y = std::log(q);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    o.require(std::abs(slope - 2.0) <= 0.05, "log-log slope " + std::to_string(slope));
    return o;
}

Outcome tritter_unitarity() {
    Outcome o;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(-2 * pi, 2 * pi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto m = gp::tritter(u(rng), u(rng), u(rng), u(rng));
        worst = std::max(worst, (m * m.adjoint() - Eigen::Matrix3cd::Identity()).norm());
    }
    o.require(worst < 1e-14, "unitarity residual " + sci(worst));
    return o;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli_invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "graviphoton");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = gp::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_checks() {
    Outcome o;
    const fs::path data = GRAVIPHOTON_TEST_DATA;
    const fs::path tmp = fs::temp_directory_path() / "graviphoton_acceptance";
    fs::create_directories(tmp);

    int golden = 0, identical = 0;
    for (const std::string name : {"redshift", "overlap", "qber_sweep", "qfi_sweep"}) {
        const std::string ext = name == "overlap" ? "json" : "csv";
        const fs::path cfg = data / "golden" / (name + ".json");
        const fs::path a = tmp / (name + ".a." + ext), b = tmp / (name + ".b." + ext);
        const bool ran = cli_invoke({"run", cfg.string(), "--output", a.string()}).code == 0 &&
                         cli_invoke({"run", cfg.string(), "--output", b.string(), "--jobs", "2"}).code == 0;
        golden += ran && slurp(a) == slurp(data / "golden" / (name + ".expected." + ext));
        identical += ran && !slurp(a).empty() && slurp(a) == slurp(b);
    }
    o.require(golden == 4, std::to_string(golden) + "/4 golden files");
    o.require(identical == 4, std::to_string(identical) + "/4 byte-identical reruns");

    int configs = 0, consistent = 0;
    for (const auto& e : fs::directory_iterator(data / "configs" / "corpus")) {
        if (e.path().extension() != ".json") continue;
        ++configs;
        const auto v = cli_invoke({"validate", e.path().string()});
        const auto r = cli_invoke({"run", e.path().string()});
        consistent += (v.code == 0 && r.code == 0) || (v.code == 1 && r.code == 3) || (v.code == 2 && r.code == 2);
    }
    o.require(configs == 20 && consistent == configs,
              std::to_string(consistent) + "/" + std::to_string(configs) + " corpus configs consistent");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "redshift formulas", 1.0, redshift_formulas},
        {2, "surface gravity", 1.0, surface_gravity},
        {3, "transformation law", 0.0, transformation_law},
        {4, "sharp-frequency commutator", 0.0, sharp_commutator},
        {5, "gaussian engine", 10.0, gaussian_engine},
        {6, "fock-oracle equivalence", 60.0, fock_equivalence},
        {7, "fidelity and qfi", 120.0, fidelity_qfi},
        {8, "qber", 0.0, qber_claim},
        {9, "tritter", 0.0, tritter_unitarity},
        {10, "cli", 0.0, cli_checks},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0) o.require(s < c.budget_s, "under " + std::to_string(static_cast<int>(c.budget_s)) + " s");
        failed += !o.pass;
        std::printf("criterion %2d %s  %-28s %8.3f s  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, s, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

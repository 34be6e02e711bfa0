// SPDX-License-Identifier: Apache-2.0
// Scenario-file front end: config parsing, validation, task execution and
// table output. The graviphoton executable is a thin wrapper around main().
#pragma once

#include "graviphoton/errors.hpp"
#include "graviphoton/metrology.hpp"
#include "graviphoton/protocols.hpp"
#include "graviphoton/serialization.hpp"
#include "graviphoton/spacetime.hpp"
#include "graviphoton/wavepacket.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace graviphoton::cli {

using json = nlohmann::json;

enum ExitCode : int {
    exit_ok = 0,
    exit_violations = 1,
    exit_config = 2,
    exit_domain = 3,
    exit_numerical = 4,
    exit_output = 5,
};

inline const std::set<std::string>& task_names() {
    static const std::set<std::string> names = {"redshift", "overlap", "qber-sweep", "qfi-sweep"};
    return names;
}

struct Violation {
    std::string kind;
    std::string path;
    std::string message;
};

struct ObserverSpec {
    std::string type;
    double radius_m = 0.0;
};

struct QfiSpec {
    std::vector<double> theta_rad;
    double squeezing_r = 0.0;
    long long probes = 1;
    double jacobian_rad_per_unit = 1.0;
};

struct OutputSpec {
    std::string format = "csv";
    std::optional<std::string> path;
};

// Structurally valid config; numeric invariants are checked by validate().
struct ScenarioConfig {
    std::string task;
    std::optional<double> mass_kg;
    std::optional<double> r_s_m;
    std::optional<ObserverSpec> emitter;
    std::optional<ObserverSpec> receiver;
    std::optional<json> photon;
    std::optional<std::vector<double>> sigma_grid;
    std::optional<QfiSpec> qfi;
    OutputSpec output;
};

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace detail {

inline std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

// Rejects unknown keys; a key that is a known key minus its unit suffix is
// reported as a missing suffix.
inline void check_keys(const json& obj, const std::string& where, const std::vector<std::string>& known) {
    if (!obj.is_object()) throw ConfigParseError(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) != known.end()) continue;
        for (const auto& k : known) {
            if (k.size() > key.size() + 1 && k.compare(0, key.size() + 1, key + "_") == 0) {
                throw ConfigParseError(join(where, key), "key '" + join(where, key) + "' lacks a unit suffix (expected '" + k + "')");
            }
        }
        throw ConfigParseError(join(where, key), "unknown key '" + join(where, key) + "'");
    }
}

inline double number(const json& obj, const std::string& where, const std::string& key) {
    const std::string path = join(where, key);
    if (!obj.contains(key)) throw ConfigParseError(path, "missing required key '" + path + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigParseError(path, "key '" + path + "' must be a number");
    return v.get<double>();
}

inline std::optional<double> optional_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    return number(obj, where, key);
}

inline std::string string_key(const json& obj, const std::string& where, const std::string& key) {
    const std::string path = join(where, key);
    if (!obj.contains(key)) throw ConfigParseError(path, "missing required key '" + path + "'");
    if (!obj.at(key).is_string()) throw ConfigParseError(path, "key '" + path + "' must be a string");
    return obj.at(key).get<std::string>();
}

inline std::vector<double> number_array(const json& obj, const std::string& where, const std::string& key) {
    const std::string path = join(where, key);
    if (!obj.contains(key)) throw ConfigParseError(path, "missing required key '" + path + "'");
    const auto& v = obj.at(key);
    if (!v.is_array()) throw ConfigParseError(path, "key '" + path + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigParseError(path, "key '" + path + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline ObserverSpec parse_observer(const json& obj, const std::string& where) {
    check_keys(obj, where, {"type", "radius_m"});
    ObserverSpec o;
    o.type = string_key(obj, where, "type");
    if (o.type != "static" && o.type != "orbit") throw ConfigParseError(join(where, "type"), "observer type must be 'static' or 'orbit'");
    o.radius_m = number(obj, where, "radius_m");
    return o;
}

inline void parse_photon_structure(const json& obj) {
    const std::string where = "photon";
    if (!obj.is_object()) throw ConfigParseError(where, "expected an object");
    const std::string kind = string_key(obj, where, "kind");
    if (kind == "gaussian") {
        check_keys(obj, where, {"kind", "omega0_rad_s", "sigma_rad_s", "phase_rad"});
        (void)number(obj, where, "omega0_rad_s");
        (void)number(obj, where, "sigma_rad_s");
        (void)optional_number(obj, where, "phase_rad");
    } else if (kind == "grid") {
        check_keys(obj, where, {"kind", "omega_rad_s", "re", "im", "normalize", "phase_rad"});
        (void)number_array(obj, where, "omega_rad_s");
        (void)number_array(obj, where, "re");
        if (obj.contains("im")) (void)number_array(obj, where, "im");
        if (obj.contains("normalize") && !obj.at("normalize").is_boolean()) {
            throw ConfigParseError("photon.normalize", "key 'photon.normalize' must be a boolean");
        }
        (void)optional_number(obj, where, "phase_rad");
    } else {
        throw ConfigParseError("photon.kind", "photon kind must be 'gaussian' or 'grid'");
    }
}

inline std::vector<std::string> required_blocks(const std::string& task) {
    if (task == "redshift") return {"body", "emitter", "receiver"};
    if (task == "overlap") return {"body", "emitter", "receiver", "photon"};
    if (task == "qber-sweep") return {"body", "emitter", "receiver", "photon", "sweep"};
    return {"qfi"};
}

}  // namespace detail

inline ScenarioConfig parse_config(const json& root) {
    using namespace detail;
    check_keys(root, "", {"task", "description", "body", "emitter", "receiver", "photon", "sweep", "qfi", "output"});
    ScenarioConfig c;
    c.task = string_key(root, "", "task");
    if (task_names().count(c.task) == 0) throw ConfigParseError("task", "unknown task '" + c.task + "'");
    if (root.contains("description") && !root.at("description").is_string()) {
        throw ConfigParseError("description", "key 'description' must be a string");
    }
    for (const auto& b : required_blocks(c.task)) {
        if (!root.contains(b)) throw ConfigParseError(b, "task '" + c.task + "' requires block '" + b + "'");
    }
    if (root.contains("body")) {
        const auto& body = root.at("body");
        check_keys(body, "body", {"mass_kg", "r_s_m"});
        c.mass_kg = optional_number(body, "body", "mass_kg");
        c.r_s_m = optional_number(body, "body", "r_s_m");
        if (c.mass_kg.has_value() == c.r_s_m.has_value()) {
            throw ConfigParseError("body", "body needs exactly one of 'mass_kg' or 'r_s_m'");
        }
    }
    if (root.contains("emitter")) c.emitter = parse_observer(root.at("emitter"), "emitter");
    if (root.contains("receiver")) c.receiver = parse_observer(root.at("receiver"), "receiver");
    if (root.contains("photon")) {
        parse_photon_structure(root.at("photon"));
        c.photon = root.at("photon");
    }
    if (root.contains("sweep")) {
        check_keys(root.at("sweep"), "sweep", {"sigma_rad_s"});
        c.sigma_grid = number_array(root.at("sweep"), "sweep", "sigma_rad_s");
    }
    if (root.contains("qfi")) {
        const auto& q = root.at("qfi");
        check_keys(q, "qfi", {"theta_rad", "squeezing_r", "probes", "jacobian_rad_per_unit"});
        QfiSpec s;
        s.theta_rad = number_array(q, "qfi", "theta_rad");
        s.squeezing_r = number(q, "qfi", "squeezing_r");
        if (q.contains("probes")) {
            if (!q.at("probes").is_number_integer()) throw ConfigParseError("qfi.probes", "key 'qfi.probes' must be an integer");
            s.probes = q.at("probes").get<long long>();
        }
        if (auto j = optional_number(q, "qfi", "jacobian_rad_per_unit")) s.jacobian_rad_per_unit = *j;
        c.qfi = s;
    }
    if (root.contains("output")) {
        const auto& o = root.at("output");
        check_keys(o, "output", {"format", "path"});
        if (o.contains("format")) {
            c.output.format = string_key(o, "output", "format");
            if (c.output.format != "csv" && c.output.format != "json") {
                throw ConfigParseError("output.format", "output format must be 'csv' or 'json'");
            }
        }
        if (o.contains("path")) c.output.path = string_key(o, "output", "path");
    }
    return c;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("", "cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigParseError("", std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {

inline std::optional<SchwarzschildGeometry> make_geometry(const ScenarioConfig& c, std::vector<Violation>& out) {
    try {
        if (c.mass_kg) return SchwarzschildGeometry::from_mass(*c.mass_kg);
        if (c.r_s_m) return SchwarzschildGeometry::from_radius(*c.r_s_m);
    } catch (const Error& e) {
        out.push_back({e.kind(), c.mass_kg ? "body.mass_kg" : "body.r_s_m", e.what()});
    }
    return std::nullopt;
}

inline std::optional<ObserverPath> make_observer(const ObserverSpec& o, const std::string& where,
                                                 const std::optional<SchwarzschildGeometry>& g, std::vector<Violation>& out) {
    try {
        ObserverPath p = o.type == "static" ? ObserverPath::static_radius(o.radius_m) : ObserverPath::circular_orbit(o.radius_m);
        if (g) p.check(*g);
        return p;
    } catch (const Error& e) {
        out.push_back({e.kind(), where + ".radius_m", e.what()});
    }
    return std::nullopt;
}

inline void check_increasing(const std::vector<double>& v, const std::string& path, std::vector<Violation>& out) {
    if (v.empty()) {
        out.push_back({"DomainError", path, "grid must not be empty"});
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) out.push_back({"DomainError", path + "[" + std::to_string(i) + "]", "value must be finite"});
        if (i > 0 && !(v[i] > v[i - 1])) {
            out.push_back({"DomainError", path, "grid is not strictly increasing at index " + std::to_string(i)});
        }
    }
}

inline std::optional<SpectralProfile> make_photon(const json& p, std::vector<Violation>& out) {
    const std::size_t before = out.size();
    if (p.at("kind") == "gaussian") {
        const double w0 = p.at("omega0_rad_s").get<double>();
        const double sg = p.at("sigma_rad_s").get<double>();
        if (!(w0 > 0.0) || !std::isfinite(w0)) out.push_back({"DomainError", "photon.omega0_rad_s", "omega0 must be positive and finite"});
        if (!(sg > 0.0) || !std::isfinite(sg)) out.push_back({"DomainError", "photon.sigma_rad_s", "sigma must be positive and finite"});
        if (out.size() == before && !(w0 / sg > 8.0)) {
            out.push_back({"DomainError", "photon.sigma_rad_s", "gaussian profile needs omega0/sigma > 8"});
        }
    } else {
        const auto w = p.at("omega_rad_s").get<std::vector<double>>();
        const auto re = p.at("re").get<std::vector<double>>();
        if (w.size() < 2) out.push_back({"DomainError", "photon.omega_rad_s", "grid needs at least two nodes"});
        check_increasing(w, "photon.omega_rad_s", out);
        if (!w.empty() && w.front() < 0.0) out.push_back({"DomainError", "photon.omega_rad_s", "frequencies must be non-negative"});
        if (re.size() != w.size()) out.push_back({"DomainError", "photon.re", "length differs from photon.omega_rad_s"});
        if (p.contains("im") && p.at("im").size() != w.size()) {
            out.push_back({"DomainError", "photon.im", "length differs from photon.omega_rad_s"});
        }
    }
    if (out.size() != before) return std::nullopt;
    try {
        auto prof = io::profile_from_json(p);
        prof.require_normalized();
        return prof;
    } catch (const Error& e) {
        out.push_back({e.kind(), "photon", e.what()});
    }
    return std::nullopt;
}

}  // namespace detail

// Every numeric invariant of every present block; does not run the task.
inline std::vector<Violation> validate(const ScenarioConfig& c) {
    using namespace detail;
    std::vector<Violation> out;
    std::optional<SchwarzschildGeometry> geom;
    if (c.mass_kg || c.r_s_m) geom = make_geometry(c, out);
    if (c.emitter) (void)make_observer(*c.emitter, "emitter", geom, out);
    if (c.receiver) (void)make_observer(*c.receiver, "receiver", geom, out);
    std::optional<SpectralProfile> photon;
    if (c.photon) photon = make_photon(*c.photon, out);
    if (c.sigma_grid) {
        check_increasing(*c.sigma_grid, "sweep.sigma_rad_s", out);
        for (std::size_t i = 0; i < c.sigma_grid->size(); ++i) {
            const double s = (*c.sigma_grid)[i];
            const std::string path = "sweep.sigma_rad_s[" + std::to_string(i) + "]";
            if (!(s > 0.0)) {
                out.push_back({"DomainError", path, "bandwidth must be positive"});
            } else if (photon && photon->as_gaussian() && !(photon->as_gaussian()->omega0 / s > 8.0L)) {
                out.push_back({"DomainError", path, "gaussian profile needs omega0/sigma > 8"});
            }
        }
        if (c.task == "qber-sweep" && photon && !photon->is_gaussian()) {
            out.push_back({"DomainError", "photon.kind", "bandwidth sweep needs a gaussian photon"});
        }
    }
    if (c.qfi) {
        const auto& q = *c.qfi;
        check_increasing(q.theta_rad, "qfi.theta_rad", out);
        for (std::size_t i = 0; i < q.theta_rad.size(); ++i) {
            const double t = q.theta_rad[i];
            if (!(t > 0.0 && t < std::numbers::pi / 2)) {
                out.push_back({"DomainError", "qfi.theta_rad[" + std::to_string(i) + "]", "mixing angle must lie in (0, pi/2)"});
            }
        }
        if (!std::isfinite(q.squeezing_r) || q.squeezing_r < 0.0) {
            out.push_back({"DomainError", "qfi.squeezing_r", "squeezing must be finite and non-negative"});
        }
        if (q.probes < 1) out.push_back({"DomainError", "qfi.probes", "probe count must be positive"});
        if (!std::isfinite(q.jacobian_rad_per_unit) || q.jacobian_rad_per_unit == 0.0) {
            out.push_back({"DomainError", "qfi.jacobian_rad_per_unit", "jacobian must be finite and non-zero"});
        }
    }
    return out;
}

struct Table {
    std::string task;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // Values are preformatted number tokens.
    std::vector<std::pair<std::string, std::string>> summary;
};

struct RunOptions {
    unsigned jobs = 1;
    bool timing = false;
};

namespace detail {

inline SchwarzschildGeometry geometry_of(const ScenarioConfig& c) {
    return c.mass_kg ? SchwarzschildGeometry::from_mass(*c.mass_kg) : SchwarzschildGeometry::from_radius(*c.r_s_m);
}

inline ObserverPath observer_of(const ObserverSpec& o) {
    return o.type == "static" ? ObserverPath::static_radius(o.radius_m) : ObserverPath::circular_orbit(o.radius_m);
}

inline Table run_redshift(const ScenarioConfig& c) {
    const auto chi = link_redshift(geometry_of(c), observer_of(*c.emitter), observer_of(*c.receiver));
    Table t{"redshift", {"chi", "chi_squared", "chi_sq_minus_1"}, {{chi.chi(), chi.chi_squared(), chi.z()}}, {}};
    t.summary = {{"chi", format_number(chi.chi())}, {"chi_sq_minus_1", format_number(chi.z())}};
    return t;
}

inline Table run_overlap(const ScenarioConfig& c) {
    const auto chi = link_redshift(geometry_of(c), observer_of(*c.emitter), observer_of(*c.receiver));
    const auto profile = io::profile_from_json(*c.photon);
    const auto ov = overlap(profile, redshift_transform(profile, chi));
    const auto angle = mixing_angle(profile, chi);
    Table t{"overlap",
            {"chi_sq_minus_1", "overlap_re", "overlap_im", "overlap_mag", "theta_rad", "phi_rad"},
            {{chi.z(), ov.value.real(), ov.value.imag(), ov.magnitude(), angle.theta, angle.phi}},
            {}};
    t.summary = {{"overlap_mag", format_number(ov.magnitude())}, {"theta_rad", format_number(angle.theta)}};
    return t;
}

inline Table run_qber_sweep(const ScenarioConfig& c, const RunOptions& opt) {
    LinkScenario s{geometry_of(c), observer_of(*c.emitter), observer_of(*c.receiver), io::profile_from_json(*c.photon)};
    const auto rows = qber_bandwidth_sweep(s, *c.sigma_grid, opt.jobs);
    Table t{"qber-sweep", {"sigma_rad_s", "chi_sq_minus_1", "overlap_mag", "visibility", "qber"}, {}, {}};
    double qmax = 0.0;
    for (const auto& r : rows) {
        t.rows.push_back({r.sigma_rad_s, r.report.chi.z(), r.report.overlap_magnitude, r.report.visibility, r.report.qber});
        qmax = std::max(qmax, r.report.qber);
    }
    t.summary = {{"rows", std::to_string(rows.size())}, {"qber_max", format_number(qmax)}};
    return t;
}

inline Table run_qfi_sweep(const ScenarioConfig& c, const RunOptions& opt) {
    const auto& q = *c.qfi;
    const auto setup = build_sensing_channel({q.theta_rad.front(), q.theta_rad.front(), q.squeezing_r});
    const auto channel = single_parameter_sensing(setup);
    const double jac2 = q.jacobian_rad_per_unit * q.jacobian_rad_per_unit;
    const auto probes = static_cast<std::size_t>(q.probes);

    std::vector<std::vector<double>> rows(q.theta_rad.size());
    std::vector<std::exception_ptr> failures(rows.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const auto rep = qfi_finite_difference(channel, q.theta_rad[i], {1e-3, probes});
                const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                const double qfi = rep.qfi * jac2;
                const double bound = qfi > 0.0 ? cramer_rao_bound(qfi, probes) : std::numeric_limits<double>::infinity();
                rows[i] = {q.theta_rad[i], qfi, bound, rep.fidelity_step, opt.timing ? ms : 0.0};
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(rows.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    Table t{"qfi-sweep", {"theta", "qfi", "cr_bound", "fidelity_step", "runtime_ms"}, std::move(rows), {}};
    double qmax = 0.0;
    for (const auto& r : t.rows) qmax = std::max(qmax, r[1]);
    t.summary = {{"rows", std::to_string(t.rows.size())}, {"qfi_max", format_number(qmax)}};
    return t;
}

}  // namespace detail

inline Table execute(const ScenarioConfig& c, const RunOptions& opt = {}) {
    if (c.task == "redshift") return detail::run_redshift(c);
    if (c.task == "overlap") return detail::run_overlap(c);
    if (c.task == "qber-sweep") return detail::run_qber_sweep(c, opt);
    return detail::run_qfi_sweep(c, opt);
}

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

// {"task": ..., "columns": [...], "rows": [[...], ...], "summary": {...}};
// non-finite numbers are written as null.
inline void write_json(std::ostream& os, const Table& t) {
    auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
    os << "{\n  \"task\": " << json(t.task).dump() << ",\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? ", " : "") << json(t.columns[i]).dump();
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? ",\n    [" : "\n    [");
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) os << (i ? ", " : "") << num(t.rows[r][i]);
        os << "]";
    }
    os << (t.rows.empty() ? "],\n" : "\n  ],\n") << "  \"summary\": {";
    for (std::size_t i = 0; i < t.summary.size(); ++i) {
        const auto& v = t.summary[i].second;
        const bool finite = v != "inf" && v != "-inf" && v != "nan";
        os << (i ? ", " : "") << json(t.summary[i].first).dump() << ": " << (finite ? v : "null");
    }
    os << "}\n}\n";
}

inline std::string quote(const std::string& s) { return json(s).dump(); }

inline void print_error(std::ostream& err, const std::string& kind, const std::string& path, const std::string& msg) {
    err << "error kind=" << kind << " path=" << (path.empty() ? "-" : path) << " msg=" << quote(msg) << '\n';
}

inline int exit_code_for(const Error& e) {
    if (dynamic_cast<const ConfigParseError*>(&e)) return exit_config;
    if (dynamic_cast<const NumericalError*>(&e)) return exit_numerical;
    return exit_domain;
}

inline int exit_code_for_kind(const std::string& kind) {
    if (kind == "ConfigParseError") return exit_config;
    if (kind == "NumericalError" || kind == "QuadratureError" || kind == "StepUnderflow") return exit_numerical;
    return exit_domain;
}

struct Invocation {
    std::string command;
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::string> format;
    unsigned jobs = 1;
    bool timing = false;
};

inline int validate_command(const Invocation& inv, std::ostream& out, std::ostream& err) {
    try {
        const auto cfg = parse_config(read_json_file(inv.config_path));
        const auto violations = validate(cfg);
        for (const auto& v : violations) {
            out << "violation kind=" << v.kind << " path=" << v.path << " msg=" << quote(v.message) << '\n';
        }
        out << "task=" << cfg.task << " violations=" << violations.size() << '\n';
        return violations.empty() ? exit_ok : exit_violations;
    } catch (const ConfigParseError& e) {
        print_error(err, e.kind(), e.path(), e.what());
        return exit_config;
    }
}

inline int run_command(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string task = "-";
    try {
        const auto cfg = parse_config(read_json_file(inv.config_path));
        task = cfg.task;
        const auto violations = validate(cfg);
        if (!violations.empty()) {
            for (const auto& v : violations) print_error(err, v.kind, v.path, v.message);
            return exit_code_for_kind(violations.front().kind);
        }
        const Table table = execute(cfg, {std::max(1u, inv.jobs), inv.timing});
        const std::string format = inv.format.value_or(cfg.output.format);

        std::optional<std::filesystem::path> target;
        if (inv.output) {
            target = *inv.output;
        } else if (cfg.output.path) {
            std::filesystem::path p(*cfg.output.path);
            target = p.is_absolute() ? p : std::filesystem::path(inv.config_path).parent_path() / p;
        }
        std::ostringstream body;
        if (format == "json") {
            write_json(body, table);
        } else {
            write_csv(body, table);
        }
        std::ostream& summary_stream = target ? out : err;
        if (target) {
            std::ofstream f(*target, std::ios::binary | std::ios::trunc);
            if (!f || !(f << body.str()) || !f.flush()) {
                print_error(err, "OutputError", target->string(), "cannot write output file");
                return exit_output;
            }
        } else {
            out << body.str();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        summary_stream << "task=" << table.task;
        for (const auto& [k, v] : table.summary) summary_stream << ' ' << k << '=' << v;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", ms);
        summary_stream << " runtime_ms=" << buf << '\n';
        return exit_ok;
    } catch (const Error& e) {
        const auto* cpe = dynamic_cast<const ConfigParseError*>(&e);
        print_error(err, e.kind(), cpe ? cpe->path() : std::string{}, e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        print_error(err, "NumericalError", "", e.what());
        return exit_numerical;
    }
}

inline int main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"graviphoton: gravitational redshift of quantum photons"};
    app.require_subcommand(1);
    Invocation inv;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", inv.config_path, "scenario config (JSON)")->required();
        sub->add_option("--jobs", inv.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
        sub->add_option("--output", inv.output, "output path (overrides config)");
        sub->add_option("--format", inv.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto* run = app.add_subcommand("run", "validate and execute a scenario");
    add_common(run);
    run->add_flag("--timing", inv.timing, "record per-row runtime_ms in qfi sweeps");
    auto* val = app.add_subcommand("validate", "check a scenario without running it");
    add_common(val);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        print_error(err, "UsageError", "", e.what());
        return exit_config;
    }
    if (run->parsed()) return run_command(inv, out, err);
    return validate_command(inv, out, err);
}

}  // namespace graviphoton::cli

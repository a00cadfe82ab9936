// Copyright 2026 The mvfr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line front end. run_cli is callable in-process so the exit-code
 * contract can be tested without spawning processes.
 *
 * Exit codes: 0 ok, 1 selftest failure, 2 parse error, 3 precondition
 * violation, 4 no convergence.
 */
#pragma once

#include <cctype>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvfr/checks.hpp"
#include "mvfr/measure_io.hpp"
#include "mvfr/mvfr.hpp"

namespace mvfr::cli {

enum ExitCode : int { kOk = 0, kSelftestFailed = 1, kParseError = 2, kPrecondition = 3, kNoConvergence = 4 };

inline constexpr const char* kCsvHelp = R"(CSV outputs (header row first, 17 significant digits):
  geodesic     summary.csv        time,mass,entropy,speed
  heatflow     heatflow.csv       t,entropy,fisher,mass,tv_to_equilibrium
  bridge       bridge_slices.csv  t,mass,entropy,fisher,speed
  gamma-sweep  sweep.csv          epsilon,objective_x2,dfr_sq,tv_gap
  convexity    convexity.csv      theta,entropy_lhs,bound_rhs,slack
Exit codes: 0 ok, 1 selftest failure, 2 parse error, 3 precondition violation, 4 no convergence.)";

struct RunConfig {
    std::string g0_file, g1_file, ref_file, out;
    std::string metric = "fisher-rao";
    std::string epsilon = "0.1";
    std::string theta_grid = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
    int steps = 32;
    int jobs = 1;
    int max_iters = 5000;
    double t = 5.0;
    std::uint64_t seed = 0;
    bool force_fail = false;
};

namespace detail {

inline std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (item.empty() || used != item.size())
            throw Error(Errc::Parse, std::string(what) + ": '" + item + "' is not a decimal number");
        out.push_back(v);
    }
    if (out.empty()) throw Error(Errc::Parse, std::string(what) + ": empty list");
    return out;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

inline ReferenceMeasure reference_for(const RunConfig& cfg, const MatrixMeasure& g) {
    if (!cfg.ref_file.empty()) return load_reference(cfg.ref_file);
    return ReferenceMeasure::uniform(g.support(), g.dim());
}

inline Metric path_metric(const std::string& m) {
    if (m == "hellinger") return Metric::Hellinger;
    if (m == "fisher-rao") return Metric::FisherRao;
    throw Error(Errc::InvalidArgument, "metric must be hellinger or fisher-rao for paths");
}

/// Writes to `<out>/<name>` when --out is a directory, to --out itself when
/// it names a file, or to stdout when --out is empty.
inline void emit(const RunConfig& cfg, const std::string& name, const std::string& text, std::ostream& out,
                 bool directory) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::filesystem::path p(cfg.out);
    if (directory) {
        std::filesystem::create_directories(p);
        p /= name;
    }
    write_text(p.string(), text);
}

inline int cmd_distance(const RunConfig& cfg, std::ostream& out) {
    const auto g0 = load_measure(cfg.g0_file), g1 = load_measure(cfg.g1_file);
    g0.require_compatible(g1, "distance");
    if (cfg.metric == "tv") {
        out << "tv = " << fmt(tv_distance(g0, g1)) << '\n';
        return kOk;
    }
    g0.require_psd("distance");
    g1.require_psd("distance");
    if (cfg.metric == "bures") {
        double total = 0.0;
        for (std::size_t i = 0; i < g0.size(); ++i) {
            const double b = bures_distance_sq(g0[i], g1[i]);
            total += b;
            out << "bures_sq[" << g0.support()[i] << "] = " << fmt(b) << '\n';
        }
        out << "bures_sq_total = " << fmt(total) << '\n';
    } else if (cfg.metric == "hellinger") {
        const double h2 = hellinger_distance_sq(g0, g1);
        out << "hellinger = " << fmt(std::sqrt(h2)) << "\nhellinger_sq = " << fmt(h2) << '\n';
    } else if (cfg.metric == "fisher-rao") {
        const double h2 = hellinger_distance_sq(g0, g1);
        const double d = fisher_rao_distance(g0, g1);
        out << "fisher_rao = " << fmt(d) << "\nhellinger = " << fmt(std::sqrt(h2)) << "\ncone_cosine = 1 - d_H^2/8 = "
            << fmt(1.0 - h2 / 8.0) << '\n';
    } else {
        throw Error(Errc::InvalidArgument, "unknown metric '" + cfg.metric + "'");
    }
    return kOk;
}

inline int cmd_geodesic(const RunConfig& cfg, std::ostream& out) {
    const auto g0 = load_measure(cfg.g0_file), g1 = load_measure(cfg.g1_file);
    const auto lam = reference_for(cfg, g0);
    const Metric metric = path_metric(cfg.metric);
    if (cfg.steps < 1) throw Error(Errc::InvalidArgument, "--steps must be positive");
    const auto ts = uniform_times(cfg.steps);
    const auto path = metric == Metric::Hellinger ? hellinger_geodesic(g0, g1, ts) : fisher_rao_geodesic(g0, g1, ts);
    const auto speed = metric_speed(path, metric);
    CsvWriter csv({"time", "mass", "entropy", "speed"});
    for (std::size_t k = 0; k < path.size(); ++k)
        csv.row({path.times[k], mass(path.slices[k]), entropy(path.slices[k], lam), speed.finite_difference[k]});
    if (!cfg.out.empty()) emit(cfg, "path.json", dump(path_to_json(path)), out, true);
    emit(cfg, "summary.csv", csv.str(), out, true);
    return kOk;
}

inline int cmd_heatflow(const RunConfig& cfg, std::ostream& out) {
    const auto g = load_measure(cfg.g0_file);
    const auto lam = reference_for(cfg, g);
    g.require_psd("heatflow");
    if (cfg.steps < 1 || !(cfg.t >= 0.0)) throw Error(Errc::InvalidArgument, "need --steps >= 1 and --t >= 0");
    const auto eq = lam.as_measure();
    CsvWriter csv({"t", "entropy", "fisher", "mass", "tv_to_equilibrium"});
    for (int k = 0; k <= cfg.steps; ++k) {
        const double t = cfg.t * k / cfg.steps;
        const auto s = heat_flow(g, lam, t);
        csv.row({t, entropy(s, lam), fisher_information(s, lam), mass(s), tv_distance(s, eq)});
    }
    emit(cfg, "heatflow.csv", csv.str(), out, false);
    return kOk;
}

inline int cmd_bridge(const RunConfig& cfg, std::ostream& out) {
    const auto g0 = load_measure(cfg.g0_file), g1 = load_measure(cfg.g1_file);
    const auto lam = reference_for(cfg, g0);
    SchrodingerConfig sc;
    sc.epsilon = parse_list(cfg.epsilon, "--epsilon").front();
    sc.n_steps = cfg.steps;
    sc.max_iters = cfg.max_iters;
    const auto r = solve_bridge(g0, g1, lam, sc);
    const auto speed = metric_speed(r.path, Metric::FisherRao);
    CsvWriter csv({"t", "mass", "entropy", "fisher", "speed"});
    for (std::size_t k = 0; k < r.path.size(); ++k)
        csv.row({r.path.times[k], mass(r.path.slices[k]), entropy(r.path.slices[k], lam),
                 fisher_information(r.path.slices[k], lam), speed.finite_difference[k]});
    if (!cfg.out.empty()) {
        emit(cfg, "bridge_path.json", dump(path_to_json(r.path)), out, true);
        emit(cfg, "bridge_slices.csv", csv.str(), out, true);
    }
    out << "kinetic = " << fmt(r.kinetic) << "\nfisher_term = " << fmt(r.fisher_term) << "\nobjective = "
        << fmt(r.objective) << "\nconverged = " << (r.converged ? "true" : "false") << "\niterations = " << r.iterations
        << '\n';
    return r.converged ? kOk : kNoConvergence;
}

inline int cmd_gamma_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto g0 = load_measure(cfg.g0_file), g1 = load_measure(cfg.g1_file);
    const auto lam = reference_for(cfg, g0);
    SchrodingerConfig sc;
    sc.n_steps = cfg.steps;
    sc.max_iters = cfg.max_iters;
    const auto rows = gamma_sweep(g0, g1, lam, parse_list(cfg.epsilon, "--epsilon"), sc, cfg.jobs);
    CsvWriter csv({"epsilon", "objective_x2", "dfr_sq", "tv_gap"});
    bool ok = true;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            err << "row epsilon=" << fmt(row.epsilon) << " failed: " << row.error << '\n';
            const double nan = std::numeric_limits<double>::quiet_NaN();
            csv.row({row.epsilon, nan, row.dfr_sq, nan});
            ok = false;
            continue;
        }
        if (!row.converged) {
            err << "row epsilon=" << fmt(row.epsilon) << " did not converge\n";
            ok = false;
        }
        csv.row({row.epsilon, row.objective_x2(), row.dfr_sq, row.tv_gap});
    }
    emit(cfg, "sweep.csv", csv.str(), out, false);
    return ok ? kOk : kNoConvergence;
}

inline int cmd_convexity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto g0 = load_measure(cfg.g0_file), g1 = load_measure(cfg.g1_file);
    const auto lam = reference_for(cfg, g0);
    const auto rows = convexity_experiment(g0, g1, lam, parse_list(cfg.theta_grid, "--theta-grid"));
    CsvWriter csv({"theta", "entropy_lhs", "bound_rhs", "slack"});
    int violations = 0;
    for (const auto& row : rows) {
        csv.row({row.theta, row.lhs, row.rhs, row.slack()});
        if (row.slack() < -1e-6) ++violations;
    }
    emit(cfg, "convexity.csv", csv.str(), out, false);
    if (violations) err << violations << " theta values violate the convexity bound by more than 1e-6\n";
    return kOk;
}

/// Full invariant suite at reduced instance counts.
inline int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
    Random rng(cfg.seed);
    std::vector<checks::CheckResult> results;
    results.push_back(checks::hpsd_invariants(rng, 100));
    results.push_back(checks::measure_invariants(rng, 50));
    results.push_back(checks::bures_closed_form(rng, 100));
    results.push_back(checks::real_embedding_identity(rng, 50));
    results.push_back(checks::dynamical_bures(rng, 3, 32));
    results.push_back(checks::hellinger_identities(rng, 50));
    results.push_back(checks::cone_scaling(rng, 50));
    results.push_back(checks::metric_axioms(rng, 50));
    results.push_back(checks::tv_sandwich(rng, 100));
    results.push_back(checks::geodesic_structure(rng, 30));
    results.push_back(checks::heat_flow_entropy(rng, 30));
    results.push_back(checks::recovery_bound(rng, 10, {0.05, 0.1, 0.2}));
    results.push_back(checks::gamma_convergence(rng, 1, {0.5, 0.2, 0.1, 0.05}, 16));
    results.push_back(checks::convexity(rng, 30));
    results.push_back(checks::gaussian_oracle(rng, 10, 2));
    if (cfg.force_fail) results.push_back({"forced failure", false, "requested by --force-fail"});

    std::vector<std::string> failed;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        if (!r.passed) failed.push_back(r.name);
    }
    out << "seed " << cfg.seed << ": " << (results.size() - failed.size()) << "/" << results.size() << " groups passed\n";
    for (const auto& f : failed) out << "failed: " << f << '\n';
    return failed.empty() ? kOk : kSelftestFailed;
}

}  // namespace detail

inline int exit_code_for(Errc code) {
    switch (code) {
    case Errc::Parse: return kParseError;
    case Errc::NoConvergence:
    case Errc::FixedPointDiverged: return kNoConvergence;
    default: return kPrecondition;
    }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    CLI::App app{"Fisher-Rao geometry of matrix-valued measures"};
    app.footer(kCsvHelp);
    app.require_subcommand(1, 1);

    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("g0", cfg.g0_file, "First measure (JSON)")->required();
        sub->add_option("g1", cfg.g1_file, "Second measure (JSON)")->required();
    };
    auto add_ref = [&](CLI::App* sub) {
        sub->add_option("--ref", cfg.ref_file, "Reference measure (JSON); uniform 1/(n d) if omitted");
    };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output path; stdout if omitted"); };

    auto* distance = app.add_subcommand("distance", "Distance between two measures");
    add_pair(distance);
    distance->add_option("--metric", cfg.metric, "bures | hellinger | fisher-rao | tv")
        ->check(CLI::IsMember({"bures", "hellinger", "fisher-rao", "tv"}));

    auto* geodesic = app.add_subcommand("geodesic", "Sample a Hellinger or Fisher-Rao geodesic");
    add_pair(geodesic);
    add_ref(geodesic);
    add_out(geodesic);
    geodesic->add_option("--metric", cfg.metric, "hellinger | fisher-rao")
        ->check(CLI::IsMember({"hellinger", "fisher-rao"}));
    geodesic->add_option("--steps", cfg.steps, "Number of time steps");

    auto* heat = app.add_subcommand("heatflow", "Tabulate the heat flow of a measure");
    heat->add_option("g", cfg.g0_file, "Measure (JSON)")->required();
    add_ref(heat);
    add_out(heat);
    heat->add_option("--t", cfg.t, "Final time");
    heat->add_option("--steps", cfg.steps, "Number of time steps");

    auto* bridge = app.add_subcommand("bridge", "Solve the discrete Schrodinger bridge");
    add_pair(bridge);
    add_ref(bridge);
    add_out(bridge);
    bridge->add_option("--epsilon", cfg.epsilon, "Temperature");
    bridge->add_option("--steps", cfg.steps, "Number of time steps (>= 8)");
    bridge->add_option("--max-iters", cfg.max_iters, "Optimizer iteration cap");

    auto* sweep = app.add_subcommand("gamma-sweep", "Bridges for a descending list of temperatures");
    add_pair(sweep);
    add_ref(sweep);
    add_out(sweep);
    sweep->add_option("--epsilon", cfg.epsilon, "Comma-separated temperatures, descending");
    sweep->add_option("--steps", cfg.steps, "Number of time steps (>= 8)");
    sweep->add_option("--max-iters", cfg.max_iters, "Optimizer iteration cap");
    sweep->add_option("--jobs", cfg.jobs, "Worker threads; rows run cold when > 1");

    auto* convex = app.add_subcommand("convexity", "Entropy along the geodesic against the convexity bound");
    add_pair(convex);
    add_ref(convex);
    add_out(convex);
    convex->add_option("--theta-grid", cfg.theta_grid, "Comma-separated times in [0, 1]");

    auto* self = app.add_subcommand("selftest", "Run the invariant suite on seeded random instances");
    self->add_option("--seed", cfg.seed, "Random seed");
    self->add_flag("--force-fail", cfg.force_fail)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }

    try {
        if (distance->parsed()) return detail::cmd_distance(cfg, out);
        if (geodesic->parsed()) return detail::cmd_geodesic(cfg, out);
        if (heat->parsed()) return detail::cmd_heatflow(cfg, out);
        if (bridge->parsed()) return detail::cmd_bridge(cfg, out);
        if (sweep->parsed()) return detail::cmd_gamma_sweep(cfg, out, err);
        if (convex->parsed()) return detail::cmd_convexity(cfg, out, err);
        if (self->parsed()) return detail::cmd_selftest(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    }
    return kParseError;
}

}  // namespace mvfr::cli

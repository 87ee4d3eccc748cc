#include "oposhg/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oposhg/classical.hpp"
#include "oposhg/config.hpp"
#include "oposhg/correl.hpp"
#include "oposhg/errors.hpp"
#include "oposhg/io.hpp"
#include "oposhg/pplus.hpp"
#include "oposhg/spectra.hpp"
#include "oposhg/steady.hpp"
#include "oposhg/version.hpp"

namespace oposhg {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Complex parse_complex_flag(const std::string& text, const std::string& flag) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char sep = 0;
    if (!(in >> re)) throw ConfigError(flag + ": expected RE or RE,IM, got '" + text + "'");
    if (in >> sep) {
        if (sep != ',' || !(in >> im))
            throw ConfigError(flag + ": expected RE or RE,IM, got '" + text + "'");
    }
    return {re, im};
}

/// Flag values shared by all subcommands; empty optionals leave the config
/// file (or default) value in place.
struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<double> gamma1, gamma2, gamma3, kappa1, kappa2;
    std::optional<std::string> eps1, eps2;
    std::optional<double> eps2_over_threshold;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads, omega_points, out_stride;
    std::optional<double> dt, t_final, omega_max;
    std::optional<long> n_traj;
    std::optional<double> divergence_bound, discard_budget;
    std::optional<std::string> alpha1, alpha2, alpha3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (see README for the schema)");
        cmd->add_option("--out", out_dir, "output directory (default <subcommand>-<timestamp>)");
        cmd->add_option("--gamma1", gamma1, "loss rate of mode 1");
        cmd->add_option("--gamma2", gamma2, "loss rate of mode 2");
        cmd->add_option("--gamma3", gamma3, "loss rate of mode 3");
        cmd->add_option("--kappa1", kappa1, "downconversion nonlinearity");
        cmd->add_option("--kappa2", kappa2, "upconversion nonlinearity");
        cmd->add_option("--eps2", eps2, "pump amplitude at w2 (RE or RE,IM)");
        cmd->add_option("--eps2-over-threshold", eps2_over_threshold,
                        "pump as a multiple of the oscillation threshold");
        cmd->add_option("--eps1", eps1, "injected signal at w1 (RE or RE,IM)");
        cmd->add_option("--seed", seed, "master RNG seed");
        cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
        cmd->add_option("--dt", dt, "integration step (units of 1/gamma1)");
        cmd->add_option("--t-final", t_final, "integration end time");
        cmd->add_option("--n-traj", n_traj, "stochastic trajectory count");
        cmd->add_option("--omega-max", omega_max, "frequency grid maximum");
        cmd->add_option("--omega-points", omega_points, "frequency grid size");
        cmd->add_option("--out-stride", out_stride, "sample every N steps (0 = auto)");
        cmd->add_option("--divergence-bound", divergence_bound,
                        "trajectory divergence cutoff on |alpha|");
        cmd->add_option("--discard-budget", discard_budget,
                        "tolerated divergent-trajectory fraction");
        cmd->add_option("--alpha1", alpha1, "initial alpha1 (RE or RE,IM)");
        cmd->add_option("--alpha2", alpha2, "initial alpha2 (RE or RE,IM)");
        cmd->add_option("--alpha3", alpha3, "initial alpha3 (RE or RE,IM)");
    }

    Config resolve() const {
        Config cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file " + config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            cfg = parse_config(buf.str());
        }
        if (gamma1) cfg.params.gamma1 = *gamma1;
        if (gamma2) cfg.params.gamma2 = *gamma2;
        if (gamma3) cfg.params.gamma3 = *gamma3;
        if (kappa1) cfg.params.kappa1 = *kappa1;
        if (kappa2) cfg.params.kappa2 = *kappa2;
        if (eps2 && eps2_over_threshold)
            throw ConfigError("give either --eps2 or --eps2-over-threshold, not both");
        if (eps2) cfg.params.eps2 = parse_complex_flag(*eps2, "--eps2");
        if (eps1) cfg.params.eps1 = parse_complex_flag(*eps1, "--eps1");
        cfg.params.validate();
        cfg.params = cfg.params.normalized();
        if (eps2_over_threshold)
            cfg.params.eps2 = *eps2_over_threshold * threshold_pump(cfg.params);

        if (seed) cfg.run.seed = *seed;
        if (threads) cfg.run.threads = *threads;
        if (dt) cfg.run.dt = *dt;
        if (t_final) cfg.run.t_final = *t_final;
        if (n_traj) cfg.run.n_traj = *n_traj;
        if (omega_max) cfg.run.omega_max = *omega_max;
        if (omega_points) cfg.run.omega_points = *omega_points;
        if (out_stride) cfg.run.out_stride = *out_stride;
        if (divergence_bound) cfg.run.divergence_bound = *divergence_bound;
        if (discard_budget) cfg.run.discard_budget = *discard_budget;
        if (alpha1) cfg.run.initial[0] = parse_complex_flag(*alpha1, "--alpha1");
        if (alpha2) cfg.run.initial[1] = parse_complex_flag(*alpha2, "--alpha2");
        if (alpha3) cfg.run.initial[2] = parse_complex_flag(*alpha3, "--alpha3");
        cfg.run.validate();
        return cfg;
    }
};

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

/// Collects output files and writes the run manifest; the manifest doubles as
/// a config file, so a run can be reproduced with --config manifest.json.
class RunRecorder {
public:
    RunRecorder(std::string subcommand, const Config& cfg, const std::string& out_dir)
        : subcommand_(std::move(subcommand)),
          config_(cfg),
          started_(std::chrono::steady_clock::now()) {
        dir_ = out_dir.empty() ? fs::path(subcommand_ + "-" + utc_timestamp()) : fs::path(out_dir);
        fs::create_directories(dir_);
    }

    const fs::path& dir() const { return dir_; }
    fs::path file(const std::string& name) const { return dir_ / name; }
    void add_output(const std::string& name) { outputs_.push_back(name); }
    void add_stat(const std::string& key, const json& value) { stats_[key] = value; }

    fs::path finish() const {
        json manifest = json::parse(serialize_config(config_));
        manifest["tool"] = "oposhg";
        manifest["version"] = kVersion;
        manifest["subcommand"] = subcommand_;
        manifest["created_utc"] = utc_timestamp();
        manifest["duration_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
        json files = json::array();
        for (const std::string& name : outputs_)
            files.push_back({{"file", name}, {"fnv1a64", file_hash(dir_ / name)}});
        manifest["outputs"] = files;
        if (!stats_.empty()) manifest["stats"] = stats_;
        const fs::path path = dir_ / "manifest.json";
        std::ofstream out(path);
        out << manifest.dump(2) << '\n';
        return path;
    }

private:
    std::string subcommand_;
    Config config_;
    std::chrono::steady_clock::time_point started_;
    fs::path dir_;
    std::vector<std::string> outputs_;
    json stats_;
};

SteadyState pick_branch(const SystemParams& p, const std::string& branch) {
    if (branch == "below") return zero_branch(p);
    if (branch == "above-plus") return steady_above(p, +1);
    if (branch == "above-minus") return steady_above(p, -1);
    if (branch == "injected") return steady_injected(p);
    // auto
    if (p.eps1 != Complex(0.0)) return steady_injected(p);
    const double thr = threshold_pump(p);
    if (p.eps2.imag() == 0.0 && p.eps2.real() == thr)
        throw DomainError("pump is exactly at threshold; no stable analytic branch");
    if (p.eps2.imag() == 0.0 && p.eps2.real() < thr) return steady_below(p);
    return steady_above(p, +1);
}

json steady_to_json(const SystemParams& p, const SteadyState& ss, const StabilityReport& report) {
    json j;
    j["branch"] = branch_name(ss.branch);
    j["threshold"] = threshold_pump(p);
    j["eps2"] = complex_json(p.eps2);
    j["eps1"] = complex_json(p.eps1);
    json alphas = json::array(), intensities = json::array();
    for (int mode = 1; mode <= 3; ++mode) {
        alphas.push_back(complex_json(ss.amplitudes.alpha[mode - 1]));
        intensities.push_back(ss.amplitudes.intensity(mode).real());
    }
    j["alpha"] = alphas;
    j["intensity"] = intensities;
    j["residual"] = ss.residual;
    json eigs = json::array();
    for (const Complex& ev : report.eigenvalues) eigs.push_back(complex_json(ev));
    j["eigenvalues"] = eigs;
    j["stable"] = report.stable;
    j["marginal"] = report.marginal;
    return j;
}

void print_steady_text(const json& j) {
    std::printf("branch      %s\n", j["branch"].get<std::string>().c_str());
    std::printf("threshold   %s\n", format_double(j["threshold"].get<double>()).c_str());
    for (int m = 0; m < 3; ++m) {
        std::printf("alpha%d      %+.10g %+.10gi   N%d = %.10g\n", m + 1,
                    j["alpha"][m][0].get<double>(), j["alpha"][m][1].get<double>(), m + 1,
                    j["intensity"][m].get<double>());
    }
    std::printf("residual    %.3g\n", j["residual"].get<double>());
    std::printf("eigenvalues ");
    for (const auto& ev : j["eigenvalues"])
        std::printf("%.6g%+.6gi  ", ev[0].get<double>(), ev[1].get<double>());
    std::printf("\nstable      %s%s\n", j["stable"].get<bool>() ? "yes" : "no",
                j["marginal"].get<bool>() ? " (marginal)" : "");
}

int cmd_steady(const Config& cfg, const std::string& out_dir, const std::string& branch,
               const std::string& format) {
    const SteadyState ss = pick_branch(cfg.params, branch);
    const StabilityReport report = stability(cfg.params, ss);
    const json j = steady_to_json(cfg.params, ss, report);
    if (format == "text")
        print_steady_text(j);
    else
        std::printf("%s\n", j.dump(2).c_str());

    RunRecorder rec("steady", cfg, out_dir);
    std::ofstream out(rec.file("steady.json"));
    out << j.dump(2) << '\n';
    out.close();
    rec.add_output("steady.json");
    rec.finish();
    return 0;
}

int cmd_classical(const Config& cfg, const std::string& out_dir) {
    RunRecorder rec("classical", cfg, out_dir);
    const PhaseSpaceState initial = PhaseSpaceState::conjugate_pair(cfg.run.initial);
    const int stride = cfg.run.resolved_stride(cfg.run.t_final);
    const Trajectory traj =
        integrate_classical(cfg.params, initial, cfg.run.dt, cfg.run.t_final, stride);

    CsvWriter csv(rec.file("classical.csv"));
    csv.header({"t", "N1", "N2", "N3", "re_alpha1", "im_alpha1", "re_alpha2", "im_alpha2",
                "re_alpha3", "im_alpha3"});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& s = traj.states[i];
        csv.row(std::array<double, 10>{
            traj.times[i], traj.intensities[i][0].real(), traj.intensities[i][1].real(),
            traj.intensities[i][2].real(), s.alpha[0].real(), s.alpha[0].imag(),
            s.alpha[1].real(), s.alpha[1].imag(), s.alpha[2].real(), s.alpha[2].imag()});
    }
    rec.add_output("classical.csv");
    const fs::path manifest = rec.finish();
    std::printf("wrote %s (%zu samples); manifest %s\n",
                rec.file("classical.csv").string().c_str(), traj.size(),
                manifest.string().c_str());
    return 0;
}

int cmd_simulate(const Config& cfg, const std::string& out_dir) {
    RunRecorder rec("simulate", cfg, out_dir);
    const PhaseSpaceState initial = PhaseSpaceState::conjugate_pair(cfg.run.initial);
    const EnsembleStats stats = run_ensemble(cfg.params, cfg.run, initial);

    CsvWriter csv(rec.file("ensemble.csv"));
    csv.header({"t", "meanN1", "meanN2", "meanN3", "stderrN1", "stderrN2", "stderrN3"});
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        csv.row(std::array<double, 7>{stats.times[i], stats.mean_n[0][i], stats.mean_n[1][i],
                                      stats.mean_n[2][i], stats.stderr_n[0][i],
                                      stats.stderr_n[1][i], stats.stderr_n[2][i]});
    }
    rec.add_output("ensemble.csv");
    rec.add_stat("n_traj", stats.n_traj);
    rec.add_stat("n_discarded", stats.n_discarded);
    rec.add_stat("discard_budget_exceeded", stats.discard_budget_exceeded);
    const fs::path manifest = rec.finish();
    std::printf("wrote %s (%zu samples, %ld trajectories, %ld discarded%s); manifest %s\n",
                rec.file("ensemble.csv").string().c_str(), stats.times.size(), stats.n_traj,
                stats.n_discarded, stats.discard_budget_exceeded ? ", BUDGET EXCEEDED" : "",
                manifest.string().c_str());
    return stats.discard_budget_exceeded ? 4 : 0;
}

int cmd_spectra(const Config& cfg, const std::string& out_dir, const std::string& branch) {
    RunRecorder rec("spectra", cfg, out_dir);
    const SteadyState ss = pick_branch(cfg.params, branch);
    const auto omegas = omega_grid(cfg.run.omega_max, cfg.run.omega_points);
    const SpectrumTable table = compute_spectrum_table(cfg.params, ss, omegas, cfg.run.threads);

    CsvWriter csv(rec.file("spectra.csv"));
    csv.header({"omega", "V_X1", "V_Y1", "V_X2", "V_Y2", "V_X3", "V_Y3", "V_X1X2", "V_Y1Y2",
                "V_X1X3", "V_Y1Y3", "V_X2X3", "V_Y2Y3"});
    for (std::size_t i = 0; i < table.omegas.size(); ++i) {
        const OutputMoments& m = table.moments[i];
        csv.row(std::array<double, 13>{table.omegas[i], m.vx(1), m.vy(1), m.vx(2), m.vy(2),
                                       m.vx(3), m.vy(3), m.cov_x(1, 2), m.cov_y(1, 2),
                                       m.cov_x(1, 3), m.cov_y(1, 3), m.cov_x(2, 3),
                                       m.cov_y(2, 3)});
    }
    rec.add_output("spectra.csv");
    const fs::path manifest = rec.finish();
    std::printf("wrote %s (%zu frequencies, branch %s); manifest %s\n",
                rec.file("spectra.csv").string().c_str(), table.omegas.size(),
                branch_name(ss.branch).c_str(), manifest.string().c_str());
    return 0;
}

int cmd_epr(const Config& cfg, const std::string& out_dir, const std::string& branch) {
    RunRecorder rec("epr", cfg, out_dir);
    const SteadyState ss = pick_branch(cfg.params, branch);
    const auto omegas = omega_grid(cfg.run.omega_max, cfg.run.omega_points);
    const WitnessTable table =
        witness_table(compute_spectrum_table(cfg.params, ss, omegas, cfg.run.threads));

    CsvWriter csv(rec.file("epr.csv"));
    csv.header({"omega", "S1p", "S1m", "S2p", "S2m", "S3p", "S3m", "EPR12", "EPR21", "EPR13",
                "EPR31", "EPR23", "EPR32"});
    for (const WitnessRow& row : table.rows) {
        csv.row(std::array<double, 13>{row.omega, row.squeezing_x[0], row.squeezing_y[0],
                                       row.squeezing_x[1], row.squeezing_y[1], row.squeezing_x[2],
                                       row.squeezing_y[2], row.epr[0], row.epr[1], row.epr[2],
                                       row.epr[3], row.epr[4], row.epr[5]});
    }
    rec.add_output("epr.csv");
    const fs::path manifest = rec.finish();
    std::printf("wrote %s (%zu frequencies, branch %s); manifest %s\n",
                rec.file("epr.csv").string().c_str(), table.rows.size(),
                branch_name(ss.branch).c_str(), manifest.string().c_str());
    return 0;
}

int cmd_tripartite(const Config& cfg, const std::string& out_dir, const std::string& branch) {
    RunRecorder rec("tripartite", cfg, out_dir);
    const SteadyState ss = pick_branch(cfg.params, branch);
    const auto omegas = omega_grid(cfg.run.omega_max, cfg.run.omega_points);
    const WitnessTable table =
        witness_table(compute_spectrum_table(cfg.params, ss, omegas, cfg.run.threads));

    CsvWriter csv(rec.file("tripartite.csv"));
    csv.header({"omega", "S123_over4", "S231_over4", "S312_over4", "OBR123", "OBR231", "OBR312",
                "OBR123_sign", "OBR231_sign", "OBR312_sign", "steering_sum"});
    for (const WitnessRow& row : table.rows) {
        csv.row(std::array<double, 11>{
            row.omega, row.vlf_over_4[0], row.vlf_over_4[1], row.vlf_over_4[2], row.obr[0],
            row.obr[1], row.obr[2], static_cast<double>(row.obr_sign[0]),
            static_cast<double>(row.obr_sign[1]), static_cast<double>(row.obr_sign[2]),
            row.steering_sum});
    }
    rec.add_output("tripartite.csv");
    const fs::path manifest = rec.finish();
    std::printf("wrote %s (%zu frequencies, branch %s); manifest %s\n",
                rec.file("tripartite.csv").string().c_str(), table.rows.size(),
                branch_name(ss.branch).c_str(), manifest.string().c_str());
    return 0;
}

int cmd_scan_inject(Config cfg, const std::string& out_dir, bool pump_given, double eps1_max,
                    int eps1_points) {
    // The scan's documented default working point is 0.9 x threshold.
    if (!pump_given) cfg.params.eps2 = 0.9 * threshold_pump(cfg.params);
    RunRecorder rec("scan-inject", cfg, out_dir);
    if (eps1_max <= 0.0) eps1_max = 0.2 * std::abs(cfg.params.eps2);
    std::vector<double> eps1_values(static_cast<std::size_t>(eps1_points));
    for (int i = 0; i < eps1_points; ++i)
        eps1_values[static_cast<std::size_t>(i)] = eps1_max * i / (eps1_points - 1);
    const auto omegas = omega_grid(cfg.run.omega_max, cfg.run.omega_points);
    const InjectionScan scan = scan_injected(cfg.params, eps1_values, omegas, cfg.run.threads);

    CsvWriter csv(rec.file("scan.csv"));
    csv.header({"eps1",       "ok",          "stable",      "re_alpha1",   "minEPR12",
                "minEPR21",   "minEPR13",    "minEPR31",    "minEPR23",    "minEPR32",
                "capEPR12",   "capEPR21",    "capEPR13",    "capEPR31",    "capEPR23",
                "capEPR32"});
    int failures = 0;
    for (const InjectionScanRow& row : scan.rows) {
        if (!row.ok) ++failures;
        csv.row(std::array<double, 16>{row.eps1, row.ok ? 1.0 : 0.0, row.stable ? 1.0 : 0.0,
                                       row.alpha1.real(), row.min_epr_raw[0], row.min_epr_raw[1],
                                       row.min_epr_raw[2], row.min_epr_raw[3], row.min_epr_raw[4],
                                       row.min_epr_raw[5], row.min_epr_capped[0],
                                       row.min_epr_capped[1], row.min_epr_capped[2],
                                       row.min_epr_capped[3], row.min_epr_capped[4],
                                       row.min_epr_capped[5]});
    }
    rec.add_output("scan.csv");
    rec.add_stat("failed_points", failures);
    const fs::path manifest = rec.finish();
    std::printf("wrote %s (%zu scan points, %d failed); manifest %s\n",
                rec.file("scan.csv").string().c_str(), scan.rows.size(), failures,
                manifest.string().c_str());
    return 0;
}

int run_figure(int figure, CommonFlags& flags) {
    // Parameter sets follow the corresponding figure captions; gamma_j = 1 and
    // kappa_1 = kappa_2 = 0.01 unless the caption changes them.
    if (!flags.gamma1) flags.gamma1 = 1.0;
    if (!flags.gamma3) flags.gamma3 = 1.0;
    if (!flags.kappa1) flags.kappa1 = 0.01;
    const bool want_gamma2_small = figure == 6;
    if (!flags.gamma2) flags.gamma2 = want_gamma2_small ? 0.1 : 1.0;
    if (!flags.kappa2) flags.kappa2 = 0.01;

    double ratio = 0.0;
    switch (figure) {
        case 1: ratio = 1.5; break;
        case 2: ratio = 5.0; break;
        case 3: case 4: ratio = 0.9; break;
        case 5: case 6: case 7: ratio = 1.5; break;
        case 8: case 9: ratio = 0.9; break;
        default: throw ConfigError("figure must be 1..9");
    }
    if (!flags.eps2 && !flags.eps2_over_threshold) flags.eps2_over_threshold = ratio;

    const std::string out = flags.out_dir.empty()
                                ? "figure" + std::to_string(figure) + "-" + utc_timestamp()
                                : flags.out_dir;

    switch (figure) {
        case 1: {
            if (!flags.n_traj) flags.n_traj = 400000;  // caption trajectory count
            if (!flags.t_final) flags.t_final = 50.0;
            return cmd_simulate(flags.resolve(), out);
        }
        case 2: {
            if (!flags.alpha2) flags.alpha2 = "1,2";
            if (!flags.alpha3) flags.alpha3 = "1,-2";
            if (!flags.t_final) flags.t_final = 100.0;
            Config cfg = flags.resolve();
            const int rc = cmd_classical(cfg, out);
            if (rc != 0) return rc;
            return cmd_simulate(cfg, out);
        }
        case 3: return cmd_spectra(flags.resolve(), out, "auto");
        case 4: case 5: case 6: return cmd_epr(flags.resolve(), out, "auto");
        case 7: return cmd_tripartite(flags.resolve(), out, "auto");
        case 8: return cmd_scan_inject(flags.resolve(), out, true, 0.0, 21);
        case 9: {
            Config cfg = flags.resolve();
            if (!flags.eps1) cfg.params.eps1 = 0.1 * cfg.params.eps2;
            return cmd_epr(cfg, out, "auto");
        }
    }
    return 1;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Three-mode intracavity OPO/SHG simulator: steady states, positive-P "
                 "ensembles, output squeezing spectra and EPR-steering witnesses"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    struct Sub {
        CLI::App* cmd = nullptr;
        CommonFlags flags;
    };

    Sub steady_sub;
    steady_sub.cmd = app.add_subcommand("steady", "threshold, steady-state branch, stability");
    steady_sub.flags.attach(steady_sub.cmd);
    std::string steady_branch = "auto";
    std::string steady_format = "json";
    steady_sub.cmd->add_option("--branch", steady_branch, "auto|below|above-plus|above-minus|injected")
        ->check(CLI::IsMember({"auto", "below", "above-plus", "above-minus", "injected"}));
    steady_sub.cmd->add_option("--format", steady_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    Sub classical_sub;
    classical_sub.cmd =
        app.add_subcommand("classical", "deterministic (noise-free) time integration");
    classical_sub.flags.attach(classical_sub.cmd);

    Sub simulate_sub;
    simulate_sub.cmd =
        app.add_subcommand("simulate", "positive-P stochastic ensemble intensities");
    simulate_sub.flags.attach(simulate_sub.cmd);

    Sub spectra_sub;
    spectra_sub.cmd =
        app.add_subcommand("spectra", "output quadrature variances and covariances");
    spectra_sub.flags.attach(spectra_sub.cmd);
    std::string spectra_branch = "auto";
    spectra_sub.cmd->add_option("--branch", spectra_branch, "steady-state branch")
        ->check(CLI::IsMember({"auto", "below", "above-plus", "above-minus", "injected"}));

    Sub epr_sub;
    epr_sub.cmd = app.add_subcommand("epr", "squeezing spectra and Reid EPR products");
    epr_sub.flags.attach(epr_sub.cmd);
    std::string epr_branch = "auto";
    epr_sub.cmd->add_option("--branch", epr_branch, "steady-state branch")
        ->check(CLI::IsMember({"auto", "below", "above-plus", "above-minus", "injected"}));

    Sub tri_sub;
    tri_sub.cmd = app.add_subcommand("tripartite", "vLF and OBR tripartite witnesses");
    tri_sub.flags.attach(tri_sub.cmd);
    std::string tri_branch = "auto";
    tri_sub.cmd->add_option("--branch", tri_branch, "steady-state branch")
        ->check(CLI::IsMember({"auto", "below", "above-plus", "above-minus", "injected"}));

    Sub scan_sub;
    scan_sub.cmd =
        app.add_subcommand("scan-inject", "EPR minima versus injected-signal amplitude");
    scan_sub.flags.attach(scan_sub.cmd);
    double eps1_max = 0.0;
    int eps1_points = 21;
    scan_sub.cmd->add_option("--eps1-max", eps1_max, "scan end (default 0.2 |eps2|)");
    scan_sub.cmd->add_option("--eps1-points", eps1_points, "scan grid size")
        ->check(CLI::PositiveNumber);

    Sub fig_sub;
    fig_sub.cmd = app.add_subcommand("reproduce-figure",
                                     "emit the data table for one of the documented figures");
    fig_sub.flags.attach(fig_sub.cmd);
    int figure = 0;
    fig_sub.cmd->add_option("figure", figure, "figure number (1-9)")
        ->required()
        ->check(CLI::Range(1, 9));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (steady_sub.cmd->parsed())
            return cmd_steady(steady_sub.flags.resolve(), steady_sub.flags.out_dir, steady_branch,
                              steady_format);
        if (classical_sub.cmd->parsed())
            return cmd_classical(classical_sub.flags.resolve(), classical_sub.flags.out_dir);
        if (simulate_sub.cmd->parsed())
            return cmd_simulate(simulate_sub.flags.resolve(), simulate_sub.flags.out_dir);
        if (spectra_sub.cmd->parsed())
            return cmd_spectra(spectra_sub.flags.resolve(), spectra_sub.flags.out_dir,
                               spectra_branch);
        if (epr_sub.cmd->parsed())
            return cmd_epr(epr_sub.flags.resolve(), epr_sub.flags.out_dir, epr_branch);
        if (tri_sub.cmd->parsed())
            return cmd_tripartite(tri_sub.flags.resolve(), tri_sub.flags.out_dir, tri_branch);
        if (scan_sub.cmd->parsed()) {
            const bool pump_given =
                scan_sub.flags.eps2.has_value() || scan_sub.flags.eps2_over_threshold.has_value() ||
                !scan_sub.flags.config_path.empty();
            return cmd_scan_inject(scan_sub.flags.resolve(), scan_sub.flags.out_dir, pump_given,
                                   eps1_max, eps1_points);
        }
        if (fig_sub.cmd->parsed()) return run_figure(figure, fig_sub.flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 4;
    } catch (const NumericsError& e) {
        std::cerr << "numerics error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace oposhg

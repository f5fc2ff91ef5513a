#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lupe/checks.hpp"
#include "lupe/diagnostics.hpp"
#include "lupe/inner.hpp"
#include "lupe/io.hpp"
#include "lupe/stepper.hpp"

namespace {

std::vector<lupe::DiagnosticsRecord> collect_diagnostics(const lupe::SimConfig& cfg) {
    const lupe::Grid grid = lupe::make_grid(cfg);
    const lupe::NoiseModel model = lupe::build_model(cfg, grid);
    std::vector<lupe::DiagnosticsRecord> records;
    double prev_energy = 0;
    bool first = true;
    lupe::run(cfg, [&](const lupe::State& u) {
        lupe::DiagnosticsRecord r = lupe::estimate_quantities(u, cfg.phys);
        r.fd_residual = lupe::fd_balance(u.T, model, cfg.kernel);
        const lupe::RegimeIndicator ri = lupe::regime_indicator(u, model, cfg.phys);
        r.alpha2_over_Ri = ri.alpha2_over_Ri;
        r.noise_shear = ri.noise_shear;
        if (!first) r.energy_rate = (r.energy - prev_energy) / cfg.dt;
        prev_energy = r.energy;
        first = false;
        records.push_back(r);
    });
    return records;
}

int cmd_run(const std::string& config_path, const std::string& diag_path,
            const std::string& snap_path) {
    const lupe::SimConfig cfg = lupe::parse_config(config_path);
    const std::vector<lupe::DiagnosticsRecord> records = collect_diagnostics(cfg);

    if (!diag_path.empty()) {
        lupe::write_diagnostics_csv(diag_path, records);
    } else {
        lupe::write_diagnostics_csv(std::cout, records);
    }
    if (!snap_path.empty()) {
        const lupe::RunResult res = lupe::run(cfg);
        lupe::write_snapshot(snap_path, res.final_state);
    }
    return 0;
}

int cmd_check(const std::string& config_path) {
    const lupe::SimConfig cfg = lupe::parse_config(config_path);
    const std::vector<lupe::CheckResult> results = lupe::run_checks(cfg);
    for (const lupe::CheckResult& r : results) {
        std::printf("%-48s %s  %.3e%s%s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.measured, r.detail.empty() ? "" : "  ", r.detail.c_str());
    }
    return lupe::all_passed(results) ? 0 : 1;
}

int cmd_ensemble(const std::string& config_path, int n_members, const std::string& prefix) {
    lupe::SimConfig cfg = lupe::parse_config(config_path);
    for (int m = 0; m < n_members; ++m) {
        lupe::SimConfig member = cfg;
        member.seed = lupe::mix_seed(cfg.seed, static_cast<std::uint64_t>(m));
        const std::vector<lupe::DiagnosticsRecord> records = collect_diagnostics(member);
        lupe::write_diagnostics_csv(prefix + std::to_string(m) + ".csv", records);
    }
    return 0;
}

int cmd_converge(const std::string& config_path, const std::string& upsilons_arg,
                 int ensemble, const std::string& out_path) {
    const lupe::SimConfig cfg = lupe::parse_config(config_path);
    std::vector<double> upsilons;
    std::stringstream ss(upsilons_arg);
    std::string item;
    while (std::getline(ss, item, ',')) upsilons.push_back(std::stod(item));
    if (upsilons.empty()) throw std::invalid_argument("empty --upsilons list");

    const lupe::ConvergenceTable table =
        lupe::noise_convergence_experiment(cfg, upsilons, ensemble);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        lupe::write_convergence_csv(out, table);
    } else {
        lupe::write_convergence_csv(std::cout, table);
    }
    return 0;
}

int cmd_info(const std::string& config_path) {
    const lupe::SimConfig cfg = lupe::parse_config(config_path);
    const lupe::Grid grid = lupe::make_grid(cfg);
    const lupe::NoiseModel model = lupe::build_model(cfg, grid);
    const lupe::State u0 = lupe::initial_state(cfg, grid);

    std::printf("grid: %d x %d x %d, domain %g x %g x %g\n", grid.nx, grid.ny, grid.nz, grid.Lx,
                grid.Ly, grid.h);
    const char* closure = cfg.closure == lupe::HydroClosure::deterministic ? "deterministic"
                          : cfg.closure == lupe::HydroClosure::strong      ? "strong"
                                                                           : "weak-filtered";
    std::printf("closure: %s, dt = %g, t_end = %g, seed = %llu\n", closure, cfg.dt, cfg.t_end,
                static_cast<unsigned long long>(cfg.seed));
    std::printf("noise: %zu modes, upsilon = %g, bhn = %s\n", model.modes.size(), cfg.upsilon,
                cfg.bhn ? "true" : "false");
    std::printf("|a|: xx %.6e yy %.6e zz %.6e (L2)\n", lupe::norm_L2(model.a.xx),
                lupe::norm_L2(model.a.yy), lupe::norm_L2(model.a.zz));
    std::printf("|u_S|: %.6e (L2), pre-projection divergence %.3e\n", lupe::norm_L2(model.u_s),
                model.u_s_div_pre);
    const lupe::RegimeIndicator ri = lupe::regime_indicator(u0, model, cfg.phys);
    std::printf("regime at t=0: alpha^2/Ri = %.6e%s, stochastic shear = %.6e\n",
                ri.alpha2_over_Ri, ri.flagged ? " (degenerate)" : "", ri.noise_shear);
    std::printf("initial norms: |U|_H = %.6e, |U|_V = %.6e\n", lupe::norm_H(u0),
                lupe::norm_V(u0, cfg.phys));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-mode stochastic hydrostatic ocean model"};
    app.require_subcommand(1);

    std::string config_path, diag_path, snap_path, prefix = "member_", upsilons, out_path;
    int n_members = 4, ensemble = 64;

    CLI::App* run = app.add_subcommand("run", "advance one trajectory");
    run->add_option("--config", config_path, "run configuration file")->required();
    run->add_option("--diagnostics", diag_path, "diagnostics CSV output path");
    run->add_option("--snapshot", snap_path, "final-state snapshot output path");

    CLI::App* check = app.add_subcommand("check", "execute the invariant suite");
    check->add_option("--config", config_path, "run configuration file")->required();

    CLI::App* ens = app.add_subcommand("ensemble", "independent members with seed offsets");
    ens->add_option("--config", config_path, "run configuration file")->required();
    ens->add_option("--members", n_members, "number of members");
    ens->add_option("--prefix", prefix, "per-member CSV path prefix");

    CLI::App* conv = app.add_subcommand("converge", "vanishing-noise deviation experiment");
    conv->add_option("--config", config_path, "run configuration file")->required();
    conv->add_option("--upsilons", upsilons, "comma-separated noise variance levels")->required();
    conv->add_option("--ensemble", ensemble, "members per level");
    conv->add_option("--output", out_path, "deviation table CSV path");

    CLI::App* info = app.add_subcommand("info", "echo config and derived quantities");
    info->add_option("--config", config_path, "run configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, diag_path, snap_path);
        if (check->parsed()) return cmd_check(config_path);
        if (ens->parsed()) return cmd_ensemble(config_path, n_members, prefix);
        if (conv->parsed()) return cmd_converge(config_path, upsilons, ensemble, out_path);
        if (info->parsed()) return cmd_info(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

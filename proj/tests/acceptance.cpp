// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lupe/diagnostics.hpp"
#include "lupe/filter.hpp"
#include "lupe/inner.hpp"
#include "lupe/io.hpp"
#include "lupe/noise.hpp"
#include "lupe/operators.hpp"
#include "lupe/pressure.hpp"
#include "lupe/projectors.hpp"
#include "lupe/spectral.hpp"
#include "lupe/stepper.hpp"
#include "lupe/vertical.hpp"

using namespace lupe;

namespace {

// Pinned tolerances.
constexpr double kTolProjector = 1e-12;       // relative projector identities
constexpr double kTolDivergence = 1e-9;       // mode / u_S / barotropic divergence
constexpr double kTolWBottom = 1e-10;         // rigid-lid residual
constexpr double kTolFD = 1e-8;               // fluctuation-dissipation residual
constexpr double kTolClosureMatch = 1e-12;    // strong/weak vs deterministic
constexpr double kTolHeatRate = 0.01;         // Richardson-extrapolated decay rate
constexpr double kOrderLow = 0.9, kOrderHigh = 1.1;
constexpr double kExpLow = 0.35, kExpHigh = 0.65;
constexpr double kTolCovariance = 0.05;       // relative Frobenius
constexpr double kMeanSigmas = 4.0;           // standard errors around zero
constexpr double kBudgetConstraints = 60.0;   // seconds
constexpr double kBudgetConvergence = 600.0;  // seconds

int g_failures = 0;

void report(int idx, const std::string& name, bool passed, const std::string& detail) {
    std::printf("criterion %d (%s): %s  [%s]\n", idx, name.c_str(), passed ? "PASS" : "FAIL",
                detail.c_str());
    if (!passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScalarField smooth_random(const Grid& g, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> n(0.0, 1.0);
    ScalarField f(g);
    for (double& v : f.data) v = n(rng);
    FilterKernel k;
    k.kind = FilterKernel::Kind::gaussian;
    k.length_scale = 2.0 * g.dx;
    f = apply_filter(k, f);
    double m = max_abs(f);
    if (m > 0) f *= scale / m;
    return f;
}

std::vector<ModeSpec> random_modes(std::mt19937_64& rng, bool bhn_only) {
    std::uniform_int_distribution<int> kd(0, 3), md(1, 3), cnt(2, 4);
    std::uniform_real_distribution<double> amp(0.01, 0.06), ph(0.0, 6.28);
    const char comps[3] = {'x', 'y', 'z'};
    std::vector<ModeSpec> specs;
    const int n = cnt(rng);
    for (int i = 0; i < n; ++i) {
        ModeSpec s;
        if (bhn_only) {
            s.kind = ModeSpec::Kind::bhn_streamfunction;
            s.component = 'z';
        } else {
            s.kind = (rng() % 2 == 0) ? ModeSpec::Kind::potential
                                      : ModeSpec::Kind::bhn_streamfunction;
            s.component = (s.kind == ModeSpec::Kind::potential) ? comps[rng() % 3] : 'z';
        }
        do {
            s.kx = kd(rng);
            s.ky = kd(rng);
        } while (s.kx == 0 && s.ky == 0);
        s.m = md(rng);
        s.amplitude = amp(rng);
        s.phase = ph(rng);
        specs.push_back(s);
    }
    return specs;
}

// ---------------------------------------------------------------------------
// 1. Constraint suite on random states and models.
void criterion_constraints() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid g = make_grid(32, 32, 16, 1.0, 1.0, 1.0);
    double worst_proj = 0, worst_orth = 0, worst_grad = 0;
    double worst_mode_div = 0, worst_us_div = 0, worst_step_div = 0, worst_wb = 0;
    bool ok = true;

    for (int trial = 0; trial < 100; ++trial) {
        std::mt19937_64 rng(1000 + trial);

        HVecField v(g);
        v.x = smooth_random(g, rng, 0.05);
        v.y = smooth_random(g, rng, 0.05);

        // projector identities
        const HVecField pv = project_velocity(v);
        const HVecField ppv = project_velocity(pv);
        HVecField idem = ppv;
        idem -= pv;
        const double npv = norm_L2(pv);
        worst_proj = std::max(worst_proj, norm_L2(idem) / npv);
        HVecField resid = v;
        resid -= pv;
        const double nv2 = ip_L2(v, v);
        worst_orth = std::max(worst_orth, std::abs(ip_L2(pv, resid)) / nv2);

        // P^v annihilates z-independent (surface-pressure) gradients
        ScalarField ps(g);
        {
            std::normal_distribution<double> n(0.0, 1.0);
            const std::size_t hs = g.hsize();
            for (std::size_t q = 0; q < hs; ++q) {
                const double val = n(rng);
                for (int k = 0; k < g.nz; ++k) ps.data[q + k * hs] = val;
            }
        }
        HVecField gs(g);
        gs.x = ddx(ps);
        gs.y = ddy(ps);
        worst_grad = std::max(worst_grad, norm_L2(project_velocity(gs)) / norm_L2(gs));

        // noise model structure
        const NoiseModel model = build_modes(random_modes(rng, false), g, 1.0, false, 42);
        for (const Vec3Field& phi : model.modes)
            worst_mode_div = std::max(worst_mode_div, max_abs(divergence3(phi)));
        worst_us_div = std::max(worst_us_div, max_abs(divergence3(model.u_s)));

        // post-step barotropic divergence and lid conditions
        SimConfig cfg;
        cfg.grid = {32, 32, 16, 1.0, 1.0, 1.0};
        cfg.closure = HydroClosure::strong;
        cfg.upsilon = 1.0;
        cfg.bhn = false;
        cfg.modes = model.specs;
        cfg.dt = 1e-3;
        cfg.seed = 42 + trial;
        State u(g);
        u.v = pv;
        u.T = smooth_random(g, rng, 0.2);
        for (double& x : u.T.data) x += cfg.phys.T_r;
        u.S = smooth_random(g, rng, 0.2);
        for (double& x : u.S.data) x += cfg.phys.S_r;
        const State u1 = step(u, cfg, model);
        worst_step_div = std::max(worst_step_div, barotropic_divergence(u1.v));
        worst_wb = std::max(worst_wb, w_bottom_residual(u1.v));
    }
    const double elapsed = seconds_since(t0);

    ok = worst_proj <= kTolProjector && worst_orth <= kTolProjector &&
         worst_grad <= kTolProjector && worst_mode_div <= kTolDivergence &&
         worst_us_div <= kTolDivergence && worst_step_div <= kTolDivergence &&
         worst_wb <= kTolWBottom && elapsed < kBudgetConstraints;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "proj %.1e orth %.1e grad %.1e mode-div %.1e uS-div %.1e step-div %.1e "
                  "w-bottom %.1e, %.1fs",
                  worst_proj, worst_orth, worst_grad, worst_mode_div, worst_us_div,
                  worst_step_div, worst_wb, elapsed);
    report(1, "constraint suite, 100 random states at 32x32x16", ok, buf);
}

// ---------------------------------------------------------------------------
// 2. Fluctuation-dissipation balance on random (model, q, K) triples.
void criterion_fd_balance() {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    double worst = 0;
    int triples = 0;
    for (int trial = 0; trial < 24; ++trial) {
        std::mt19937_64 rng(2000 + trial);
        const NoiseModel model = build_modes(random_modes(rng, false), g, 0.5 + 0.1 * trial,
                                             false, 7);
        const ScalarField q = smooth_random(g, rng, 1.0);

        FilterKernel identity;
        worst = std::max(worst, std::abs(fd_balance(q, model, identity)));

        FilterKernel gauss;
        gauss.kind = FilterKernel::Kind::gaussian;
        std::uniform_real_distribution<double> ell(g.dx, 4.0 * g.dx);
        gauss.length_scale = ell(rng);
        worst = std::max(worst, std::abs(fd_balance(q, model, gauss)));
        ++triples;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d triples, worst |residual| %.2e", triples, worst);
    report(2, "fluctuation-dissipation balance", worst <= kTolFD && triples >= 20, buf);
}

// ---------------------------------------------------------------------------
// 3. Zero-noise closure equivalence.
void criterion_closure_equivalence() {
    SimConfig base;
    base.grid = {16, 16, 8, 1.0, 1.0, 1.0};
    base.dt = 1e-3;
    base.t_end = 0.1;  // 100 steps
    base.upsilon = 0.0;
    base.bhn = true;
    base.modes = {{ModeSpec::Kind::bhn_streamfunction, 1, 0, 1, 0.05, 0.0, 'z'},
                  {ModeSpec::Kind::bhn_streamfunction, 0, 1, 1, 0.05, 0.7, 'z'}};
    base.init.name = "barotropic-jet";
    base.init.velocity = 0.05;
    base.seed = 5;

    auto run_with = [&](HydroClosure c) {
        SimConfig cfg = base;
        cfg.closure = c;
        if (c == HydroClosure::weak_filtered) {
            cfg.kernel.kind = FilterKernel::Kind::gaussian;
            cfg.kernel.length_scale = 0.1;
        }
        return lupe::run(cfg).final_state;
    };
    const State us = run_with(HydroClosure::strong);
    const State uw = run_with(HydroClosure::weak_filtered);
    const State ud = run_with(HydroClosure::deterministic);

    auto bitwise = [](const ScalarField& a, const ScalarField& b) {
        return a.data == b.data;
    };
    const bool sw_bitwise = bitwise(us.v.x, uw.v.x) && bitwise(us.v.y, uw.v.y) &&
                            bitwise(us.T, uw.T) && bitwise(us.S, uw.S);

    auto rel_diff = [](const State& a, const State& b) {
        State d = a;
        d.v -= b.v;
        d.T -= b.T;
        d.S -= b.S;
        return norm_H(d) / norm_H(b);
    };
    const double det_diff = std::max(rel_diff(us, ud), rel_diff(uw, ud));

    char buf[128];
    std::snprintf(buf, sizeof(buf), "strong==weak bitwise: %s, vs deterministic %.2e",
                  sw_bitwise ? "yes" : "no", det_diff);
    report(3, "zero-noise closure equivalence, 100 steps", sw_bitwise && det_diff <= kTolClosureMatch,
           buf);
}

// ---------------------------------------------------------------------------
// 4. Heat-mode regression against the analytic Robin eigenmode.
void criterion_heat_mode() {
    // slowest mode of T_t = nu T_zz on (-h,0), T_z(-h)=0, nu T_z(0)+alpha T(0)=0:
    // T = cos(k(z+h)) e^{-nu k^2 t} with k tan(k h) = alpha/nu
    SimConfig cfg;
    cfg.grid = {4, 4, 128, 1.0, 1.0, 1.0};
    cfg.closure = HydroClosure::deterministic;
    cfg.phys.nu_T = 1.0;
    cfg.phys.alpha_T = 1.0;
    const double h = cfg.grid.h, ratio = cfg.phys.alpha_T / cfg.phys.nu_T;

    double k = 0.8;  // Newton on f(k) = k tan(k h) - ratio
    for (int it = 0; it < 50; ++it) {
        const double t = std::tan(k * h);
        const double f = k * t - ratio;
        const double df = t + k * h * (1.0 + t * t);
        k -= f / df;
    }
    const double analytic = cfg.phys.nu_T * k * k;

    const Grid g = make_grid(cfg);
    State u0(g);
    const std::size_t hs = g.hsize();
    for (int kk = 0; kk < g.nz; ++kk) {
        const double prof = std::cos(k * (g.z_centers[kk] + h));
        for (std::size_t q = 0; q < hs; ++q) {
            u0.T.data[q + kk * hs] = prof;
            u0.S.data[q + kk * hs] = cfg.phys.S_r;
        }
    }
    const double t_total = 1.6;
    const double a0 = ip_L2(u0.T, u0.T);
    const NoiseModel empty = build_modes({}, g, 0.0, false, 1);

    auto rate_at = [&](double dt) {
        SimConfig c = cfg;
        c.dt = dt;
        State u = u0;
        const int n = static_cast<int>(std::llround(t_total / dt));
        for (int s = 0; s < n; ++s) u = step_with_increment(u, c, empty, nullptr);
        const double amp = ip_L2(u.T, u0.T) / a0;
        return -std::log(amp) / t_total;
    };
    const double r8 = rate_at(0.08), r4 = rate_at(0.04), r2 = rate_at(0.02);
    const double richardson = 2.0 * r2 - r4;
    const double rel_err = std::abs(richardson - analytic) / analytic;
    const double order = std::log2((r8 - r4) / (r4 - r2));

    char buf[160];
    std::snprintf(buf, sizeof(buf), "rate %.6f vs analytic %.6f (err %.2e), order %.3f",
                  richardson, analytic, rel_err, order);
    report(4, "Robin heat-mode decay rate", rel_err <= kTolHeatRate && order >= kOrderLow &&
           order <= kOrderHigh, buf);
}

// ---------------------------------------------------------------------------
// 5. Vanishing-noise convergence.
void criterion_vanishing_noise() {
    const auto t0 = std::chrono::steady_clock::now();
    SimConfig cfg;
    cfg.grid = {32, 32, 16, 1.0, 1.0, 1.0};
    cfg.closure = HydroClosure::strong;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;  // 50 steps
    cfg.upsilon = 1.0;
    cfg.bhn = true;
    cfg.modes = {{ModeSpec::Kind::bhn_streamfunction, 1, 0, 1, 0.05, 0.0, 'z'},
                 {ModeSpec::Kind::bhn_streamfunction, 0, 1, 1, 0.05, 0.7, 'z'},
                 {ModeSpec::Kind::bhn_streamfunction, 1, 1, 1, 0.03, 1.3, 'z'}};
    cfg.init.name = "barotropic-jet";
    cfg.init.velocity = 0.05;
    cfg.seed = 11;

    const std::vector<double> upsilons = {1.0, 0.25, 0.0625};
    const ConvergenceTable table = noise_convergence_experiment(cfg, upsilons, 64);
    const double elapsed = seconds_since(t0);

    bool monotone = true;
    int blowups = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        blowups += table.rows[i].members_blown_up;
        if (i > 0 && !(table.rows[i].rms_sup_deviation < table.rows[i - 1].rms_sup_deviation))
            monotone = false;
    }
    const double expo = table.fitted_exponent;
    const bool ok = monotone && expo >= kExpLow && expo <= kExpHigh && blowups == 0 &&
                    elapsed <= kBudgetConvergence;
    std::ostringstream det;
    det.precision(3);
    det << "deviations";
    for (const ConvergenceRow& r : table.rows) det << " " << r.rms_sup_deviation;
    det << ", exponent " << expo << ", blowups " << blowups << ", " << elapsed << "s";
    report(5, "vanishing-noise convergence, ensemble 64", ok, det.str());
}

// ---------------------------------------------------------------------------
// 6. Noise increment statistics against the variance tensor.
void criterion_noise_statistics() {
    const Grid g = make_grid(8, 8, 4, 1.0, 1.0, 1.0);
    std::mt19937_64 rng(3000);
    std::vector<ModeSpec> specs = {
        {ModeSpec::Kind::potential, 1, 0, 1, 0.05, 0.3, 'y'},
        {ModeSpec::Kind::potential, 0, 2, 2, 0.04, 1.1, 'x'},
        {ModeSpec::Kind::bhn_streamfunction, 1, 1, 1, 0.03, 2.0, 'z'},
    };
    NoiseModel model = build_modes(specs, g, 0.7, false, 90210);
    const double dt = 0.01;
    const int n_draws = 10000;

    const std::size_t n = g.size();
    std::vector<double> mx(n, 0), my(n, 0), mz(n, 0);
    std::vector<double> sxx(n, 0), sxy(n, 0), sxz(n, 0), syy(n, 0), syz(n, 0), szz(n, 0);
    for (int d = 0; d < n_draws; ++d) {
        const NoiseIncrement inc = sample_increment(model, dt, static_cast<std::uint64_t>(d));
        for (std::size_t p = 0; p < n; ++p) {
            const double x = inc.sigma_dW.x.data[p], y = inc.sigma_dW.y.data[p],
                         z = inc.sigma_dW.z.data[p];
            mx[p] += x; my[p] += y; mz[p] += z;
            sxx[p] += x * x; sxy[p] += x * y; sxz[p] += x * z;
            syy[p] += y * y; syz[p] += y * z; szz[p] += z * z;
        }
    }
    const double inv = 1.0 / n_draws;
    double num = 0, den = 0, worst_mean = 0;
    const SymTensorField& a = model.a;
    for (std::size_t p = 0; p < n; ++p) {
        mx[p] *= inv; my[p] *= inv; mz[p] *= inv;
        const double cxx = sxx[p] * inv - mx[p] * mx[p];
        const double cxy = sxy[p] * inv - mx[p] * my[p];
        const double cxz = sxz[p] * inv - mx[p] * mz[p];
        const double cyy = syy[p] * inv - my[p] * my[p];
        const double cyz = syz[p] * inv - my[p] * mz[p];
        const double czz = szz[p] * inv - mz[p] * mz[p];
        const double txx = a.xx.data[p] * dt, txy = a.xy.data[p] * dt, txz = a.xz.data[p] * dt;
        const double tyy = a.yy.data[p] * dt, tyz = a.yz.data[p] * dt, tzz = a.zz.data[p] * dt;
        num += (cxx - txx) * (cxx - txx) + (cyy - tyy) * (cyy - tyy) + (czz - tzz) * (czz - tzz) +
               2.0 * ((cxy - txy) * (cxy - txy) + (cxz - txz) * (cxz - txz) +
                      (cyz - tyz) * (cyz - tyz));
        den += txx * txx + tyy * tyy + tzz * tzz + 2.0 * (txy * txy + txz * txz + tyz * tyz);

        // standard error of the mean from the sample variance
        auto mean_z = [&](double m, double var) {
            const double se = std::sqrt(std::max(var, 0.0) * inv);
            return se > 0 ? std::abs(m) / se : std::abs(m) / 1e-300;
        };
        if (cxx > 1e-30) worst_mean = std::max(worst_mean, mean_z(mx[p], cxx));
        if (cyy > 1e-30) worst_mean = std::max(worst_mean, mean_z(my[p], cyy));
        if (czz > 1e-30) worst_mean = std::max(worst_mean, mean_z(mz[p], czz));
    }
    const double frob = std::sqrt(num / den);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "covariance rel Frobenius %.3f, worst |mean|/SE %.2f", frob,
                  worst_mean);
    report(6, "noise covariance vs a*dt over 1e4 draws", frob <= kTolCovariance &&
           worst_mean <= kMeanSigmas, buf);
}

// ---------------------------------------------------------------------------
// 7. BHN structural preservation and baroclinic-noise detection.
void criterion_bhn_invariance() {
    SimConfig cfg;
    cfg.grid = {16, 16, 8, 1.0, 1.0, 1.0};
    cfg.closure = HydroClosure::strong;
    cfg.dt = 1e-3;
    cfg.upsilon = 1.0;
    cfg.bhn = true;
    cfg.modes = {{ModeSpec::Kind::bhn_streamfunction, 1, 0, 1, 0.05, 0.0, 'z'},
                 {ModeSpec::Kind::bhn_streamfunction, 0, 1, 1, 0.05, 0.7, 'z'},
                 {ModeSpec::Kind::bhn_streamfunction, 2, 1, 1, 0.03, 1.3, 'z'}};
    cfg.init.name = "barotropic-jet";
    cfg.init.velocity = 0.05;
    cfg.seed = 23;

    const Grid g = make_grid(cfg);
    const NoiseModel model = build_model(cfg, g);
    State u = initial_state(cfg, g);

    auto layers_invariant = [&](const ScalarField& f) {
        const std::size_t hs = g.hsize();
        for (int k = 1; k < g.nz; ++k)
            for (std::size_t q = 0; q < hs; ++q)
                if (f.data[q + k * hs] != f.data[q]) return false;
        return true;
    };

    bool invariant = true;
    const DiffusionParams dp{cfg.phys.mu_v, cfg.phys.nu_v, 0.0};
    for (int n = 0; n < 200 && invariant; ++n) {
        const NoiseIncrement inc =
            sample_increment(model, cfg.dt, static_cast<std::uint64_t>(u.step_index));
        const HVecField sh = inc.sigma_dW.horizontal();
        HVecField forcing = diffuse(dp, sh, vertical::noise_h_closure());
        forcing += coriolis(sh, cfg.phys.f);
        invariant = layers_invariant(sh.x) && layers_invariant(sh.y) &&
                    layers_invariant(forcing.x) && layers_invariant(forcing.y);
        u = step(u, cfg, model);
    }

    // baroclinic (non-BHN) noise must be detected by the regime indicator
    SimConfig bc = cfg;
    bc.bhn = false;
    bc.modes = {{ModeSpec::Kind::potential, 1, 0, 1, 0.05, 0.0, 'y'},
                {ModeSpec::Kind::potential, 0, 1, 2, 0.04, 0.5, 'x'}};
    const Grid gb = make_grid(bc);
    const NoiseModel mb = build_model(bc, gb);
    const RegimeIndicator ri = regime_indicator(initial_state(bc, gb), mb, bc.phys);

    char buf[128];
    std::snprintf(buf, sizeof(buf), "200 steps z-invariant: %s, baroclinic shear %.3e",
                  invariant ? "yes" : "no", ri.noise_shear);
    report(7, "BHN z-invariance and shear detection", invariant && ri.noise_shear > 0, buf);
}

// ---------------------------------------------------------------------------
// 8. Seed-for-seed byte-identical diagnostics CSV.
void criterion_reproducibility() {
    SimConfig cfg;
    cfg.grid = {16, 16, 8, 1.0, 1.0, 1.0};
    cfg.closure = HydroClosure::weak_filtered;
    cfg.kernel.kind = FilterKernel::Kind::gaussian;
    cfg.kernel.length_scale = 0.1;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.output_every = 5;
    cfg.upsilon = 1.0;
    cfg.bhn = true;
    cfg.modes = {{ModeSpec::Kind::bhn_streamfunction, 1, 0, 1, 0.05, 0.0, 'z'},
                 {ModeSpec::Kind::bhn_streamfunction, 0, 1, 1, 0.05, 0.7, 'z'}};
    cfg.init.name = "barotropic-jet";
    cfg.init.velocity = 0.05;
    cfg.seed = 31337;

    auto collect = [&]() {
        const Grid grid = make_grid(cfg);
        const NoiseModel model = build_model(cfg, grid);
        std::vector<DiagnosticsRecord> records;
        double prev_energy = 0;
        bool first = true;
        lupe::run(cfg, [&](const State& u) {
            DiagnosticsRecord r = estimate_quantities(u, cfg.phys);
            r.fd_residual = fd_balance(u.T, model, cfg.kernel);
            const RegimeIndicator ri = regime_indicator(u, model, cfg.phys);
            r.alpha2_over_Ri = ri.alpha2_over_Ri;
            r.noise_shear = ri.noise_shear;
            if (!first) r.energy_rate = (r.energy - prev_energy) / cfg.dt;
            prev_energy = r.energy;
            first = false;
            records.push_back(r);
        });
        std::ostringstream out;
        write_diagnostics_csv(out, records);
        return out.str();
    };
    const std::string first_run = collect();
    const std::string second_run = collect();
    const bool ok = !first_run.empty() && first_run == second_run;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zu bytes, identical: %s", first_run.size(),
                  ok ? "yes" : "no");
    report(8, "byte-identical diagnostics CSV for equal seeds", ok, buf);
}

}  // namespace

int main() {
    criterion_constraints();
    criterion_fd_balance();
    criterion_closure_equivalence();
    criterion_heat_mode();
    criterion_vanishing_noise();
    criterion_noise_statistics();
    criterion_bhn_invariance();
    criterion_reproducibility();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}

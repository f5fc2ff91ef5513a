#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lupe/diagnostics.hpp"
#include "lupe/inner.hpp"
#include "lupe/projectors.hpp"
#include "lupe/stepper.hpp"

using namespace lupe;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("zero state produces zero norms") {
    const Grid g = make_grid(8, 8, 4, 1.0, 1.0, 1.0);
    State u(g);
    PhysParams p;
    const DiagnosticsRecord r = estimate_quantities(u, p);
    CHECK(r.norm_H == 0.0);
    CHECK(r.norm_V == 0.0);
    CHECK(r.barotropic_V == 0.0);
    CHECK(r.baroclinic_L4 == 0.0);
    CHECK(r.cross_term == 0.0);
    CHECK(r.energy == 0.0);
}

TEST_CASE("purely barotropic velocity has no baroclinic L4 content") {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    State u(g);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                u.v.x(i, j, k) = std::sin(2.0 * kPi * (j + 0.5) * g.dy);
    PhysParams p;
    const DiagnosticsRecord r = estimate_quantities(u, p);
    CHECK(r.baroclinic_L4 < 1e-12);
    CHECK(r.barotropic_V > 0.0);
    CHECK(r.dzv_H < 1e-10);
}

TEST_CASE("energy split is Pythagorean") {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    std::mt19937_64 rng(6);
    std::normal_distribution<double> dist;
    HVecField v(g);
    for (double& x : v.x.data) x = dist(rng);
    for (double& x : v.y.data) x = dist(rng);
    const double whole = ip_L2(v, v);
    const double parts = ip_L2(barotropic(v), barotropic(v)) +
                         ip_L2(baroclinic(v), baroclinic(v));
    CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
}

TEST_CASE("fluctuation-dissipation residual is zero-noise safe and tiny otherwise") {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    const NoiseModel empty = build_modes({}, g, 1.0, false, 1);
    ScalarField q(g);
    std::mt19937_64 rng(14);
    std::normal_distribution<double> dist;
    for (double& x : q.data) x = dist(rng);
    CHECK(fd_balance(q, empty, FilterKernel{}) == 0.0);

    const std::vector<ModeSpec> specs = {
        {ModeSpec::Kind::potential, 1, 0, 1, 0.3, 0.0, 'y'},
        {ModeSpec::Kind::potential, 0, 2, 2, 0.2, 0.4, 'x'},
        {ModeSpec::Kind::bhn_streamfunction, 2, 1, 0, 0.1, 0.7, 'z'},
    };
    const NoiseModel model = build_modes(specs, g, 0.6, false, 1);
    CHECK(std::abs(fd_balance(q, model, FilterKernel{})) < 1e-8);
    FilterKernel K;
    K.kind = FilterKernel::Kind::gaussian;
    K.length_scale = 0.1;
    CHECK(std::abs(fd_balance(q, model, K)) < 1e-8);
    K.kind = FilterKernel::Kind::sharp_cutoff;
    K.cutoff = 2.0 * kPi * 3.0;
    CHECK(std::abs(fd_balance(q, model, K)) < 1e-8);
}

TEST_CASE("regime indicator reproduces the hand Richardson formula") {
    // rho = rho0 (1 - eps (z+h)/h): N^2 = g eps / h everywhere;
    // v = s * z gives (dz v)^2 = s^2  (T decreases with z so density does too)
    const Grid g = make_grid(8, 8, 16, 2.0, 1.0, 1.0);
    PhysParams p;
    const double eps = 1e-3, s = 0.2;
    State u(g);
    const std::size_t hs = g.hsize();
    for (int k = 0; k < g.nz; ++k) {
        // T chosen so that the linear law gives the target density profile
        const double T = p.T_r - eps * (g.z_centers[k] + g.h) / (g.h * p.beta_T);
        for (std::size_t q = 0; q < hs; ++q) {
            u.T.data[q + k * hs] = T;
            u.S.data[q + k * hs] = p.S_r;
            u.v.x.data[q + k * hs] = s * g.z_centers[k];
        }
    }
    const NoiseModel empty = build_modes({}, g, 0.0, false, 1);
    const RegimeIndicator ri = regime_indicator(u, empty, p);
    CHECK_FALSE(ri.flagged);
    const double ri_hand = (p.g * eps / g.h) / (s * s);
    const double alpha = g.h / 1.0;  // h over the shorter horizontal extent
    CHECK(ri.alpha2_over_Ri == doctest::Approx(alpha * alpha / ri_hand).epsilon(1e-10));
}

TEST_CASE("degenerate shear or stratification is flagged, not thrown") {
    const Grid g = make_grid(8, 8, 4, 1.0, 1.0, 1.0);
    PhysParams p;
    State u(g);  // constant density, zero shear
    for (double& x : u.T.data) x = p.T_r;
    for (double& x : u.S.data) x = p.S_r;
    const NoiseModel empty = build_modes({}, g, 0.0, false, 1);
    const RegimeIndicator ri = regime_indicator(u, empty, p);
    CHECK(ri.flagged);
    CHECK(ri.alpha2_over_Ri == -1.0);
}

TEST_CASE("stochastic shear detects baroclinic noise and ignores BHN") {
    const Grid g = make_grid(16, 16, 8, 1.0, 1.0, 1.0);
    PhysParams p;
    State u(g);
    const NoiseModel bhn = build_modes(
        {{ModeSpec::Kind::bhn_streamfunction, 1, 0, 0, 0.1, 0.0, 'z'}}, g, 1.0, true, 1);
    CHECK(regime_indicator(u, bhn, p).noise_shear == 0.0);
    const NoiseModel baro = build_modes(
        {{ModeSpec::Kind::potential, 1, 0, 1, 0.1, 0.0, 'y'}}, g, 1.0, false, 1);
    CHECK(regime_indicator(u, baro, p).noise_shear > 0.0);
}

TEST_CASE("convergence experiment: zero upsilon deviates by exactly zero") {
    SimConfig cfg;
    cfg.grid = {8, 8, 4, 1.0, 1.0, 1.0};
    cfg.dt = 1e-3;
    cfg.t_end = 5e-3;
    cfg.closure = HydroClosure::strong;
    cfg.bhn = true;
    cfg.modes = {{ModeSpec::Kind::bhn_streamfunction, 1, 0, 0, 0.02, 0.0, 'z'}};
    cfg.phys.mu_v = cfg.phys.nu_v = 1e-3;
    cfg.phys.mu_T = cfg.phys.nu_T = 1e-3;
    cfg.phys.mu_S = cfg.phys.nu_S = 1e-3;
    cfg.init = {"barotropic-jet", 0.05, 1.0, 1};
    const ConvergenceTable t = noise_convergence_experiment(cfg, {0.0, 1.0}, 3);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].rms_sup_deviation == 0.0);
    CHECK(t.rows[0].members_used == 3);
    CHECK(t.rows[1].rms_sup_deviation > 0.0);
    CHECK(t.rows[1].members_blown_up == 0);
}

TEST_CASE("diagnostics record fields and values stay in sync") {
    DiagnosticsRecord r;
    r.t = 1.0;
    r.energy_rate = -2.0;
    const auto vals = r.values();
    REQUIRE(vals.size() == DiagnosticsRecord::field_names().size());
    CHECK(vals.front() == 1.0);
    CHECK(vals.back() == -2.0);
}

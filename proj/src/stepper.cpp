#include "lupe/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lupe/inner.hpp"
#include "lupe/operators.hpp"
#include "lupe/pressure.hpp"
#include "lupe/projectors.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

namespace {

/// sigma-transport (u . grad3) q, with the shared generic vertical stencil.
ScalarField noise_transport(const Vec3Field& u, const ScalarField& q) {
    const Vec3Field gq = grad3(q);
    ScalarField out(q.grid);
    for (std::size_t n = 0; n < out.data.size(); ++n)
        out.data[n] = u.x.data[n] * gq.x.data[n] + u.y.data[n] * gq.y.data[n] +
                      u.z.data[n] * gq.z.data[n];
    return out;
}

bool all_finite(const std::vector<double>& d) {
    for (double v : d)
        if (!std::isfinite(v)) return false;
    return true;
}

bool all_finite(const State& u) {
    return all_finite(u.v.x.data) && all_finite(u.v.y.data) && all_finite(u.T.data) &&
           all_finite(u.S.data);
}

void check_advective_cfl(const State& u, double dt) {
    const Grid& g = u.grid();
    const ScalarField w = vertical_velocity(u.v);
    const double c = max_abs(u.v.x) / g.dx + max_abs(u.v.y) / g.dy + max_abs(w) / g.dz;
    if (c * dt > 1.0)
        throw std::runtime_error("advective CFL violation at step " +
                                 std::to_string(u.step_index) +
                                 " (c*dt = " + std::to_string(c * dt) + ")");
}

void implicit_vertical(ScalarField& q, double coeff, const vertical::Closure& c) {
    if (coeff <= 0) return;
    std::vector<double> rhs = q.data;
    vertical::solve_implicit_diffusion(q.grid, coeff, c, rhs.data(), q.data.data());
}

State finish_step(State next, const State& prev, const SimConfig& cfg) {
    next.v = project_velocity(next.v);
    const double r = barotropic_divergence(next.v);
    if (!std::isfinite(r) || r > cfg.tol_div)
        throw std::runtime_error("barotropic divergence " + std::to_string(r) +
                                 " exceeds tolerance after step " +
                                 std::to_string(prev.step_index));
    if (!all_finite(next)) throw BlowUpError(prev.step_index + 1);
    next.t = prev.t + cfg.dt;
    next.step_index = prev.step_index + 1;
    return next;
}

/// Deterministic closure: its own assembly (per-term accumulation into the
/// state) rather than the shared increment path, so the zero-noise
/// equivalence of the other closures is a meaningful cross-check.
State step_deterministic(const State& u, const SimConfig& cfg) {
    const PhysParams& p = cfg.phys;
    const bool implicit = cfg.vdiff == VerticalScheme::implicit_scheme;
    const ScalarField w = vertical_velocity(u.v);

    State next = u;
    auto axpy_v = [&](const HVecField& f) {
        HVecField g = f;
        g *= -cfg.dt;
        next.v += g;
    };
    auto axpy_s = [&](ScalarField& dst, const ScalarField& f) {
        ScalarField g = f;
        g *= -cfg.dt;
        dst += g;
    };

    axpy_v(advect(u.v, u.v));
    axpy_v(coriolis(u.v, p.f));
    axpy_v(diffuse({p.mu_v, implicit ? 0.0 : p.nu_v, 0.0}, u.v, vertical::velocity_closure()));
    axpy_v(project_velocity(hydrostatic_gradient(u.T, u.S, p)));

    const vertical::Closure tc = vertical::temperature_closure(p.alpha_T / p.nu_T);
    axpy_s(next.T, advect(u.v, w, u.T, tc));
    axpy_s(next.T, diffuse({p.mu_T, implicit ? 0.0 : p.nu_T, 0.0}, u.T, tc));
    axpy_s(next.S, advect(u.v, w, u.S, vertical::salinity_closure()));
    axpy_s(next.S, diffuse({p.mu_S, implicit ? 0.0 : p.nu_S, 0.0}, u.S,
                           vertical::salinity_closure()));

    if (implicit) {
        implicit_vertical(next.v.x, cfg.dt * p.nu_v, vertical::velocity_closure());
        implicit_vertical(next.v.y, cfg.dt * p.nu_v, vertical::velocity_closure());
        implicit_vertical(next.T, cfg.dt * p.nu_T, tc);
        implicit_vertical(next.S, cfg.dt * p.nu_S, vertical::salinity_closure());
    }
    return finish_step(std::move(next), u, cfg);
}

}  // namespace

void SimConfig::validate() const {
    phys.validate();
    kernel.validate();
    if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
    if (t_end < 0) throw std::invalid_argument("t_end must be nonnegative");
    if (output_every <= 0) throw std::invalid_argument("output_every must be positive");
    if (upsilon < 0) throw std::invalid_argument("upsilon must be nonnegative");
    if (tol_div <= 0) throw std::invalid_argument("tol_div must be positive");
    if (grid.nx < 2 || grid.ny < 2 || grid.nz < 1)
        throw std::invalid_argument("grid dimensions too small");
    if (!(grid.Lx > 0 && grid.Ly > 0 && grid.h > 0))
        throw std::invalid_argument("domain lengths must be positive");

    const double dx = grid.Lx / grid.nx;
    const double dy = grid.Ly / grid.ny;
    const double dzv = grid.h / grid.nz;
    const double mu_max = std::max({phys.mu_v, phys.mu_T, phys.mu_S});
    const double nu_max = std::max({phys.nu_v, phys.nu_T, phys.nu_S});
    const double d2 = std::min(dx, dy) * std::min(dx, dy);
    if (mu_max > 0 && dt > d2 / (4.0 * mu_max))
        throw std::invalid_argument("dt violates horizontal diffusive stability bound");
    if (vdiff == VerticalScheme::explicit_scheme && nu_max > 0 &&
        dt > dzv * dzv / (4.0 * nu_max))
        throw std::invalid_argument("dt violates vertical diffusive stability bound");
    if (init.name != "rest-stratified" && init.name != "barotropic-jet" &&
        init.name != "baroclinic-mode")
        throw std::invalid_argument("unknown initial-condition preset: " + init.name);
}

Grid make_grid(const SimConfig& cfg) {
    return make_grid(cfg.grid.nx, cfg.grid.ny, cfg.grid.nz, cfg.grid.Lx, cfg.grid.Ly, cfg.grid.h);
}

NoiseModel build_model(const SimConfig& cfg, const Grid& grid) {
    const double ups = (cfg.closure == HydroClosure::deterministic) ? 0.0 : cfg.upsilon;
    return build_modes(cfg.modes, grid, ups, cfg.bhn, cfg.seed);
}

State initial_state(const SimConfig& cfg, const Grid& grid) {
    State u(grid);
    const PhysParams& p = cfg.phys;
    const std::size_t hs = grid.hsize();
    for (int k = 0; k < grid.nz; ++k) {
        const double zh = (grid.z_centers[k] + grid.h) / grid.h;  // 0 at bottom, 1 at top
        for (std::size_t q = 0; q < hs; ++q) {
            // beta_T is d(rho)/dT / rho0, so density tracks T: decrease T
            // upward to stratify stably under the linear law of state
            u.T.data[q + k * hs] = p.T_r + cfg.init.stratification * (1.0 - zh);
            u.S.data[q + k * hs] = p.S_r;
        }
    }
    if (cfg.init.name == "rest-stratified") {
        // velocity stays zero
    } else if (cfg.init.name == "barotropic-jet" || cfg.init.name == "baroclinic-mode") {
        const double two_pi = 2.0 * std::numbers::pi;
        for (int k = 0; k < grid.nz; ++k) {
            double prof = 1.0;
            if (cfg.init.name == "baroclinic-mode")
                prof = std::cos(cfg.init.mode * std::numbers::pi * (grid.z_centers[k] + grid.h) /
                                grid.h);
            for (int j = 0; j < grid.ny; ++j) {
                const double vx = cfg.init.velocity * std::sin(two_pi * (j + 0.5) / grid.ny) * prof;
                for (int i = 0; i < grid.nx; ++i) u.v.x.data[grid.idx(i, j, k)] = vx;
            }
        }
    } else {
        throw std::invalid_argument("unknown initial-condition preset: " + cfg.init.name);
    }
    return project_state(u);
}

Increment f_sigma(const State& u, const NoiseModel& model, const PhysParams& phys) {
    const Grid& g = u.grid();
    Increment out(g);
    if (!model.active()) return out;
    const HVecField v_s = model.u_s.horizontal();

    out.v += advect(u.v, v_s);
    out.v += diffuse({phys.mu_v, phys.nu_v, 0.0}, v_s, vertical::velocity_closure());
    out.v += coriolis(v_s, phys.f);
    out.v.x -= stochastic_diffusion(model.a, v_s.x);
    out.v.y -= stochastic_diffusion(model.a, v_s.y);
    out.v.x -= stochastic_diffusion(model.a, u.v.x);
    out.v.y -= stochastic_diffusion(model.a, u.v.y);
    out.T -= stochastic_diffusion(model.a, u.T);
    out.S -= stochastic_diffusion(model.a, u.S);
    out.v = project_velocity(out.v);
    return out;
}

Increment g_sigma(const State& u, const NoiseModel& model, const NoiseIncrement& inc,
                  const PhysParams& phys) {
    const Grid& g = u.grid();
    Increment out(g);
    if (!model.active()) return out;
    const HVecField v_s = model.u_s.horizontal();

    out.v.x -= noise_transport(inc.sigma_dW, u.v.x);
    out.v.y -= noise_transport(inc.sigma_dW, u.v.y);
    out.v.x -= noise_transport(inc.sigma_dW, v_s.x);
    out.v.y -= noise_transport(inc.sigma_dW, v_s.y);
    const HVecField sigma_h = inc.sigma_dW.horizontal();
    out.v -= diffuse({phys.mu_v, phys.nu_v, 0.0}, sigma_h, vertical::noise_h_closure());
    out.v -= coriolis(sigma_h, phys.f);
    out.T -= noise_transport(inc.sigma_dW, u.T);
    out.S -= noise_transport(inc.sigma_dW, u.S);
    out.v = project_velocity(out.v);
    return out;
}

State step_with_increment(const State& u, const SimConfig& cfg, const NoiseModel& model,
                          const NoiseIncrement* inc) {
    if (!all_finite(u)) throw BlowUpError(u.step_index);
    check_advective_cfl(u, cfg.dt);
    if (cfg.closure == HydroClosure::deterministic) return step_deterministic(u, cfg);

    const Grid& g = u.grid();
    const PhysParams& p = cfg.phys;
    const bool implicit = cfg.vdiff == VerticalScheme::implicit_scheme;
    const bool stochastic = model.active();
    const bool weak = cfg.closure == HydroClosure::weak_filtered;
    const vertical::Closure tc = vertical::temperature_closure(p.alpha_T / p.nu_T);
    const ScalarField w = vertical_velocity(u.v);

    Increment rhs(g);
    rhs.v -= advect(u.v, u.v);
    rhs.v -= coriolis(u.v, p.f);
    rhs.v -= diffuse({p.mu_v, implicit ? 0.0 : p.nu_v, 0.0}, u.v, vertical::velocity_closure());
    rhs.v -= project_velocity(hydrostatic_gradient(u.T, u.S, p));
    rhs.T -= advect(u.v, w, u.T, tc);
    rhs.T -= diffuse({p.mu_T, implicit ? 0.0 : p.nu_T, 0.0}, u.T, tc);
    rhs.S -= advect(u.v, w, u.S, vertical::salinity_closure());
    rhs.S -= diffuse({p.mu_S, implicit ? 0.0 : p.nu_S, 0.0}, u.S, vertical::salinity_closure());
    if (stochastic) {
        rhs -= f_sigma(u, model, p);
        if (weak) rhs.v -= weak_pressure_gradient(u.v, model, cfg.kernel, p);
    }
    rhs *= cfg.dt;

    if (stochastic && inc != nullptr) {
        rhs += g_sigma(u, model, *inc, p);
        if (weak) rhs.v += martingale_pressure_forcing(u.v, model, cfg.kernel, *inc, p);
    }

    State next = u;
    next.v += rhs.v;
    next.T += rhs.T;
    next.S += rhs.S;

    if (implicit) {
        implicit_vertical(next.v.x, cfg.dt * p.nu_v, vertical::velocity_closure());
        implicit_vertical(next.v.y, cfg.dt * p.nu_v, vertical::velocity_closure());
        implicit_vertical(next.T, cfg.dt * p.nu_T, tc);
        implicit_vertical(next.S, cfg.dt * p.nu_S, vertical::salinity_closure());
    }
    return finish_step(std::move(next), u, cfg);
}

State step(const State& u, const SimConfig& cfg, const NoiseModel& model) {
    if (cfg.closure != HydroClosure::deterministic && model.active()) {
        const NoiseIncrement inc =
            sample_increment(model, cfg.dt, static_cast<std::uint64_t>(u.step_index));
        return step_with_increment(u, cfg, model, &inc);
    }
    return step_with_increment(u, cfg, model, nullptr);
}

RunResult run(const SimConfig& cfg, const std::function<void(const State&)>& observer) {
    cfg.validate();
    const Grid grid = make_grid(cfg);
    const NoiseModel model = build_model(cfg, grid);
    State u = initial_state(cfg, grid);
    if (observer) observer(u);
    long n = 0;
    const long n_steps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
    while (n < n_steps) {
        u = step(u, cfg, model);
        ++n;
        if (observer && (n % cfg.output_every == 0 || n == n_steps)) observer(u);
    }
    return {std::move(u), n};
}

}  // namespace lupe

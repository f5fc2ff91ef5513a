#include "lupe/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "lupe/inner.hpp"
#include "lupe/operators.hpp"
#include "lupe/pressure.hpp"
#include "lupe/projectors.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

const std::vector<std::string>& DiagnosticsRecord::field_names() {
    static const std::vector<std::string> names = {
        "t",           "norm_H",        "norm_V",      "barotropic_V", "dzv_H",
        "dzv_V",       "baroclinic_L4", "cross_term",  "div_barotropic",
        "w_bottom",    "fd_residual",   "alpha2_over_Ri", "noise_shear",
        "energy",      "energy_rate"};
    return names;
}

std::vector<double> DiagnosticsRecord::values() const {
    return {t,          norm_H,        norm_V,     barotropic_V,   dzv_H,
            dzv_V,      baroclinic_L4, cross_term, div_barotropic,
            w_bottom,   fd_residual,   alpha2_over_Ri, noise_shear,
            energy,     energy_rate};
}

DiagnosticsRecord estimate_quantities(const State& u, const PhysParams& p) {
    DiagnosticsRecord r;
    r.t = u.t;
    r.norm_H = norm_H(u);
    r.norm_V = norm_V(u, p);

    const HVecField vbar = barotropic(u.v);
    const HVecField vtil = baroclinic(u.v);
    r.barotropic_V = std::sqrt(ip_grad(vbar, vbar));
    r.baroclinic_L4 = norm_L4(vtil);

    HVecField dzv(u.grid());
    dzv.x = vertical::dz(u.v.x);
    dzv.y = vertical::dz(u.v.y);
    r.dzv_H = norm_L2(dzv);
    r.dzv_V = std::sqrt(ip_grad(dzv, dzv));

    const Vec3Field gx = grad3(vtil.x);
    const Vec3Field gy = grad3(vtil.y);
    double acc = 0;
    for (std::size_t n = 0; n < vtil.x.data.size(); ++n) {
        const double v2 = vtil.x.data[n] * vtil.x.data[n] + vtil.y.data[n] * vtil.y.data[n];
        const double g2 = gx.x.data[n] * gx.x.data[n] + gx.y.data[n] * gx.y.data[n] +
                          gx.z.data[n] * gx.z.data[n] + gy.x.data[n] * gy.x.data[n] +
                          gy.y.data[n] * gy.y.data[n] + gy.z.data[n] * gy.z.data[n];
        acc += v2 * g2;
    }
    r.cross_term = acc * u.grid().cell_volume();

    r.div_barotropic = barotropic_divergence(u.v);
    r.w_bottom = w_bottom_residual(u.v);
    r.energy = 0.5 * r.norm_H * r.norm_H;
    return r;
}

double fd_balance(const ScalarField& q, const NoiseModel& model, const FilterKernel& K) {
    if (!model.active()) return 0.0;
    const Vec3Field gq = grad3(q);

    double backscatter = 0;
    for (const Vec3Field& phi : model.modes) {
        ScalarField s(q.grid);
        for (std::size_t n = 0; n < s.data.size(); ++n)
            s.data[n] = phi.x.data[n] * gq.x.data[n] + phi.y.data[n] * gq.y.data[n] +
                        phi.z.data[n] * gq.z.data[n];
        const ScalarField ks = apply_filter(K, s);
        backscatter += model.upsilon * ip_L2(ks, ks);
    }
    if (backscatter == 0.0) return 0.0;

    const Vec3Field aKg = filtered_variance_apply(model, K, gq);
    ScalarField half_div(q.grid);
    {
        const ScalarField d = div_adj(aKg);
        half_div = d;
        half_div *= 0.5;
    }
    const double dissipation = 2.0 * ip_L2(half_div, q);
    return (backscatter + dissipation) / backscatter;
}

RegimeIndicator regime_indicator(const State& u, const NoiseModel& model, const PhysParams& p) {
    RegimeIndicator out;
    const Grid& g = u.grid();

    // stochastic shear, Upsilon * max |dz phi^H|^2 over modes and points
    double shear_max = 0;
    const std::size_t hs = g.hsize();
    auto layers_equal = [&](const ScalarField& f) {
        for (int k = 1; k < g.nz; ++k)
            for (std::size_t n = 0; n < hs; ++n)
                if (f.data[n + k * hs] != f.data[n]) return false;
        return true;
    };
    for (const Vec3Field& phi : model.modes) {
        // bitwise z-invariant layers have exactly zero shear; the one-sided
        // boundary stencil would otherwise leave roundoff residue
        if (layers_equal(phi.x) && layers_equal(phi.y)) continue;
        const ScalarField dpx = vertical::dz(phi.x);
        const ScalarField dpy = vertical::dz(phi.y);
        for (std::size_t n = 0; n < dpx.data.size(); ++n)
            shear_max = std::max(shear_max,
                                 dpx.data[n] * dpx.data[n] + dpy.data[n] * dpy.data[n]);
    }
    out.noise_shear = model.upsilon * shear_max;

    const ScalarField rho = density(u.T, u.S, p);
    const ScalarField drho = vertical::dz(rho);
    const ScalarField dvx = vertical::dz(u.v.x);
    const ScalarField dvy = vertical::dz(u.v.y);

    std::vector<double> ri;
    ri.reserve(g.size());
    for (std::size_t n = 0; n < rho.data.size(); ++n) {
        const double n2 = -(p.g / p.rho0) * drho.data[n];
        const double s2 = dvx.data[n] * dvx.data[n] + dvy.data[n] * dvy.data[n];
        if (s2 > 0 && n2 > 0) ri.push_back(n2 / s2);
    }
    if (ri.empty()) {
        out.flagged = true;
        out.alpha2_over_Ri = -1.0;
        return out;
    }
    std::nth_element(ri.begin(), ri.begin() + ri.size() / 2, ri.end());
    const double ri_median = ri[ri.size() / 2];
    const double alpha = g.h / std::min(g.Lx, g.Ly);
    out.alpha2_over_Ri = alpha * alpha / ri_median;
    return out;
}

namespace {

struct MemberResult {
    double sup_dev = 0;
    bool blew_up = false;
};

int thread_count() {
    if (const char* env = std::getenv("LUPE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

ConvergenceTable noise_convergence_experiment(const SimConfig& cfg,
                                              const std::vector<double>& upsilon_list,
                                              int n_ensemble) {
    SimConfig base = cfg;
    base.validate();
    if (n_ensemble <= 0) throw std::invalid_argument("ensemble size must be positive");
    const Grid grid = lupe::make_grid(base);
    const long n_steps = static_cast<long>(std::llround(base.t_end / base.dt));

    // zero-noise reference trajectory, stored at every step
    std::vector<State> reference;
    reference.reserve(n_steps + 1);
    {
        SimConfig ref_cfg = base;
        ref_cfg.upsilon = 0.0;
        const NoiseModel ref_model = build_model(ref_cfg, grid);
        State u = initial_state(ref_cfg, grid);
        reference.push_back(u);
        for (long n = 0; n < n_steps; ++n) {
            u = step(u, ref_cfg, ref_model);
            reference.push_back(u);
        }
    }

    auto deviation_H = [&](const State& a, const State& b) {
        State d = a;
        d.v -= b.v;
        d.T -= b.T;
        d.S -= b.S;
        return norm_H(d);
    };

    ConvergenceTable table;
    for (double ups : upsilon_list) {
        SimConfig mcfg = base;
        mcfg.upsilon = ups;

        std::vector<MemberResult> results(n_ensemble);
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int m = next.fetch_add(1);
                if (m >= n_ensemble) return;
                SimConfig run_cfg = mcfg;
                // common random numbers: member seed independent of Upsilon
                run_cfg.seed = mix_seed(base.seed, static_cast<std::uint64_t>(m));
                try {
                    const NoiseModel model = build_model(run_cfg, grid);
                    State u = initial_state(run_cfg, grid);
                    double sup = 0;
                    for (long n = 0; n < n_steps; ++n) {
                        u = step(u, run_cfg, model);
                        sup = std::max(sup, deviation_H(u, reference[n + 1]));
                    }
                    results[m].sup_dev = sup;
                } catch (const BlowUpError&) {
                    results[m].blew_up = true;
                }
            }
        };
        const int nthreads = std::min(thread_count(), n_ensemble);
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();

        ConvergenceRow row;
        row.upsilon = ups;
        double acc = 0;
        for (const MemberResult& r : results) {
            if (r.blew_up) {
                ++row.members_blown_up;
            } else {
                acc += r.sup_dev * r.sup_dev;
                ++row.members_used;
            }
        }
        row.rms_sup_deviation = row.members_used > 0 ? std::sqrt(acc / row.members_used) : 0.0;
        table.rows.push_back(row);
    }

    // least-squares slope of log(rms) on log(Upsilon)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ConvergenceRow& row : table.rows) {
        if (row.upsilon > 0 && row.rms_sup_deviation > 0) {
            const double x = std::log(row.upsilon);
            const double y = std::log(row.rms_sup_deviation);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++n;
        }
    }
    if (n >= 2) table.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table;
}

}  // namespace lupe

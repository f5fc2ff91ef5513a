#include "lupe/pressure.hpp"

#include "lupe/operators.hpp"
#include "lupe/projectors.hpp"
#include "lupe/spectral.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

namespace {

// grad_H of the surface-down accumulation of a scalar integrand
HVecField grad_h_of_column_integral(const ScalarField& integrand) {
    const Grid& g = integrand.grid;
    ScalarField acc(g);
    vertical::integrate_from_surface(g, integrand.data.data(), acc.data.data());
    const Spectral& sp = spectral_for(g);
    HVecField out(g);
    sp.ddx(acc.data.data(), out.x.data.data());
    sp.ddy(acc.data.data(), out.y.data.data());
    return out;
}

// w(v*) + w_s, the total diagnostic vertical velocity entering the weak terms
ScalarField total_w(const HVecField& v_star, const NoiseModel& model) {
    ScalarField w = vertical_velocity(v_star);
    if (model.active()) w += vertical_velocity(model.u_s.horizontal());
    return w;
}

}  // namespace

ScalarField density(const ScalarField& T, const ScalarField& S, const PhysParams& p) {
    require_same_grid(T.grid, S.grid);
    ScalarField rho(T.grid);
    for (std::size_t n = 0; n < rho.data.size(); ++n)
        rho.data[n] = p.rho0 * (1.0 + p.beta_T * (T.data[n] - p.T_r) + p.beta_S * (S.data[n] - p.S_r));
    return rho;
}

HVecField hydrostatic_gradient(const ScalarField& T, const ScalarField& S, const PhysParams& p) {
    require_same_grid(T.grid, S.grid);
    ScalarField buoy(T.grid);
    for (std::size_t n = 0; n < buoy.data.size(); ++n)
        buoy.data[n] = p.beta_T * (T.data[n] - p.T_r) + p.beta_S * (S.data[n] - p.S_r);
    HVecField out = grad_h_of_column_integral(buoy);
    out *= -p.g;
    return out;
}

HVecField weak_pressure_gradient(const HVecField& v_star, const NoiseModel& model,
                                 const FilterKernel& K, const PhysParams& p) {
    (void)p;
    if (!model.active()) return HVecField(v_star.grid);
    const ScalarField w = total_w(v_star, model);
    const Vec3Field gw = grad3(w);

    // K*[u_S . grad w~]
    ScalarField transport(v_star.grid);
    for (std::size_t n = 0; n < transport.data.size(); ++n)
        transport.data[n] = model.u_s.x.data[n] * gw.x.data[n] +
                            model.u_s.y.data[n] * gw.y.data[n] +
                            model.u_s.z.data[n] * gw.z.data[n];
    ScalarField integrand = apply_filter(K, transport);

    // - 1/2 div(a^K grad w~)
    Vec3Field flux = filtered_variance_apply(model, K, gw);
    ScalarField diff = div_adj(flux);
    diff *= 0.5;
    integrand -= diff;

    return project_velocity(grad_h_of_column_integral(integrand));
}

HVecField martingale_pressure_forcing(const HVecField& v_star, const NoiseModel& model,
                                      const FilterKernel& K, const NoiseIncrement& inc,
                                      const PhysParams& p) {
    if (!model.active()) return HVecField(v_star.grid);
    const ScalarField w = total_w(v_star, model);
    const Vec3Field gw = grad3(w);

    ScalarField transport(v_star.grid);
    for (std::size_t n = 0; n < transport.data.size(); ++n)
        transport.data[n] = inc.sigma_dW.x.data[n] * gw.x.data[n] +
                            inc.sigma_dW.y.data[n] * gw.y.data[n] +
                            inc.sigma_dW.z.data[n] * gw.z.data[n];
    ScalarField integrand = apply_filter(K, transport);

    // A^v(sigma^w dW), Dirichlet vertical closure for the vertical noise
    DiffusionParams dp{p.mu_v, p.nu_v, 0.0};
    integrand += diffuse(dp, inc.sigma_dW.z, vertical::noise_w_closure());

    return project_velocity(grad_h_of_column_integral(integrand));
}

}  // namespace lupe

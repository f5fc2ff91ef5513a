#include "lupe/operators.hpp"

#include <cmath>

#include "lupe/spectral.hpp"

namespace lupe {

ScalarField vertical_velocity(const HVecField& v) {
    const Grid& g = v.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField div(g), tmp(g);
    sp.ddx(v.x.data.data(), div.data.data());
    sp.ddy(v.y.data.data(), tmp.data.data());
    div += tmp;
    ScalarField w(g);
    vertical::integrate_from_surface(g, div.data.data(), w.data.data());
    return w;
}

double w_bottom_residual(const HVecField& v) {
    const Grid& g = v.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField div(g), tmp(g);
    sp.ddx(v.x.data.data(), div.data.data());
    sp.ddy(v.y.data.data(), tmp.data.data());
    div += tmp;
    std::vector<double> col(g.hsize());
    vertical::column_integral(g, div.data.data(), col.data());
    double m = 0.0;
    for (double c : col) m = std::max(m, std::fabs(c));
    return m;
}

ScalarField advect(const HVecField& v_star, const ScalarField& w, const ScalarField& q,
                   const vertical::Closure& qc) {
    require_same_grid(v_star.grid, q.grid);
    const Grid& g = q.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField qx(g), qy(g), qz(g);
    sp.ddx(q.data.data(), qx.data.data());
    sp.ddy(q.data.data(), qy.data.data());
    vertical::dz_closure(g, q.data.data(), qz.data.data(), qc);
    ScalarField out(g);
    for (std::size_t n = 0; n < out.data.size(); ++n)
        out.data[n] = v_star.x.data[n] * qx.data[n] + v_star.y.data[n] * qy.data[n] +
                      w.data[n] * qz.data[n];
    return out;
}

ScalarField advect(const HVecField& v_star, const ScalarField& q, const vertical::Closure& qc) {
    return advect(v_star, vertical_velocity(v_star), q, qc);
}

HVecField advect(const HVecField& v_star, const HVecField& q) {
    const ScalarField w = vertical_velocity(v_star);
    HVecField out(q.grid);
    out.x = advect(v_star, w, q.x, vertical::velocity_closure());
    out.y = advect(v_star, w, q.y, vertical::velocity_closure());
    return out;
}

ScalarField advect3(const Vec3Field& u, const ScalarField& q, const vertical::Closure& qc) {
    require_same_grid(u.grid, q.grid);
    const Grid& g = q.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField qx(g), qy(g), qz(g);
    sp.ddx(q.data.data(), qx.data.data());
    sp.ddy(q.data.data(), qy.data.data());
    vertical::dz_closure(g, q.data.data(), qz.data.data(), qc);
    ScalarField out(g);
    for (std::size_t n = 0; n < out.data.size(); ++n)
        out.data[n] =
            u.x.data[n] * qx.data[n] + u.y.data[n] * qy.data[n] + u.z.data[n] * qz.data[n];
    return out;
}

ScalarField diffuse(const DiffusionParams& p, const ScalarField& q, const vertical::Closure& c) {
    const Grid& g = q.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField lap(g);
    sp.apply_h_multiplier(q.data.data(), lap.data.data(),
                          [](double kx, double ky) { return -(kx * kx + ky * ky); });
    ScalarField d2z(g);
    vertical::d2z_closure(g, q.data.data(), d2z.data.data(), c);
    ScalarField out(g);
    for (std::size_t n = 0; n < out.data.size(); ++n)
        out.data[n] = -p.mu * lap.data[n] - p.nu * d2z.data[n];
    return out;
}

HVecField diffuse(const DiffusionParams& p, const HVecField& q, const vertical::Closure& c) {
    HVecField out(q.grid);
    out.x = diffuse(p, q.x, c);
    out.y = diffuse(p, q.y, c);
    return out;
}

HVecField coriolis(const HVecField& v, double f) {
    HVecField out(v.grid);
    for (std::size_t n = 0; n < v.x.data.size(); ++n) {
        out.x.data[n] = -f * v.y.data[n];
        out.y.data[n] = f * v.x.data[n];
    }
    return out;
}

Vec3Field grad3(const ScalarField& q) {
    const Grid& g = q.grid;
    const Spectral& sp = spectral_for(g);
    Vec3Field out(g);
    sp.ddx(q.data.data(), out.x.data.data());
    sp.ddy(q.data.data(), out.y.data.data());
    vertical::dz(g, q.data.data(), out.z.data.data());
    return out;
}

ScalarField divergence3(const Vec3Field& f) {
    const Grid& g = f.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField out(g), tmp(g);
    sp.ddx(f.x.data.data(), out.data.data());
    sp.ddy(f.y.data.data(), tmp.data.data());
    out += tmp;
    vertical::dz(g, f.z.data.data(), tmp.data.data());
    out += tmp;
    return out;
}

ScalarField div_adj(const Vec3Field& f) {
    const Grid& g = f.grid;
    const Spectral& sp = spectral_for(g);
    ScalarField out(g), tmp(g);
    sp.ddx(f.x.data.data(), out.data.data());
    sp.ddy(f.y.data.data(), tmp.data.data());
    out += tmp;
    vertical::dz_transpose(g, f.z.data.data(), tmp.data.data());
    out -= tmp;
    return out;
}

ScalarField stochastic_diffusion(const SymTensorField& a, const ScalarField& q) {
    require_same_grid(a.grid, q.grid);
    Vec3Field flux = a.apply(grad3(q));
    ScalarField out = div_adj(flux);
    out *= 0.5;
    return out;
}

}  // namespace lupe

#include "lupe/inner.hpp"

#include <cmath>

#include "lupe/spectral.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

double ip_L2(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid, g.grid);
    double acc = 0.0;
    for (std::size_t n = 0; n < f.data.size(); ++n) acc += f.data[n] * g.data[n];
    return acc * f.grid.cell_volume();
}

double ip_grad(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid, g.grid);
    const Grid& gr = f.grid;
    const Spectral& sp = spectral_for(gr);
    ScalarField fx(gr), fy(gr), gx(gr), gy(gr);
    sp.ddx(f.data.data(), fx.data.data());
    sp.ddy(f.data.data(), fy.data.data());
    sp.ddx(g.data.data(), gx.data.data());
    sp.ddy(g.data.data(), gy.data.data());
    double acc = 0.0;
    for (std::size_t n = 0; n < f.data.size(); ++n)
        acc += fx.data[n] * gx.data[n] + fy.data[n] * gy.data[n];
    acc *= gr.cell_volume();
    // vertical part: interior-face differences
    const std::size_t hs = gr.hsize();
    const double w = gr.dx * gr.dy / gr.dz;  // (df/dz)^2 * dV = (df)^2 * dA/dz
    double vacc = 0.0;
    for (std::size_t p = 0; p < hs; ++p)
        for (int k = 0; k + 1 < gr.nz; ++k) {
            const double df = f.data[p + (k + 1) * hs] - f.data[p + k * hs];
            const double dg = g.data[p + (k + 1) * hs] - g.data[p + k * hs];
            vacc += df * dg;
        }
    return acc + vacc * w;
}

double ip_surface_top(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid, g.grid);
    const Grid& gr = f.grid;
    const std::size_t hs = gr.hsize();
    const std::size_t off = static_cast<std::size_t>(gr.nz - 1) * hs;
    double acc = 0.0;
    for (std::size_t p = 0; p < hs; ++p) acc += f.data[off + p] * g.data[off + p];
    return acc * gr.face_area();
}

double ip_L2(const HVecField& f, const HVecField& g) { return ip_L2(f.x, g.x) + ip_L2(f.y, g.y); }
double ip_grad(const HVecField& f, const HVecField& g) { return ip_grad(f.x, g.x) + ip_grad(f.y, g.y); }
double ip_L2(const Vec3Field& f, const Vec3Field& g) {
    return ip_L2(f.x, g.x) + ip_L2(f.y, g.y) + ip_L2(f.z, g.z);
}

double inner_H(const State& a, const State& b) {
    return ip_L2(a.v, b.v) + ip_L2(a.T, b.T) + ip_L2(a.S, b.S);
}

double inner_V(const State& a, const State& b, const PhysParams& p) {
    double acc = ip_grad(a.v, b.v) + ip_grad(a.T, b.T) + ip_grad(a.S, b.S);
    if (p.alpha_T > 0) acc += (p.alpha_T / p.nu_T) * ip_surface_top(a.T, b.T);
    return acc;
}

double norm_H(const State& a) { return std::sqrt(inner_H(a, a)); }
double norm_V(const State& a, const PhysParams& p) { return std::sqrt(inner_V(a, a, p)); }

double norm_L2(const ScalarField& f) { return std::sqrt(ip_L2(f, f)); }
double norm_L2(const HVecField& f) { return std::sqrt(ip_L2(f, f)); }
double norm_L2(const Vec3Field& f) { return std::sqrt(ip_L2(f, f)); }

double norm_L4(const HVecField& f) {
    double acc = 0.0;
    for (std::size_t n = 0; n < f.x.data.size(); ++n) {
        const double m2 = f.x.data[n] * f.x.data[n] + f.y.data[n] * f.y.data[n];
        acc += m2 * m2;
    }
    return std::pow(acc * f.grid.cell_volume(), 0.25);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.data) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace lupe

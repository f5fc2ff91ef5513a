#include "lupe/projectors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>

#include "lupe/inner.hpp"
#include "lupe/spectral.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

HVecField barotropic(const HVecField& v) {
    const Grid& g = v.grid;
    HVecField out(g);
    std::vector<double> mean(g.hsize());
    const std::size_t hs = g.hsize();
    vertical::depth_mean(g, v.x.data.data(), mean.data());
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t p = 0; p < hs; ++p) out.x.data[p + k * hs] = mean[p];
    vertical::depth_mean(g, v.y.data.data(), mean.data());
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t p = 0; p < hs; ++p) out.y.data[p + k * hs] = mean[p];
    return out;
}

HVecField baroclinic(const HVecField& v) {
    HVecField out = v;
    out -= barotropic(v);
    return out;
}

namespace {

double max_layer_spread(const ScalarField& f) {
    const Grid& g = f.grid;
    const std::size_t hs = g.hsize();
    double m = 0.0;
    for (std::size_t p = 0; p < hs; ++p)
        for (int k = 1; k < g.nz; ++k)
            m = std::max(m, std::fabs(f.data[p + k * hs] - f.data[p]));
    return m;
}

}  // namespace

HVecField leray2d(const HVecField& vbar) {
    const Grid& g = vbar.grid;
    double scale = std::max(max_abs(vbar.x), max_abs(vbar.y));
    double spread = std::max(max_layer_spread(vbar.x), max_layer_spread(vbar.y));
    if (spread > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("leray2d expects a z-independent (barotropic) field");
    const Spectral& sp = spectral_for(g);
    std::vector<double> lx(g.hsize()), ly(g.hsize());
    std::copy(vbar.x.data.begin(), vbar.x.data.begin() + g.hsize(), lx.begin());
    std::copy(vbar.y.data.begin(), vbar.y.data.begin() + g.hsize(), ly.begin());
    sp.leray2d_layer(lx.data(), ly.data());
    HVecField out(g);
    const std::size_t hs = g.hsize();
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t p = 0; p < hs; ++p) {
            out.x.data[p + k * hs] = lx[p];
            out.y.data[p + k * hs] = ly[p];
        }
    return out;
}

HVecField project_velocity(const HVecField& v) {
    const Grid& g = v.grid;
    const Spectral& sp = spectral_for(g);
    std::vector<double> mx(g.hsize()), my(g.hsize());
    vertical::depth_mean(g, v.x.data.data(), mx.data());
    vertical::depth_mean(g, v.y.data.data(), my.data());
    sp.leray2d_layer(mx.data(), my.data());
    HVecField out = baroclinic(v);
    const std::size_t hs = g.hsize();
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t p = 0; p < hs; ++p) {
            out.x.data[p + k * hs] += mx[p];
            out.y.data[p + k * hs] += my[p];
        }
    return out;
}

State project_state(const State& u) {
    State out = u;
    out.v = project_velocity(u.v);
    return out;
}

double barotropic_divergence(const HVecField& v) {
    const Grid& g = v.grid;
    const Spectral& sp = spectral_for(g);
    HVecField vb = barotropic(v);
    ScalarField div(g), tmp(g);
    sp.ddx(vb.x.data.data(), div.data.data());
    sp.ddy(vb.y.data.data(), tmp.data.data());
    div += tmp;
    return max_abs(div);
}

Vec3Field project_divfree3(const Vec3Field& u) {
    const Grid& g = u.grid;
    const Spectral& sp = spectral_for(g);
    const int nz = g.nz, ny = g.ny, ncx = sp.ncx();
    const std::size_t nmodes = static_cast<std::size_t>(ncx) * ny;

    // divergence in spectral (horizontal) representation
    std::vector<std::complex<double>> cx(nmodes * nz), cy(nmodes * nz), cz(nmodes * nz);
    sp.forward_h(u.x.data.data(), cx.data());
    sp.forward_h(u.y.data.data(), cy.data());
    sp.forward_h(u.z.data.data(), cz.data());

    // Dz as a dense nz x nz matrix (matches lupe::vertical::dz)
    Eigen::MatrixXd Dz = Eigen::MatrixXd::Zero(nz, nz);
    {
        std::vector<double> e(nz, 0.0), col(nz);
        Grid col_grid = g;
        col_grid.nx = 1;
        col_grid.ny = 1;
        for (int j = 0; j < nz; ++j) {
            std::fill(e.begin(), e.end(), 0.0);
            e[j] = 1.0;
            vertical::dz(col_grid, e.data(), col.data());
            for (int i = 0; i < nz; ++i) Dz(i, j) = col[i];
        }
    }
    const Eigen::MatrixXd DzDz = Dz * Dz;

    std::map<double, Eigen::PartialPivLU<Eigen::MatrixXd>> lu_cache;
    Eigen::VectorXcd d(nz), chi(nz), dzchi(nz);
    for (int jj = 0; jj < ny; ++jj)
        for (int ii = 0; ii < ncx; ++ii) {
            const double kx = sp.kx(ii), ky = sp.ky(jj);
            const double k2 = kx * kx + ky * ky;
            const std::size_t base = ii + static_cast<std::size_t>(ncx) * jj;
            auto at = [&](std::vector<std::complex<double>>& a, int k) -> std::complex<double>& {
                return a[base + nmodes * k];
            };
            if (k2 == 0.0) {
                // Rigid lids force the horizontal-mean vertical velocity to zero.
                for (int k = 0; k < nz; ++k) at(cz, k) = 0.0;
                continue;
            }
            for (int k = 0; k < nz; ++k) d(k) = std::complex<double>(0, kx) * at(cx, k) +
                                                std::complex<double>(0, ky) * at(cy, k);
            for (int k = 0; k < nz; ++k) {
                std::complex<double> acc = 0.0;
                for (int l = 0; l < nz; ++l) acc += Dz(k, l) * at(cz, l);
                d(k) += acc;
            }
            auto it = lu_cache.find(k2);
            if (it == lu_cache.end()) {
                Eigen::MatrixXd M = DzDz;
                M.diagonal().array() -= k2;
                it = lu_cache.emplace(k2, Eigen::PartialPivLU<Eigen::MatrixXd>(M)).first;
            }
            const Eigen::VectorXd chi_re = it->second.solve(Eigen::VectorXd(d.real()));
            const Eigen::VectorXd chi_im = it->second.solve(Eigen::VectorXd(d.imag()));
            chi.real() = chi_re;
            chi.imag() = chi_im;
            dzchi = Dz * chi;
            for (int k = 0; k < nz; ++k) {
                at(cx, k) -= std::complex<double>(0, kx) * chi(k);
                at(cy, k) -= std::complex<double>(0, ky) * chi(k);
                at(cz, k) -= dzchi(k);
            }
        }

    Vec3Field out(g);
    sp.backward_h(cx.data(), out.x.data.data());
    sp.backward_h(cy.data(), out.y.data.data());
    sp.backward_h(cz.data(), out.z.data.data());
    return out;
}

}  // namespace lupe

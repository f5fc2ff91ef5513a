#include "lupe/grid.hpp"

#include <stdexcept>
#include <string>

#include "lupe/field.hpp"

namespace lupe {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

Grid make_grid(int nx, int ny, int nz, double Lx, double Ly, double h) {
    if (!power_of_two(nx) || !power_of_two(ny))
        throw std::invalid_argument("horizontal cell counts must be powers of two, got nx=" +
                                    std::to_string(nx) + " ny=" + std::to_string(ny));
    if (nz <= 0) throw std::invalid_argument("nz must be positive");
    if (!(Lx > 0) || !(Ly > 0) || !(h > 0))
        throw std::invalid_argument("domain extents must be positive");

    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    g.Lx = Lx;
    g.Ly = Ly;
    g.h = h;
    g.dx = Lx / nx;
    g.dy = Ly / ny;
    g.dz = h / nz;
    g.z_faces.resize(nz + 1);
    g.z_centers.resize(nz);
    for (int k = 0; k <= nz; ++k) g.z_faces[k] = -h + k * g.dz;
    g.z_faces[nz] = 0.0;  // exact top face
    for (int k = 0; k < nz; ++k) g.z_centers[k] = -h + (k + 0.5) * g.dz;
    return g;
}

Vec3Field SymTensorField::apply(const Vec3Field& g) const {
    require_same_grid(grid, g.grid);
    Vec3Field out(grid);
    for (std::size_t n = 0; n < xx.data.size(); ++n) {
        const double gx = g.x.data[n], gy = g.y.data[n], gz = g.z.data[n];
        out.x.data[n] = xx.data[n] * gx + xy.data[n] * gy + xz.data[n] * gz;
        out.y.data[n] = xy.data[n] * gx + yy.data[n] * gy + yz.data[n] * gz;
        out.z.data[n] = xz.data[n] * gx + yz.data[n] * gy + zz.data[n] * gz;
    }
    return out;
}

void PhysParams::validate() const {
    if (!(rho0 > 0)) throw std::invalid_argument("rho0 must be positive");
    if (!(mu_v > 0 && nu_v > 0 && mu_T > 0 && nu_T > 0 && mu_S > 0 && nu_S > 0))
        throw std::invalid_argument("viscosities and diffusivities must be positive");
    if (alpha_T < 0) throw std::invalid_argument("alpha_T must be nonnegative");
}

}  // namespace lupe

#pragma once

#include <cstddef>
#include <vector>

namespace lupe {

/// Staggered-free collocated grid on the cylinder S_H x [-h, 0].
/// Horizontal directions are periodic, the vertical is bounded.
/// All prognostic fields live at cell centers.
struct Grid {
    int nx = 0, ny = 0, nz = 0;
    double Lx = 0, Ly = 0, h = 0;
    double dx = 0, dy = 0, dz = 0;
    std::vector<double> z_centers;  // nz values in (-h, 0)
    std::vector<double> z_faces;    // nz+1 values, z_faces[0] = -h, z_faces[nz] = 0

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny * nz; }
    std::size_t hsize() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t idx(int i, int j, int k) const {
        return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * (j + static_cast<std::size_t>(ny) * k);
    }
    double cell_volume() const { return dx * dy * dz; }
    double face_area() const { return dx * dy; }

    bool same_as(const Grid& o) const {
        return nx == o.nx && ny == o.ny && nz == o.nz && Lx == o.Lx && Ly == o.Ly && h == o.h;
    }
};

/// Builds a grid. nx, ny must be powers of two (spectral horizontal
/// derivatives); throws std::invalid_argument otherwise.
Grid make_grid(int nx, int ny, int nz, double Lx, double Ly, double h);

}  // namespace lupe

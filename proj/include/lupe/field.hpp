#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lupe/grid.hpp"

namespace lupe {

/// Real scalar samples at cell centers, x-fastest ordering.
struct ScalarField {
    Grid grid;
    std::vector<double> data;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), data(g.size(), 0.0) {}

    double& operator()(int i, int j, int k) { return data[grid.idx(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data[grid.idx(i, j, k)]; }

    ScalarField& operator+=(const ScalarField& o) {
        for (std::size_t n = 0; n < data.size(); ++n) data[n] += o.data[n];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        for (std::size_t n = 0; n < data.size(); ++n) data[n] -= o.data[n];
        return *this;
    }
    ScalarField& operator*=(double c) {
        for (double& v : data) v *= c;
        return *this;
    }
};

/// Horizontal 2-vector field (v_x, v_y).
struct HVecField {
    Grid grid;
    ScalarField x, y;

    HVecField() = default;
    explicit HVecField(const Grid& g) : grid(g), x(g), y(g) {}

    HVecField& operator+=(const HVecField& o) { x += o.x; y += o.y; return *this; }
    HVecField& operator-=(const HVecField& o) { x -= o.x; y -= o.y; return *this; }
    HVecField& operator*=(double c) { x *= c; y *= c; return *this; }
};

/// 3-vector field (u, v, w).
struct Vec3Field {
    Grid grid;
    ScalarField x, y, z;

    Vec3Field() = default;
    explicit Vec3Field(const Grid& g) : grid(g), x(g), y(g), z(g) {}

    HVecField horizontal() const {
        HVecField out(grid);
        out.x = x;
        out.y = y;
        return out;
    }

    Vec3Field& operator+=(const Vec3Field& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3Field& operator*=(double c) { x *= c; y *= c; z *= c; return *this; }
};

/// Symmetric 3x3 tensor field, stored as the six independent components.
struct SymTensorField {
    Grid grid;
    ScalarField xx, xy, xz, yy, yz, zz;

    SymTensorField() = default;
    explicit SymTensorField(const Grid& g) : grid(g), xx(g), xy(g), xz(g), yy(g), yz(g), zz(g) {}

    /// a * g, pointwise matrix-vector product.
    Vec3Field apply(const Vec3Field& g) const;

    SymTensorField& operator+=(const SymTensorField& o) {
        xx += o.xx; xy += o.xy; xz += o.xz; yy += o.yy; yz += o.yz; zz += o.zz;
        return *this;
    }
    SymTensorField& operator*=(double c) {
        xx *= c; xy *= c; xz *= c; yy *= c; yz *= c; zz *= c;
        return *this;
    }
};

/// Physical constants and mixing coefficients of the system.
struct PhysParams {
    double f = 1e-4;        // Coriolis parameter (1/s)
    double g = 9.81;        // gravity (m/s^2)
    double rho0 = 1025.0;   // reference density (kg/m^3)
    double beta_T = 2e-4;   // thermal expansion (1/degC)
    double beta_S = 7.6e-4; // haline contraction (1/psu)
    double T_r = 10.0;      // reference temperature
    double S_r = 35.0;      // reference salinity
    double mu_v = 1e-2, nu_v = 1e-2;  // velocity viscosities (m^2/s)
    double mu_T = 1e-2, nu_T = 1e-2;  // temperature diffusivities
    double mu_S = 1e-2, nu_S = 1e-2;  // salinity diffusivities
    double alpha_T = 0.0;   // Robin coefficient on the top face (m/s)

    void validate() const;
};

/// Prognostic state U* = (v*, T, S) plus simulation clock.
struct State {
    HVecField v;   // Ito-Stokes corrected horizontal velocity (m/s)
    ScalarField T; // temperature
    ScalarField S; // salinity
    double t = 0;
    long step_index = 0;

    State() = default;
    explicit State(const Grid& g) : v(g), T(g), S(g) {}
    const Grid& grid() const { return T.grid; }
};

inline void require_same_grid(const Grid& a, const Grid& b) {
    if (!a.same_as(b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace lupe

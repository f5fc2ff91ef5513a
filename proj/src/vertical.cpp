#include "lupe/vertical.hpp"

#include <cstring>

namespace lupe::vertical {

namespace {

// Ghost mirror factor: ghost = factor * edge cell value.
double ghost_factor(BC bc, double robin_ratio, double dz) {
    switch (bc) {
        case BC::neumann: return 1.0;
        case BC::dirichlet: return -1.0;
        case BC::robin: return 1.0 - robin_ratio * dz;
    }
    return 1.0;
}

}  // namespace

void dz(const Grid& g, const double* in, double* out) {
    const std::size_t hs = g.hsize();
    const int nz = g.nz;
    const double inv2dz = 1.0 / (2.0 * g.dz);
    if (nz == 1) {
        std::memset(out, 0, hs * sizeof(double));
        return;
    }
    for (std::size_t p = 0; p < hs; ++p) {
        if (nz == 2) {
            const double d = (in[p + hs] - in[p]) / g.dz;
            out[p] = d;
            out[p + hs] = d;
            continue;
        }
        out[p] = (-3.0 * in[p] + 4.0 * in[p + hs] - in[p + 2 * hs]) * inv2dz;
        for (int k = 1; k < nz - 1; ++k)
            out[p + k * hs] = (in[p + (k + 1) * hs] - in[p + (k - 1) * hs]) * inv2dz;
        out[p + (nz - 1) * hs] =
            (3.0 * in[p + (nz - 1) * hs] - 4.0 * in[p + (nz - 2) * hs] + in[p + (nz - 3) * hs]) * inv2dz;
    }
}

void dz_transpose(const Grid& g, const double* in, double* out) {
    const std::size_t hs = g.hsize();
    const int nz = g.nz;
    const double inv2dz = 1.0 / (2.0 * g.dz);
    std::memset(out, 0, g.size() * sizeof(double));
    if (nz == 1) return;
    for (std::size_t p = 0; p < hs; ++p) {
        if (nz == 2) {
            const double s = (in[p] + in[p + hs]) / g.dz;
            out[p] -= s;
            out[p + hs] += s;
            continue;
        }
        // row 0 (one-sided)
        out[p] += -3.0 * inv2dz * in[p];
        out[p + hs] += 4.0 * inv2dz * in[p];
        out[p + 2 * hs] += -1.0 * inv2dz * in[p];
        // interior centered rows
        for (int k = 1; k < nz - 1; ++k) {
            out[p + (k - 1) * hs] += -inv2dz * in[p + k * hs];
            out[p + (k + 1) * hs] += inv2dz * in[p + k * hs];
        }
        // row nz-1 (one-sided)
        const double vtop = in[p + (nz - 1) * hs];
        out[p + (nz - 1) * hs] += 3.0 * inv2dz * vtop;
        out[p + (nz - 2) * hs] += -4.0 * inv2dz * vtop;
        out[p + (nz - 3) * hs] += 1.0 * inv2dz * vtop;
    }
}

void dz_closure(const Grid& g, const double* in, double* out, const Closure& c) {
    const std::size_t hs = g.hsize();
    const int nz = g.nz;
    const double inv2dz = 1.0 / (2.0 * g.dz);
    const double ft = ghost_factor(c.top, c.robin_ratio, g.dz);
    const double fb = ghost_factor(c.bottom, c.robin_ratio, g.dz);
    for (std::size_t p = 0; p < hs; ++p) {
        for (int k = 0; k < nz; ++k) {
            const double below = (k == 0) ? fb * in[p] : in[p + (k - 1) * hs];
            const double above = (k == nz - 1) ? ft * in[p + (nz - 1) * hs] : in[p + (k + 1) * hs];
            out[p + k * hs] = (above - below) * inv2dz;
        }
    }
}

void d2z_closure(const Grid& g, const double* in, double* out, const Closure& c) {
    const std::size_t hs = g.hsize();
    const int nz = g.nz;
    const double invdz2 = 1.0 / (g.dz * g.dz);
    const double ft = ghost_factor(c.top, c.robin_ratio, g.dz);
    const double fb = ghost_factor(c.bottom, c.robin_ratio, g.dz);
    for (std::size_t p = 0; p < hs; ++p) {
        for (int k = 0; k < nz; ++k) {
            const double mid = in[p + k * hs];
            const double below = (k == 0) ? fb * mid : in[p + (k - 1) * hs];
            const double above = (k == nz - 1) ? ft * mid : in[p + (k + 1) * hs];
            out[p + k * hs] = (above - 2.0 * mid + below) * invdz2;
        }
    }
}

void integrate_from_surface(const Grid& g, const double* in, double* out) {
    const std::size_t hs = g.hsize();
    const int nz = g.nz;
    for (std::size_t p = 0; p < hs; ++p) {
        double acc = 0.0;  // integral from the surface down to face k+1
        for (int k = nz - 1; k >= 0; --k) {
            out[p + k * hs] = acc + 0.5 * g.dz * in[p + k * hs];
            acc += g.dz * in[p + k * hs];
        }
    }
}

void column_integral(const Grid& g, const double* in, double* out) {
    const std::size_t hs = g.hsize();
    for (std::size_t p = 0; p < hs; ++p) {
        double acc = 0.0;
        for (int k = 0; k < g.nz; ++k) acc += in[p + k * hs];
        out[p] = acc * g.dz;
    }
}

void depth_mean(const Grid& g, const double* in, double* out) {
    column_integral(g, in, out);
    const double inv_h = 1.0 / g.h;
    for (std::size_t p = 0; p < g.hsize(); ++p) out[p] *= inv_h;
}

void solve_implicit_diffusion(const Grid& g, double coeff, const Closure& c,
                              const double* rhs, double* out) {
    const std::size_t hs = g.hsize();
    const int nz = g.nz;
    const double invdz2 = 1.0 / (g.dz * g.dz);
    const double ft = ghost_factor(c.top, c.robin_ratio, g.dz);
    const double fb = ghost_factor(c.bottom, c.robin_ratio, g.dz);
    const double off = -coeff * invdz2;
    std::vector<double> diag(nz), cp(nz), dp(nz);
    for (int k = 0; k < nz; ++k) {
        double r = 0.0;
        if (k == 0) r = fb;
        if (k == nz - 1) r += ft;  // nz == 1 collapses both ghosts onto one row
        diag[k] = 1.0 + coeff * (2.0 - r) * invdz2;
    }
    for (std::size_t p = 0; p < hs; ++p) {
        cp[0] = (nz > 1) ? off / diag[0] : 0.0;
        dp[0] = rhs[p] / diag[0];
        for (int k = 1; k < nz; ++k) {
            const double m = diag[k] - off * cp[k - 1];
            cp[k] = (k < nz - 1) ? off / m : 0.0;
            dp[k] = (rhs[p + k * hs] - off * dp[k - 1]) / m;
        }
        out[p + (nz - 1) * hs] = dp[nz - 1];
        for (int k = nz - 2; k >= 0; --k)
            out[p + k * hs] = dp[k] - cp[k] * out[p + (k + 1) * hs];
    }
}

ScalarField dz(const ScalarField& f) {
    ScalarField out(f.grid);
    dz(f.grid, f.data.data(), out.data.data());
    return out;
}

ScalarField dz_closure(const ScalarField& f, const Closure& c) {
    ScalarField out(f.grid);
    dz_closure(f.grid, f.data.data(), out.data.data(), c);
    return out;
}

}  // namespace lupe::vertical

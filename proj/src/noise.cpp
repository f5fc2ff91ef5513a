#include "lupe/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lupe/inner.hpp"
#include "lupe/operators.hpp"
#include "lupe/projectors.hpp"
#include "lupe/spectral.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// sin(theta) on one horizontal layer
std::vector<double> horizontal_wave(const ModeSpec& s, const Grid& g) {
    std::vector<double> layer(g.hsize());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = (i + 0.5) * g.dx;
            const double y = (j + 0.5) * g.dy;
            layer[i + static_cast<std::size_t>(g.nx) * j] =
                std::sin(two_pi * (s.kx * x / g.Lx + s.ky * y / g.Ly) + s.phase);
        }
    return layer;
}

void broadcast(const Grid& g, const std::vector<double>& layer, ScalarField& out) {
    const std::size_t hs = g.hsize();
    for (int k = 0; k < g.nz; ++k)
        for (std::size_t p = 0; p < hs; ++p) out.data[p + k * hs] = layer[p];
}

// d/dx and d/dy of a single layer via the spectral workspace
void layer_ddx(const Grid& g, const Spectral& sp, const std::vector<double>& in,
               std::vector<double>& out, bool ddy_instead) {
    ScalarField f(g), d(g);
    broadcast(g, in, f);
    if (ddy_instead)
        sp.ddy(f.data.data(), d.data.data());
    else
        sp.ddx(f.data.data(), d.data.data());
    out.assign(d.data.begin(), d.data.begin() + g.hsize());
}

void validate_spec(const ModeSpec& s, const Grid& g) {
    if (!std::isfinite(s.amplitude))
        throw std::invalid_argument("mode " + s.name() + ": amplitude not finite");
    if (std::abs(s.kx) > g.nx / 4 || std::abs(s.ky) > g.ny / 4)
        throw std::invalid_argument("mode " + s.name() +
                                    ": horizontal wavenumber above the Nyquist/2 band limit");
    if (s.kind == ModeSpec::Kind::potential) {
        if (s.component != 'x' && s.component != 'y' && s.component != 'z')
            throw std::invalid_argument("mode " + s.name() + ": unknown potential component");
        const int mmin = (s.component == 'z') ? 0 : 1;
        if (s.m < mmin || s.m > g.nz / 2)
            throw std::invalid_argument("mode " + s.name() + ": vertical index out of range");
    }
}

Vec3Field build_mode(const ModeSpec& s, const Grid& g) {
    const Spectral& sp = spectral_for(g);
    Vec3Field phi(g);
    const std::vector<double> wave = horizontal_wave(s, g);
    std::vector<double> dwx, dwy;
    layer_ddx(g, sp, wave, dwx, false);
    layer_ddx(g, sp, wave, dwy, true);
    const std::size_t hs = g.hsize();

    if (s.kind == ModeSpec::Kind::bhn_streamfunction) {
        // phi_H = perp-grad of psi, exactly z-invariant (bitwise equal layers)
        for (int k = 0; k < g.nz; ++k)
            for (std::size_t p = 0; p < hs; ++p) {
                phi.x.data[p + k * hs] = -s.amplitude * dwy[p];
                phi.y.data[p + k * hs] = s.amplitude * dwx[p];
            }
        return phi;
    }

    // potential mode: phi = curl Psi with the discrete vertical stencil, so
    // that divergence3(phi) vanishes to machine precision
    const double mfac = s.m * std::numbers::pi / g.h;
    std::vector<double> prof(g.nz), dprof(g.nz);
    for (int k = 0; k < g.nz; ++k) {
        const double zh = g.z_centers[k] + g.h;
        prof[k] = (s.component == 'z') ? std::cos(mfac * zh) : std::sin(mfac * zh);
    }
    // discrete d/dz of the profile (shared stencil)
    {
        Grid col = g;
        col.nx = 1;
        col.ny = 1;
        vertical::dz(col, prof.data(), dprof.data());
    }
    if (s.component == 'y') {
        // Psi = (0, A sin(theta) prof(z), 0): phi = (-dz Psi2, 0, dx Psi2)
        for (int k = 0; k < g.nz; ++k)
            for (std::size_t p = 0; p < hs; ++p) {
                phi.x.data[p + k * hs] = -s.amplitude * wave[p] * dprof[k];
                phi.z.data[p + k * hs] = s.amplitude * dwx[p] * prof[k];
            }
    } else if (s.component == 'x') {
        // Psi = (A sin(theta) prof(z), 0, 0): phi = (0, dz Psi1, -dy Psi1)
        for (int k = 0; k < g.nz; ++k)
            for (std::size_t p = 0; p < hs; ++p) {
                phi.y.data[p + k * hs] = s.amplitude * wave[p] * dprof[k];
                phi.z.data[p + k * hs] = -s.amplitude * dwy[p] * prof[k];
            }
    } else {
        // Psi = (0, 0, A sin(theta) cos-prof(z)): phi = (dy Psi3, -dx Psi3, 0)
        for (int k = 0; k < g.nz; ++k)
            for (std::size_t p = 0; p < hs; ++p) {
                phi.x.data[p + k * hs] = s.amplitude * dwy[p] * prof[k];
                phi.y.data[p + k * hs] = -s.amplitude * dwx[p] * prof[k];
            }
    }
    return phi;
}

bool layers_bitwise_equal(const ScalarField& f) {
    const Grid& g = f.grid;
    const std::size_t hs = g.hsize();
    for (int k = 1; k < g.nz; ++k)
        for (std::size_t p = 0; p < hs; ++p)
            if (f.data[p + k * hs] != f.data[p]) return false;
    return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string ModeSpec::name() const {
    std::string base = (kind == Kind::bhn_streamfunction) ? "bhn" : std::string("potential-") + component;
    return base + "(kx=" + std::to_string(kx) + ",ky=" + std::to_string(ky) +
           ",m=" + std::to_string(m) + ")";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (0x517cc1b727220a95ULL * (stream + 1)));
}

NoiseModel build_modes(const std::vector<ModeSpec>& specs, const Grid& grid, double upsilon,
                       bool bhn, std::uint64_t seed) {
    if (upsilon < 0) throw std::invalid_argument("upsilon must be nonnegative");
    NoiseModel model;
    model.grid = grid;
    model.specs = specs;
    model.upsilon = upsilon;
    model.bhn = bhn;
    model.rng_seed = seed;
    for (const ModeSpec& s : specs) {
        validate_spec(s, grid);
        Vec3Field phi = build_mode(s, grid);
        if (bhn && !(layers_bitwise_equal(phi.x) && layers_bitwise_equal(phi.y)))
            throw std::invalid_argument("mode " + s.name() +
                                        " has a z-dependent horizontal component, which violates BHN");
        model.modes.push_back(std::move(phi));
    }
    model.a = variance_tensor(model);
    if (model.active()) {
        Vec3Field drift = ito_stokes_drift(model.a);
        model.u_s_div_pre = max_abs(divergence3(drift));
        model.u_s = project_divfree3(drift);
    } else {
        model.u_s = Vec3Field(grid);
    }
    return model;
}

SymTensorField variance_tensor(const NoiseModel& model) {
    SymTensorField a(model.grid);
    for (const Vec3Field& phi : model.modes) {
        for (std::size_t n = 0; n < a.xx.data.size(); ++n) {
            const double px = phi.x.data[n], py = phi.y.data[n], pz = phi.z.data[n];
            a.xx.data[n] += px * px;
            a.xy.data[n] += px * py;
            a.xz.data[n] += px * pz;
            a.yy.data[n] += py * py;
            a.yz.data[n] += py * pz;
            a.zz.data[n] += pz * pz;
        }
    }
    a *= model.upsilon;
    return a;
}

Vec3Field ito_stokes_drift(const SymTensorField& a) {
    const Grid& g = a.grid;
    const Spectral& sp = spectral_for(g);
    Vec3Field u(g);
    ScalarField tmp(g);
    auto add_ddx = [&](const ScalarField& f, ScalarField& out) {
        sp.ddx(f.data.data(), tmp.data.data());
        out += tmp;
    };
    auto add_ddy = [&](const ScalarField& f, ScalarField& out) {
        sp.ddy(f.data.data(), tmp.data.data());
        out += tmp;
    };
    auto add_dz = [&](const ScalarField& f, ScalarField& out) {
        vertical::dz(g, f.data.data(), tmp.data.data());
        out += tmp;
    };
    add_ddx(a.xx, u.x);
    add_ddy(a.xy, u.x);
    add_dz(a.xz, u.x);
    add_ddx(a.xy, u.y);
    add_ddy(a.yy, u.y);
    add_dz(a.yz, u.y);
    add_ddx(a.xz, u.z);
    add_ddy(a.yz, u.z);
    add_dz(a.zz, u.z);
    u *= 0.5;
    return u;
}

Vec3Field ito_stokes(const NoiseModel& model) {
    if (!model.active()) return Vec3Field(model.grid);
    return project_divfree3(ito_stokes_drift(model.a));
}

NoiseIncrement sample_increment(const NoiseModel& model, double dt, std::uint64_t step_index) {
    if (!(dt > 0)) throw std::invalid_argument("sample_increment requires dt > 0");
    NoiseIncrement inc;
    inc.dt = dt;
    inc.sigma_dW = Vec3Field(model.grid);
    std::mt19937_64 rng(mix_seed(model.rng_seed, step_index));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd = std::sqrt(dt);
    const double su = std::sqrt(model.upsilon);
    inc.gaussians.resize(model.modes.size());
    for (std::size_t k = 0; k < model.modes.size(); ++k) {
        const double db = normal(rng) * sd;
        inc.gaussians[k] = db;
        if (su == 0.0) continue;
        const double c = su * db;
        const Vec3Field& phi = model.modes[k];
        for (std::size_t n = 0; n < inc.sigma_dW.x.data.size(); ++n) {
            inc.sigma_dW.x.data[n] += c * phi.x.data[n];
            inc.sigma_dW.y.data[n] += c * phi.y.data[n];
            inc.sigma_dW.z.data[n] += c * phi.z.data[n];
        }
    }
    return inc;
}

std::vector<double> mode_wz_on_face(const ModeSpec& spec, const Grid& grid, int face_k) {
    std::vector<double> out(grid.hsize(), 0.0);
    if (spec.kind == ModeSpec::Kind::bhn_streamfunction || spec.component == 'z') return out;
    const double zh = grid.z_faces[face_k] + grid.h;
    const double prof = std::sin(spec.m * std::numbers::pi * zh / grid.h);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double x = (i + 0.5) * grid.dx;
            const double y = (j + 0.5) * grid.dy;
            const double theta = two_pi * (spec.kx * x / grid.Lx + spec.ky * y / grid.Ly) + spec.phase;
            const double c = std::cos(theta);
            double val = 0.0;
            if (spec.component == 'y')
                val = spec.amplitude * (two_pi * spec.kx / grid.Lx) * c * prof;
            else  // 'x'
                val = -spec.amplitude * (two_pi * spec.ky / grid.Ly) * c * prof;
            out[i + static_cast<std::size_t>(grid.nx) * j] = val;
        }
    return out;
}

}  // namespace lupe

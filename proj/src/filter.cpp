#include "lupe/filter.hpp"

#include <cmath>
#include <stdexcept>

#include "lupe/spectral.hpp"

namespace lupe {

void FilterKernel::validate() const {
    if (kind == Kind::gaussian && !(length_scale > 0))
        throw std::invalid_argument("gaussian kernel requires a positive length scale");
    if (kind == Kind::sharp_cutoff && !(cutoff > 0))
        throw std::invalid_argument("sharp-cutoff kernel requires a positive cutoff wavenumber");
}

double FilterKernel::multiplier(double kx, double ky, double kz) const {
    const double k2 = kx * kx + ky * ky + (horizontal_only ? 0.0 : kz * kz);
    switch (kind) {
        case Kind::identity: return 1.0;
        case Kind::gaussian: return std::exp(-0.5 * k2 * length_scale * length_scale);
        case Kind::sharp_cutoff: return (k2 <= cutoff * cutoff) ? 1.0 : 0.0;
    }
    return 1.0;
}

ScalarField apply_filter(const FilterKernel& K, const ScalarField& f) {
    if (K.is_identity()) return f;
    const Spectral& sp = spectral_for(f.grid);
    ScalarField out(f.grid);
    if (K.horizontal_only) {
        sp.apply_h_multiplier(f.data.data(), out.data.data(),
                              [&](double kx, double ky) { return K.multiplier(kx, ky, 0.0); });
    } else {
        sp.apply_3d_multiplier(f.data.data(), out.data.data(),
                               [&](double kx, double ky, double kz) { return K.multiplier(kx, ky, kz); });
    }
    return out;
}

Vec3Field filtered_variance_apply(const NoiseModel& model, const FilterKernel& K,
                                  const Vec3Field& g) {
    require_same_grid(model.grid, g.grid);
    Vec3Field out(model.grid);
    if (!model.active()) return out;
    const std::size_t n = g.x.data.size();
    for (const Vec3Field& phi : model.modes) {
        ScalarField dot(model.grid);
        for (std::size_t i = 0; i < n; ++i)
            dot.data[i] = phi.x.data[i] * g.x.data[i] + phi.y.data[i] * g.y.data[i] +
                          phi.z.data[i] * g.z.data[i];
        ScalarField filtered = apply_filter(K, apply_filter(K, dot));
        for (std::size_t i = 0; i < n; ++i) {
            out.x.data[i] += phi.x.data[i] * filtered.data[i];
            out.y.data[i] += phi.y.data[i] * filtered.data[i];
            out.z.data[i] += phi.z.data[i] * filtered.data[i];
        }
    }
    out *= model.upsilon;
    return out;
}

}  // namespace lupe

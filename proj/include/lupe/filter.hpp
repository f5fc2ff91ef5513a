#pragma once

#include "lupe/field.hpp"
#include "lupe/noise.hpp"

namespace lupe {

/// Regularizing convolution kernel K, represented by its spectral
/// multiplier. Horizontal convolution is periodic; the vertical axis uses an
/// even (cosine) extension, preserving the Neumann-type boundary structure.
struct FilterKernel {
    enum class Kind { identity, gaussian, sharp_cutoff };
    Kind kind = Kind::identity;
    double length_scale = 0.0;    // gaussian: m_hat = exp(-|k|^2 l^2 / 2)
    double cutoff = 0.0;          // sharp cutoff wavenumber (rad/m)
    bool horizontal_only = false; // filter the horizontal wavenumbers only

    double multiplier(double kx, double ky, double kz) const;
    bool is_identity() const { return kind == Kind::identity; }
    void validate() const;
};

/// C_K f = K * f: spectral multiplication, linear and self-adjoint.
ScalarField apply_filter(const FilterKernel& K, const ScalarField& f);

/// a^K g = Upsilon sum_k phi_k C_K C_K (phi_k . g), applied mode by mode
/// (C_K is self-adjoint, so C_K C_K^* = two applications of the filter).
Vec3Field filtered_variance_apply(const NoiseModel& model, const FilterKernel& K,
                                  const Vec3Field& g);

}  // namespace lupe

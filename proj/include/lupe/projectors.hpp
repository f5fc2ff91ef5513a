#pragma once

#include "lupe/field.hpp"

namespace lupe {

/// Barotropic projector A[v]: depth mean broadcast over z.
HVecField barotropic(const HVecField& v);

/// Baroclinic projector R[v] = v - A[v].
HVecField baroclinic(const HVecField& v);

/// 2D Leray projection of a barotropic (z-independent) field; throws if the
/// input varies in z beyond 1e-12 relative.
HVecField leray2d(const HVecField& vbar);

/// P^v(v) = P_2D A(v) + R(v): only the barotropic part is projected.
HVecField project_velocity(const HVecField& v);

/// P(U) = (P^v(v), T, S).
State project_state(const State& u);

/// 3D Leray-type projection onto the kernel of divergence3, spectral in the
/// horizontal with a per-wavenumber vertical solve. The horizontal-mean
/// vertical velocity is removed (rigid lids force it to vanish).
Vec3Field project_divfree3(const Vec3Field& u);

/// Spectral max-norm of the horizontal divergence of the depth mean.
double barotropic_divergence(const HVecField& v);

}  // namespace lupe

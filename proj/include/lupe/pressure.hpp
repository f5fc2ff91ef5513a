#pragma once

#include "lupe/field.hpp"
#include "lupe/filter.hpp"
#include "lupe/noise.hpp"

namespace lupe {

/// Linear law of state rho = rho0 (1 + beta_T (T - T_r) + beta_S (S - S_r)).
ScalarField density(const ScalarField& T, const ScalarField& S, const PhysParams& p);

/// Buoyancy part of the horizontal pressure gradient,
/// (1/rho0) grad_H p_hydro = -g grad_H int_z^0 (beta_T (T-T_r) + beta_S (S-S_r)) dz',
/// vertical accumulation from the surface then spectral horizontal gradient.
/// Unprojected; the caller subtracts the projected total.
HVecField hydrostatic_gradient(const ScalarField& T, const ScalarField& S, const PhysParams& p);

/// Bounded-variation pressure correction of the weak low-pass filtered
/// hypothesis, returned as the projected (1/rho0) P^v grad_H p_weak:
///   P^v[ grad_H int_z^0 ( K*[u_S . grad w~] - 1/2 div(a^K grad w~) ) dz' ],
/// with w~ = w(v*) + w_s and w_s = w(v_s).
HVecField weak_pressure_gradient(const HVecField& v_star, const NoiseModel& model,
                                 const FilterKernel& K, const PhysParams& p);

/// Martingale pressure forcing for one noise increment, returned as the
/// right-hand-side term -(1/rho0) P grad_H dp_sigma:
///   P^v[ grad_H int_z^0 ( K*[sigma dW . grad w~] + A^v(sigma^w dW) ) dz' ],
/// where A^v uses a homogeneous Dirichlet vertical closure (the vertical
/// noise vanishes on the lids).
HVecField martingale_pressure_forcing(const HVecField& v_star, const NoiseModel& model,
                                      const FilterKernel& K, const NoiseIncrement& inc,
                                      const PhysParams& p);

}  // namespace lupe

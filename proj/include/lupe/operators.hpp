#pragma once

#include "lupe/field.hpp"
#include "lupe/vertical.hpp"

namespace lupe {

/// Anisotropic diffusion coefficients, A = -mu (dxx+dyy) - nu dzz.
struct DiffusionParams {
    double mu = 0;
    double nu = 0;
    double robin_alpha = 0;  // Robin coefficient for the temperature top face
};

/// Diagnostic vertical velocity w(v) = int_z^0 div_H v dz', evaluated at
/// cell centers by midpoint accumulation from the surface. w vanishes at the
/// top face by construction; the bottom residual is w(-h) = full column
/// integral of the horizontal divergence.
ScalarField vertical_velocity(const HVecField& v);

/// max_p |w(-h)| over horizontal points.
double w_bottom_residual(const HVecField& v);

/// Advection B(v*, q) = (v*.grad_H) q + w(v*) dz q, with a ghost closure for
/// the vertical derivative of q. The vertical velocity may be supplied to
/// amortize its computation across components.
ScalarField advect(const HVecField& v_star, const ScalarField& q, const vertical::Closure& qc);
ScalarField advect(const HVecField& v_star, const ScalarField& w, const ScalarField& q,
                   const vertical::Closure& qc);
HVecField advect(const HVecField& v_star, const HVecField& q);

/// Full 3D advection u . grad q with a closure-aware vertical derivative.
ScalarField advect3(const Vec3Field& u, const ScalarField& q, const vertical::Closure& qc);

/// A q = -mu lap_H q - nu dzz q with ghost closures; positive semidefinite,
/// i.e. (A q, q)_H >= 0.
ScalarField diffuse(const DiffusionParams& p, const ScalarField& q, const vertical::Closure& c);
HVecField diffuse(const DiffusionParams& p, const HVecField& q, const vertical::Closure& c);

/// Coriolis rotation Gamma((a b)^T) = f (-b a)^T.
HVecField coriolis(const HVecField& v, double f);

/// 3D gradient with the generic (closure-free) vertical stencil. This is the
/// gradient shared by every stochastic term, so that the discrete
/// fluctuation-dissipation identity holds exactly.
Vec3Field grad3(const ScalarField& q);

/// div F = dx Fx + dy Fy + Dz Fz with the generic vertical stencil.
ScalarField divergence3(const Vec3Field& f);

/// Negative adjoint of grad3: (div_adj F, q) = -(F, grad3 q) exactly.
ScalarField div_adj(const Vec3Field& f);

/// Stochastic (covariation) diffusion 1/2 div(a grad q), assembled as
/// 1/2 div_adj(a . grad3 q).
ScalarField stochastic_diffusion(const SymTensorField& a, const ScalarField& q);

}  // namespace lupe

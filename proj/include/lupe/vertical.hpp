#pragma once

#include <vector>

#include "lupe/field.hpp"
#include "lupe/grid.hpp"

namespace lupe::vertical {

/// Vertical boundary treatment for derivative/diffusion stencils,
/// realized through one ghost layer on each side.
enum class BC { neumann, dirichlet, robin };

struct Closure {
    BC top = BC::neumann;
    BC bottom = BC::neumann;
    double robin_ratio = 0.0;  // alpha/nu, used when a side is robin
};

inline Closure velocity_closure() { return {BC::neumann, BC::dirichlet, 0.0}; }
inline Closure temperature_closure(double alpha_over_nu) { return {BC::robin, BC::neumann, alpha_over_nu}; }
inline Closure salinity_closure() { return {BC::neumann, BC::neumann, 0.0}; }
inline Closure noise_h_closure() { return {BC::neumann, BC::neumann, 0.0}; }
inline Closure noise_w_closure() { return {BC::dirichlet, BC::dirichlet, 0.0}; }

/// Generic d/dz at cell centers: centered interior, second-order one-sided
/// at the boundary rows. This is the stencil shared by the noise-transport
/// and quadratic-variation terms.
void dz(const Grid& g, const double* in, double* out);

/// Transpose of dz with respect to the plain (unweighted) sum.
void dz_transpose(const Grid& g, const double* in, double* out);

/// Ghost-based centered d/dz under a physical closure.
void dz_closure(const Grid& g, const double* in, double* out, const Closure& c);

/// Ghost-based d2/dz2 under a physical closure.
void d2z_closure(const Grid& g, const double* in, double* out, const Closure& c);

/// Midpoint accumulation of integrand samples from the surface:
/// out[k] = integral over [z_center_k, 0] (half of own cell + cells above).
void integrate_from_surface(const Grid& g, const double* in, double* out);

/// Full-column midpoint integral per horizontal point (nx*ny outputs).
void column_integral(const Grid& g, const double* in, double* out);

/// Depth mean per horizontal point (nx*ny outputs).
void depth_mean(const Grid& g, const double* in, double* out);

/// Solves (I + coeff * (-d2z_closure)) x = rhs column-by-column
/// (Thomas algorithm); coeff = dt * nu for implicit vertical diffusion.
void solve_implicit_diffusion(const Grid& g, double coeff, const Closure& c,
                              const double* rhs, double* out);

ScalarField dz(const ScalarField& f);
ScalarField dz_closure(const ScalarField& f, const Closure& c);

}  // namespace lupe::vertical

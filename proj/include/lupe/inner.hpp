#pragma once

#include "lupe/field.hpp"

namespace lupe {

/// Cell-volume-weighted L2 inner product of scalar fields.
double ip_L2(const ScalarField& f, const ScalarField& g);

/// Discrete gradient inner product: spectral horizontal derivatives plus
/// interior-face vertical differences (no boundary-face contribution; the
/// Robin surface term is accounted for separately).
double ip_grad(const ScalarField& f, const ScalarField& g);

/// Top-face (Gamma_u) surface inner product, area-weighted, using the
/// top cell-center trace.
double ip_surface_top(const ScalarField& f, const ScalarField& g);

double ip_L2(const HVecField& f, const HVecField& g);
double ip_grad(const HVecField& f, const HVecField& g);
double ip_L2(const Vec3Field& f, const Vec3Field& g);

/// (U, U')_H = (v, v')_{H1} + (T, T')_{H2} + (S, S')_{H3}.
double inner_H(const State& a, const State& b);

/// (U, U')_V: gradient inner products per component; the temperature
/// component carries the Robin surface term (alpha_T/nu_T)(T, T')_{Gamma_u}.
double inner_V(const State& a, const State& b, const PhysParams& p);

double norm_H(const State& a);
double norm_V(const State& a, const PhysParams& p);

double norm_L2(const ScalarField& f);
double norm_L2(const HVecField& f);
double norm_L2(const Vec3Field& f);
double norm_L4(const HVecField& f);  // (int |v|^4 dV)^{1/4}
double max_abs(const ScalarField& f);

}  // namespace lupe

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lupe/field.hpp"

namespace lupe {

/// One noise eigenmode, built from a trigonometric potential so that the
/// discrete divergence vanishes identically.
struct ModeSpec {
    enum class Kind { potential, bhn_streamfunction };
    Kind kind = Kind::bhn_streamfunction;
    int kx = 0, ky = 0;  // integer horizontal wavenumbers
    int m = 1;           // vertical index (potential modes)
    double amplitude = 0;
    double phase = 0;
    char component = 'y';  // vector-potential component: 'x', 'y' or 'z'

    std::string name() const;
};

/// Finite-mode transport noise sigma_t W_t = sum_k beta^k phi_k, with its
/// variance tensor a = Upsilon sum_k phi_k phi_k^T and Ito-Stokes drift
/// u_S = 1/2 div a (divergence-free after projection).
struct NoiseModel {
    Grid grid;
    std::vector<ModeSpec> specs;
    std::vector<Vec3Field> modes;  // phi_k at cell centers
    double upsilon = 0;
    bool bhn = false;
    std::uint64_t rng_seed = 0;
    SymTensorField a;
    Vec3Field u_s;
    double u_s_div_pre = 0;  // max |div u_S| before projection, reported

    bool active() const { return upsilon > 0 && !modes.empty(); }
};

/// One sampled noise increment sigma dW = sqrt(Upsilon) sum_k dbeta^k phi_k.
struct NoiseIncrement {
    Vec3Field sigma_dW;
    double dt = 0;
    std::vector<double> gaussians;  // the dbeta^k draws, N(0, dt)
};

/// Builds the modes (discrete curl of trigonometric vector potentials),
/// validates band limits and the BHN structure, computes a and u_S.
NoiseModel build_modes(const std::vector<ModeSpec>& specs, const Grid& grid, double upsilon,
                       bool bhn, std::uint64_t seed);

/// Pointwise a = Upsilon sum_k phi_k phi_k^T.
SymTensorField variance_tensor(const NoiseModel& model);

/// Unprojected drift (u_S)_i = 1/2 sum_j d_j a_ij.
Vec3Field ito_stokes_drift(const SymTensorField& a);

/// Projected (divergence-free) Ito-Stokes drift of a built model.
Vec3Field ito_stokes(const NoiseModel& model);

/// Samples dbeta^k ~ N(0, dt) i.i.d. from a splittable stream keyed by
/// (rng_seed, step_index); reproducible for equal keys.
NoiseIncrement sample_increment(const NoiseModel& model, double dt, std::uint64_t step_index);

/// Vertical noise component of one mode evaluated on a boundary face
/// (face_k = 0 for the bottom, nz for the top); used to verify that
/// sigma^w vanishes on the lids.
std::vector<double> mode_wz_on_face(const ModeSpec& spec, const Grid& grid, int face_k);

/// Deterministic per-(seed, stream) key mixing, used for ensemble members.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace lupe

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lupe/field.hpp"
#include "lupe/filter.hpp"
#include "lupe/noise.hpp"

namespace lupe {

/// Hydrostatic closure variants.
enum class HydroClosure { deterministic, strong, weak_filtered };

enum class VerticalScheme { explicit_scheme, implicit_scheme };

struct GridSpec {
    int nx = 16, ny = 16, nz = 8;
    double Lx = 1, Ly = 1, h = 1;
};

/// Named initial-condition presets.
struct InitPreset {
    std::string name = "rest-stratified";
    double velocity = 0.0;       // jet amplitude (m/s)
    double stratification = 1.0; // top-to-bottom temperature contrast
    int mode = 1;                // vertical mode index (baroclinic preset)
};

struct SimConfig {
    GridSpec grid;
    double dt = 1e-3;
    double t_end = 0.0;
    int output_every = 1;
    HydroClosure closure = HydroClosure::deterministic;
    FilterKernel kernel;
    double upsilon = 0.0;
    bool bhn = false;
    std::vector<ModeSpec> modes;
    PhysParams phys;
    double tol_div = 1e-9;
    VerticalScheme vdiff = VerticalScheme::implicit_scheme;
    std::uint64_t seed = 0;
    InitPreset init;

    void validate() const;  // ranges, stability bound, kernel/phys validity
};

/// A state-increment (same shape as the prognostic variables).
struct Increment {
    HVecField v;
    ScalarField T, S;

    Increment() = default;
    explicit Increment(const Grid& g) : v(g), T(g), S(g) {}
    Increment& operator+=(const Increment& o) { v += o.v; T += o.T; S += o.S; return *this; }
    Increment& operator-=(const Increment& o) { v -= o.v; T -= o.T; S -= o.S; return *this; }
    Increment& operator*=(double c) { v *= c; T *= c; S *= c; return *this; }
};

/// Raised when a field goes non-finite; carries the offending step.
struct BlowUpError : std::runtime_error {
    long step;
    explicit BlowUpError(long s)
        : std::runtime_error("non-finite field value at step " + std::to_string(s)), step(s) {}
};

/// Drift correction F_sigma(U*) = P[ B(U*,U_S) - 1/2 div(a grad U_S) + A U_S
/// + Gamma U_S - 1/2 div(a grad U*) ]; time-independent modes make d_t U_S = 0.
Increment f_sigma(const State& u, const NoiseModel& model, const PhysParams& phys);

/// Noise increment G_sigma(U*) dW = P[ -(sigma dW . grad) U* - (sigma dW . grad) U_S
/// - A(sigma^H dW) - Gamma(sigma^H dW) ]; T and S receive only their
/// transport-noise parts.
Increment g_sigma(const State& u, const NoiseModel& model, const NoiseIncrement& inc,
                  const PhysParams& phys);

/// Grid and model construction from a config.
Grid make_grid(const SimConfig& cfg);
NoiseModel build_model(const SimConfig& cfg, const Grid& grid);
State initial_state(const SimConfig& cfg, const Grid& grid);

/// One Euler-Maruyama step with an externally supplied noise increment
/// (pass nullptr for the zero-noise path). Re-projects and asserts the
/// barotropic divergence bound.
State step_with_increment(const State& u, const SimConfig& cfg, const NoiseModel& model,
                          const NoiseIncrement* inc);

/// One step, sampling the increment from (seed, step_index).
State step(const State& u, const SimConfig& cfg, const NoiseModel& model);

struct RunResult {
    State final_state;
    long steps_taken = 0;
};

/// Advances from the configured initial conditions to t_end. The observer,
/// when given, sees every state including the initial one.
RunResult run(const SimConfig& cfg, const std::function<void(const State&)>& observer = {});

}  // namespace lupe

#pragma once

#include <string>
#include <vector>

#include "lupe/field.hpp"
#include "lupe/filter.hpp"
#include "lupe/noise.hpp"
#include "lupe/stepper.hpp"

namespace lupe {

/// Monitored quantities for one output step. A negative regime entry is the
/// NaN-guarded sentinel for a degenerate (unsheared or unstratified) field.
struct DiagnosticsRecord {
    double t = 0;
    double norm_H = 0;          // ||U||_H
    double norm_V = 0;          // ||U||_V
    double barotropic_V = 0;    // ||vbar||_V
    double dzv_H = 0;           // ||dz v||_(L2)
    double dzv_V = 0;           // ||dz v||_(grad)
    double baroclinic_L4 = 0;   // ||vtilde||_{L4}
    double cross_term = 0;      // int |vtilde|^2 |grad vtilde|^2
    double div_barotropic = 0;  // spectral max-norm of div_H vbar
    double w_bottom = 0;        // max |w(-h)|
    double fd_residual = 0;     // fluctuation-dissipation residual (relative)
    double alpha2_over_Ri = 0;  // alpha^2 / Ri (median), or -1 sentinel
    double noise_shear = 0;     // Upsilon * max |dz phi^H|^2
    double energy = 0;          // 1/2 ||U||_H^2
    double energy_rate = 0;     // (E_n - E_{n-1}) / dt, 0 on the first record

    static const std::vector<std::string>& field_names();
    std::vector<double> values() const;
};

/// Norms and structural residuals of a state (no noise-dependent entries).
DiagnosticsRecord estimate_quantities(const State& u, const PhysParams& p);

/// Relative residual of the backscatter/diffusion cancellation
///   r = [ sum_k Upsilon ||(K*phi_k).grad q||^2 + 2 (1/2 div(a^K grad q), q) ] / normalizer,
/// with normalizer = sum_k Upsilon ||(K*phi_k).grad q||^2 (0 residual when the
/// noise is inactive). Pass an identity kernel for the unfiltered identity.
double fd_balance(const ScalarField& q, const NoiseModel& model, const FilterKernel& K);

/// Regime indicators: alpha^2/Ri with alpha = h/L and median Richardson
/// number Ri = N^2/(dz v)^2, and the stochastic shear Upsilon*max|dz phi^H|^2.
/// Degenerate shear or stratification is reported through `flagged` and a
/// -1 sentinel ratio rather than NaN.
struct RegimeIndicator {
    double alpha2_over_Ri = 0;
    double noise_shear = 0;
    bool flagged = false;
};
RegimeIndicator regime_indicator(const State& u, const NoiseModel& model, const PhysParams& p);

/// One row of the vanishing-noise deviation table.
struct ConvergenceRow {
    double upsilon = 0;
    double rms_sup_deviation = 0;
    int members_used = 0;
    int members_blown_up = 0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double fitted_exponent = 0;  // slope of log(deviation) vs log(Upsilon)
};

/// Ensemble experiment: for each Upsilon, RMS over members of
/// sup_{t<=T} ||U^Upsilon - U^0||_H against the zero-noise trajectory,
/// with common random numbers across Upsilon levels. Members that blow up
/// are excluded and counted. Honors the LUPE_THREADS environment variable.
ConvergenceTable noise_convergence_experiment(const SimConfig& cfg,
                                              const std::vector<double>& upsilon_list,
                                              int n_ensemble);

}  // namespace lupe

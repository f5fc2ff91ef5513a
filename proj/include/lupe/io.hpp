#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lupe/diagnostics.hpp"
#include "lupe/stepper.hpp"

namespace lupe {

/// Parses a sectioned key = value run configuration:
///   [grid] nx, ny, nz, Lx, Ly, h
///   [physics] f, g, rho0, beta_T, beta_S, T_r, S_r, mu_v, nu_v, mu_T, nu_T,
///             mu_S, nu_S, alpha_T  (SI units)
///   [noise] upsilon, bhn, mode = kind,kx,ky,m,amplitude,phase,component  (repeatable)
///   [closure] variant = deterministic|strong|weak-filtered; kernel; length_scale;
///             cutoff; horizontal_only
///   [time] dt, t_end, output_every
///   [init] preset, velocity, stratification, mode
///   [seed] seed
/// Unknown sections or keys are rejected. The result is validated, the noise
/// band limit enforced, and BHN conflicts reported naming the offending mode.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

/// Binary snapshot: magic "LUPESNAP", format version (u32 LE), grid
/// dimensions and extents, time, step index, then the named arrays v*_x,
/// v*_y, T, S and the diagnosed w as little-endian doubles, x-fastest.
/// Round trips are bitwise; magic/version mismatches and truncation throw.
void write_snapshot(const std::string& path, const State& u);
State read_snapshot(const std::string& path);

/// CSV diagnostics writer: header row naming every record field, then one
/// row per record, doubles formatted with %.17g (value-preserving).
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);

/// Deviation table of the vanishing-noise experiment as CSV.
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

}  // namespace lupe

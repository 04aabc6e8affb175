#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zakharov/config.hpp"
#include "zakharov/flow.hpp"
#include "zakharov/resonance.hpp"
#include "zakharov/stats.hpp"
#include "zakharov/symplectic.hpp"

namespace zakharov {

enum class StudyKind { truncation_rate, dt_convergence, symplectic_sweep, nonsqueezing_probe, gwp_demo };

struct StudySpec {
  StudyKind kind = StudyKind::truncation_rate;
  SimConfig config;
};

/// Random mean-zero state on |k| <= band, scaled to phase_space_norm == norm.
/// profile "gaussian": amplitudes e^{-(2k/band)^2}; "power": <k>^{-decay}.
ZakharovState random_state(int grid_size, int band, double norm, const std::string& profile, double decay,
                           std::uint64_t seed, std::uint64_t index = 0);

/// random_state driven by the data_* keys of cfg.
ZakharovState initial_state(const SimConfig& cfg, std::uint64_t index = 0);

// --- truncation rate -------------------------------------------------------------

struct TruncationReport {
  std::vector<int> Ns;
  std::vector<double> errors;  ///< E(N) = max over sample times of ||Z - Z^N||_H
  std::optional<FitResult> fit;
  double self_error = 0.0;     ///< ||Z_dt - Z_{dt/2}|| at t, the integrator floor
  bool plateau = false;        ///< two largest N within 10x of self_error
  bool nonincreasing = false;  ///< E(N_{i+1}) <= 1.1 E(N_i)
  double t = 0.0;
  int sample_times = 32;
};

/// Uses cfg.T as the horizon t, cfg.grid_size as the reference band and cfg.ns.
TruncationReport truncation_rate_study(const StudySpec& spec);

// --- dt convergence ---------------------------------------------------------------

struct ConvergenceReport {
  std::vector<double> dts;
  std::vector<double> errors;
  double reference_dt = 0.0;
  std::optional<FitResult> fit;  ///< skipped when every error is round-off
};

ConvergenceReport dt_convergence_study(const StudySpec& spec);

/// ||picard_iterate(z0) - stepper(z0)||_H over the Picard window, stepper at dt.
double picard_crosscheck(const ZakharovState& z0, const PicardSettings& settings, const PhysicalConstants& c,
                         double dt);

// --- symplectic sweep -------------------------------------------------------------

/// check_symplectic on Z^N(t) with N = trunc_N, t = T, pairs and fd_step from cfg.
SymplecticReport symplectic_sweep(const StudySpec& spec);

/// Flow map of the hybrid flow over t (or the full flow when N is empty).
FlowMap stepper_flow(double t, double dt, std::optional<int> N, const PhysicalConstants& c, bool nonlinear = true);

// --- nonsqueezing probe -------------------------------------------------------------

struct ModeRadius {
  int k = 0;
  double radius = 0.0;  ///< r_k(T), in units where a single-mode sphere of radius R has r = R
  double ratio = 0.0;   ///< r_k / R
  std::array<Complex, 3> center{};
};

struct NonsqueezingReport {
  double R = 0.0;
  double T = 0.0;
  int samples = 0;
  std::vector<ModeRadius> modes;
  double min_ratio = 0.0;
};

/// Perturbs u of the base state (initial_state, or zero when data_norm = 0)
/// on the sphere of radius cfg.radius, supported on cfg.probe_modes, and
/// measures the enclosing fixed-mode radius of the images at time cfg.T.
NonsqueezingReport nonsqueezing_probe(const StudySpec& spec);

/// Smallest max_j |p_j - eta| (fixed_mode_abs metric at mode k) over the
/// center search: the sample mean, then shrinking 5x5x5 grids.
ModeRadius enclosing_radius(const std::vector<std::array<Complex, 3>>& points, int k);

// --- gwp demo -------------------------------------------------------------------------

struct GwpReport {
  std::vector<Interval> intervals;
  std::vector<double> boundary_mass;
  double mass0 = 0.0;
  double wave = 0.0;
  double max_mass_drift = 0.0;  ///< relative, over boundaries
  double count_in_window = 0.0; ///< intervals per mass window c_step/mass
  double expected_count = 0.0;  ///< wave_norm / mass
  bool count_checked = false;   ///< wave_norm >= max(4 mass, 1)
  bool count_ok = true;
  bool passed = true;
};

GwpReport gwp_demo(const StudySpec& spec);

// --- orchestration ------------------------------------------------------------------

struct StudyOutcome {
  bool passed = true;
  std::string summary;               ///< one line
  std::vector<std::string> outputs;  ///< files written, relative to the out dir
};

/// Commands: simulate, truncate, conserve, symplectic, resonance,
/// bilinear-scan, nonsqueeze, gwp-demo, convergence. Writes manifest.json and
/// the command's outputs into out_dir.
StudyOutcome run_command(const std::string& command, const SimConfig& cfg, const std::filesystem::path& out_dir);

const std::vector<std::string>& command_names();

/// Comma-separated, header row, '.' decimal, %.17g doubles.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace zakharov

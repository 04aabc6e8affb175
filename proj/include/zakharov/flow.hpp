#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zakharov/propagators.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

enum class Scheme { strang_splitting, picard_oracle };

struct SchemeSpec {
  Scheme scheme = Scheme::strang_splitting;
  double dt = 1e-3;
  bool dealias = true;
  bool nonlinear = true;
  int sample_stride = 1;  ///< record every stride-th step (the final state is always recorded)
  bool keep_states = true;
  PicardSettings picard;

  void validate() const;
};

struct ModeSample {
  double u = 0.0;     ///< |u_hat_k|
  double n = 0.0;     ///< |n_hat_k|
  double ndot = 0.0;  ///< |ndot_hat_k|
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<ZakharovState> states;  ///< empty unless SchemeSpec::keep_states
  std::vector<double> mass_series;
  std::vector<double> hamiltonian_series;
  std::vector<int> probe_modes;
  std::vector<std::vector<ModeSample>> probe_series;  ///< [sample][probe]

  const ZakharovState& final_state() const { return last_; }

  void append(const ZakharovState& z, double mass, double energy, bool keep_state);

 private:
  ZakharovState last_;
};

/// Raised when a step produces a non-finite coefficient.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}
  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

/// One Strang step of the full system. The kick is collocated on the
/// (2K+1)-point grid, which makes it the exact flow of a discrete cubic
/// energy: mass and the symplectic form are preserved to round-off.
ZakharovState step_full(const ZakharovState& z, double dt, const PhysicalConstants& c, bool nonlinear = true);

/// Strang step of the hybrid flow: kick on |k| <= N only, free flow elsewhere.
ZakharovState step_truncated(const ZakharovState& z, double dt, int N, const PhysicalConstants& c,
                             bool nonlinear = true);

/// Strang step that keeps spatial means of n, ndot (the mean of n drifts
/// linearly and enters the phase of u). Used to check the mean-zero reduction.
ZakharovState step_with_mean(const ZakharovState& z, double dt, const PhysicalConstants& c);

TrajectoryRecord evolve(const ZakharovState& z0, double T, const SchemeSpec& spec, const PhysicalConstants& c,
                        const std::vector<int>& probes = {});

TrajectoryRecord evolve_truncated(const ZakharovState& z0, double T, int N, const SchemeSpec& spec,
                                  const PhysicalConstants& c, const std::vector<int>& probes = {});

/// Final state only, for data with nonzero means.
ZakharovState evolve_with_mean(const ZakharovState& z0, double T, double dt, const PhysicalConstants& c);

/// Advances by T with ceil(T/dt) equal steps. No recording.
ZakharovState advance(const ZakharovState& z, double T, double dt, const PhysicalConstants& c,
                      std::optional<int> truncation = std::nullopt, bool nonlinear = true);

/// int |u|^2 dx
double mass(const ZakharovState& z);

/// int alpha|u_x|^2 + n^2/2 + beta^{-2}|d_x^{-1} ndot|^2/2 + n|u|^2 dx
double hamiltonian(const ZakharovState& z, const PhysicalConstants& c);

/// Same quadratic part; cubic term int P_N n |P_N u|^2.
double hamiltonian_truncated(const ZakharovState& z, int N, const PhysicalConstants& c);

/// The energy the stepper conserves: same quadratic part, cubic term by the
/// (2N+1)-point rule the kick uses. Differs from hamiltonian_truncated by aliasing.
double hamiltonian_collocated(const ZakharovState& z, int N, const PhysicalConstants& c);

struct Interval {
  double start = 0.0;
  double end = 0.0;
};

/// Uniform partition of [0,T] with local length
/// tau = c_step * min(1, 1/mass, 1/wave_norm).
std::vector<Interval> gwp_schedule(const ZakharovState& z0, double T, const PhysicalConstants& c,
                                   double c_step = 0.1);

/// Local length used by gwp_schedule.
double gwp_local_length(const ZakharovState& z0, double c_step);

/// One JSON object per sample: t, mass, hamiltonian, and |z_hat_k| per probe.
void write_jsonl(std::ostream& os, const TrajectoryRecord& record);

}  // namespace zakharov

#pragma once

#include <cstdint>
#include <vector>

#include "zakharov/propagators.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

enum class TripleKind {
  schrodinger,  ///< k0 = k1 + k2, tau0 = tau1 + tau2
  wave,         ///< k0 = k1 - k2, tau0 = tau1 - tau2
};

struct FrequencyTriple {
  int k0 = 0, k1 = 0, k2 = 0;
  TripleKind kind = TripleKind::schrodinger;
  double tau0 = 0.0, tau1 = 0.0, tau2 = 0.0;

  /// Throws std::invalid_argument if a constraint fails.
  void validate() const;
};

struct ModulationBound {
  double lhs_max = 0.0;   ///< largest of the three modulations
  double rhs_bound = 0.0;
  double residual = 0.0;  ///< the algebraic identity, 0 up to round-off
};

/// Schrodinger kind: lhs = max(|tau0-a k0^2|, |tau1-a k1^2|, ||tau2|-b|k2||),
///   rhs = a|k2||k0+k1-(b/a)S1|, S1 = sgn(tau2 k2).
/// Wave kind: lhs = max(||tau0|-b|k0||, |tau1-a k1^2|, |tau2-a k2^2|),
///   rhs = a|k0||k1+k2-(b/a)S2|, S2 = sgn(tau0 k0).
ModulationBound modulation_bound(const FrequencyTriple& trip, const PhysicalConstants& c);

/// Long-double variant used by the exhaustive sweep.
struct ModulationBoundL {
  long double lhs_max = 0, rhs_bound = 0, residual = 0;
};
ModulationBoundL modulation_bound_ld(int k0, int k1, int k2, TripleKind kind, long double tau1, long double tau2,
                                     long double alpha, long double beta);

enum class TripleClass { resonant, nonresonant };

/// Resonant iff max(|ki|,1)/max(|kj|,1) <= c_res for every pair.
TripleClass classify_triple(int k0, int k1, int k2, double c_res = 2.0);

struct SweepReport {
  TripleKind kind = TripleKind::schrodinger;
  long long triples = 0;
  long long evaluations = 0;
  long double max_residual = 0;
  long double min_slack = 0;  ///< min over the sweep of lhs_max - rhs_bound/3
  long long violations = 0;   ///< residual > tol or lhs_max < rhs_bound/3
};

/// All triples with |ki| <= kmax obeying the kind's constraint (and the
/// required nonzero frequency), `samples` random tau assignments each.
SweepReport resonance_sweep(TripleKind kind, int kmax, int samples, const PhysicalConstants& c, std::uint64_t seed,
                            double residual_tol = 1e-10, int jobs = 1);

// --- space-time fields ---------------------------------------------------------

enum class Dispersion { schrodinger, wave };

/// Sparse space-time Fourier data: each row holds f(k, tau_j) for
/// tau_j = j * dtau, j = first .. first + values.size() - 1.
struct SpaceTimeRow {
  int k = 0;
  long first = 0;
  std::vector<Complex> values;
};

struct SpaceTimeField {
  Dispersion flavor = Dispersion::schrodinger;
  double dtau = 0.25;
  PhysicalConstants constants;
  std::vector<SpaceTimeRow> rows;
};

/// <tau - a k^2> or <|tau| - b|k|>
double modulation_weight(const SpaceTimeField& f, int k, double tau);

/// (sum_k sum_j dtau <k>^{2s} <mod>^{2b} |f|^2)^{1/2}
double xsb_norm(const SpaceTimeField& f, double s, double b);

/// (sum_k <k>^{2s} (sum_j dtau <mod>^{-gamma} |f|)^2)^{1/2}
double l2l1_norm(const SpaceTimeField& f, double s, double gamma);

/// X^{s,1/2} + l^2 L^1
double y_norm(const SpaceTimeField& f, double s);

/// X^{s,-1/2} + l^2 L^1 with weight <mod>^{-1}
double z_norm(const SpaceTimeField& f, double s);

// --- bilinear scan -------------------------------------------------------------

struct BilinearScanSpec {
  std::vector<int> Ns{4, 8, 16, 32, 64};
  int samples = 200;  ///< per N_max
  double c_res = 2.0;
  double dtau = 0.25;
  double half_window = 64.0;
  double s_u = 0.0, s_v = -0.5, s_out = 0.0;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct ScanRow {
  int N0 = 0, N1 = 0, N2 = 0, N_max = 0;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  int sample = 0;
};

struct BilinearScanResult {
  std::vector<ScanRow> rows;
  std::vector<int> n_max;
  std::vector<double> max_ratio;  ///< per N_max
  double slope = 0.0;             ///< fit of log max_ratio vs log N_max
  double intercept = 0.0;
  double spearman = 0.0;          ///< over all (N_max, ratio) rows
  int rejected = 0;
};

/// Smooth cutoff: 1 on [-1,1], 0 outside [-2,2].
double bump(double t);

/// int e^{i sigma t} bump(t)^power dt, power in {1, 2}.
double bump_transform(double sigma, int power);

BilinearScanResult bilinear_ratio_scan(const BilinearScanSpec& spec, const PhysicalConstants& c);

}  // namespace zakharov

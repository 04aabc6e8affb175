#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace zakharov {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic field on T = R/2piZ stored as Fourier coefficients on the
/// symmetric window k = -K..K.
///
/// Convention: u_hat(k) = int_T e^{-ikx} u(x) dx and
/// u(x) = (1/2pi) sum_k u_hat(k) e^{ikx}.
class FourierField {
 public:
  FourierField() = default;
  FourierField(int grid_size, bool is_real);

  static FourierField zero(int grid_size, bool is_real) { return {grid_size, is_real}; }

  int grid_size() const { return grid_size_; }
  bool is_real() const { return is_real_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k + grid_size_)]; }
  const Complex& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k + grid_size_)]; }

  /// Coefficient k, or 0 outside the window.
  Complex at(int k) const;

  /// Sets mode k and, for real fields, mode -k to the conjugate.
  void set_mode(int k, Complex value);

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  bool is_mean_zero() const { return (*this)[0] == Complex{}; }

  /// Replaces c_k, c_{-k} by their conjugate-symmetric part (no-op for complex fields).
  void enforce_realness();

  /// Max over k of |c_{-k} - conj(c_k)|; 0 for an exactly real field.
  double realness_defect() const;

  FourierField& operator+=(const FourierField& other);
  FourierField& operator-=(const FourierField& other);
  FourierField& operator*=(double scale);

 private:
  int grid_size_ = 0;
  bool is_real_ = false;
  std::vector<Complex> coeffs_;
};

FourierField operator+(FourierField a, const FourierField& b);
FourierField operator-(FourierField a, const FourierField& b);
FourierField operator*(double s, FourierField a);

/// Phase-space point (u, n, dn/dt) in L^2 x H^{-1/2} x H^{-3/2}.
struct ZakharovState {
  FourierField u;
  FourierField n;
  FourierField ndot;
  double time = 0.0;

  static ZakharovState zero(int grid_size);

  int grid_size() const { return u.grid_size(); }
  bool is_mean_zero() const { return n.is_mean_zero() && ndot.is_mean_zero(); }

  /// Throws std::invalid_argument if the wave fields are not real or grids differ.
  void validate() const;
};

/// Tangent vectors share the state's shape.
using TangentVector = ZakharovState;

ZakharovState operator+(ZakharovState a, const ZakharovState& b);
ZakharovState operator-(ZakharovState a, const ZakharovState& b);
ZakharovState operator*(double s, ZakharovState a);

// --- projections -----------------------------------------------------------

enum class BandKind {
  annulus,  ///< N <= |k| < 2N
  low,      ///< |k| <= N
  high,     ///< |k| >= N
};

struct Band {
  BandKind kind = BandKind::low;
  int N = 0;

  bool contains(int k) const;
};

FourierField project(const FourierField& field, Band band);
ZakharovState project(const ZakharovState& state, Band band);

// --- norms -----------------------------------------------------------------

/// <k> = (1 + k^2)^{1/2}
inline double japanese_bracket(double k) { return std::sqrt(1.0 + k * k); }

/// (1/sqrt(2pi)) (sum <k>^{2s} |u_hat_k|^2)^{1/2}
double sobolev_norm(const FourierField& field, double s);

/// ||u||_{L^2} + ||n||_{H^{-1/2}} + ||ndot||_{H^{-3/2}}
double phase_space_norm(const ZakharovState& state);

/// (||n||^2_{H^{-1/2}} + ||ndot||^2_{H^{-3/2}})^{1/2}
double wave_norm(const ZakharovState& state);

enum class ModeWeight {
  absolute,  ///< |k0|^{-1/2}, |k0|^{-3/2} as printed
  bracket,   ///< <k0>^{-1/2}, <k0>^{-3/2}
};

enum class NormFlavor { sobolev_Hs, phase_space_H, fixed_mode_abs };

struct NormSpec {
  double s = 0.0;
  NormFlavor flavor = NormFlavor::phase_space_H;
  int mode = 1;
  ModeWeight weight = ModeWeight::absolute;
};

/// |u_k0| + |k0|^{-1/2}|n_k0| + |k0|^{-3/2}|ndot_k0|.
/// Throws std::invalid_argument for k0 == 0.
double fixed_mode_abs(const ZakharovState& state, int k0, ModeWeight weight = ModeWeight::absolute);

/// Same weights applied to a mode triple (u_k, n_k, ndot_k).
double fixed_mode_abs(Complex u, Complex n, Complex ndot, int k0,
                      ModeWeight weight = ModeWeight::absolute);

/// Dispatches on spec.flavor. Sobolev flavor measures the u component.
double evaluate_norm(const ZakharovState& state, const NormSpec& spec);

// --- calculus ------------------------------------------------------------

/// u_hat_k -> (ik)^order u_hat_k. Negative orders require a mean-zero field.
FourierField derivative(const FourierField& field, int order);

struct GalileanResult {
  ZakharovState state;
  double c0 = 0.0;  ///< int n_0 dx
  double c1 = 0.0;  ///< int n_1 dx
};

/// Removes the spatial means of n and ndot at t = 0.
GalileanResult galilean_normalize(const ZakharovState& state);

/// Phase theta(t) with u = e^{-i theta} u' for the mean-zero solution u'.
double galilean_phase(double t, double c0, double c1);

/// Maps a mean-zero trajectory point back to the frame with means (c0, c1).
ZakharovState galilean_restore(const ZakharovState& normalized, double c0, double c1);

/// u(x) = (1/2pi) sum_k u_hat_k e^{ikx} evaluated directly at each point.
std::vector<Complex> physical_evaluate(const FourierField& field, std::span<const double> points);

/// Uniform grid values x_j = 2 pi j / m via FFT; m >= 2K+1.
std::vector<Complex> to_grid(const FourierField& field, int m);

/// Coefficients |k| <= K from grid values on m points.
FourierField from_grid(std::span<const Complex> values, int grid_size, bool is_real);

/// Smallest FFT-friendly size >= min_size.
int fft_size_at_least(int min_size);

/// Coefficients of the pointwise product a*b on the window of a, computed on a
/// zero-padded grid of >= 3K+1 points (exact for band-limited inputs).
FourierField dealiased_product(const FourierField& a, const FourierField& b, bool result_real);

/// int_T a(x) b(x) c(x) dx, exact for band-limited inputs.
Complex triple_integral(const FourierField& a, const FourierField& b, const FourierField& c);

// --- serialization -----------------------------------------------------------

/// Text format:
///   # fourier_field grid_size=K is_real=0|1
///   k re im
///   -K <re> <im>
///   ...
void write_field(std::ostream& os, const FourierField& field);
FourierField read_field(std::istream& is);

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zakharov

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "zakharov/propagators.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

/// Im int conj(f) g dx
double schrodinger_pairing(const FourierField& f, const FourierField& g);

/// int f d_x^{-1} g dx for real mean-zero f, g.
double antiderivative_pairing(const FourierField& f, const FourierField& g);

/// Symplectic form on H compatible with the flow:
///   omega(a,b) = 2 Im int conj(a_u) b_u
///              + beta^{-2} int (d^{-1}a_n d^{-1}b_nd - d^{-1}a_nd d^{-1}b_n)
/// Wave components must be mean-zero.
double symplectic_form(const TangentVector& a, const TangentVector& b, const PhysicalConstants& c);

/// Real inner product with omega(a,b) = <a, J b>:
///   2 Re int conj(a_u) b_u + beta^{-2} (1/2pi) Re sum |k|^{-1} conj(a_n) b_n + |k|^{-3} conj(a_nd) b_nd
double inner_product(const TangentVector& a, const TangentVector& b, const PhysicalConstants& c);

/// Multiplication by -i on u; per mode (n, nd) -> (nd/|k|, -|k| n).
TangentVector apply_J(const TangentVector& a);

/// Closed-form right side (u_t, n_t, ndot_t) of the system.
TangentVector explicit_vector_field(const ZakharovState& z, const PhysicalConstants& c);

/// Gradient of hamiltonian() w.r.t. inner_product, by central differences
/// along an inner-product-orthogonal coordinate basis.
TangentVector fd_gradient(const ZakharovState& z, const PhysicalConstants& c, double fd_step);

/// J applied to fd_gradient.
TangentVector hamiltonian_vector_field(const ZakharovState& z, const PhysicalConstants& c, double fd_step);

struct FlowMap {
  std::function<ZakharovState(const ZakharovState&)> apply;
  /// Optional exact tangent map v -> DPhi(z0) v.
  std::function<TangentVector(const ZakharovState&, const TangentVector&)> linearize;
};

FlowMap identity_flow();
FlowMap scaling_flow(double factor);

struct PairDefect {
  int index = 0;
  double omega_before = 0.0;
  double omega_after = 0.0;
  double defect = 0.0;  ///< |omega_after / omega_before - 1|
};

struct SymplecticReport {
  double max_defect = 0.0;
  std::vector<PairDefect> pairs;
};

struct SymplecticCheck {
  int N = 8;
  int pairs = 50;
  double fd_step = 1e-5;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Random tangent vector supported in 0 < |k| <= N (u may use k = 0), unit H norm.
TangentVector random_tangent(int grid_size, int N, std::uint64_t seed, std::uint64_t index);

SymplecticReport check_symplectic(const FlowMap& flow, const ZakharovState& z0, const SymplecticCheck& check,
                                  const PhysicalConstants& c);

/// One JSON object per pair.
void write_jsonl(std::ostream& os, const SymplecticReport& report);

// --- ball / cylinder ----------------------------------------------------------

struct BallSpec {
  ZakharovState center;
  double radius = 1.0;
};

struct CylinderSpec {
  int mode = 1;
  std::array<Complex, 3> eta{};  ///< center in the (u, n, ndot) mode coordinates
  double radius = 1.0;
};

bool ball_contains(const BallSpec& spec, const ZakharovState& z);
bool cylinder_contains(const CylinderSpec& spec, const ZakharovState& z);

}  // namespace zakharov

#pragma once

#include <utility>
#include <vector>

#include "zakharov/spectral.hpp"

namespace zakharov {

struct PhysicalConstants {
  double alpha = 1.0;
  double beta = 0.5;

  /// alpha, beta > 0 and beta/alpha at least 1e-9 away from an integer.
  void validate() const;
};

struct PicardSettings {
  int iterations = 8;
  int quadrature_nodes = 33;
  double window = 1e-2;

  void validate() const;
};

/// u_hat_k -> e^{-i alpha k^2 t} u_hat_k
FourierField free_schrodinger(const FourierField& u, double t, const PhysicalConstants& c);

/// Exact solution of n_tt = beta^2 n_xx. Throws on nonzero means.
std::pair<FourierField, FourierField> free_wave(const FourierField& n, const FourierField& ndot, double t,
                                                const PhysicalConstants& c);

/// Both free flows applied to a state; time advances by t.
ZakharovState free_flow(const ZakharovState& z, double t, const PhysicalConstants& c);

/// conj(u) as a field: coefficient k is conj(u_hat_{-k}).
FourierField conjugate(const FourierField& u);

/// Coefficients of u*n (dealiased).
FourierField schrodinger_nonlinearity(const FourierField& u, const FourierField& n);

/// Coefficients of d_x^2 |u|^2 (dealiased, real, mean zero).
FourierField wave_forcing(const FourierField& u);

/// Picard iterate of the Duhamel maps over [0, settings.window], started
/// from the free evolution. Trapezoid rule on uniform nodes.
ZakharovState picard_iterate(const ZakharovState& z0, const PicardSettings& settings, const PhysicalConstants& c);

/// Endpoint of every iterate 0..settings.iterations.
std::vector<ZakharovState> picard_history(const ZakharovState& z0, const PicardSettings& settings,
                                          const PhysicalConstants& c);

}  // namespace zakharov

#include "zakharov/propagators.hpp"

#include <cmath>
#include <string>

namespace zakharov {

void PhysicalConstants::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const double ratio = beta / alpha;
  if (std::abs(ratio - std::round(ratio)) <= 1e-9)
    throw std::invalid_argument("beta/alpha must not be an integer (got " + std::to_string(ratio) + ")");
}

void PicardSettings::validate() const {
  if (iterations < 0) throw std::invalid_argument("picard iterations must be nonnegative");
  if (quadrature_nodes < 2) throw std::invalid_argument("picard quadrature needs at least 2 nodes");
  if (!(window > 0.0) || window > 1.0) throw std::invalid_argument("picard window must lie in (0, 1]");
}

FourierField free_schrodinger(const FourierField& u, double t, const PhysicalConstants& c) {
  if (t == 0.0) return u;
  FourierField out = u;
  const int K = u.grid_size();
  for (int k = -K; k <= K; ++k) out[k] *= std::polar(1.0, -c.alpha * double(k) * k * t);
  return out;
}

std::pair<FourierField, FourierField> free_wave(const FourierField& n, const FourierField& ndot, double t,
                                                const PhysicalConstants& c) {
  if (!n.is_mean_zero() || !ndot.is_mean_zero())
    throw std::invalid_argument("free_wave requires mean-zero n and ndot");
  if (n.grid_size() != ndot.grid_size()) throw std::invalid_argument("grid size mismatch");
  if (t == 0.0) return {n, ndot};
  FourierField nt = n;
  FourierField dt = ndot;
  const int K = n.grid_size();
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    const double w = c.beta * std::abs(double(k));
    const double cs = std::cos(w * t);
    const double sn = std::sin(w * t);
    nt[k] = cs * n[k] + (sn / w) * ndot[k];
    dt[k] = -w * sn * n[k] + cs * ndot[k];
  }
  return {nt, dt};
}

ZakharovState free_flow(const ZakharovState& z, double t, const PhysicalConstants& c) {
  auto [n, nd] = free_wave(z.n, z.ndot, t, c);
  return {free_schrodinger(z.u, t, c), std::move(n), std::move(nd), z.time + t};
}

FourierField conjugate(const FourierField& u) {
  FourierField out(u.grid_size(), u.is_real());
  const int K = u.grid_size();
  for (int k = -K; k <= K; ++k) out[k] = std::conj(u[-k]);
  return out;
}

FourierField schrodinger_nonlinearity(const FourierField& u, const FourierField& n) {
  return dealiased_product(u, n, false);
}

FourierField wave_forcing(const FourierField& u) {
  return derivative(dealiased_product(u, conjugate(u), true), 2);
}

namespace {

struct NodeValues {
  std::vector<FourierField> u, n, ndot;
};

}  // namespace

std::vector<ZakharovState> picard_history(const ZakharovState& z0, const PicardSettings& settings,
                                          const PhysicalConstants& c) {
  settings.validate();
  z0.validate();
  if (!z0.is_mean_zero()) throw std::invalid_argument("picard_iterate requires mean-zero data");

  const int q = settings.quadrature_nodes;
  const double h = settings.window / (q - 1);
  auto node_time = [&](int m) { return m == q - 1 ? settings.window : h * m; };

  // free evolution at every node
  NodeValues free;
  for (int m = 0; m < q; ++m) {
    const double s = node_time(m);
    free.u.push_back(free_schrodinger(z0.u, s, c));
    auto [n, nd] = free_wave(z0.n, z0.ndot, s, c);
    free.n.push_back(std::move(n));
    free.ndot.push_back(std::move(nd));
  }

  auto endpoint = [&](const NodeValues& v) {
    return ZakharovState{v.u.back(), v.n.back(), v.ndot.back(), z0.time + settings.window};
  };

  std::vector<ZakharovState> history{endpoint(free)};
  NodeValues cur = free;
  for (int it = 0; it < settings.iterations; ++it) {
    std::vector<FourierField> un(q), forcing(q);
    for (int l = 0; l < q; ++l) {
      un[l] = schrodinger_nonlinearity(cur.u[l], cur.n[l]);
      forcing[l] = wave_forcing(cur.u[l]);
      forcing[l] *= c.beta * c.beta;
    }
    NodeValues next = free;
    for (int m = 1; m < q; ++m) {
      const double sm = node_time(m);
      for (int l = 0; l <= m; ++l) {
        const double w = (l == 0 || l == m) ? 0.5 * h : h;
        const double lag = sm - node_time(l);
        FourierField du = free_schrodinger(un[l], lag, c);
        for (std::size_t i = 0; i < du.size(); ++i) next.u[m].coeffs()[i] += Complex(0.0, -w) * du.coeffs()[i];
        auto [dn, dnd] = free_wave(FourierField(forcing[l].grid_size(), true), forcing[l], lag, c);
        next.n[m] += w * dn;
        next.ndot[m] += w * dnd;
      }
    }
    cur = std::move(next);
    history.push_back(endpoint(cur));
  }
  return history;
}

ZakharovState picard_iterate(const ZakharovState& z0, const PicardSettings& settings, const PhysicalConstants& c) {
  return picard_history(z0, settings, c).back();
}

}  // namespace zakharov

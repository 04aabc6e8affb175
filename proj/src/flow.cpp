#include "zakharov/flow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace zakharov {

void SchemeSpec::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!dealias) throw std::invalid_argument("dealias is fixed to true");
  if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
  if (scheme == Scheme::picard_oracle) picard.validate();
}

void TrajectoryRecord::append(const ZakharovState& z, double m, double energy, bool keep_state) {
  times.push_back(z.time);
  mass_series.push_back(m);
  hamiltonian_series.push_back(energy);
  std::vector<ModeSample> row;
  row.reserve(probe_modes.size());
  for (int k : probe_modes) row.push_back({std::abs(z.u.at(k)), std::abs(z.n.at(k)), std::abs(z.ndot.at(k))});
  probe_series.push_back(std::move(row));
  if (keep_state) states.push_back(z);
  last_ = z;
}

namespace {

void check_mean_zero(const ZakharovState& z) {
  if (!z.is_mean_zero()) throw std::invalid_argument("state must be mean-zero (apply galilean_normalize)");
}

// n_hat_0 += h * ndot_hat_0; the free wave symbol degenerates to this at k = 0.
void drift_means(ZakharovState& z, double h) { z.n[0] += h * z.ndot[0]; }

ZakharovState linear_half(const ZakharovState& z, double h, const PhysicalConstants& c) {
  ZakharovState out = z;
  const Complex n0 = z.n[0];
  const Complex nd0 = z.ndot[0];
  FourierField n = z.n;
  FourierField nd = z.ndot;
  n[0] = nd[0] = Complex{};
  auto [nt, ndt] = free_wave(n, nd, h, c);
  out.u = free_schrodinger(z.u, h, c);
  out.n = std::move(nt);
  out.ndot = std::move(ndt);
  out.n[0] = n0;
  out.ndot[0] = nd0;
  drift_means(out, h);
  return out;
}

// Exact flow over dt of the collocated cubic energy on |k| <= N:
// u_j <- u_j e^{-i n_j dt}, ndot <- ndot + dt beta^2 d_x^2 |u|^2 on the
// (2N+1)-point grid. Modes above N are untouched.
void kick(ZakharovState& z, double dt, int N, const PhysicalConstants& c) {
  const int K = z.grid_size();
  N = std::min(N, K);
  if (N <= 0 && z.n[0] == Complex{}) return;
  const int m = 2 * N + 1;

  FourierField uL(N, false), nL(N, true);
  for (int k = -N; k <= N; ++k) {
    uL[k] = z.u[k];
    nL[k] = z.n[k];
  }
  auto ug = to_grid(uL, m);
  const auto ng = to_grid(nL, m);
  std::vector<Complex> dens(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    dens[j] = std::norm(ug[j]);
    ug[j] *= std::polar(1.0, -ng[j].real() * dt);
  }
  const FourierField u_new = from_grid(ug, N, false);
  const FourierField rho = from_grid(dens, N, true);
  const double b2 = c.beta * c.beta;
  for (int k = -N; k <= N; ++k) {
    z.u[k] = u_new[k];
    if (k != 0) z.ndot[k] += dt * b2 * (-double(k) * k) * rho[k];
  }
  z.ndot.enforce_realness();
}

ZakharovState strang(const ZakharovState& z, double dt, int N, const PhysicalConstants& c, bool nonlinear) {
  if (dt == 0.0) return z;
  ZakharovState w = linear_half(z, 0.5 * dt, c);
  if (nonlinear) kick(w, dt, N, c);
  w = linear_half(w, 0.5 * dt, c);
  w.time = z.time + dt;
  return w;
}

bool finite(const ZakharovState& z) {
  for (const FourierField* f : {&z.u, &z.n, &z.ndot})
    for (const Complex& v : f->coeffs())
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ZakharovState picard_step(const ZakharovState& z, double dt, const SchemeSpec& spec, const PhysicalConstants& c) {
  PicardSettings s = spec.picard;
  s.window = dt;
  ZakharovState out = picard_iterate(z, s, c);
  out.time = z.time + dt;
  return out;
}

template <class Step>
TrajectoryRecord run(const ZakharovState& z0, double T, const SchemeSpec& spec, const PhysicalConstants& c,
                     const std::vector<int>& probes, std::optional<int> trunc, Step&& step) {
  if (T < 0.0) throw std::invalid_argument("T must be nonnegative");
  spec.validate();
  c.validate();
  z0.validate();
  check_mean_zero(z0);

  auto energy = [&](const ZakharovState& z) {
    return trunc ? hamiltonian_truncated(z, *trunc, c) : hamiltonian(z, c);
  };

  TrajectoryRecord rec;
  rec.probe_modes = probes;
  rec.append(z0, mass(z0), energy(z0), spec.keep_states);
  if (T == 0.0) return rec;

  const long steps = std::max(1L, static_cast<long>(std::ceil(T / spec.dt - 1e-9)));
  ZakharovState z = z0;
  for (long i = 1; i <= steps; ++i) {
    // fixed dt, final step shortened to land on T
    const double t_next = z0.time + (i == steps ? T : double(i) * spec.dt);
    ZakharovState next = step(z, t_next - z.time);
    next.time = t_next;
    if (!finite(next))
      throw BlowUpError("non-finite coefficient after t = " + std::to_string(z.time), z.time);
    z = std::move(next);
    if (i % spec.sample_stride == 0 || i == steps) rec.append(z, mass(z), energy(z), spec.keep_states);
  }
  return rec;
}

}  // namespace

ZakharovState step_full(const ZakharovState& z, double dt, const PhysicalConstants& c, bool nonlinear) {
  check_mean_zero(z);
  return strang(z, dt, z.grid_size(), c, nonlinear);
}

ZakharovState step_truncated(const ZakharovState& z, double dt, int N, const PhysicalConstants& c,
                             bool nonlinear) {
  check_mean_zero(z);
  if (N < 0) throw std::invalid_argument("truncation N must be nonnegative");
  return strang(z, dt, N, c, nonlinear);
}

ZakharovState step_with_mean(const ZakharovState& z, double dt, const PhysicalConstants& c) {
  return strang(z, dt, z.grid_size(), c, true);
}

TrajectoryRecord evolve(const ZakharovState& z0, double T, const SchemeSpec& spec, const PhysicalConstants& c,
                        const std::vector<int>& probes) {
  return run(z0, T, spec, c, probes, std::nullopt, [&](const ZakharovState& z, double h) {
    if (spec.scheme == Scheme::picard_oracle) return picard_step(z, h, spec, c);
    return strang(z, h, z.grid_size(), c, spec.nonlinear);
  });
}

TrajectoryRecord evolve_truncated(const ZakharovState& z0, double T, int N, const SchemeSpec& spec,
                                  const PhysicalConstants& c, const std::vector<int>& probes) {
  if (N < 0 || N > z0.grid_size()) throw std::invalid_argument("truncation N must satisfy 0 <= N <= grid_size");
  if (spec.scheme != Scheme::strang_splitting)
    throw std::invalid_argument("truncated flow supports only strang_splitting");
  return run(z0, T, spec, c, probes, N,
             [&](const ZakharovState& z, double h) { return strang(z, h, N, c, spec.nonlinear); });
}

ZakharovState evolve_with_mean(const ZakharovState& z0, double T, double dt, const PhysicalConstants& c) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  z0.validate();
  const long steps = std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  const double h = T / steps;
  ZakharovState z = z0;
  for (long i = 0; i < steps; ++i) z = step_with_mean(z, h, c);
  z.time = z0.time + T;
  return z;
}

ZakharovState advance(const ZakharovState& z, double T, double dt, const PhysicalConstants& c,
                      std::optional<int> truncation, bool nonlinear) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  check_mean_zero(z);
  if (T == 0.0) return z;
  const long steps = std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  const double h = T / steps;
  const int N = truncation ? *truncation : z.grid_size();
  ZakharovState w = z;
  for (long i = 0; i < steps; ++i) {
    w = strang(w, h, N, c, nonlinear);
    if (!finite(w)) throw BlowUpError("non-finite coefficient after t = " + std::to_string(w.time - h), w.time - h);
  }
  w.time = z.time + T;
  return w;
}

double mass(const ZakharovState& z) {
  double sum = 0.0;
  for (const Complex& v : z.u.coeffs()) sum += std::norm(v);
  return sum / kTwoPi;
}

namespace {

double quadratic_energy(const ZakharovState& z, const PhysicalConstants& c) {
  if (!z.ndot.is_mean_zero()) throw std::invalid_argument("hamiltonian requires mean-zero ndot");
  const int K = z.grid_size();
  double kinetic = 0.0, potential = 0.0, wave = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double k2 = double(k) * k;
    kinetic += k2 * std::norm(z.u[k]);
    potential += std::norm(z.n[k]);
    if (k != 0) wave += std::norm(z.ndot[k]) / k2;
  }
  return (c.alpha * kinetic + 0.5 * potential + 0.5 * wave / (c.beta * c.beta)) / kTwoPi;
}

}  // namespace

double hamiltonian(const ZakharovState& z, const PhysicalConstants& c) {
  return quadratic_energy(z, c) + triple_integral(z.n, z.u, conjugate(z.u)).real();
}

double hamiltonian_truncated(const ZakharovState& z, int N, const PhysicalConstants& c) {
  const Band low{BandKind::low, N};
  const FourierField uN = project(z.u, low);
  return quadratic_energy(z, c) + triple_integral(project(z.n, low), uN, conjugate(uN)).real();
}

double hamiltonian_collocated(const ZakharovState& z, int N, const PhysicalConstants& c) {
  const int K = z.grid_size();
  N = std::clamp(N, 0, K);
  const int m = 2 * N + 1;
  FourierField uL(N, false), nL(N, true);
  for (int k = -N; k <= N; ++k) {
    uL[k] = z.u[k];
    nL[k] = z.n[k];
  }
  const auto ug = to_grid(uL, m);
  const auto ng = to_grid(nL, m);
  double cubic = 0.0;
  for (int j = 0; j < m; ++j) cubic += ng[j].real() * std::norm(ug[j]);
  return quadratic_energy(z, c) + cubic * kTwoPi / m;
}

double gwp_local_length(const ZakharovState& z0, double c_step) {
  if (!(c_step > 0.0)) throw std::invalid_argument("c_step must be positive");
  const double M = mass(z0);
  const double W = wave_norm(z0);
  double scale = 1.0;
  if (M > 0.0) scale = std::min(scale, 1.0 / M);
  if (W > 0.0) scale = std::min(scale, 1.0 / W);
  return c_step * scale;
}

std::vector<Interval> gwp_schedule(const ZakharovState& z0, double T, const PhysicalConstants& c, double c_step) {
  c.validate();
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const double tau = gwp_local_length(z0, c_step);
  const long m = std::max(1L, static_cast<long>(std::ceil(T / tau - 1e-9)));
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    const double a = T * double(i) / double(m);
    const double b = i + 1 == m ? T : T * double(i + 1) / double(m);
    out.push_back({a, b});
  }
  return out;
}

void write_jsonl(std::ostream& os, const TrajectoryRecord& record) {
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    nlohmann::ordered_json row;
    row["t"] = record.times[i];
    row["mass"] = record.mass_series[i];
    row["hamiltonian"] = record.hamiltonian_series[i];
    nlohmann::ordered_json modes = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < record.probe_modes.size(); ++p) {
      const ModeSample& s = record.probe_series[i][p];
      modes.push_back({{"k", record.probe_modes[p]}, {"u", s.u}, {"n", s.n}, {"ndot", s.ndot}});
    }
    row["modes"] = std::move(modes);
    os << row.dump() << '\n';
  }
}

}  // namespace zakharov

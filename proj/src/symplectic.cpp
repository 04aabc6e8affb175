#include "zakharov/symplectic.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "json.hpp"
#include "zakharov/flow.hpp"
#include "zakharov/parallel.hpp"

namespace zakharov {

namespace {

void require_mean_zero(const TangentVector& a) {
  if (!a.is_mean_zero()) throw std::invalid_argument("tangent wave components must be mean-zero");
}

void require_same_grid(const TangentVector& a, const TangentVector& b) {
  if (a.grid_size() != b.grid_size()) throw std::invalid_argument("grid size mismatch");
}

}  // namespace

double schrodinger_pairing(const FourierField& f, const FourierField& g) {
  if (f.grid_size() != g.grid_size()) throw std::invalid_argument("grid size mismatch");
  Complex sum{};
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::conj(f.coeffs()[i]) * g.coeffs()[i];
  return sum.imag() / kTwoPi;
}

double antiderivative_pairing(const FourierField& f, const FourierField& g) {
  if (f.grid_size() != g.grid_size()) throw std::invalid_argument("grid size mismatch");
  if (!f.is_mean_zero() || !g.is_mean_zero()) throw std::invalid_argument("antiderivative requires mean-zero field");
  const int K = f.grid_size();
  Complex sum{};
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    sum += std::conj(f[k]) * g[k] / Complex(0.0, double(k));
  }
  return sum.real() / kTwoPi;
}

double symplectic_form(const TangentVector& a, const TangentVector& b, const PhysicalConstants& c) {
  require_same_grid(a, b);
  require_mean_zero(a);
  require_mean_zero(b);
  const int K = a.grid_size();
  double wave = 0.0;
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    const double k2 = double(k) * k;
    wave += (std::conj(a.n[k]) * b.ndot[k] - std::conj(a.ndot[k]) * b.n[k]).real() / k2;
  }
  return 2.0 * schrodinger_pairing(a.u, b.u) + wave / (kTwoPi * c.beta * c.beta);
}

double inner_product(const TangentVector& a, const TangentVector& b, const PhysicalConstants& c) {
  require_same_grid(a, b);
  require_mean_zero(a);
  require_mean_zero(b);
  const int K = a.grid_size();
  double u = 0.0, wave = 0.0;
  for (int k = -K; k <= K; ++k) {
    u += (std::conj(a.u[k]) * b.u[k]).real();
    if (k == 0) continue;
    const double ak = std::abs(double(k));
    wave += (std::conj(a.n[k]) * b.n[k]).real() / ak + (std::conj(a.ndot[k]) * b.ndot[k]).real() / (ak * ak * ak);
  }
  return (2.0 * u + wave / (c.beta * c.beta)) / kTwoPi;
}

TangentVector apply_J(const TangentVector& a) {
  require_mean_zero(a);
  TangentVector out = a;
  const int K = a.grid_size();
  for (int k = -K; k <= K; ++k) {
    out.u[k] = Complex(0.0, -1.0) * a.u[k];
    if (k == 0) continue;
    const double ak = std::abs(double(k));
    out.n[k] = a.ndot[k] / ak;
    out.ndot[k] = -ak * a.n[k];
  }
  return out;
}

TangentVector explicit_vector_field(const ZakharovState& z, const PhysicalConstants& c) {
  z.validate();
  TangentVector out = z;
  const FourierField un = schrodinger_nonlinearity(z.u, z.n);
  const FourierField forcing = wave_forcing(z.u);
  const int K = z.grid_size();
  const double b2 = c.beta * c.beta;
  for (int k = -K; k <= K; ++k) {
    const double k2 = double(k) * k;
    out.u[k] = Complex(0.0, 1.0) * (-c.alpha * k2 * z.u[k] - un[k]);
    out.n[k] = z.ndot[k];
    out.ndot[k] = b2 * (-k2 * z.n[k] + forcing[k]);
  }
  out.ndot.enforce_realness();
  return out;
}

TangentVector fd_gradient(const ZakharovState& z, const PhysicalConstants& c, double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  z.validate();
  require_mean_zero(z);
  const int K = z.grid_size();
  const double eps = fd_step * (1.0 + phase_space_norm(z));
  const double b2 = c.beta * c.beta;
  TangentVector grad = ZakharovState::zero(K);
  grad.time = z.time;

  auto slope = [&](auto&& perturb) {
    ZakharovState plus = z, minus = z;
    perturb(plus, eps);
    perturb(minus, -eps);
    return (hamiltonian(plus, c) - hamiltonian(minus, c)) / (2.0 * eps);
  };

  // u: e = delta_k and i delta_k, g(e,e) = 1/pi
  for (int k = -K; k <= K; ++k) {
    for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      const double d = slope([&](ZakharovState& s, double h) { s.u[k] += h * dir; });
      grad.u[k] += (d * kPi) * dir;
    }
  }
  // n, ndot: paired real directions on +-k
  for (int k = 1; k <= K; ++k) {
    const double gn = 2.0 / (kTwoPi * b2 * k);
    const double gnd = 2.0 / (kTwoPi * b2 * double(k) * k * k);
    for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      const double dn = slope([&](ZakharovState& s, double h) {
        s.n[k] += h * dir;
        s.n[-k] += h * std::conj(dir);
      });
      grad.n[k] += (dn / gn) * dir;
      grad.n[-k] += (dn / gn) * std::conj(dir);
      const double dnd = slope([&](ZakharovState& s, double h) {
        s.ndot[k] += h * dir;
        s.ndot[-k] += h * std::conj(dir);
      });
      grad.ndot[k] += (dnd / gnd) * dir;
      grad.ndot[-k] += (dnd / gnd) * std::conj(dir);
    }
  }
  return grad;
}

TangentVector hamiltonian_vector_field(const ZakharovState& z, const PhysicalConstants& c, double fd_step) {
  return apply_J(fd_gradient(z, c, fd_step));
}

FlowMap identity_flow() {
  return {[](const ZakharovState& z) { return z; }, [](const ZakharovState&, const TangentVector& v) { return v; }};
}

FlowMap scaling_flow(double factor) {
  return {[factor](const ZakharovState& z) { return factor * z; },
          [factor](const ZakharovState&, const TangentVector& v) { return factor * v; }};
}

TangentVector random_tangent(int grid_size, int N, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{seed, index, std::uint64_t{0x7a6b}};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  TangentVector v = ZakharovState::zero(grid_size);
  const int top = std::min(N, grid_size);
  for (int k = -top; k <= top; ++k) v.u[k] = {normal(rng), normal(rng)};
  for (int k = 1; k <= top; ++k) {
    v.n.set_mode(k, {normal(rng), normal(rng)});
    // scale ndot like |k| so both wave pieces weigh in comparably in H
    v.ndot.set_mode(k, double(k) * Complex(normal(rng), normal(rng)));
  }
  const double norm = phase_space_norm(v);
  return (1.0 / norm) * v;
}

SymplecticReport check_symplectic(const FlowMap& flow, const ZakharovState& z0, const SymplecticCheck& check,
                                  const PhysicalConstants& c) {
  if (check.pairs < 1) throw std::invalid_argument("pairs must be >= 1");
  if (!(check.fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  const int K = z0.grid_size();
  const double eps = check.fd_step * (1.0 + phase_space_norm(z0));

  auto tangent_map = [&](const TangentVector& v) -> TangentVector {
    if (flow.linearize) return flow.linearize(z0, v);
    const ZakharovState plus = flow.apply(z0 + eps * v);
    const ZakharovState minus = flow.apply(z0 - eps * v);
    return (1.0 / (2.0 * eps)) * (plus - minus);
  };

  SymplecticReport report;
  report.pairs.resize(static_cast<std::size_t>(check.pairs));
  parallel_for(report.pairs.size(), check.jobs, [&](std::size_t i) {
    TangentVector v, w;
    double before = 0.0;
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t base = 2 * (i + attempt * 1000003ULL);
      v = random_tangent(K, check.N, check.seed, base);
      w = random_tangent(K, check.N, check.seed, base + 1);
      before = symplectic_form(v, w, c);
      if (std::abs(before) >= 1e-12) break;
      if (attempt > 64) throw std::runtime_error("could not draw a nondegenerate tangent pair");
    }
    TangentVector dv = tangent_map(v);
    TangentVector dw = tangent_map(w);
    dv.time = dw.time = 0.0;
    const double after = symplectic_form(dv, dw, c);
    report.pairs[i] = {static_cast<int>(i), before, after, std::abs(after / before - 1.0)};
  });
  for (const auto& p : report.pairs) report.max_defect = std::max(report.max_defect, p.defect);
  return report;
}

void write_jsonl(std::ostream& os, const SymplecticReport& report) {
  for (const auto& p : report.pairs) {
    nlohmann::ordered_json row;
    row["pair"] = p.index;
    row["omega_before"] = std::abs(p.omega_before);
    row["omega_after"] = std::abs(p.omega_after);
    row["defect"] = p.defect;
    os << row.dump() << '\n';
  }
}

bool ball_contains(const BallSpec& spec, const ZakharovState& z) {
  if (!(spec.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  return phase_space_norm(z - spec.center) <= spec.radius;
}

bool cylinder_contains(const CylinderSpec& spec, const ZakharovState& z) {
  if (!(spec.radius > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
  const int k = spec.mode;
  const double d = fixed_mode_abs(z.u.at(k) - spec.eta[0], z.n.at(k) - spec.eta[1], z.ndot.at(k) - spec.eta[2], k);
  return d <= spec.radius;
}

}  // namespace zakharov

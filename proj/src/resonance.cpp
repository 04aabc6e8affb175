#include "zakharov/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "zakharov/parallel.hpp"
#include "zakharov/stats.hpp"

namespace zakharov {

namespace {

template <class T>
T sgn(T x) {
  return T((x > T(0)) - (x < T(0)));
}

}  // namespace

void FrequencyTriple::validate() const {
  const double scale = 1.0 + std::abs(tau1) + std::abs(tau2);
  if (kind == TripleKind::schrodinger) {
    if (k0 != k1 + k2) throw std::invalid_argument("schrodinger triple requires k0 = k1 + k2");
    if (std::abs(tau0 - (tau1 + tau2)) > 1e-12 * scale)
      throw std::invalid_argument("schrodinger triple requires tau0 = tau1 + tau2");
    if (k0 == 0) throw std::invalid_argument("schrodinger triple requires k0 != 0");
  } else {
    if (k0 != k1 - k2) throw std::invalid_argument("wave triple requires k0 = k1 - k2");
    if (std::abs(tau0 - (tau1 - tau2)) > 1e-12 * scale)
      throw std::invalid_argument("wave triple requires tau0 = tau1 - tau2");
    if (k0 == 0) throw std::invalid_argument("wave triple requires k0 != 0");
  }
}

namespace {

ModulationBoundL bound_impl(int k0, int k1, int k2, TripleKind kind, long double tau0, long double tau1,
                            long double tau2, long double alpha, long double beta) {
  const long double K0 = k0, K1 = k1, K2 = k2;
  const long double r = beta / alpha;
  ModulationBoundL out;
  if (kind == TripleKind::schrodinger) {
    const long double S1 = sgn(tau2 * K2);
    const long double L0 = tau0 - alpha * K0 * K0;
    const long double L1 = tau1 - alpha * K1 * K1;
    const long double M2 = std::fabs(std::fabs(tau2) - beta * std::fabs(K2));
    const long double gap = K0 + K1 - r * S1;
    out.lhs_max = std::max({std::fabs(L0), std::fabs(L1), M2});
    out.rhs_bound = alpha * std::fabs(K2) * std::fabs(gap);
    out.residual = L0 - L1 - (tau2 - beta * S1 * K2) + alpha * K2 * gap;
  } else {
    const long double S2 = sgn(tau0 * K0);
    const long double M0 = std::fabs(std::fabs(tau0) - beta * std::fabs(K0));
    const long double L1 = tau1 - alpha * K1 * K1;
    const long double L2 = tau2 - alpha * K2 * K2;
    const long double gap = K1 + K2 - r * S2;
    out.lhs_max = std::max({M0, std::fabs(L1), std::fabs(L2)});
    out.rhs_bound = alpha * std::fabs(K0) * std::fabs(gap);
    out.residual = (tau0 - beta * S2 * K0) - L1 + L2 - alpha * K0 * gap;
  }
  return out;
}

}  // namespace

ModulationBoundL modulation_bound_ld(int k0, int k1, int k2, TripleKind kind, long double tau1, long double tau2,
                                     long double alpha, long double beta) {
  const long double tau0 = kind == TripleKind::schrodinger ? tau1 + tau2 : tau1 - tau2;
  return bound_impl(k0, k1, k2, kind, tau0, tau1, tau2, alpha, beta);
}

ModulationBound modulation_bound(const FrequencyTriple& trip, const PhysicalConstants& c) {
  trip.validate();
  const auto r = bound_impl(trip.k0, trip.k1, trip.k2, trip.kind, trip.tau0, trip.tau1, trip.tau2, c.alpha, c.beta);
  return {double(r.lhs_max), double(r.rhs_bound), double(r.residual)};
}

TripleClass classify_triple(int k0, int k1, int k2, double c_res) {
  const double m[3] = {std::max(std::abs(double(k0)), 1.0), std::max(std::abs(double(k1)), 1.0),
                       std::max(std::abs(double(k2)), 1.0)};
  const double hi = std::max({m[0], m[1], m[2]});
  const double lo = std::min({m[0], m[1], m[2]});
  return hi / lo <= c_res ? TripleClass::resonant : TripleClass::nonresonant;
}

SweepReport resonance_sweep(TripleKind kind, int kmax, int samples, const PhysicalConstants& c, std::uint64_t seed,
                            double residual_tol, int jobs) {
  c.validate();
  struct Pair {
    int k0, k1, k2;
  };
  std::vector<Pair> triples;
  for (int k1 = -kmax; k1 <= kmax; ++k1)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      const int k0 = kind == TripleKind::schrodinger ? k1 + k2 : k1 - k2;
      if (k0 == 0 || std::abs(k0) > kmax) continue;
      triples.push_back({k0, k1, k2});
    }

  struct Partial {
    long double max_residual = 0, min_slack = INFINITY;
    long long violations = 0;
  };
  std::vector<Partial> partial(triples.size());
  const long double alpha = c.alpha, beta = c.beta;

  parallel_for(triples.size(), jobs, [&](std::size_t i) {
    const Pair& p = triples[i];
    std::seed_seq seq{seed, std::uint64_t(kind == TripleKind::wave), std::uint64_t(p.k1 + 1000),
                      std::uint64_t(p.k2 + 1000)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    static constexpr double scales[] = {1e-6, 1e-3, 1e-1, 1.0, 10.0, 1e2, 1e3};
    Partial acc;
    for (int s = 0; s < samples; ++s) {
      // tau1, tau2 scattered around the relevant characteristics at mixed scales
      const double scale = scales[rng() % std::size(scales)];
      const double pick = unit(rng);
      long double tau1, tau2;
      if (kind == TripleKind::schrodinger) {
        const double side = unit(rng) < 0.5 ? -1.0 : 1.0;
        tau1 = alpha * p.k1 * p.k1 + scale * normal(rng);
        tau2 = side * beta * std::abs(p.k2) + scale * normal(rng);
      } else {
        tau1 = alpha * p.k1 * p.k1 + scale * normal(rng);
        tau2 = alpha * p.k2 * p.k2 + scale * normal(rng);
      }
      if (pick < 0.1) {
        tau1 = 4000.0 * (unit(rng) - 0.5);
        tau2 = 4000.0 * (unit(rng) - 0.5);
      } else if (pick < 0.12) {
        tau2 = 0.0;
      }
      const auto r = modulation_bound_ld(p.k0, p.k1, p.k2, kind, tau1, tau2, alpha, beta);
      const long double res = std::fabs(r.residual);
      const long double slack = r.lhs_max - r.rhs_bound / 3;
      acc.max_residual = std::max(acc.max_residual, res);
      acc.min_slack = std::min(acc.min_slack, slack);
      if (res > residual_tol || slack < 0) ++acc.violations;
    }
    partial[i] = acc;
  });

  SweepReport rep;
  rep.kind = kind;
  rep.triples = static_cast<long long>(triples.size());
  rep.evaluations = rep.triples * samples;
  rep.min_slack = INFINITY;
  for (const auto& p : partial) {
    rep.max_residual = std::max(rep.max_residual, p.max_residual);
    rep.min_slack = std::min(rep.min_slack, p.min_slack);
    rep.violations += p.violations;
  }
  return rep;
}

// --- space-time norms ----------------------------------------------------------

double modulation_weight(const SpaceTimeField& f, int k, double tau) {
  const double a = f.constants.alpha, b = f.constants.beta;
  const double mod = f.flavor == Dispersion::schrodinger ? tau - a * double(k) * k : std::abs(tau) - b * std::abs(double(k));
  return japanese_bracket(mod);
}

double xsb_norm(const SpaceTimeField& f, double s, double b) {
  double sum = 0.0;
  for (const auto& row : f.rows) {
    const double ks = std::pow(japanese_bracket(row.k), 2.0 * s);
    double inner = 0.0;
    for (std::size_t j = 0; j < row.values.size(); ++j) {
      const double tau = double(row.first + long(j)) * f.dtau;
      inner += std::pow(modulation_weight(f, row.k, tau), 2.0 * b) * std::norm(row.values[j]);
    }
    sum += ks * inner * f.dtau;
  }
  return std::sqrt(sum);
}

double l2l1_norm(const SpaceTimeField& f, double s, double gamma) {
  std::map<int, double> per_k;
  for (const auto& row : f.rows) {
    double inner = 0.0;
    for (std::size_t j = 0; j < row.values.size(); ++j) {
      const double tau = double(row.first + long(j)) * f.dtau;
      inner += std::abs(row.values[j]) * std::pow(modulation_weight(f, row.k, tau), -gamma);
    }
    per_k[row.k] += inner * f.dtau;
  }
  double sum = 0.0;
  for (const auto& [k, v] : per_k) sum += std::pow(japanese_bracket(k), 2.0 * s) * v * v;
  return std::sqrt(sum);
}

double y_norm(const SpaceTimeField& f, double s) { return xsb_norm(f, s, 0.5) + l2l1_norm(f, s, 0.0); }

double z_norm(const SpaceTimeField& f, double s) { return xsb_norm(f, s, -0.5) + l2l1_norm(f, s, 1.0); }

// --- cutoff and its transform --------------------------------------------------

double bump(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double p = f(2.0 - a);
  return p / (p + f(a - 1.0));
}

namespace {

// 2 int_0^2 cos(sigma t) bump^p dt; the [0,1] piece in closed form, the
// transition by composite Simpson.
double bump_transform_direct(double sigma, int power) {
  const double flat = std::abs(sigma) < 1e-12 ? 1.0 : std::sin(sigma) / sigma;
  const int n = 4000;
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = 1.0 + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::cos(sigma * t) * std::pow(bump(t), power);
  }
  return 2.0 * (flat + sum * h / 3.0);
}

struct TransformTable {
  static constexpr double step = 0.01;
  static constexpr double limit = 72.0;
  std::vector<double> values[2];

  TransformTable() {
    const int n = static_cast<int>(limit / step) + 3;
    for (int p = 0; p < 2; ++p) {
      values[p].resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) values[p][i] = bump_transform_direct(i * step, p + 1);
    }
  }

  double eval(double sigma, int power) const {
    const double x = std::abs(sigma) / step;
    const auto& v = values[power - 1];
    const int i = static_cast<int>(x);
    if (i + 2 >= static_cast<int>(v.size())) return bump_transform_direct(sigma, power);
    // cubic (Catmull-Rom) through i-1..i+2, mirrored at 0 since the transform is even
    const double t = x - i;
    const double p0 = v[static_cast<std::size_t>(std::abs(i - 1))];
    const double p1 = v[i], p2 = v[i + 1], p3 = v[i + 2];
    return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
  }
};

const TransformTable& transform_table() {
  static const TransformTable table;
  return table;
}

}  // namespace

double bump_transform(double sigma, int power) {
  if (power != 1 && power != 2) throw std::invalid_argument("bump_transform power must be 1 or 2");
  return transform_table().eval(sigma, power);
}

// --- bilinear scan ---------------------------------------------------------------

namespace {

struct Atom {
  int k;
  Complex amp;
  double center;
};

// Accumulates atoms amp * profile(tau - center) on the tau lattice,
// |tau - center| <= half_window.
SpaceTimeField rasterize(const std::vector<Atom>& atoms, int power, Dispersion flavor, const BilinearScanSpec& spec,
                         const PhysicalConstants& c) {
  const TransformTable& table = transform_table();
  std::map<int, std::pair<long, long>> range;
  for (const Atom& a : atoms) {
    const long lo = static_cast<long>(std::ceil((a.center - spec.half_window) / spec.dtau));
    const long hi = static_cast<long>(std::floor((a.center + spec.half_window) / spec.dtau));
    auto it = range.find(a.k);
    if (it == range.end())
      range.emplace(a.k, std::make_pair(lo, hi));
    else
      it->second = {std::min(it->second.first, lo), std::max(it->second.second, hi)};
  }
  SpaceTimeField f;
  f.flavor = flavor;
  f.dtau = spec.dtau;
  f.constants = c;
  std::map<int, std::size_t> row_of;
  for (const auto& [k, r] : range) {
    row_of[k] = f.rows.size();
    f.rows.push_back({k, r.first, std::vector<Complex>(static_cast<std::size_t>(r.second - r.first + 1))});
  }
  for (const Atom& a : atoms) {
    SpaceTimeRow& row = f.rows[row_of[a.k]];
    const long lo = static_cast<long>(std::ceil((a.center - spec.half_window) / spec.dtau));
    const long hi = static_cast<long>(std::floor((a.center + spec.half_window) / spec.dtau));
    for (long j = lo; j <= hi; ++j) row.values[static_cast<std::size_t>(j - row.first)] += a.amp * table.eval(j * spec.dtau - a.center, power);
  }
  return f;
}

std::vector<int> annulus_modes(int N) {
  std::vector<int> ks;
  for (int k = N; k < 2 * N; ++k) {
    ks.push_back(k);
    ks.push_back(-k);
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

struct Sample {
  int N0, N1, N2;
  double ratio;  // <= 0 means rejected
};

Sample draw_sample(int n_max, int sample, int attempt, const BilinearScanSpec& spec, const PhysicalConstants& c) {
  std::seed_seq seq{spec.seed, std::uint64_t(n_max), std::uint64_t(sample), std::uint64_t(attempt)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> off(-1.0, 1.0);

  std::vector<int> smalls;
  for (int d = 1; d <= std::max(1, n_max / 4); d *= 2) smalls.push_back(d);
  const int small = smalls[rng() % smalls.size()];
  Sample out{};
  switch (sample % 3) {
    case 0:  // high x low -> high
      out = {n_max, n_max, small, 0.0};
      break;
    case 1:  // high x high -> low
      out = {small, n_max, n_max, 0.0};
      break;
    default:  // low x high -> high
      out = {n_max, small, n_max, 0.0};
      break;
  }

  // u: sum_k a_k e^{-i(alpha k^2 + mu_k)t} bump(t) on the N1 annulus
  std::map<int, std::pair<Complex, double>> u;
  for (int k : annulus_modes(out.N1)) u[k] = {Complex(normal(rng), normal(rng)), c.alpha * k * k + off(rng)};
  // v: real wave, atoms at +-(beta|k| + nu_k)
  std::map<int, std::pair<Complex, double>> v;
  std::map<int, double> nu;
  for (int k : annulus_modes(out.N2)) {
    v[k] = {Complex(normal(rng), normal(rng)), 0.0};
    if (k > 0) nu[k] = off(rng);
  }
  auto lambda = [&](int k) { return c.beta * std::abs(k) + nu[std::abs(k)]; };

  std::vector<Atom> u_atoms, v_atoms, prod_atoms;
  for (const auto& [k, av] : u) u_atoms.push_back({k, av.first, av.second});
  for (const auto& [k, bv] : v) {
    // v_hat_k(t) = b_k e^{-i lambda t} + conj(b_{-k}) e^{+i lambda t}
    v_atoms.push_back({k, bv.first, lambda(k)});
    v_atoms.push_back({k, std::conj(v.at(-k).first), -lambda(k)});
  }
  const Band out_band{BandKind::annulus, out.N0};
  for (const Atom& ua : u_atoms)
    for (const Atom& va : v_atoms) {
      const int k0 = ua.k + va.k;
      if (!out_band.contains(k0)) continue;
      if (classify_triple(k0, ua.k, va.k, spec.c_res) == TripleClass::resonant) continue;
      prod_atoms.push_back({k0, ua.amp * va.amp / kTwoPi, ua.center + va.center});
    }
  if (prod_atoms.empty()) return out;  // nothing nonresonant to measure

  const SpaceTimeField fu = rasterize(u_atoms, 1, Dispersion::schrodinger, spec, c);
  const SpaceTimeField fv = rasterize(v_atoms, 1, Dispersion::wave, spec, c);
  const double den = y_norm(fu, spec.s_u) * y_norm(fv, spec.s_v);
  if (!(den > 0.0)) return out;
  const SpaceTimeField fp = rasterize(prod_atoms, 2, Dispersion::schrodinger, spec, c);
  out.ratio = z_norm(fp, spec.s_out) / den;
  return out;
}

}  // namespace

BilinearScanResult bilinear_ratio_scan(const BilinearScanSpec& spec, const PhysicalConstants& c) {
  c.validate();
  if (spec.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (spec.Ns.empty()) throw std::invalid_argument("Ns must be nonempty");
  for (std::size_t i = 0; i < spec.Ns.size(); ++i) {
    const int N = spec.Ns[i];
    if (N < 1 || (N & (N - 1)) != 0) throw std::invalid_argument("Ns must be dyadic");
    if (i > 0 && N <= spec.Ns[i - 1]) throw std::invalid_argument("Ns must be strictly increasing");
  }
  const std::size_t per = static_cast<std::size_t>(spec.samples);
  std::vector<Sample> samples(spec.Ns.size() * per);
  std::vector<int> rejected(samples.size(), 0);
  parallel_for(samples.size(), spec.jobs, [&](std::size_t i) {
    const int n_max = spec.Ns[i / per];
    const int s = static_cast<int>(i % per);
    for (int attempt = 0; attempt < 8; ++attempt) {
      samples[i] = draw_sample(n_max, s, attempt, spec, c);
      if (samples[i].ratio > 0.0) break;
      ++rejected[i];
    }
  });

  BilinearScanResult res;
  std::vector<double> xs, ys;
  for (std::size_t g = 0; g < spec.Ns.size(); ++g) {
    double best = 0.0;
    for (std::size_t s = 0; s < per; ++s) {
      const std::size_t i = g * per + s;
      res.rejected += rejected[i];
      const Sample& smp = samples[i];
      if (!(smp.ratio > 0.0)) continue;
      res.rows.push_back({smp.N0, smp.N1, smp.N2, spec.Ns[g], smp.ratio, spec.seed, static_cast<int>(s)});
      xs.push_back(spec.Ns[g]);
      ys.push_back(smp.ratio);
      best = std::max(best, smp.ratio);
    }
    if (best > 0.0) {
      res.n_max.push_back(spec.Ns[g]);
      res.max_ratio.push_back(best);
    }
  }
  if (res.n_max.size() >= 3) {
    std::vector<double> nx(res.n_max.begin(), res.n_max.end());
    const FitResult fit = fit_loglog(nx, res.max_ratio);
    res.slope = fit.slope;
    res.intercept = fit.intercept;
  }
  if (xs.size() >= 2) res.spearman = spearman(xs, ys);
  return res;
}

}  // namespace zakharov

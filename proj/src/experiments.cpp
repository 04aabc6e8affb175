#include "zakharov/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "zakharov/parallel.hpp"

namespace zakharov {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

// --- data ----------------------------------------------------------------------

ZakharovState random_state(int grid_size, int band, double norm, const std::string& profile, double decay,
                           std::uint64_t seed, std::uint64_t index) {
  if (band < 0 || band > grid_size) throw std::invalid_argument("data band must satisfy 0 <= band <= grid_size");
  if (profile != "gaussian" && profile != "power") throw std::invalid_argument("unknown data profile " + profile);
  std::seed_seq seq{seed, index, std::uint64_t{0x5eed}};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  const double width = 0.5 * std::max(band, 1);
  auto amp = [&](int k) {
    return profile == "gaussian" ? std::exp(-(k / width) * (k / width)) : std::pow(japanese_bracket(k), -decay);
  };
  ZakharovState z = ZakharovState::zero(grid_size);
  for (int k = -band; k <= band; ++k) z.u[k] = amp(k) * Complex(normal(rng), normal(rng));
  // scale the wave pieces so each is equally regular in its own space
  for (int k = 1; k <= band; ++k) {
    const double b = japanese_bracket(k);
    z.n.set_mode(k, amp(k) * std::sqrt(b) * Complex(normal(rng), normal(rng)));
    z.ndot.set_mode(k, amp(k) * b * std::sqrt(b) * Complex(normal(rng), normal(rng)));
  }
  const double current = phase_space_norm(z);
  if (norm == 0.0 || current == 0.0) return ZakharovState::zero(grid_size);
  return (norm / current) * z;
}

ZakharovState initial_state(const SimConfig& cfg, std::uint64_t index) {
  return random_state(cfg.grid_size, cfg.data_band, cfg.data_norm, cfg.data_profile, cfg.data_decay, cfg.seed, index);
}

// --- truncation rate --------------------------------------------------------------

TruncationReport truncation_rate_study(const StudySpec& spec) {
  const SimConfig& cfg = spec.config;
  cfg.validate();
  const auto c = cfg.constants();
  const int K = cfg.grid_size;
  const int top = *std::max_element(cfg.ns.begin(), cfg.ns.end());
  if (K < 4 * top) throw std::invalid_argument("truncation study needs grid_size >= 4 max(ns)");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("truncation study needs T > 0");

  TruncationReport rep;
  rep.Ns = cfg.ns;
  rep.t = cfg.T;
  const int S = rep.sample_times;
  const ZakharovState z0 = initial_state(cfg);
  const double seg = cfg.T / S;

  // reference trajectory at dt and at dt/2
  std::vector<ZakharovState> full(S + 1, z0), fine(S + 1, z0);
  for (int i = 1; i <= S; ++i) {
    full[i] = advance(full[i - 1], seg, cfg.dt, c, std::nullopt, cfg.nonlinear);
    fine[i] = advance(fine[i - 1], seg, 0.5 * cfg.dt, c, std::nullopt, cfg.nonlinear);
    rep.self_error = std::max(rep.self_error, phase_space_norm(full[i] - fine[i]));
  }

  rep.errors.assign(cfg.ns.size(), 0.0);
  parallel_for(cfg.ns.size(), cfg.jobs, [&](std::size_t j) {
    ZakharovState z = z0;
    double worst = 0.0;
    for (int i = 1; i <= S; ++i) {
      z = advance(z, seg, cfg.dt, c, cfg.ns[j], cfg.nonlinear);
      worst = std::max(worst, phase_space_norm(full[i] - z));
    }
    rep.errors[j] = worst;
  });

  rep.nonincreasing = true;
  for (std::size_t j = 1; j < rep.errors.size(); ++j)
    if (rep.errors[j] > 1.1 * rep.errors[j - 1]) rep.nonincreasing = false;
  if (rep.errors.size() >= 2) {
    const std::size_t n = rep.errors.size();
    rep.plateau = rep.errors[n - 1] <= 10.0 * rep.self_error && rep.errors[n - 2] <= 10.0 * rep.self_error;
  }
  const bool positive = std::all_of(rep.errors.begin(), rep.errors.end(), [](double e) { return e > 0.0; });
  if (positive && rep.errors.size() >= 3) {
    std::vector<double> x(rep.Ns.begin(), rep.Ns.end());
    rep.fit = fit_loglog(x, rep.errors);
  }
  return rep;
}

// --- dt convergence -------------------------------------------------------------------

ConvergenceReport dt_convergence_study(const StudySpec& spec) {
  const SimConfig& cfg = spec.config;
  cfg.validate();
  const auto c = cfg.constants();
  const ZakharovState z0 = initial_state(cfg);
  ConvergenceReport rep;
  rep.dts = cfg.dts;
  rep.reference_dt = *std::min_element(cfg.dts.begin(), cfg.dts.end()) / 16.0;
  const ZakharovState ref = advance(z0, cfg.T, rep.reference_dt, c, std::nullopt, cfg.nonlinear);
  rep.errors.assign(cfg.dts.size(), 0.0);
  parallel_for(cfg.dts.size(), cfg.jobs, [&](std::size_t i) {
    rep.errors[i] = phase_space_norm(advance(z0, cfg.T, cfg.dts[i], c, std::nullopt, cfg.nonlinear) - ref);
  });
  const double floor = 1e-12 * std::max(1.0, phase_space_norm(z0));
  const bool roundoff = std::all_of(rep.errors.begin(), rep.errors.end(), [&](double e) { return e <= floor; });
  if (!roundoff && rep.errors.size() >= 3) rep.fit = fit_loglog(rep.dts, rep.errors);
  return rep;
}

double picard_crosscheck(const ZakharovState& z0, const PicardSettings& settings, const PhysicalConstants& c,
                         double dt) {
  const ZakharovState p = picard_iterate(z0, settings, c);
  const ZakharovState s = advance(z0, settings.window, dt, c);
  return phase_space_norm(p - s);
}

// --- symplectic sweep ---------------------------------------------------------------------

FlowMap stepper_flow(double t, double dt, std::optional<int> N, const PhysicalConstants& c, bool nonlinear) {
  return {[=](const ZakharovState& z) { return advance(z, t, dt, c, N, nonlinear); }, {}};
}

SymplecticReport symplectic_sweep(const StudySpec& spec) {
  const SimConfig& cfg = spec.config;
  cfg.validate();
  const auto c = cfg.constants();
  const ZakharovState z0 = initial_state(cfg);
  const FlowMap flow = stepper_flow(cfg.T, cfg.dt, cfg.trunc_N, c, cfg.nonlinear);
  SymplecticCheck check;
  check.N = cfg.trunc_N;
  check.pairs = cfg.pairs;
  check.fd_step = cfg.fd_step;
  check.seed = cfg.seed;
  check.jobs = cfg.jobs;
  return check_symplectic(flow, z0, check, c);
}

// --- nonsqueezing -------------------------------------------------------------------------

namespace {

using Point = std::array<Complex, 3>;

double mode_distance(const Point& p, const Point& eta, int k) {
  return fixed_mode_abs(p[0] - eta[0], p[1] - eta[1], p[2] - eta[2], k) / std::sqrt(kTwoPi);
}

double worst_distance(const std::vector<Point>& pts, const Point& eta, int k) {
  double worst = 0.0;
  for (const Point& p : pts) worst = std::max(worst, mode_distance(p, eta, k));
  return worst;
}

}  // namespace

ModeRadius enclosing_radius(const std::vector<Point>& points, int k) {
  if (points.empty()) throw std::invalid_argument("enclosing_radius needs points");
  Point eta{};
  for (const Point& p : points)
    for (int i = 0; i < 3; ++i) eta[i] += p[i];
  for (auto& e : eta) e /= double(points.size());
  double best = worst_distance(points, eta, k);

  // shrinking 5x5x5 grids spanned by the directions to the three worst samples
  double step = 0.5 * best * std::sqrt(kTwoPi);
  const double stop = 1e-13 * std::max(step, 1e-300);
  for (int iter = 0; iter < 400 && step > stop; ++iter) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t j = 0; j < points.size(); ++j) order.push_back({mode_distance(points[j], eta, k), j});
    std::sort(order.begin(), order.end(), std::greater<>());
    std::vector<Point> dirs;
    for (std::size_t d = 0; d < std::min<std::size_t>(3, order.size()); ++d) {
      Point dir;
      double len = 0.0;
      for (int i = 0; i < 3; ++i) {
        dir[i] = points[order[d].second][i] - eta[i];
        len += std::norm(dir[i]);
      }
      len = std::sqrt(len);
      if (len == 0.0) continue;
      for (auto& x : dir) x /= len;
      dirs.push_back(dir);
    }
    while (dirs.size() < 3) dirs.push_back(Point{});

    Point best_eta = eta;
    double best_here = best;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int cc = -2; cc <= 2; ++cc) {
          if (a == 0 && b == 0 && cc == 0) continue;
          Point trial = eta;
          for (int i = 0; i < 3; ++i) trial[i] += 0.5 * step * (double(a) * dirs[0][i] + double(b) * dirs[1][i] + double(cc) * dirs[2][i]);
          const double r = worst_distance(points, trial, k);
          if (r < best_here) {
            best_here = r;
            best_eta = trial;
          }
        }
    if (best_here < best) {
      best = best_here;
      eta = best_eta;
    } else {
      step *= 0.5;
    }
  }
  return {k, best, 0.0, eta};
}

NonsqueezingReport nonsqueezing_probe(const StudySpec& spec) {
  const SimConfig& cfg = spec.config;
  cfg.validate();
  if (cfg.samples < 16) throw std::invalid_argument("nonsqueezing probe needs samples >= 16");
  if (cfg.probe_modes.empty()) throw std::invalid_argument("nonsqueezing probe needs probe_modes");
  const auto c = cfg.constants();
  const ZakharovState base = cfg.data_norm > 0.0 ? initial_state(cfg) : ZakharovState::zero(cfg.grid_size);
  const int M = cfg.samples;
  const double R = cfg.radius;
  const double scale = R * std::sqrt(kTwoPi);

  std::vector<ZakharovState> images(static_cast<std::size_t>(M));
  parallel_for(images.size(), cfg.jobs, [&](std::size_t j) {
    ZakharovState z = base;
    if (cfg.probe_modes.size() == 1) {
      z.u[cfg.probe_modes[0]] += scale * std::polar(1.0, kTwoPi * double(j) / M);
    } else {
      std::seed_seq seq{cfg.seed, std::uint64_t(j), std::uint64_t{0x6e73}};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal;
      std::vector<Complex> w;
      double len = 0.0;
      for (std::size_t i = 0; i < cfg.probe_modes.size(); ++i) {
        w.emplace_back(normal(rng), normal(rng));
        len += std::norm(w.back());
      }
      len = std::sqrt(len);
      for (std::size_t i = 0; i < w.size(); ++i) z.u[cfg.probe_modes[i]] += (scale / len) * w[i];
    }
    images[j] = cfg.T > 0.0 ? advance(z, cfg.T, cfg.dt, c, std::nullopt, cfg.nonlinear) : z;
  });

  NonsqueezingReport rep;
  rep.R = R;
  rep.T = cfg.T;
  rep.samples = M;
  rep.min_ratio = INFINITY;
  for (int k : cfg.probe_modes) {
    std::vector<Point> pts;
    for (const auto& z : images) pts.push_back({z.u[k], z.n[k], z.ndot[k]});
    ModeRadius mr = enclosing_radius(pts, k);
    mr.ratio = mr.radius / R;
    rep.min_ratio = std::min(rep.min_ratio, mr.ratio);
    rep.modes.push_back(mr);
  }
  return rep;
}

// --- gwp demo --------------------------------------------------------------------------------

GwpReport gwp_demo(const StudySpec& spec) {
  const SimConfig& cfg = spec.config;
  cfg.validate();
  const auto c = cfg.constants();
  const ZakharovState z0 = initial_state(cfg);
  GwpReport rep;
  rep.intervals = gwp_schedule(z0, cfg.T, c, cfg.c_step);
  rep.mass0 = mass(z0);
  rep.wave = wave_norm(z0);
  ZakharovState z = z0;
  rep.boundary_mass.push_back(rep.mass0);
  for (const Interval& iv : rep.intervals) {
    const double len = iv.end - iv.start;
    z = advance(z, len, std::min(cfg.dt, len), c, std::nullopt, cfg.nonlinear);
    const double m = mass(z);
    rep.boundary_mass.push_back(m);
    if (rep.mass0 > 0.0) rep.max_mass_drift = std::max(rep.max_mass_drift, std::abs(m - rep.mass0) / rep.mass0);
  }
  if (rep.mass0 > 0.0) {
    const double tau = cfg.T / double(rep.intervals.size());
    rep.count_in_window = (cfg.c_step / rep.mass0) / tau;
    rep.expected_count = rep.wave / rep.mass0;
    // the shape only holds once the wave norm sets tau
    rep.count_checked = rep.wave >= 4.0 * rep.mass0 && rep.wave >= 1.0;
    if (rep.count_checked) {
      const double q = rep.count_in_window / rep.expected_count;
      rep.count_ok = q >= 0.25 && q <= 4.0;
    }
  }
  rep.passed = rep.max_mass_drift <= 1e-8 && rep.count_ok;
  return rep;
}

// --- output helpers ---------------------------------------------------------------------------

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw std::invalid_argument("ragged CSV row for " + path.string());
    line(r);
  }
}

namespace {

std::string num(double v) { return format_double(v); }
std::string num(int v) { return std::to_string(v); }

void write_json(const fs::path& path, const ojson& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::string pass_word(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void write_field_file(const fs::path& path, const FourierField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_field(out, f);
}

StudyOutcome cmd_simulate(const SimConfig& cfg, const fs::path& dir) {
  const auto c = cfg.constants();
  const ZakharovState z0 = initial_state(cfg);
  SchemeSpec scheme = cfg.scheme_spec();
  scheme.keep_states = false;
  const TrajectoryRecord rec = evolve(z0, cfg.T, scheme, c, cfg.probe_modes);
  {
    std::ofstream out(dir / "series.jsonl");
    write_jsonl(out, rec);
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rec.times.size(); ++i)
    rows.push_back({num(rec.times[i]), num(rec.mass_series[i]), num(rec.hamiltonian_series[i])});
  write_csv(dir / "results.csv", {"t", "mass", "hamiltonian"}, rows);
  const ZakharovState& zf = rec.final_state();
  write_field_file(dir / "final_u.txt", zf.u);
  write_field_file(dir / "final_n.txt", zf.n);
  write_field_file(dir / "final_ndot.txt", zf.ndot);
  const double m0 = rec.mass_series.front();
  const double drift = m0 > 0.0 ? std::abs(rec.mass_series.back() - m0) / m0 : 0.0;
  StudyOutcome o;
  o.outputs = {"series.jsonl", "results.csv", "final_u.txt", "final_n.txt", "final_ndot.txt"};
  o.summary = "simulate: samples=" + std::to_string(rec.times.size()) + " t_final=" + fmt("%.6g", zf.time) +
              " mass_drift=" + fmt("%.3e", drift) + " PASS";
  return o;
}

StudyOutcome cmd_conserve(const SimConfig& cfg, const fs::path& dir) {
  const auto c = cfg.constants();
  const ZakharovState z0 = initial_state(cfg);
  SchemeSpec scheme = cfg.scheme_spec();
  scheme.keep_states = false;
  const TrajectoryRecord full = evolve(z0, cfg.T, scheme, c, cfg.probe_modes);
  const TrajectoryRecord trunc = evolve_truncated(z0, cfg.T, cfg.trunc_N, scheme, c, cfg.probe_modes);
  auto max_rel = [](const std::vector<double>& s) {
    double worst = 0.0;
    const double ref = std::abs(s.front());
    for (double v : s) worst = std::max(worst, ref > 0.0 ? std::abs(v - s.front()) / ref : std::abs(v));
    return worst;
  };
  const double dm = std::max(max_rel(full.mass_series), max_rel(trunc.mass_series));
  const double dh = max_rel(full.hamiltonian_series);
  const double dhn = max_rel(trunc.hamiltonian_series);
  {
    std::ofstream out(dir / "series.jsonl");
    write_jsonl(out, full);
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < full.times.size(); ++i)
    rows.push_back({num(full.times[i]), num(full.mass_series[i]), num(full.hamiltonian_series[i]),
                    num(trunc.mass_series[i]), num(trunc.hamiltonian_series[i])});
  write_csv(dir / "results.csv", {"t", "mass", "hamiltonian", "mass_truncated", "hamiltonian_truncated"}, rows);
  StudyOutcome o;
  o.passed = dm <= cfg.tol_mass;
  o.outputs = {"series.jsonl", "results.csv"};
  o.summary = "conserve: max_mass_drift=" + fmt("%.3e", dm) + " max_energy_drift=" + fmt("%.3e", dh) +
              " max_truncated_energy_drift=" + fmt("%.3e", dhn) + " " + pass_word(o.passed);
  return o;
}

StudyOutcome cmd_truncate(const SimConfig& cfg, const fs::path& dir) {
  const TruncationReport rep = truncation_rate_study({StudyKind::truncation_rate, cfg});
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rep.Ns.size(); ++i) rows.push_back({num(rep.Ns[i]), num(rep.errors[i])});
  write_csv(dir / "results.csv", {"N", "error"}, rows);
  ojson s;
  s["t"] = rep.t;
  s["sample_times"] = rep.sample_times;
  s["self_error"] = rep.self_error;
  s["nonincreasing"] = rep.nonincreasing;
  s["plateau"] = rep.plateau;
  if (rep.fit) {
    s["slope"] = rep.fit->slope;
    s["intercept"] = rep.fit->intercept;
    s["residual"] = rep.fit->residual;
    s["delta"] = -rep.fit->slope;
  }
  write_json(dir / "summary.json", s);
  StudyOutcome o;
  o.passed = rep.nonincreasing && rep.fit && rep.fit->slope < 0.0;
  o.outputs = {"results.csv", "summary.json"};
  o.summary = "truncate: slope=" + (rep.fit ? fmt("%.4f", rep.fit->slope) : std::string("n/a")) +
              " self_error=" + fmt("%.3e", rep.self_error) + (rep.plateau ? " plateau" : "") + " " +
              pass_word(o.passed);
  return o;
}

StudyOutcome cmd_convergence(const SimConfig& cfg, const fs::path& dir) {
  const ConvergenceReport rep = dt_convergence_study({StudyKind::dt_convergence, cfg});
  // Picard cross-check on small low-band data
  SimConfig small = cfg;
  small.data_norm = std::min(cfg.data_norm, 0.1);
  small.data_band = std::min(cfg.data_band, 4);
  const ZakharovState zs = initial_state(small);
  const PicardSettings ps{cfg.picard_iterations, cfg.picard_nodes, cfg.picard_window};
  const double picard = picard_crosscheck(zs, ps, cfg.constants(), std::min(cfg.dt, cfg.picard_window) / 16.0);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rep.dts.size(); ++i) rows.push_back({num(rep.dts[i]), num(rep.errors[i])});
  write_csv(dir / "results.csv", {"dt", "error"}, rows);
  ojson s;
  s["reference_dt"] = rep.reference_dt;
  if (rep.fit) {
    s["order"] = rep.fit->slope;
    s["intercept"] = rep.fit->intercept;
  } else {
    s["order"] = nullptr;
  }
  s["picard_difference"] = picard;
  write_json(dir / "summary.json", s);
  StudyOutcome o;
  const bool order_ok = !rep.fit || std::abs(rep.fit->slope - 2.0) <= 0.2;
  o.passed = order_ok && picard <= 1e-6;
  o.outputs = {"results.csv", "summary.json"};
  o.summary = "convergence: order=" + (rep.fit ? fmt("%.4f", rep.fit->slope) : std::string("skipped")) +
              " picard_difference=" + fmt("%.3e", picard) + " " + pass_word(o.passed);
  return o;
}

StudyOutcome cmd_symplectic(const SimConfig& cfg, const fs::path& dir) {
  const SymplecticReport rep = symplectic_sweep({StudyKind::symplectic_sweep, cfg});
  {
    std::ofstream out(dir / "series.jsonl");
    write_jsonl(out, rep);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : rep.pairs)
    rows.push_back({num(p.index), num(p.omega_before), num(p.omega_after), num(p.defect)});
  write_csv(dir / "results.csv", {"pair", "omega_before", "omega_after", "defect"}, rows);
  StudyOutcome o;
  o.passed = rep.max_defect <= cfg.tol_symplectic;
  o.outputs = {"series.jsonl", "results.csv"};
  o.summary = "symplectic: pairs=" + std::to_string(rep.pairs.size()) + " max_defect=" + fmt("%.3e", rep.max_defect) +
              " " + pass_word(o.passed);
  return o;
}

StudyOutcome cmd_resonance(const SimConfig& cfg, const fs::path& dir) {
  const auto c = cfg.constants();
  ojson s = ojson::array();
  bool ok = true;
  long double worst_res = 0;
  long long evaluations = 0;
  for (TripleKind kind : {TripleKind::schrodinger, TripleKind::wave}) {
    const SweepReport r = resonance_sweep(kind, cfg.grid_size, cfg.samples, c, cfg.seed, 1e-10, cfg.jobs);
    ojson e;
    e["kind"] = kind == TripleKind::schrodinger ? "schrodinger" : "wave";
    e["count"] = r.triples;
    e["evaluations"] = r.evaluations;
    e["max_residual"] = double(r.max_residual);
    e["min_slack"] = double(r.min_slack);
    e["violations"] = r.violations;
    s.push_back(e);
    ok = ok && r.violations == 0;
    worst_res = std::max(worst_res, r.max_residual);
    evaluations += r.evaluations;
  }
  write_json(dir / "summary.json", s);
  StudyOutcome o;
  o.passed = ok;
  o.outputs = {"summary.json"};
  o.summary = "resonance: evaluations=" + std::to_string(evaluations) + " max_residual=" +
              fmt("%.3e", double(worst_res)) + " " + pass_word(ok);
  return o;
}

StudyOutcome cmd_bilinear(const SimConfig& cfg, const fs::path& dir) {
  BilinearScanSpec bs;
  bs.Ns = cfg.ns;
  bs.samples = cfg.samples;
  bs.c_res = cfg.c_res;
  bs.seed = cfg.seed;
  bs.jobs = cfg.jobs;
  const BilinearScanResult r = bilinear_ratio_scan(bs, cfg.constants());
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : r.rows)
    rows.push_back({num(row.N0), num(row.N1), num(row.N2), num(row.N_max), num(row.ratio),
                    std::to_string(row.seed), num(row.sample)});
  write_csv(dir / "results.csv", {"N0", "N1", "N2", "N_max", "ratio", "seed", "sample"}, rows);
  ojson s;
  s["slope"] = r.slope;
  s["intercept"] = r.intercept;
  s["delta"] = -r.slope;
  s["spearman"] = r.spearman;
  s["rejected"] = r.rejected;
  s["N_max"] = r.n_max;
  s["max_ratio"] = r.max_ratio;
  write_json(dir / "summary.json", s);
  StudyOutcome o;
  o.passed = r.n_max.size() >= 3 && r.slope < 0.0 && r.spearman < 0.0;
  o.outputs = {"results.csv", "summary.json"};
  o.summary = "bilinear-scan: slope=" + fmt("%.4f", r.slope) + " spearman=" + fmt("%.4f", r.spearman) + " " +
              pass_word(o.passed);
  return o;
}

StudyOutcome cmd_nonsqueeze(const SimConfig& cfg, const fs::path& dir) {
  const NonsqueezingReport rep = nonsqueezing_probe({StudyKind::nonsqueezing_probe, cfg});
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : rep.modes) rows.push_back({num(m.k), num(m.radius), num(m.ratio)});
  write_csv(dir / "results.csv", {"k", "radius", "ratio"}, rows);
  ojson s;
  s["R"] = rep.R;
  s["T"] = rep.T;
  s["samples"] = rep.samples;
  s["min_ratio"] = rep.min_ratio;
  write_json(dir / "summary.json", s);
  StudyOutcome o;
  // exact check only in the linear single-mode regime; otherwise observational
  if (!cfg.nonlinear && cfg.data_norm == 0.0 && cfg.probe_modes.size() == 1)
    o.passed = std::abs(rep.modes.front().ratio - 1.0) <= 1e-8;
  o.outputs = {"results.csv", "summary.json"};
  o.summary = "nonsqueeze: min_ratio=" + fmt("%.10f", rep.min_ratio) + " " + pass_word(o.passed);
  return o;
}

StudyOutcome cmd_gwp(const SimConfig& cfg, const fs::path& dir) {
  const GwpReport rep = gwp_demo({StudyKind::gwp_demo, cfg});
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rep.intervals.size(); ++i) {
    const double m = rep.boundary_mass[i + 1];
    rows.push_back({num(int(i)), num(rep.intervals[i].start), num(rep.intervals[i].end), num(m),
                    num(rep.mass0 > 0.0 ? std::abs(m - rep.mass0) / rep.mass0 : 0.0)});
  }
  write_csv(dir / "results.csv", {"interval", "start", "end", "mass", "drift"}, rows);
  ojson s;
  s["intervals"] = rep.intervals.size();
  s["mass"] = rep.mass0;
  s["wave_norm"] = rep.wave;
  s["max_mass_drift"] = rep.max_mass_drift;
  s["count_in_window"] = rep.count_in_window;
  s["expected_count"] = rep.expected_count;
  s["count_checked"] = rep.count_checked;
  s["count_ok"] = rep.count_ok;
  write_json(dir / "summary.json", s);
  StudyOutcome o;
  o.passed = rep.passed;
  o.outputs = {"results.csv", "summary.json"};
  o.summary = "gwp-demo: intervals=" + std::to_string(rep.intervals.size()) + " max_mass_drift=" +
              fmt("%.3e", rep.max_mass_drift) + " " + pass_word(o.passed);
  return o;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"simulate",      "truncate",   "conserve", "symplectic", "resonance",
                                                 "bilinear-scan", "nonsqueeze", "gwp-demo", "convergence"};
  return names;
}

StudyOutcome run_command(const std::string& command, const SimConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  fs::create_directories(out_dir);
  StudyOutcome o;
  if (command == "simulate")
    o = cmd_simulate(cfg, out_dir);
  else if (command == "conserve")
    o = cmd_conserve(cfg, out_dir);
  else if (command == "truncate")
    o = cmd_truncate(cfg, out_dir);
  else if (command == "convergence")
    o = cmd_convergence(cfg, out_dir);
  else if (command == "symplectic")
    o = cmd_symplectic(cfg, out_dir);
  else if (command == "resonance")
    o = cmd_resonance(cfg, out_dir);
  else if (command == "bilinear-scan")
    o = cmd_bilinear(cfg, out_dir);
  else if (command == "nonsqueeze")
    o = cmd_nonsqueeze(cfg, out_dir);
  else if (command == "gwp-demo")
    o = cmd_gwp(cfg, out_dir);
  else
    throw std::invalid_argument("unknown command '" + command + "'");
  save_manifest(cfg, command, o.outputs, out_dir);
  return o;
}

}  // namespace zakharov

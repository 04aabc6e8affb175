#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "zakharov/experiments.hpp"

using namespace zakharov;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("zakharov_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimConfig small_config() {
  SimConfig cfg;
  cfg.grid_size = 32;
  cfg.trunc_N = 8;
  cfg.data_band = 8;
  cfg.data_norm = 0.3;
  cfg.T = 0.05;
  cfg.dt = 5e-3;
  cfg.ns = {2, 4, 8};
  cfg.dts = {1e-2, 5e-3, 2.5e-3};
  cfg.samples = 16;
  return cfg;
}

}  // namespace

TEST_CASE("log-log fit recovers a power law") {
  const std::vector<double> x{1, 2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.7));
  const FitResult f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual <= 1e-12);
  CHECK(f.points == 5);
  const std::vector<double> two{1, 2};
  CHECK_THROWS(fit_loglog(two, two));
  const std::vector<double> bad{1, 0, 3};
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS(fit_loglog(three, bad));
}

TEST_CASE("spearman correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{2, 4, 9, 10, 30};
  const std::vector<double> down{5, 4, 3, 2, 1};
  CHECK(spearman(x, up) == doctest::Approx(1.0));
  CHECK(spearman(x, down) == doctest::Approx(-1.0));
  // ties take averaged ranks: x ranks 1.5,1.5,3 vs y ranks 1,2,3
  const std::vector<double> tx{1, 1, 2}, ty{1, 2, 3};
  CHECK(spearman(tx, ty) == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("random states are reproducible, mean zero and normalized") {
  const ZakharovState a = random_state(16, 8, 0.7, "gaussian", 2.0, 3, 1);
  const ZakharovState b = random_state(16, 8, 0.7, "gaussian", 2.0, 3, 1);
  const ZakharovState c = random_state(16, 8, 0.7, "gaussian", 2.0, 3, 2);
  CHECK(phase_space_norm(a - b) == 0.0);
  CHECK(phase_space_norm(a - c) > 0.0);
  CHECK(phase_space_norm(a) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(a.is_mean_zero());
  for (int k = 9; k <= 16; ++k) CHECK(a.u[k] == Complex{});
  const ZakharovState p = random_state(16, 16, 1.0, "power", 1.5, 3);
  CHECK(phase_space_norm(p) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phase_space_norm(random_state(8, 4, 0.0, "gaussian", 2.0, 1)) == 0.0);
  CHECK_THROWS(random_state(8, 9, 1.0, "gaussian", 2.0, 1));
  CHECK_THROWS(random_state(8, 4, 1.0, "flat", 2.0, 1));
}

TEST_CASE("truncation study with no nonlinearity is exact") {
  SimConfig cfg = small_config();
  cfg.nonlinear = false;
  const TruncationReport r = truncation_rate_study({StudyKind::truncation_rate, cfg});
  for (double e : r.errors) CHECK(e <= 1e-10);
}

TEST_CASE("truncation study on data inside every band sits at the noise floor") {
  SimConfig cfg = small_config();
  cfg.data_band = 1;  // min(ns) / 4 rounded up to one mode
  cfg.ns = {4, 8, 16};
  cfg.grid_size = 64;
  cfg.T = 1e-3;
  cfg.dt = 1e-4;
  const TruncationReport r = truncation_rate_study({StudyKind::truncation_rate, cfg});
  for (double e : r.errors) CHECK(e <= 1e-12);
}

TEST_CASE("truncation study needs a wide reference band") {
  SimConfig cfg = small_config();
  cfg.ns = {4, 8, 16};
  CHECK_THROWS(truncation_rate_study({StudyKind::truncation_rate, cfg}));
}

TEST_CASE("truncation errors decrease with N") {
  SimConfig cfg = small_config();
  cfg.grid_size = 32;
  cfg.data_band = 32;
  cfg.data_profile = "power";
  cfg.data_norm = 1.0;
  cfg.T = 0.02;
  cfg.dt = 1e-3;
  const TruncationReport r = truncation_rate_study({StudyKind::truncation_rate, cfg});
  CHECK(r.nonincreasing);
  REQUIRE(r.fit);
  CHECK(r.fit->slope < 0.0);
}

TEST_CASE("studies are deterministic") {
  SimConfig cfg = small_config();
  cfg.grid_size = 32;
  cfg.data_band = 32;
  const auto a = truncation_rate_study({StudyKind::truncation_rate, cfg});
  cfg.jobs = 2;
  const auto b = truncation_rate_study({StudyKind::truncation_rate, cfg});
  REQUIRE(a.errors.size() == b.errors.size());
  for (std::size_t i = 0; i < a.errors.size(); ++i) CHECK(a.errors[i] == b.errors[i]);
}

TEST_CASE("convergence on linear data skips the fit") {
  SimConfig cfg = small_config();
  cfg.nonlinear = false;
  const ConvergenceReport r = dt_convergence_study({StudyKind::dt_convergence, cfg});
  CHECK_FALSE(r.fit);
  for (double e : r.errors) CHECK(e <= 1e-12);
  CHECK(r.reference_dt == doctest::Approx(2.5e-3 / 16));
}

TEST_CASE("convergence order on nonlinear data") {
  SimConfig cfg = small_config();
  cfg.data_norm = 1.0;
  cfg.T = 0.2;
  cfg.dts = {8e-3, 4e-3, 2e-3};
  const ConvergenceReport r = dt_convergence_study({StudyKind::dt_convergence, cfg});
  REQUIRE(r.fit);
  CHECK(std::abs(r.fit->slope - 2.0) <= 0.2);
}

TEST_CASE("picard oracle agrees with the stepper on small data") {
  const ZakharovState z = random_state(16, 4, 0.1, "gaussian", 2.0, 9);
  const double d = picard_crosscheck(z, {8, 33, 1e-2}, {1.0, 0.5}, 1e-2 / 16);
  CHECK(d <= 1e-6);
}

TEST_CASE("nonsqueezing probe at T = 0") {
  SimConfig cfg = small_config();
  cfg.T = 0.0;
  cfg.probe_modes = {2};
  cfg.radius = 0.2;
  const NonsqueezingReport r = nonsqueezing_probe({StudyKind::nonsqueezing_probe, cfg});
  REQUIRE(r.modes.size() == 1);
  CHECK(r.modes[0].ratio == doctest::Approx(1.0).epsilon(1e-9));

  cfg.probe_modes = {1, 2, 3};
  const NonsqueezingReport m = nonsqueezing_probe({StudyKind::nonsqueezing_probe, cfg});
  for (const ModeRadius& mr : m.modes) CHECK(mr.ratio <= 1.0 + 1e-9);
  cfg.samples = 8;
  CHECK_THROWS(nonsqueezing_probe({StudyKind::nonsqueezing_probe, cfg}));
}

TEST_CASE("nonsqueezing probe under the linear flow keeps the radius") {
  SimConfig cfg = small_config();
  cfg.nonlinear = false;
  cfg.data_norm = 0.0;
  cfg.T = 0.5;
  cfg.dt = 1e-2;
  cfg.probe_modes = {3};
  cfg.samples = 24;
  const NonsqueezingReport r = nonsqueezing_probe({StudyKind::nonsqueezing_probe, cfg});
  cfg.T = 0.0;
  const NonsqueezingReport r0 = nonsqueezing_probe({StudyKind::nonsqueezing_probe, cfg});
  CHECK(std::abs(r.modes[0].radius / r0.modes[0].radius - 1.0) <= 1e-8);
}

TEST_CASE("enclosing radius of a regular polygon") {
  std::vector<std::array<Complex, 3>> pts;
  const Complex center(0.3, -0.2);
  for (int j = 0; j < 12; ++j) pts.push_back({center + 2.0 * std::polar(1.0, kTwoPi * j / 12), Complex{}, Complex{}});
  const ModeRadius r = enclosing_radius(pts, 1);
  CHECK(r.radius == doctest::Approx(2.0 / std::sqrt(kTwoPi)).epsilon(1e-10));
  CHECK(std::abs(r.center[0] - center) <= 1e-8);

  // off-center cloud: the search must beat the mean
  std::vector<std::array<Complex, 3>> skew{{Complex(0.0), {}, {}}, {Complex(0.1), {}, {}}, {Complex(0.2), {}, {}},
                                           {Complex(4.0), {}, {}}};
  const ModeRadius s = enclosing_radius(skew, 1);
  CHECK(s.radius == doctest::Approx(2.0 / std::sqrt(kTwoPi)).epsilon(1e-6));
  CHECK_THROWS(enclosing_radius({}, 1));
}

TEST_CASE("gwp schedule count tracks wave norm over mass") {
  ZakharovState z = ZakharovState::zero(8);
  z.u[1] = std::sqrt(kTwoPi);  // mass 1
  // ||n||_{H^{-1/2}} = 16 with a single cosine mode
  const double a = 16.0 * std::sqrt(kTwoPi * std::sqrt(2.0) / 2.0);
  z.n.set_mode(1, a);
  REQUIRE(mass(z) == doctest::Approx(1.0));
  REQUIRE(wave_norm(z) == doctest::Approx(16.0));
  const double c_step = 0.1, T = 1.0;
  const auto iv = gwp_schedule(z, T, {1.0, 0.5}, c_step);
  const double count = (c_step / mass(z)) / (T / double(iv.size()));
  CHECK(count >= 4.0);
  CHECK(count <= 64.0);
}

TEST_CASE("gwp demo on small data") {
  SimConfig cfg = small_config();
  cfg.T = 1.0;
  cfg.dt = 1e-2;
  const GwpReport r = gwp_demo({StudyKind::gwp_demo, cfg});
  CHECK(r.passed);
  CHECK(r.intervals.size() <= 10);
  for (double m : r.boundary_mass) CHECK(std::abs(m - r.mass0) <= 1e-12 * r.mass0);
}

TEST_CASE("csv writer") {
  const fs::path dir = scratch_dir("csv");
  fs::create_directories(dir);
  write_csv(dir / "a.csv", {"x", "y"}, {{"1", "2.5"}, {"3", "4"}});
  CHECK(slurp(dir / "a.csv") == "x,y\n1,2.5\n3,4\n");
  CHECK_THROWS(write_csv(dir / "b.csv", {"x", "y"}, {{"1"}}));
  fs::remove_all(dir);
}

TEST_CASE("every command writes its outputs and a manifest") {
  SimConfig cfg = small_config();
  cfg.samples = 16;
  cfg.pairs = 4;
  cfg.trunc_N = 4;
  cfg.ns = {2, 4, 8};
  for (const std::string& cmd : command_names()) {
    SimConfig c = cfg;
    if (cmd == "bilinear-scan") {
      c.ns = {4, 8, 16};
      c.samples = 3;
    }
    if (cmd == "resonance") {
      c.grid_size = 16;
      c.samples = 4;
      c.data_band = 8;
    }
    const fs::path dir = scratch_dir("cmd_" + cmd);
    CAPTURE(cmd);
    const StudyOutcome o = run_command(cmd, c, dir);
    CHECK_FALSE(o.summary.empty());
    CHECK(o.summary.find('\n') == std::string::npos);
    for (const std::string& f : o.outputs) CHECK(fs::exists(dir / f));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["study"] == cmd);
    CHECK(manifest["version"] == kVersionTag);
    CHECK(manifest["outputs"].size() == o.outputs.size());
    fs::remove_all(dir);
  }
  CHECK_THROWS(run_command("fly", cfg, scratch_dir("fly")));
}

TEST_CASE("rerunning from a manifest reproduces the outputs") {
  SimConfig cfg = small_config();
  const fs::path a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
  run_command("truncate", cfg, a);
  const SimConfig back = load_config(a / "manifest.json");
  CHECK(back == cfg);
  run_command("truncate", back, b);
  CHECK(slurp(a / "results.csv") == slurp(b / "results.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  fs::remove_all(a);
  fs::remove_all(b);
}

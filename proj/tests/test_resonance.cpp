#include "doctest.h"
#include "zakharov/resonance.hpp"

using namespace zakharov;

namespace {

const PhysicalConstants kC{1.0, 0.5};

// direct trapezoid over [-2, 2]; the bump is smooth so this converges fast
double bump_transform_oracle(double sigma, int power) {
  const int n = 200000;
  const double h = 4.0 / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = -2.0 + i * h;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * std::cos(sigma * t) * std::pow(bump(t), power);
  }
  return sum * h;
}

}  // namespace

TEST_CASE("schrodinger modulation example") {
  FrequencyTriple t{3, 2, 1, TripleKind::schrodinger, 4.5, 4.0, 0.5};
  const ModulationBound b = modulation_bound(t, kC);
  CHECK(b.lhs_max == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(b.rhs_bound == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(std::abs(b.residual) <= 1e-14);
}

TEST_CASE("wave modulation example") {
  FrequencyTriple t{1, 2, 1, TripleKind::wave, 3.0, 4.0, 1.0};
  const ModulationBound b = modulation_bound(t, kC);
  CHECK(b.lhs_max == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(b.rhs_bound == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::abs(b.residual) <= 1e-14);
}

TEST_CASE("triple constraints are enforced") {
  CHECK_THROWS(modulation_bound({3, 2, 2, TripleKind::schrodinger, 1.0, 0.5, 0.5}, kC));
  CHECK_THROWS(modulation_bound({3, 2, 1, TripleKind::schrodinger, 1.0, 0.5, 0.6}, kC));
  CHECK_THROWS(modulation_bound({0, 1, -1, TripleKind::schrodinger, 0.0, 0.0, 0.0}, kC));
  CHECK_THROWS(modulation_bound({1, 2, 2, TripleKind::wave, 0.0, 0.0, 0.0}, kC));
}

TEST_CASE("all three on their characteristics forces a positive lower bound") {
  // the identity makes the lhs at least rhs/3, and rhs > 0 because beta/alpha is not an integer
  for (int k1 = -6; k1 <= 6; ++k1)
    for (int k2 = -6; k2 <= 6; ++k2) {
      const int k0 = k1 + k2;
      if (k0 == 0 || k2 == 0) continue;
      const double tau1 = kC.alpha * k1 * k1;
      const double tau2 = kC.beta * std::abs(k2) * (k2 > 0 ? 1.0 : -1.0);
      const ModulationBound b = modulation_bound({k0, k1, k2, TripleKind::schrodinger, tau1 + tau2, tau1, tau2}, kC);
      CHECK(b.rhs_bound > 0.0);
      CHECK(b.lhs_max >= b.rhs_bound / 3.0 - 1e-12);
      CHECK(std::abs(b.residual) <= 1e-12);
    }
}

TEST_CASE("long double bound agrees with the double path") {
  const auto l = modulation_bound_ld(3, 2, 1, TripleKind::schrodinger, 4.0L, 0.5L, 1.0L, 0.5L);
  CHECK(double(l.lhs_max) == doctest::Approx(4.5));
  CHECK(double(l.rhs_bound) == doctest::Approx(4.5));
  CHECK(std::fabs(l.residual) <= 1e-15L);
}

TEST_CASE("classify examples") {
  CHECK(classify_triple(8, 4, 4) == TripleClass::resonant);
  CHECK(classify_triple(9, 8, 1) == TripleClass::nonresonant);
  for (int k : {1, 5, 17, 300}) CHECK(classify_triple(k, k, k) == TripleClass::resonant);
  CHECK(classify_triple(0, 1, -1) == TripleClass::resonant);
  CHECK(classify_triple(9, 8, 1, 10.0) == TripleClass::resonant);
}

TEST_CASE("classification is symmetric and sign blind") {
  for (int a = -12; a <= 12; ++a)
    for (int b = -12; b <= 12; ++b) {
      const int c = a + b;
      const TripleClass ref = classify_triple(c, a, b);
      CHECK(classify_triple(a, c, b) == ref);
      CHECK(classify_triple(b, a, c) == ref);
      CHECK(classify_triple(-c, -a, -b) == ref);
      CHECK(classify_triple(c, -a, b) == ref);
    }
}

TEST_CASE("small resonance sweeps find no violations") {
  for (TripleKind kind : {TripleKind::schrodinger, TripleKind::wave}) {
    const SweepReport r = resonance_sweep(kind, 8, 40, kC, 3);
    CHECK(r.triples > 0);
    CHECK(r.evaluations == r.triples * 40);
    CHECK(r.violations == 0);
    CHECK(r.max_residual <= 1e-10L);
    CHECK(r.min_slack >= 0.0L);
  }
  CHECK_THROWS(resonance_sweep(TripleKind::wave, 4, 4, PhysicalConstants{1.0, 2.0}, 1));
}

TEST_CASE("xsb norm examples") {
  SpaceTimeField f;
  f.constants = kC;
  f.dtau = 0.25;
  CHECK(xsb_norm(f, 0.3, 0.5) == 0.0);

  f.rows.push_back({1, 4, {Complex(3.0, 4.0)}});  // tau = 1 = alpha * 1^2
  for (double b : {-0.5, 0.0, 0.5, 2.0})
    CHECK(xsb_norm(f, 0.0, b) == doctest::Approx(5.0 * std::sqrt(0.25)).epsilon(1e-15));

  SpaceTimeField g = f;
  g.rows = {{2, -3, {Complex(1.0), Complex(0.0, 2.0), Complex(-1.0, 1.0)}}, {-1, 0, {Complex(0.5)}}};
  const double plain = std::sqrt(0.25 * (1.0 + 4.0 + 2.0 + 0.25));
  CHECK(xsb_norm(g, 0.0, 0.0) == doctest::Approx(plain).epsilon(1e-15));
}

TEST_CASE("xsb norm is monotone in b and s") {
  SpaceTimeField f;
  f.constants = kC;
  f.dtau = 0.5;
  f.rows = {{3, -10, std::vector<Complex>(30, Complex(0.3, -0.1))}, {-2, 5, std::vector<Complex>(12, Complex(1.0))}};
  double prev = 0.0;
  for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double v = xsb_norm(f, 0.0, b);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(xsb_norm(f, 1.0, 0.0) >= xsb_norm(f, 0.0, 0.0));
  f.flavor = Dispersion::wave;
  CHECK(modulation_weight(f, 2, -1.0) == doctest::Approx(1.0));
}

TEST_CASE("l2l1 norm and composites") {
  SpaceTimeField f;
  f.constants = kC;
  f.dtau = 0.25;
  f.rows = {{1, 4, {Complex(2.0)}}, {1, 8, {Complex(0.0, 2.0)}}};
  // rows sharing k add inside the l^2 sum; weight <tau - 1>^{-gamma}
  const double g1 = 0.25 * (2.0 + 2.0 / std::sqrt(2.0));
  CHECK(l2l1_norm(f, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l2l1_norm(f, 0.0, 1.0) == doctest::Approx(g1).epsilon(1e-15));
  CHECK(y_norm(f, 0.0) == doctest::Approx(xsb_norm(f, 0.0, 0.5) + 1.0));
  CHECK(z_norm(f, 0.0) == doctest::Approx(xsb_norm(f, 0.0, -0.5) + g1));
}

TEST_CASE("bump shape") {
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(1.0) == 1.0);
  CHECK(bump(-2.0) == 0.0);
  CHECK(bump(2.5) == 0.0);
  CHECK(bump(1.5) == doctest::Approx(0.5));
  for (double s : {0.1, 0.3, 0.49}) CHECK(bump(1.5 + s) + bump(1.5 - s) == doctest::Approx(1.0).epsilon(1e-14));
  double prev = 1.0;
  for (double t = 1.0; t <= 2.0; t += 0.01) {
    CHECK(bump(t) <= prev);
    prev = bump(t);
  }
}

TEST_CASE("bump transform against quadrature") {
  CHECK(bump_transform(0.0, 1) == doctest::Approx(3.0).epsilon(1e-9));
  for (double sigma : {0.0, 0.37, 1.0, 3.7, 10.25, 40.0})
    for (int p : {1, 2}) {
      const double want = bump_transform_oracle(sigma, p);
      CHECK(std::abs(bump_transform(sigma, p) - want) <= 1e-6);
      CHECK(bump_transform(-sigma, p) == bump_transform(sigma, p));
    }
  CHECK(std::abs(bump_transform(500.0, 1)) <= 1e-3);
  CHECK_THROWS(bump_transform(1.0, 3));
}

TEST_CASE("bilinear scan is deterministic and well formed") {
  BilinearScanSpec spec;
  spec.Ns = {4, 8, 16};
  spec.samples = 6;
  spec.seed = 5;
  const BilinearScanResult a = bilinear_ratio_scan(spec, kC);
  const BilinearScanResult b = bilinear_ratio_scan(spec, kC);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
  for (const ScanRow& r : a.rows) {
    CHECK(r.ratio > 0.0);
    CHECK(r.N_max == std::max({r.N0, r.N1, r.N2}));
    CHECK(classify_triple(r.N0, r.N1, r.N2) == TripleClass::nonresonant);
  }
  CHECK(a.n_max.size() == 3);
}

TEST_CASE("bilinear scan drops samples with no nonresonant interaction") {
  BilinearScanSpec spec;
  spec.Ns = {4, 8};
  spec.samples = 3;
  spec.c_res = 1e9;  // every triple counts as resonant
  const BilinearScanResult r = bilinear_ratio_scan(spec, kC);
  CHECK(r.rows.empty());
  CHECK(r.rejected == 8 * 6);
  CHECK(r.n_max.empty());

  spec.Ns = {4, 6};
  CHECK_THROWS(bilinear_ratio_scan(spec, kC));
  spec.Ns = {8, 4};
  CHECK_THROWS(bilinear_ratio_scan(spec, kC));
}

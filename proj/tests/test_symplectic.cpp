#include <random>
#include <sstream>

#include "doctest.h"
#include "zakharov/experiments.hpp"
#include "zakharov/symplectic.hpp"

using namespace zakharov;

namespace {

const PhysicalConstants kC{1.0, 0.5};

double max_mode_diff(const ZakharovState& a, const ZakharovState& b) {
  double d = 0.0;
  for (int k = -a.grid_size(); k <= a.grid_size(); ++k) {
    d = std::max(d, std::abs(a.u[k] - b.u[k]));
    d = std::max(d, std::abs(a.n[k] - b.n[k]));
    d = std::max(d, std::abs(a.ndot[k] - b.ndot[k]));
  }
  return d;
}

TangentVector tangent(int K, unsigned index) { return random_tangent(K, K, 77, index); }

}  // namespace

TEST_CASE("pairing examples") {
  FourierField f(3, false), g(3, false);
  f[1] = kTwoPi;                // e^{ix}
  g[1] = Complex(0.0, kTwoPi);  // i e^{ix}
  CHECK(schrodinger_pairing(f, g) == doctest::Approx(kTwoPi).epsilon(1e-15));

  FourierField cs(3, true), sn(3, true);
  cs.set_mode(1, kPi);                   // cos x
  sn.set_mode(1, Complex(0.0, -kPi));    // sin x
  CHECK(antiderivative_pairing(cs, sn) == doctest::Approx(-kPi).epsilon(1e-15));
}

TEST_CASE("symplectic form vanishes on the diagonal and is antisymmetric") {
  for (unsigned i = 0; i < 50; ++i) {
    const TangentVector a = tangent(8, 2 * i), b = tangent(8, 2 * i + 1);
    CHECK(std::abs(symplectic_form(a, a, kC)) <= 1e-15);
    const double ab = symplectic_form(a, b, kC), ba = symplectic_form(b, a, kC);
    CHECK(std::abs(ab + ba) <= 1e-13 * (std::abs(ab) + 1));
  }
}

TEST_CASE("symplectic form is bilinear") {
  for (unsigned i = 0; i < 30; ++i) {
    const TangentVector a = tangent(6, 3 * i), b = tangent(6, 3 * i + 1), c = tangent(6, 3 * i + 2);
    const double s = 0.37 + i;
    const double lhs = symplectic_form(s * a + b, c, kC);
    const double rhs = s * symplectic_form(a, c, kC) + symplectic_form(b, c, kC);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("symplectic form requires mean-zero wave components") {
  TangentVector a = ZakharovState::zero(3);
  a.n[0] = 1.0;
  CHECK_THROWS(symplectic_form(a, a, kC));
}

TEST_CASE("J squares to minus the identity") {
  for (unsigned i = 0; i < 20; ++i) {
    const TangentVector a = tangent(10, i);
    const TangentVector jj = apply_J(apply_J(a));
    CHECK(max_mode_diff(jj, -1.0 * a) <= 1e-13);
  }
}

TEST_CASE("inner product is symmetric and positive") {
  for (unsigned i = 0; i < 20; ++i) {
    const TangentVector a = tangent(8, 2 * i), b = tangent(8, 2 * i + 1);
    CHECK(inner_product(a, b, kC) == doctest::Approx(inner_product(b, a, kC)).epsilon(1e-13));
    CHECK(inner_product(a, a, kC) > 0.0);
  }
}

TEST_CASE("omega equals the inner product against J") {
  for (unsigned i = 0; i < 100; ++i) {
    const TangentVector a = tangent(12, 2 * i), b = tangent(12, 2 * i + 1);
    const double w = symplectic_form(a, b, kC);
    const double g = inner_product(a, apply_J(b), kC);
    CHECK(std::abs(w - g) <= 1e-11 * std::max(std::abs(w), 1e-300));
  }
}

TEST_CASE("J on the Schrodinger block") {
  TangentVector a = ZakharovState::zero(3);
  a.u[1] = kTwoPi;
  const TangentVector j = apply_J(a);
  CHECK(std::abs(j.u[1] - Complex(0.0, -kTwoPi)) < 1e-15);
  CHECK(j.n[1] == Complex{});
}

TEST_CASE("omega is nondegenerate on every basis direction") {
  const int K = 5;
  for (int k = -K; k <= K; ++k)
    for (int part = 0; part < 3; ++part)
      for (Complex val : {Complex(1.0), Complex(0.0, 1.0)}) {
        if (part > 0 && k <= 0) continue;
        TangentVector e = ZakharovState::zero(K);
        if (part == 0) e.u[k] = val;
        if (part == 1) e.n.set_mode(k, val);
        if (part == 2) e.ndot.set_mode(k, val);
        CHECK(std::abs(symplectic_form(e, apply_J(e), kC)) > 1e-8);
      }
}

TEST_CASE("vector field at zero and on linear data") {
  const TangentVector x = hamiltonian_vector_field(ZakharovState::zero(6), kC, 1e-5);
  CHECK(max_mode_diff(x, ZakharovState::zero(6)) <= 1e-12);

  ZakharovState z = random_state(8, 6, 0.8, "gaussian", 2.0, 3);
  z.u = FourierField(8, false);
  const TangentVector e = explicit_vector_field(z, kC);
  for (int k = -8; k <= 8; ++k) {
    CHECK(e.u[k] == Complex{});
    CHECK(std::abs(e.n[k] - z.ndot[k]) <= 1e-15);
    CHECK(std::abs(e.ndot[k] + kC.beta * kC.beta * double(k) * k * z.n[k]) <= 1e-14);
  }
}

TEST_CASE("finite-difference hamiltonian field matches the explicit field") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const ZakharovState z = random_state(8, 8, 1.0, "gaussian", 2.0, 20 + seed);
    const TangentVector fd = hamiltonian_vector_field(z, kC, 1e-5);
    const TangentVector ex = explicit_vector_field(z, kC);
    CHECK(max_mode_diff(fd, ex) <= 1e-6);
  }
  CHECK_THROWS(hamiltonian_vector_field(ZakharovState::zero(3), kC, 0.0));
}

TEST_CASE("hamiltonian is stationary along its own field") {
  const ZakharovState z = random_state(8, 8, 1.0, "gaussian", 2.0, 30);
  TangentVector x = explicit_vector_field(z, kC);
  x = (1.0 / phase_space_norm(x)) * x;
  const double eps = 1e-5;
  const double dH = (hamiltonian(z + eps * x, kC) - hamiltonian(z - eps * x, kC)) / (2 * eps);
  CHECK(std::abs(dH) <= 1e-8);
}

TEST_CASE("random tangents have unit norm and the requested support") {
  const TangentVector v = random_tangent(16, 5, 3, 7);
  CHECK(phase_space_norm(v) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.is_mean_zero());
  for (int k = 6; k <= 16; ++k) {
    CHECK(v.u[k] == Complex{});
    CHECK(v.n[k] == Complex{});
  }
  CHECK(max_mode_diff(v, random_tangent(16, 5, 3, 7)) == 0.0);
}

TEST_CASE("symplectic check on exact maps") {
  const ZakharovState z0 = random_state(8, 4, 0.5, "gaussian", 2.0, 40);
  SymplecticCheck chk;
  chk.N = 4;
  chk.pairs = 10;
  const SymplecticReport id = check_symplectic(identity_flow(), z0, chk, kC);
  CHECK(id.max_defect == 0.0);
  CHECK(id.pairs.size() == 10);
  const SymplecticReport sc = check_symplectic(scaling_flow(2.0), z0, chk, kC);
  CHECK(sc.max_defect == 3.0);
  for (const PairDefect& p : sc.pairs) CHECK(p.defect == 3.0);
}

TEST_CASE("symplectic check on the free flow") {
  const ZakharovState z0 = random_state(12, 8, 0.5, "gaussian", 2.0, 41);
  SymplecticCheck chk;
  chk.N = 8;
  chk.pairs = 20;
  const SymplecticReport r = check_symplectic(stepper_flow(0.3, 1e-2, std::nullopt, kC, false), z0, chk, kC);
  CHECK(r.max_defect <= 1e-8);
}

TEST_CASE("symplectic check on the truncated nonlinear flow") {
  const ZakharovState z0 = random_state(16, 8, 0.5, "gaussian", 2.0, 42);
  SymplecticCheck chk;
  chk.N = 8;
  chk.pairs = 20;
  const SymplecticReport r = check_symplectic(stepper_flow(0.05, 1e-3, 8, kC), z0, chk, kC);
  CHECK(r.max_defect <= 1e-5);
  const SymplecticReport f = check_symplectic(stepper_flow(0.05, 1e-3, std::nullopt, kC), z0, chk, kC);
  CHECK(f.max_defect <= 1e-5);
}

TEST_CASE("symplectic report jsonl") {
  SymplecticCheck chk;
  chk.N = 2;
  chk.pairs = 3;
  const auto r = check_symplectic(identity_flow(), ZakharovState::zero(4), chk, kC);
  std::stringstream ss;
  write_jsonl(ss, r);
  int lines = 0;
  for (std::string l; std::getline(ss, l);) ++lines;
  CHECK(lines == 3);
}

TEST_CASE("ball membership") {
  const ZakharovState c = random_state(6, 4, 0.7, "gaussian", 2.0, 50);
  CHECK(ball_contains({c, 1e-9}, c));
  const ZakharovState z = random_state(6, 4, 0.3, "gaussian", 2.0, 51);
  const double R = phase_space_norm(z - c);
  CHECK(ball_contains({c, R}, z));
  CHECK_FALSE(ball_contains({c, 0.99 * R}, z));
  CHECK_THROWS(ball_contains({c, 0.0}, z));
}

TEST_CASE("cylinder membership") {
  ZakharovState w = ZakharovState::zero(3);
  w.u[1] = 1.0;
  w.n.set_mode(1, 2.0);
  w.ndot.set_mode(1, 8.0);
  CylinderSpec cyl;
  cyl.mode = 1;
  cyl.radius = 11.0;
  CHECK(cylinder_contains(cyl, w));
  cyl.radius = 10.999;
  CHECK_FALSE(cylinder_contains(cyl, w));
  cyl.radius = 1.0;
  cyl.eta = {Complex(1.0), Complex(2.0), Complex(8.0)};
  CHECK(cylinder_contains(cyl, w));
  CylinderSpec zero_mode;
  zero_mode.mode = 0;
  CHECK_THROWS(cylinder_contains(zero_mode, w));
}

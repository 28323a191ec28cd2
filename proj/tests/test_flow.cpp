#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maslovp/error.hpp"
#include "maslovp/flow.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace maslovp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("constant coefficient flow is exp(J B)") {
  Matrix c(2, 2);
  c << 2.0, 0.3, 0.3, 1.0;
  const Monodromy mono = fundamental_solution(CoefficientPath::constant(c));
  // rotating frame with theta = 0 is the plain constant-coefficient flow
  const Matrix expected = oracle::rotating_frame_monodromy(0.0, c);
  CHECK(max_abs(mono.gamma_1 - expected) < 1e-10);
  CHECK(mono.det == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mono.symplectic_drift < 1e-10);
  CHECK(mono.ode_error_estimate < 1e-9);
}

TEST_CASE("rotating-frame coefficients match the closed-form monodromy") {
  std::mt19937_64 rng(42);
  for (double theta : {kPi / 2, 1.0, 2.5}) {
    const SymplecticBoundary p = SymplecticBoundary::rotation(1, theta);
    const Matrix c = suite::random_symmetric(2, 1.5, rng);
    const CoefficientPath path = CoefficientPath::trig(c, {}, {}, &p);
    const Monodromy mono = fundamental_solution(path);
    CHECK(max_abs(mono.gamma_1 - oracle::rotating_frame_monodromy(theta, c)) < 1e-9);
  }
}

TEST_CASE("sample trajectory is kept on request") {
  FlowOptions opts;
  opts.keep_samples = true;
  const Monodromy mono = fundamental_solution(CoefficientPath::scalar(1, 1.0), opts);
  REQUIRE(mono.samples.size() == mono.times.size());
  REQUIRE(static_cast<int>(mono.samples.size()) == mono.steps + 1);
  const std::size_t mid = mono.samples.size() / 2;
  CHECK(max_abs(mono.samples[mid] - oracle::rotation2(mono.times[mid])) < 1e-10);
}

TEST_CASE("Floquet nullity on rotation boundaries") {
  for (double theta : {kPi / 2, 1.0}) {
    const SymplecticBoundary p = SymplecticBoundary::rotation(1, theta);
    // gamma(1) = R(b): the kernel is full exactly at b = theta + 2 pi j
    for (double b : {theta, theta + 2 * kPi, theta - 2 * kPi, theta + 0.5, 0.0}) {
      const FloquetNullity f = floquet_nullity(p, CoefficientPath::scalar(1, b));
      CHECK(f.nu == oracle::window_nullity(theta, b));
    }
  }
  CHECK(floquet_nullity(SymplecticBoundary::rotation(2, 0.0), CoefficientPath::scalar(2, 0.0)).nu == 4);
}

TEST_CASE("tilde transform turns a P problem into a loop problem") {
  std::mt19937_64 rng(8);
  const SymplecticBoundary p = suite::random_boundary(2, rng);
  const CoefficientPath b = suite::random_trig(p, 1, 0.0, rng);
  const Matrix g = fundamental_solution(b).gamma_1;
  const Matrix gt = fundamental_solution(tilde_transform(p, b)).gamma_1;
  // gamma~(1) = gamma_P(1)^{-1} gamma(1) = P^T gamma(1)
  CHECK(max_abs(gt - p.P().transpose() * g) < 1e-8);
}

TEST_CASE("verified step count grows with stiffness") {
  const int easy = verified_steps(CoefficientPath::scalar(1, 1.0));
  const int hard = verified_steps(CoefficientPath::scalar(1, 40.0));
  CHECK(easy >= 2048);
  CHECK(hard > easy);
}

TEST_CASE("the step cap is reported") {
  FlowOptions opts;
  opts.steps = 64;
  opts.max_steps = 128;
  try {
    fundamental_solution(CoefficientPath::scalar(1, 400.0), opts);
    FAIL("expected AccuracyNotReached");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AccuracyNotReached);
  }
}

TEST_CASE("monodromy has unit determinant") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 3, rng);
    const Monodromy mono = fundamental_solution(suite::random_trig(p, k % 3, 0.0, rng));
    CHECK(mono.gamma_1.determinant() == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("scalar coefficients: nullity is the kernel of exp(bJ) - P") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 8; ++k) {
    const int n = 1 + k % 2;
    const SymplecticBoundary p = suite::random_boundary(n, rng);
    // resonant choice: b equal to one of the phases of P, and a non-resonant one
    const double phase = p.phases()(0);
    for (double b : {phase + 2 * kPi, phase + 0.37}) {
      const FloquetNullity f = floquet_nullity(p, CoefficientPath::scalar(n, b));
      const Matrix expected = expm(b * symplectic_J(n));
      CHECK(max_abs(f.gamma_1 - expected) < 1e-9);
      int resonant = 0;
      for (Eigen::Index i = 0; i < p.phases().size(); ++i) {
        double d = std::remainder(p.phases()(i) - b, 2 * kPi);
        if (std::abs(d) < 1e-9) resonant += 2;
      }
      CHECK(f.nu == resonant);
    }
  }
}

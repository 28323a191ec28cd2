#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maslovp/error.hpp"
#include "maslovp/hamiltonian.hpp"
#include "maslovp/model.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace maslovp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("rotation boundary has the expected logarithm and order") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  CHECK(max_abs(p.P() - oracle::rotation2(kPi / 2)) < 1e-15);
  CHECK(max_abs(p.M1() - kPi / 2 * oracle::J2()) < 1e-14);
  CHECK(p.order() == 4);
  CHECK(p.dim_ker_P_minus_I() == 0);
  CHECK(max_abs(p.gamma_P(1.0) - p.P()) < 1e-14);
  CHECK(max_abs(p.generator_coefficient() - kPi / 2 * Matrix::Identity(2, 2)) < 1e-14);

  const SymplecticBoundary irrational = SymplecticBoundary::rotation(1, 1.0);
  CHECK_FALSE(irrational.order().has_value());
  CHECK(SymplecticBoundary::rotation(2, 0.0).dim_ker_P_minus_I() == 4);
}

TEST_CASE("validation rejects matrices that are not orthogonal symplectic") {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  try {
    SymplecticBoundary::validate(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOrthogonal);
  }
  // a reflection is orthogonal but reverses the symplectic form
  Matrix reflect = Matrix::Identity(2, 2);
  reflect(1, 1) = -1.0;
  try {
    SymplecticBoundary::validate(reflect);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSymplectic);
  }
  CHECK_THROWS_AS(SymplecticBoundary::validate(Matrix::Identity(3, 3)), Error);
}

TEST_CASE("order detection") {
  CHECK(detect_order(oracle::rotation2(2 * kPi / 5)) == 5);
  CHECK(detect_order(Matrix::Identity(2, 2)) == 1);
  CHECK_FALSE(detect_order(oracle::rotation2(1.0)).has_value());
}

TEST_CASE("coefficient path arithmetic") {
  Matrix c(2, 2);
  c << 2, 1, 1, 3;
  const CoefficientPath a = CoefficientPath::constant(c);
  const CoefficientPath b = CoefficientPath::scalar(1, 5.0);
  CHECK(a.kind() == "constant");
  CHECK(max_abs(a.shifted(1.5)(0.3) - (c + 1.5 * Matrix::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(a.lerp(b, 0.25)(0.7) - (0.75 * c + 1.25 * Matrix::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(a.plus(b)(0.1) - (c + 5.0 * Matrix::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(a.scaled(-2.0)(0.9) + 2.0 * c) < 1e-15);
  CHECK(a.constant_value().has_value());
}

TEST_CASE("trig paths in the boundary frame are equivariant") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n) {
    const SymplecticBoundary p = suite::random_boundary(n, rng);
    const CoefficientPath path = suite::random_trig(p, 2, 0.0, rng);
    const EquivarianceReport rep = check_equivariance(p, path);
    CHECK(rep.pass);
    CHECK(rep.max_violation < 1e-10);
    for (double t : {0.1, 0.6}) {
      const Matrix next = path.extended(t + 1.0, p);
      CHECK(max_abs(p.P().transpose() * next * p.P() - path(t)) < 1e-12);
    }
  }
}

TEST_CASE("a constant non-commuting coefficient breaks equivariance") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  Matrix c(2, 2);
  c << 1, 0, 0, 3;
  CHECK_FALSE(check_equivariance(p, CoefficientPath::constant(c)).pass);
  CHECK(check_equivariance(p, CoefficientPath::scalar(1, 3.0)).pass);
}

TEST_CASE("sampled paths interpolate and only compare the endpoints") {
  std::vector<Matrix> values;
  for (int k = 0; k <= 16; ++k) values.push_back((1.0 + k / 16.0) * Matrix::Identity(2, 2));
  const CoefficientPath s = CoefficientPath::samples(values);
  CHECK(s(0.5)(0, 0) == doctest::Approx(1.5));
  CHECK(s(0.37)(1, 1) == doctest::Approx(1.37).epsilon(1e-12));
  const EquivarianceReport rep = check_equivariance(SymplecticBoundary::rotation(1, 0.0), s);
  CHECK(rep.samples == 1);
  CHECK_FALSE(rep.pass);  // B(1) = 2I differs from B(0) = I
}

TEST_CASE("ordering margin and J commutator") {
  const CoefficientPath lo = CoefficientPath::scalar(1, 1.0);
  Matrix c(2, 2);
  c << 3, 0.5, 0.5, 2;
  const CoefficientPath hi = CoefficientPath::constant(c);
  CHECK(min_ordering_margin(lo, hi) == doctest::Approx(1.5 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(max_J_commutator(lo) == 0.0);
  CHECK(max_J_commutator(hi) > 0.1);
}

TEST_CASE("radial Hamiltonian derivatives agree with finite differences") {
  const RadialHamiltonian h(1, 0.05, 4.45, 1.0);
  const DerivativeCheck d = check_derivatives(h, SymplecticBoundary::rotation(1, kPi / 2));
  CHECK(d.gradient_rel_error < 1e-6);
  CHECK(d.hessian_rel_error < 1e-6);
  CHECK(d.equivariance_violation < 1e-12);
  Vector zero = Vector::Zero(2);
  CHECK(max_abs(h.gradient(0.0, zero)) == 0.0);
  // H''(0) = 2 h'(0) I = 2 (a + c alpha) I
  CHECK(max_abs(h.hessian(0.0, zero) - 2.0 * (0.05 + 4.45) * Matrix::Identity(2, 2)) < 1e-12);
  CHECK(h.dh(1e6) == doctest::Approx(0.05));
}

TEST_CASE("callback Hamiltonian with a wrong gradient is detected") {
  const CallbackHamiltonian h(
      1, [](double, const Vector& x) { return x.squaredNorm(); },
      [](double, const Vector& x) -> Vector { return 3.0 * x; },
      [](double, const Vector&) -> Matrix { return 2.0 * Matrix::Identity(2, 2); }, true, true);
  const DerivativeCheck d = check_derivatives(h, SymplecticBoundary::rotation(1, 0.0));
  CHECK(d.gradient_rel_error > 0.1);
  CHECK(d.hessian_rel_error > 0.1);
}

TEST_CASE("standard boundary examples") {
  const SymplecticBoundary j = SymplecticBoundary::validate(oracle::J2());
  CHECK(max_abs(j.M1() - kPi / 2 * oracle::J2()) < 1e-12);
  CHECK(j.order() == 4);
  const SymplecticBoundary minus = SymplecticBoundary::validate(-Matrix::Identity(2, 2));
  CHECK(max_abs(minus.M1() - kPi * oracle::J2()) < 1e-12);
  CHECK(minus.near_branch_cut());
  const SymplecticBoundary id = SymplecticBoundary::validate(Matrix::Identity(2, 2));
  CHECK(max_abs(id.M1()) == 0.0);
  CHECK(id.order() == 1);
  Matrix squeeze = Matrix::Zero(2, 2);
  squeeze(0, 0) = 2.0;
  squeeze(1, 1) = 0.5;
  try {
    SymplecticBoundary::validate(squeeze);
    FAIL("expected NotOrthogonal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOrthogonal);
  }
}

TEST_CASE("a rotated diagonal coefficient is equivariant for the matching rotation") {
  for (double theta : {kPi / 2, 1.0}) {
    const SymplecticBoundary p = SymplecticBoundary::rotation(1, theta);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const CoefficientPath path = CoefficientPath::function(2, [theta, d](double t) -> Matrix {
      const Matrix r = oracle::rotation2(theta * t);
      return r * d * r.transpose();
    });
    CHECK(check_equivariance(p, path).pass);
  }
}

TEST_CASE("every validated boundary reconstructs P and commutes with J") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 30; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 3, rng);
    CHECK(max_abs(expm(p.M1()) - p.P()) < 1e-8);
    CHECK(max_abs(p.M1() * p.J() - p.J() * p.M1()) < 1e-10);
    for (Eigen::Index i = 0; i < p.phases().size(); ++i) {
      CHECK(p.phases()(i) > -kPi - 1e-12);
      CHECK(p.phases()(i) <= kPi + 1e-12);
    }
  }
}

TEST_CASE("rotation by theta + 2 pi gives the same boundary") {
  for (double theta : {0.4, 1.0, 2.5}) {
    const SymplecticBoundary a = SymplecticBoundary::rotation(1, theta);
    const SymplecticBoundary b = SymplecticBoundary::rotation(1, theta + 2 * kPi);
    CHECK(max_abs(a.P() - b.P()) < 1e-12);
    CHECK(max_abs(a.M1() - b.M1()) < 1e-12);
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "maslovp/error.hpp"
#include "maslovp/hamiltonian.hpp"
#include "maslovp/shoot.hpp"
#include "oracles.hpp"

using namespace maslovp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("trivial solution has zero residual") {
  const RadialHamiltonian h(1, 0.05, 4.45, 1.0);
  const ShootResidual r = shoot_residual(h, SymplecticBoundary::rotation(1, kPi / 2), Vector::Zero(2));
  CHECK(r.residual.norm() == 0.0);
}

TEST_CASE("shooting Jacobian matches finite differences at random points") {
  const RadialHamiltonian h(1, 0.05, 4.45, 1.0);
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x0(2);
    x0 << coord(rng), coord(rng);
    const ShootResidual r = shoot_residual(h, p, x0);
    const double eps = 1e-6 * std::max(1.0, x0.norm());
    for (int k = 0; k < 2; ++k) {
      Vector xp = x0, xm = x0;
      xp(k) += eps;
      xm(k) -= eps;
      const Vector col = (shoot_residual(h, p, xp).residual - shoot_residual(h, p, xm).residual) / (2 * eps);
      CHECK((col - r.jacobian.col(k)).norm() <= 1e-5 * std::max(1.0, col.norm()));
    }
  }
}

TEST_CASE("linear nondegenerate problem has only the trivial solution") {
  const RadialHamiltonian h(1, 1.0, 0.0, 1.0);  // H = |x|^2, H'' = 2I, gamma(1) = R(2)
  const SolveResult res = find_solutions(h, SymplecticBoundary::rotation(1, kPi / 2), 20, 1);
  CHECK(res.nontrivial_orbits() == 0);
  REQUIRE_FALSE(res.orbits.empty());
  CHECK(res.orbits[0].is_trivial);
  CHECK(res.orbits[0].index_pair.i_P == 2);
  CHECK(res.orbits[0].index_pair.nu_P == 0);
}

TEST_CASE("resonant linear problem is flagged degenerate") {
  // H'' = (pi/2) I so gamma(1) = P: every start point is already a solution
  const RadialHamiltonian h(1, kPi / 4, 0.0, 1.0);
  const SolveResult res = find_solutions(h, SymplecticBoundary::rotation(1, kPi / 2), 5, 1);
  REQUIRE(res.solutions.size() == 5);
  for (const auto& s : res.solutions) {
    CHECK(s.degenerate);
    CHECK(s.index_pair.i_P == 0);
    CHECK(s.index_pair.nu_P == 2);
  }
}

TEST_CASE("acceptance family solutions lie on the predicted circles") {
  const RadialHamiltonian h(1, 0.05, 4.45, 1.0);
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  const SolveResult res = find_solutions(h, p, 200, 1);
  CHECK(res.nontrivial_orbits() >= 2);
  const std::vector<double> radii = oracle::radial_solution_radii(0.05, 4.45, 1.0, kPi / 2);
  REQUIRE(radii.size() == 2);
  std::vector<double> found;
  for (const auto& o : res.orbits) {
    if (o.is_trivial) continue;
    found.push_back(o.representative.squaredNorm());
    CHECK(o.has_index);
  }
  std::sort(found.begin(), found.end());
  REQUIRE(found.size() == 2);
  CHECK(found[0] == doctest::Approx(radii[0]).epsilon(1e-8));
  CHECK(found[1] == doctest::Approx(radii[1]).epsilon(1e-8));
  for (const auto& s : res.solutions) {
    CHECK(s.residual <= 1e-10);
    CHECK(s.energy_ok);
  }
  // regression values for the index pairs of the two nontrivial orbits
  for (const auto& o : res.orbits) {
    if (o.is_trivial) {
      CHECK(o.index_pair.i_P == 4);
      CHECK(o.index_pair.nu_P == 0);
    } else if (o.representative.squaredNorm() < 1.0) {
      CHECK(o.index_pair.i_P == 2);
      CHECK(o.index_pair.nu_P == 1);
    } else {
      CHECK(o.index_pair.i_P == 0);
      CHECK(o.index_pair.nu_P == 1);
    }
  }
}

TEST_CASE("start points are deterministic and seed dependent") {
  const auto a = start_points(2, 10, 1, {0.5, 1.0});
  const auto b = start_points(2, 10, 1, {0.5, 1.0});
  const auto c = start_points(2, 10, 2, {0.5, 1.0});
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
  CHECK((a[3] - c[3]).norm() > 0.0);
}

TEST_CASE("blow-up is reported") {
  const RadialHamiltonian h(1, 0.0, 0.0, 1.0, 1.0);  // H = |x|^4
  Vector x0(2);
  x0 << 40.0, 0.0;
  try {
    shoot_residual(h, SymplecticBoundary::rotation(1, kPi / 2), x0);
    FAIL("expected BlowUp");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::BlowUp || e.kind() == ErrorKind::AccuracyNotReached));
  }
}

TEST_CASE("repeated solves are identical and conserve energy") {
  const RadialHamiltonian h(1, 0.05, 4.45, 1.0);
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  const SolveResult a = find_solutions(h, p, 40, 3);
  const SolveResult b = find_solutions(h, p, 40, 3);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) {
    CHECK((a.solutions[i].x0 - b.solutions[i].x0).norm() == 0.0);
    CHECK(a.solutions[i].residual == b.solutions[i].residual);
    CHECK(a.solutions[i].orbit == b.solutions[i].orbit);
  }
  for (const auto& s : a.solutions) {
    const double h0 = h.value(0.0, s.x0);
    double drift = 0.0;
    for (const auto& x : s.trajectory) drift = std::max(drift, std::abs(h.value(0.0, x) - h0));
    CHECK(drift <= 1e-8 * (1.0 + std::abs(h0)));
  }
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maslovp/error.hpp"
#include "maslovp/index.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace maslovp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("closed-form examples on the quarter rotation") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  struct Row {
    double b;
    int i, nu;
  };
  for (const Row& r : {Row{2.0, 2, 0}, Row{0.0, 0, 0}, Row{9.0, 4, 0}, Row{-3.0, 0, 0}, Row{-5.0, -2, 0},
                       Row{kPi / 2, 0, 2}, Row{kPi / 2 + 2 * kPi, 2, 2}}) {
    CAPTURE(r.b);
    const IndexPair ip = maslov_index(p, CoefficientPath::scalar(1, r.b));
    CHECK(ip.converged);
    CHECK(ip.i_P == r.i);
    CHECK(ip.nu_P == r.nu);
    CHECK(ip.i_P == oracle::window_index(kPi / 2, r.b));
    CHECK(ip.nu_P == oracle::window_nullity(kPi / 2, r.b));
  }
}

TEST_CASE("identity boundary with zero coefficient") {
  const IndexPair ip = maslov_index(SymplecticBoundary::rotation(1, 0.0), CoefficientPath::scalar(1, 0.0));
  CHECK(ip.i_P == 0);
  CHECK(ip.nu_P == 2);
  CHECK(ip.floquet_nu == 2);
  const IndexPair two = maslov_index(SymplecticBoundary::rotation(2, 0.0), CoefficientPath::scalar(2, 0.0));
  CHECK(two.nu_P == 4);
}

TEST_CASE("index of the generating path") {
  const IndexPair q = index_of_gamma_P(SymplecticBoundary::rotation(1, kPi / 2));
  CHECK(q.i_P == 0);
  CHECK(q.nu_P == 2);
  const IndexPair id = index_of_gamma_P(SymplecticBoundary::rotation(1, 0.0));
  CHECK(id.i_P == 0);
  CHECK(id.nu_P == 2);
}

TEST_CASE("rotating-frame coefficients agree with the constant-coefficient oracle") {
  // B(t) = R(theta t) c I R(theta t)^T = c I, and for c I the window oracle applies;
  // with a diagonal c the count is the sum over both rotating-frame eigen-directions
  for (double theta : {1.0, 2.5}) {
    const SymplecticBoundary p = SymplecticBoundary::rotation(1, theta);
    for (double b : {-4.0, 0.5, 3.3, 8.1}) {
      const CoefficientPath path = CoefficientPath::trig(b * Matrix::Identity(2, 2), {}, {}, &p);
      CHECK(maslov_index(p, path).i_P == oracle::window_index(theta, b));
    }
  }
}

TEST_CASE("monotonicity: a larger coefficient never has a smaller index") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 6; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 2, rng);
    const CoefficientPath b = suite::random_trig(p, k % 3, 0.0, rng);
    const CoefficientPath c = b.plus(suite::random_gap(p, 0.2, 3.0, rng));
    const IndexPair ib = maslov_index(p, b), ic = maslov_index(p, c);
    CHECK(ic.i_P >= ib.i_P + ib.nu_P);
  }
}

TEST_CASE("truncation levels agree once converged") {
  std::mt19937_64 rng(4);
  const SymplecticBoundary p = suite::random_boundary(2, rng);
  IndexEngine engine(p, suite::random_trig(p, 2, 0.0, rng));
  const IndexPair ip = engine.index();
  REQUIRE(ip.levels.size() == 3);
  for (const auto& l : ip.levels) {
    CHECK(l.i_P == ip.i_P);
    CHECK(l.nu_P == ip.nu_P);
  }
  CHECK(ip.zero_band_gap > 1.0);
}

TEST_CASE("nullity cross-check failure is reported") {
  // a truncation cap too small to hold the crossing triggers NotConverged,
  // never a silently wrong answer
  IndexOptions opts;
  opts.m = 1;
  opts.stride = 1;
  opts.max_m = 3;
  try {
    maslov_index(SymplecticBoundary::rotation(1, kPi / 2), CoefficientPath::scalar(1, 60.0), opts);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::NotConverged || e.kind() == ErrorKind::NullityMismatch));
  }
}

TEST_CASE("perturbation identities around a crossing") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  const PerturbationScan onc = perturbation_scan(p, CoefficientPath::scalar(1, kPi / 2));
  CHECK(onc.base.nu_P == 2);
  CHECK(onc.crossing_above == doctest::Approx(2 * kPi).epsilon(1e-6));
  CHECK(onc.crossing_below == doctest::Approx(2 * kPi).epsilon(1e-6));
  REQUIRE(onc.rows.size() == 3);
  for (const auto& r : onc.rows) {
    CHECK(r.plus.i_P == 2);
    CHECK(r.minus.i_P == 0);
  }
  const PerturbationScan off = perturbation_scan(p, CoefficientPath::scalar(1, 2.0));
  CHECK(off.s0 == doctest::Approx((2.0 - kPi / 2) / 2).epsilon(1e-6));
}

TEST_CASE("bridge relation offset is independent of the coefficient") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  const BridgeOffset a = bridge_offset(p, CoefficientPath::scalar(1, 2.0));
  const BridgeOffset b = bridge_offset(p, CoefficientPath::scalar(1, 9.0));
  CHECK(a.offset == b.offset);
  CHECK(a.reference == 1);
  CHECK(a.i_B == 2);
  CHECK(b.i_B == 4);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(maslov_index(SymplecticBoundary::rotation(2, 1.0), CoefficientPath::scalar(1, 1.0)), Error);
}

TEST_CASE("weak monotonicity for semidefinite ordering") {
  std::mt19937_64 rng(18);
  for (int k = 0; k < 5; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 2, rng);
    const CoefficientPath b = suite::random_trig(p, 1, 0.0, rng);
    const CoefficientPath c = b.plus(suite::random_gap(p, 0.0, 2.0, rng));
    const IndexPair ib = maslov_index(p, b), ic = maslov_index(p, c);
    CHECK(ib.i_P <= ic.i_P);
    CHECK(ib.i_P + ib.nu_P <= ic.i_P + ic.nu_P);
  }
}

TEST_CASE("a larger starting truncation gives the same answer") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 4; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 2, rng);
    const CoefficientPath b = suite::random_trig(p, 2, 0.0, rng);
    const IndexPair base = maslov_index(p, b);
    IndexOptions big;
    big.m = base.m_used + 16;
    big.max_m = big.m + 16;
    const IndexPair wide = maslov_index(p, b, big);
    CHECK(wide.i_P == base.i_P);
    CHECK(wide.nu_P == base.nu_P);
  }
}

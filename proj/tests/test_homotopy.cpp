#include <doctest.h>

#include <numbers>
#include <random>

#include "maslovp/error.hpp"
#include "maslovp/homotopy.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace maslovp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("scalar segments cross where the congruence oracle says") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  for (double b2 : {2.0, 9.0, 0.1}) {
    CAPTURE(b2);
    const CrossingList cl = crossing_scan(p, CoefficientPath::scalar(1, 0.0), CoefficientPath::scalar(1, b2));
    const std::vector<double> expected = oracle::segment_crossings(kPi / 2, 0.0, b2);
    REQUIRE(cl.crossings.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CHECK(cl.crossings[k].s == doctest::Approx(expected[k]).epsilon(1e-8));
      CHECK(cl.crossings[k].nu == 2);
      CHECK(cl.crossings[k].refined_width <= 1e-9);
    }
    CHECK(cl.total == 2 * static_cast<int>(expected.size()));
  }
}

TEST_CASE("the starting nullity counts, the endpoint does not") {
  const SymplecticBoundary id = SymplecticBoundary::rotation(1, 0.0);
  const CrossingList cl = crossing_scan(id, CoefficientPath::scalar(1, 0.0), CoefficientPath::scalar(1, 2.0));
  REQUIRE(cl.crossings.size() == 1);
  CHECK(cl.crossings[0].s == 0.0);
  CHECK(cl.total == 2);

  HomotopyOptions opts;
  opts.include_start = false;
  CHECK(crossing_scan(id, CoefficientPath::scalar(1, 0.0), CoefficientPath::scalar(1, 2.0), opts).total == 0);

  // ending exactly on a crossing contributes nothing
  const SymplecticBoundary q = SymplecticBoundary::rotation(1, kPi / 2);
  CHECK(crossing_scan(q, CoefficientPath::scalar(1, 0.0), CoefficientPath::scalar(1, kPi / 2)).total == 0);
}

TEST_CASE("relative index equals the index difference") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  const RelativeIndex r = relative_index(p, CoefficientPath::scalar(1, 0.0), CoefficientPath::scalar(1, 9.0));
  CHECK(r.total == 4);
  CHECK(r.i_to - r.i_from == 4);
  const RelativeIndex q = relative_index(p, CoefficientPath::scalar(1, 2.0), CoefficientPath::scalar(1, 9.0));
  CHECK(q.total == 2);
}

TEST_CASE("random ordered pairs and additivity") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 3; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 2, rng);
    const CoefficientPath b1 = suite::random_trig(p, k, 0.0, rng);
    const CoefficientPath b2 = b1.plus(suite::random_gap(p, 0.1, 4.0, rng));
    const CoefficientPath b3 = b2.plus(suite::random_gap(p, 0.1, 4.0, rng));
    const int i12 = relative_index(p, b1, b2).total;
    const int i23 = relative_index(p, b2, b3).total;
    CHECK(i12 + i23 == relative_index(p, b1, b3).total);
  }
}

TEST_CASE("unordered endpoints are refused") {
  const SymplecticBoundary p = SymplecticBoundary::rotation(1, kPi / 2);
  try {
    crossing_scan(p, CoefficientPath::scalar(1, 3.0), CoefficientPath::scalar(1, 1.0));
    FAIL("expected OrderingViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderingViolated);
  }
}

TEST_CASE("crossing total does not depend on the scan resolution or representation") {
  std::mt19937_64 rng(100);
  const SymplecticBoundary p = suite::random_boundary(2, rng);
  const CoefficientPath b1 = suite::random_trig(p, 1, 0.0, rng);
  const CoefficientPath gap = suite::random_gap(p, 0.2, 5.0, rng);
  const CoefficientPath b2 = b1.plus(gap);
  const int reference = crossing_scan(p, b1, b2).total;
  for (int grid : {256, 1024}) {
    HomotopyOptions o;
    o.grid = grid;
    CHECK(crossing_scan(p, b1, b2, o).total == reference);
  }
  // the same segment written as b1 + s * 2 (gap / 2)
  CHECK(crossing_scan(p, b1, b1.plus(gap.scaled(0.5).scaled(2.0))).total == reference);
}

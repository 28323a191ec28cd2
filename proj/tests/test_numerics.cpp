#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maslovp/error.hpp"
#include "maslovp/numerics.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace maslovp;

TEST_CASE("symplectic J squares to minus identity and is antisymmetric") {
  for (int n = 1; n <= 3; ++n) {
    const Matrix j = symplectic_J(n);
    CHECK(max_abs(j * j + Matrix::Identity(2 * n, 2 * n)) == 0.0);
    CHECK(max_abs(j + j.transpose()) == 0.0);
  }
  CHECK(max_abs(symplectic_J(1) - oracle::J2()) == 0.0);
}

TEST_CASE("sym_eig returns ascending eigenvalues with a deterministic sign convention") {
  std::mt19937_64 rng(3);
  const Matrix s = suite::random_symmetric(6, 2.0, rng);
  const SpectrumResult a = sym_eig(s);
  const SpectrumResult b = sym_eig(s);
  CHECK(a.residual < 1e-12);
  for (Eigen::Index i = 1; i < a.eigenvalues.size(); ++i) CHECK(a.eigenvalues(i - 1) <= a.eigenvalues(i));
  CHECK(max_abs(a.eigenvectors - b.eigenvectors) == 0.0);
  for (Eigen::Index k = 0; k < a.eigenvectors.cols(); ++k) {
    for (Eigen::Index r = 0; r < a.eigenvectors.rows(); ++r) {
      if (std::abs(a.eigenvectors(r, k)) > 1e-12) {
        CHECK(a.eigenvectors(r, k) > 0.0);
        break;
      }
    }
  }
  CHECK(max_abs(s * a.eigenvectors - a.eigenvectors * a.eigenvalues.asDiagonal()) < 1e-12);
  CHECK(min_eigenvalue(s) == doctest::Approx(a.eigenvalues(0)).epsilon(1e-14));
}

TEST_CASE("sym_eig rejects asymmetric input") {
  Matrix s(2, 2);
  s << 1, 2, 3, 4;
  CHECK_THROWS_AS(sym_eig(s), Error);
  CHECK(asymmetry(s) == 1.0);
}

TEST_CASE("kernel dimension counts small singular values") {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 3.0;
  m(1, 1) = 1e-12;
  m(2, 2) = 0.5;
  const KernelDimension k = kernel_dimension(m);
  CHECK(k.dim == 2);
  CHECK(k.sigma_min == 0.0);
  CHECK(k.gap > 1e6);
  CHECK(kernel_dimension(Matrix::Zero(3, 3)).dim == 3);
  CHECK(kernel_dimension(Matrix::Identity(3, 3)).dim == 0);
}

TEST_CASE("sign counts respect the zero band") {
  Vector e(5);
  e << -2.0, -1e-10, 0.0, 3e-10, 4.0;
  const double tau = zero_band(e, 1e-9);
  CHECK(tau == doctest::Approx(4e-9));
  const SignCount c = count_signs(e, tau);
  CHECK(c.negative == 1);
  CHECK(c.zero == 3);
  CHECK(c.positive == 1);
  CHECK(c.gap == doctest::Approx(2.0 / tau));
}

TEST_CASE("matrix exponential of theta J is the rotation") {
  for (double theta : {0.3, 1.0, 2.5, -3.0}) {
    CHECK(max_abs(expm(theta * symplectic_J(1)) - oracle::rotation2(theta)) < 1e-14);
  }
}

TEST_CASE("principal unitary logarithm") {
  SUBCASE("single rotation") {
    const Matrix l = logm_unitary(oracle::rotation2(1.2));
    CHECK(max_abs(l - 1.2 * oracle::J2()) < 1e-13);
  }
  SUBCASE("random unitaries round-trip and commute with J") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
      ComplexMatrix z = ComplexMatrix::Random(n, n);
      Eigen::HouseholderQR<ComplexMatrix> qr(z);
      const ComplexMatrix u = qr.householderQ();
      const Matrix p = realify(u);
      const Matrix l = logm_unitary(p);
      const Matrix j = symplectic_J(n);
      CHECK(max_abs(expm(l) - p) < 1e-12);
      CHECK(max_abs(l + l.transpose()) < 1e-12);
      CHECK(max_abs(l * j - j * l) < 1e-12);
      CHECK((complexify(p) - u).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("rotation generator evaluates exp(t M1)") {
  const Matrix m1 = 0.7 * symplectic_J(2);
  const RotationGenerator g(m1);
  CHECK(g.half_dim() == 2);
  for (double t : {0.0, 0.25, 1.0, 1.7}) CHECK(max_abs(g.exp(t) - expm(t * m1)) < 1e-13);
  CHECK(RotationGenerator(Matrix::Zero(2, 2)).is_zero());
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const Quadrature& q = gauss_legendre(8);
  REQUIRE(q.nodes.size() == 8);
  for (int p = 0; p <= 15; ++p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * std::pow(q.nodes[i], p);
    CHECK(sum == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
  }
}

TEST_CASE("eigen-decomposition reconstructs random symmetric matrices") {
  std::mt19937_64 rng(5);
  for (int dim : {2, 17, 64, 200}) {
    const Matrix s = suite::random_symmetric(dim, 3.0, rng);
    const SpectrumResult r = sym_eig(s);
    const Matrix back = r.eigenvectors * r.eigenvalues.asDiagonal() * r.eigenvectors.transpose();
    CHECK(max_abs(back - s) < 1e-9);
  }
}

TEST_CASE("logarithm round-trip on random rotation-block matrices") {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const SymplecticBoundary p = suite::random_boundary(1 + k % 3, rng);
    worst = std::max(worst, max_abs(expm(logm_unitary(p.P())) - p.P()));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("kernel dimension is monotone in the tolerance") {
  std::mt19937_64 rng(7);
  Matrix m = suite::random_symmetric(6, 1.0, rng);
  const SpectrumResult r = sym_eig(m);
  Vector e = r.eigenvalues;
  for (int i = 0; i < 6; ++i) e(i) = std::pow(10.0, -2.0 * i);
  m = r.eigenvectors * e.asDiagonal() * r.eigenvectors.transpose();
  int previous = 0;
  for (double tol = 1e-14; tol < 10.0; tol *= 10.0) {
    const int d = kernel_dimension(m, tol).dim;
    CHECK(d >= previous);
    previous = d;
  }
  CHECK(previous == 6);
}

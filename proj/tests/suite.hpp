// Deterministic random problem families shared by the unit and acceptance tests.
#pragma once

#include <random>
#include <vector>

#include "maslovp/model.hpp"

namespace suite {

using maslovp::CoefficientPath;
using maslovp::Matrix;
using maslovp::SymplecticBoundary;

inline Matrix random_symmetric(int dim, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = normal(rng);
  return scale * 0.5 * (m + m.transpose());
}

// P = W diag(e^{i theta_k}) W^* for a random unitary W, as a real 2n x 2n matrix.
inline SymplecticBoundary random_boundary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = {normal(rng), normal(rng)};
  const Eigen::MatrixXcd w = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) d(k) = std::polar(1.0, phase(rng));
  const Eigen::MatrixXcd u = w * d.asDiagonal() * w.adjoint();
  return SymplecticBoundary::validate(maslovp::realify(u));
}

// Equivariant trigonometric path of the given degree in the frame of P.
inline CoefficientPath random_trig(const SymplecticBoundary& p, int degree, double offset, std::mt19937_64& rng) {
  const int dim = p.dim();
  Matrix c0 = random_symmetric(dim, 1.5, rng);
  c0.diagonal().array() += offset;
  std::vector<Matrix> cs, sn;
  for (int k = 1; k <= degree; ++k) {
    cs.push_back(random_symmetric(dim, 1.0 / k, rng));
    sn.push_back(random_symmetric(dim, 1.0 / k, rng));
  }
  return CoefficientPath::trig(c0, cs, sn, &p);
}

// Equivariant positive gap G(t) = F(t) S F(t)^T with S >= floor I.
inline CoefficientPath random_gap(const SymplecticBoundary& p, double floor, double scale, std::mt19937_64& rng) {
  const int dim = p.dim();
  std::normal_distribution<double> normal;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  Matrix s = scale * a * a.transpose() / dim;
  s.diagonal().array() += floor;
  return CoefficientPath::trig(s, {}, {}, &p);
}

struct RandomProblem {
  SymplecticBoundary boundary;
  CoefficientPath path;
  int n = 1;
  int degree = 0;
  bool on_crossing = false;
};

}  // namespace suite

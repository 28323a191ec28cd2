#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace maslovp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Standard symplectic matrix J = [[0, -I], [I, 0]] on R^{2n}.
Matrix symplectic_J(int n);

double max_abs(const Matrix& m);

/// Largest entry of |S - S^T|.
double asymmetry(const Matrix& s);

/// Ascending eigenvalues with orthonormal eigenvectors. Each eigenvector is
/// signed so that its first component with magnitude above 1e-12 is positive,
/// which makes the decomposition reproducible run to run.
struct SpectrumResult {
  Vector eigenvalues;
  Matrix eigenvectors;
  double residual = 0.0;
};

SpectrumResult sym_eig(const Matrix& s);

/// Eigenvalues only (ascending). Same symmetry precondition as sym_eig.
Vector sym_eigenvalues(const Matrix& s);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& s);

struct KernelDimension {
  int dim = 0;
  /// sigma_{r+1} / tau for the first retained singular value; infinity when
  /// the whole space is kernel.
  double gap = 0.0;
  double tau = 0.0;
  double sigma_min = 0.0;
};

/// Counts singular values <= tau with tau = tol_scale * max(1, sigma_max).
KernelDimension kernel_dimension(const Matrix& m, double tol_scale = 1e-8);

/// Sign counts of a spectrum against a zero band |lambda| <= tau.
struct SignCount {
  int negative = 0;
  int zero = 0;
  int positive = 0;
  double tau = 0.0;
  /// min |lambda| outside the band divided by tau (large is good).
  double gap = 0.0;
};

SignCount count_signs(const Vector& eigenvalues, double tau);

/// Zero band used for integer decisions: rel * max(|lambda_min|, |lambda_max|).
double zero_band(const Vector& eigenvalues, double rel);

Matrix expm(const Matrix& m);

/// Principal logarithm of an orthogonal matrix commuting with J. The result is
/// skew-symmetric, commutes with J and has eigenphases in (-pi, pi].
Matrix logm_unitary(const Matrix& p);

/// Real 2n x 2n image of a complex n x n matrix under z = q + i p.
Matrix realify(const ComplexMatrix& z);

/// Inverse of realify for matrices commuting with J.
ComplexMatrix complexify(const Matrix& m);

/// exp(t * M1) for a skew-symmetric J-commuting generator, evaluated through
/// the eigen-decomposition of the Hermitian matrix H with M1 ~ iH.
class RotationGenerator {
 public:
  RotationGenerator() = default;
  explicit RotationGenerator(const Matrix& generator);

  int half_dim() const { return static_cast<int>(phases_.size()); }
  const Vector& phases() const { return phases_; }
  Matrix exp(double t) const;
  void exp_into(double t, Matrix& out) const;
  bool is_zero() const { return zero_; }

 private:
  Vector phases_;
  ComplexMatrix vectors_;
  bool zero_ = true;
};

/// Gauss-Legendre nodes and weights on [0, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const Quadrature& gauss_legendre(int points);

}  // namespace maslovp

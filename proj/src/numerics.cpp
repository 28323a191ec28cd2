#include "maslovp/numerics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "maslovp/error.hpp"

namespace maslovp {

Matrix symplectic_J(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = -Matrix::Identity(n, n);
  j.block(n, 0, n, n) = Matrix::Identity(n, n);
  return j;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double asymmetry(const Matrix& s) { return max_abs(s - s.transpose()); }

namespace {

void check_symmetric(const Matrix& s) {
  if (s.rows() != s.cols()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  const double scale = std::max(1.0, max_abs(s));
  if (asymmetry(s) > 1e-10 * scale) {
    throw Error(ErrorKind::NotSymmetric,
                "asymmetry " + std::to_string(asymmetry(s)) + " exceeds tolerance");
  }
}

}  // namespace

SpectrumResult sym_eig(const Matrix& s) {
  check_symmetric(s);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "symmetric eigensolver");
  SpectrumResult out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.eigenvectors.rows(); ++r) {
      const double v = out.eigenvectors(r, c);
      if (std::abs(v) > 1e-12) {
        if (v < 0) out.eigenvectors.col(c) *= -1.0;
        break;
      }
    }
  }
  const Matrix resid = sym * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
  out.residual = max_abs(resid);
  return out;
}

Vector sym_eigenvalues(const Matrix& s) {
  check_symmetric(s);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "symmetric eigensolver");
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& s) { return sym_eigenvalues(s)(0); }

KernelDimension kernel_dimension(const Matrix& m, double tol_scale) {
  KernelDimension out;
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sigma = svd.singularValues();  // descending
  const Eigen::Index k = sigma.size();
  out.tau = tol_scale * std::max(1.0, sigma(0));
  out.sigma_min = sigma(k - 1);
  Eigen::Index small = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (sigma(i) <= out.tau) ++small;
  }
  const Eigen::Index retained = k - small;
  out.dim = static_cast<int>(small + std::max<Eigen::Index>(0, m.cols() - k));
  out.gap = retained > 0 ? sigma(retained - 1) / out.tau : std::numeric_limits<double>::infinity();
  return out;
}

double zero_band(const Vector& eigenvalues, double rel) {
  if (eigenvalues.size() == 0) return 0.0;
  return rel * std::max(std::abs(eigenvalues.minCoeff()), std::abs(eigenvalues.maxCoeff()));
}

SignCount count_signs(const Vector& eigenvalues, double tau) {
  SignCount out;
  out.tau = tau;
  double nearest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues(i);
    if (std::abs(v) <= tau) {
      ++out.zero;
    } else {
      nearest = std::min(nearest, std::abs(v));
      if (v < 0) ++out.negative; else ++out.positive;
    }
  }
  out.gap = tau > 0 ? nearest / tau : std::numeric_limits<double>::infinity();
  return out;
}

Matrix expm(const Matrix& m) {
  if (!m.allFinite()) throw Error(ErrorKind::Overflow, "non-finite input to expm");
  const Matrix e = m.exp();
  if (!e.allFinite()) throw Error(ErrorKind::Overflow, "matrix exponential overflowed");
  return e;
}

Matrix realify(const ComplexMatrix& z) {
  const Eigen::Index n = z.rows();
  Matrix m(2 * n, 2 * n);
  m.block(0, 0, n, n) = z.real();
  m.block(0, n, n, n) = -z.imag();
  m.block(n, 0, n, n) = z.imag();
  m.block(n, n, n, n) = z.real();
  return m;
}

ComplexMatrix complexify(const Matrix& m) {
  const Eigen::Index n = m.rows() / 2;
  ComplexMatrix z(n, n);
  z.real() = 0.5 * (m.block(0, 0, n, n) + m.block(n, n, n, n));
  z.imag() = 0.5 * (m.block(n, 0, n, n) - m.block(0, n, n, n));
  return z;
}

Matrix logm_unitary(const Matrix& p) {
  if (p.rows() != p.cols() || p.rows() % 2 != 0) {
    throw Error(ErrorKind::PreconditionViolated, "matrix must be square of even dimension");
  }
  const int n = static_cast<int>(p.rows() / 2);
  const Matrix j = symplectic_J(n);
  const Matrix id = Matrix::Identity(2 * n, 2 * n);
  if (max_abs(p.transpose() * p - id) > 1e-10) {
    throw Error(ErrorKind::PreconditionViolated, "matrix is not orthogonal");
  }
  if (max_abs(p * j - j * p) > 1e-10) {
    throw Error(ErrorKind::PreconditionViolated, "matrix does not commute with J");
  }
  const ComplexMatrix u = complexify(p);
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "complex Schur");
  const ComplexMatrix& q = schur.matrixU();
  const ComplexMatrix& t = schur.matrixT();
  Eigen::VectorXcd log_diag(n);
  for (int i = 0; i < n; ++i) {
    double phase = std::arg(t(i, i));
    // eigenvalue -1 sits on the branch cut; pin it to +pi
    if (phase <= -std::numbers::pi + 1e-10) phase = std::numbers::pi;
    log_diag(i) = std::complex<double>(0.0, phase);
  }
  const ComplexMatrix log_u = q * log_diag.asDiagonal() * q.adjoint();
  Matrix m1 = realify(log_u);
  m1 = 0.5 * (m1 - m1.transpose());
  m1 = 0.5 * (m1 - j * m1 * j);
  return m1;
}

RotationGenerator::RotationGenerator(const Matrix& generator) {
  const ComplexMatrix z = complexify(generator);
  // generator ~ iH with H Hermitian
  const ComplexMatrix h = std::complex<double>(0.0, -1.0) * z;
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "rotation generator");
  phases_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
  zero_ = phases_.size() == 0 || phases_.cwiseAbs().maxCoeff() == 0.0;
}

void RotationGenerator::exp_into(double t, Matrix& out) const {
  const Eigen::Index n = phases_.size();
  out.resize(2 * n, 2 * n);
  if (zero_) {
    out.setIdentity();
    return;
  }
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::polar(1.0, t * phases_(i));
  const ComplexMatrix e = vectors_ * d.asDiagonal() * vectors_.adjoint();
  out.block(0, 0, n, n) = e.real();
  out.block(0, n, n, n) = -e.imag();
  out.block(n, 0, n, n) = e.imag();
  out.block(n, n, n, n) = e.real();
}

Matrix RotationGenerator::exp(double t) const {
  Matrix out;
  exp_into(t, out);
  return out;
}

namespace {

Quadrature build_gauss_legendre(int points) {
  Quadrature q;
  q.nodes.resize(points);
  q.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= points; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = points * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= points; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = points * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] to [0, 1]
    q.nodes[i] = 0.5 * (1.0 - x);
    q.nodes[points - 1 - i] = 0.5 * (1.0 + x);
    q.weights[i] = 0.5 * w;
    q.weights[points - 1 - i] = 0.5 * w;
  }
  return q;
}

}  // namespace

const Quadrature& gauss_legendre(int points) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Quadrature>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[points];
  if (!slot) slot = std::make_unique<Quadrature>(build_gauss_legendre(points));
  return *slot;
}

}  // namespace maslovp
